#pragma once

#include <functional>
#include <string>

#include "proxilab/region.hpp"

namespace proxilab {

// Evaluable map T on A u B with declared contraction constant.
struct CyclicMap {
  std::function<Point(const Point&)> eval;
  Region domain_a, domain_b;
  double k = 0.5;       // declared constant in (0,1)
  double dist_ab = 0.0; // cached dist(A,B)

  static CyclicMap make(std::function<Point(const Point&)> eval, Region A, Region B,
                        double k, double tol = kDefaultTol);
};

struct SolverConfig {
  double tol = 1e-9;        // residual tolerance on d* = d(x,Tx) - dist(A,B)
  int max_double_steps = 200;
  std::uint64_t seed = 1;
  int sample_budget = 1000;
};

struct IterationTrace {
  std::vector<Point> iterates;     // even iterates x, T^2 x, ...
  std::vector<double> residuals;   // d*(x_n) per double step
  double fitted_rate = 1.0;
  std::string termination;         // "converged" | "max-steps" | "stalled"
};

struct ContractionReport {
  bool pass = false;
  double worst_slack = 0.0;  // min over sampled pairs of RHS - LHS
  Point witness_x, witness_y;
  std::string error;  // nonempty when the map escapes its codomain
};

// Checks d(Tx,Ty) <= k d(x,y) + (1-k) dist(A,B) + tol over stratified samples
// of A x B, and T(A) in B, T(B) in A membership.
ContractionReport verify_cyclic_contraction(const CyclicMap& map, int samples,
                                            std::uint64_t seed, double tol = 1e-9);

// Weaker Suzuki-type right side k max{d(x,y), d(x,Tx), d(Ty,y)} + (1-k) dist.
ContractionReport verify_suzuki_condition(const CyclicMap& map, int samples,
                                          std::uint64_t seed, double tol = 1e-9);

// max over j <= N of d(Tx, T^{2j} x): the orbit constant M(x) at horizon N.
double orbit_bound(const CyclicMap& map, const Point& x, int N);

struct SolveResult {
  Point limit;
  IterationTrace trace;
  bool converged = false;
};

// Picard iteration on T^2 from x0, recording d* residuals per double step.
SolveResult solve_best_proximity(const CyclicMap& map, const Point& x0,
                                 const SolverConfig& cfg);

struct RateFit {
  double rate = 1.0;      // fitted per-double-step residual factor
  double fit_residual = 0.0;
  int points_used = 0;
  bool degenerate = false;  // constant/too-short residual data
};

RateFit rate_estimate(const IterationTrace& trace);

struct UniquenessReport {
  enum class Verdict { Pass, Fail, Inconclusive, VacuousPass };
  Verdict verdict = Verdict::Pass;
  double spread = 0.0;  // max pairwise distance between limits
  std::vector<Point> limits;
  std::vector<Point> starts;
};

// Runs the solver from several starts in A; explicit_starts, when nonempty,
// replaces the random draw.
UniquenessReport uniqueness_probe(const CyclicMap& map, int starts,
                                  const SolverConfig& cfg,
                                  const std::vector<Point>& explicit_starts = {});

}  // namespace proxilab
