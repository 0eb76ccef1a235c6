#pragma once

#include <functional>
#include <optional>
#include <string>

#include "proxilab/cyclic.hpp"
#include "proxilab/region.hpp"

namespace proxilab {

// Data needed to evaluate the d1 semimetric on B0. Linear mode carries the
// shift h with ||h|| = d; geodesic mode carries proximinal-partner evaluators
// between B0 and A0.
struct SemimetricContext {
  SpaceModel space;
  Region b0;
  bool linear = true;
  Point h;  // linear mode
  std::function<Point(const Point&)> partner;    // B0 -> A0 (b minus h)
  std::function<Point(const Point&)> copartner;  // A0 -> B0 (a plus h)
  double d = 0.0;  // dist(A,B)
  double tol = kDefaultTol;

  static SemimetricContext make_linear(const SpaceModel& space, Region b0, Point h,
                                       double d, double tol = kDefaultTol);
  static SemimetricContext make_geodesic(const SpaceModel& space, Region b0,
                                         std::function<Point(const Point&)> partner,
                                         std::function<Point(const Point&)> copartner,
                                         double d, double tol = kDefaultTol);
  Point partner_of(const Point& b) const;
  Point copartner_of(const Point& a) const;
};

// Closed form of the definitional infimum: linear mode
// max(||y-(x-h)||, ||y-(x+h)||) - d; geodesic mode
// max(d(y, x-h), d(y-h, x)) - d.
double d1_eval(const SemimetricContext& ctx, const Point& x, const Point& y);

// Test-oracle companion: the definitional infimum approximated on an r-grid.
double d1_infimum_grid(const SemimetricContext& ctx, const Point& x, const Point& y,
                       double r_max, double resolution);

struct CheckReport {
  bool pass = true;
  std::string note;
  Point witness_x, witness_y;
  double value = 0.0;
};

// nonnegativity, symmetry and zero-iff-equal at resolution on sampled pairs
CheckReport verify_semimetric_axioms(const SemimetricContext& ctx, int samples,
                                     std::uint64_t seed);
// d1(x,y) <= d(x,y) + tol on sampled pairs
CheckReport verify_domination(const SemimetricContext& ctx, int samples,
                              std::uint64_t seed);

struct CompatibilityProfile {
  Point base;
  std::vector<double> eps;
  std::vector<double> f;        // metric radius whose ball fits in the d1 ball
  std::vector<double> g;        // d1 radius whose ball fits in the metric ball
  std::vector<bool> f_saturated;
  std::vector<double> diam_d1_ball;  // diam(B1(x, 1/n)) for n = 1..10
  bool degenerate = false;           // singleton B0
};

CompatibilityProfile compatibility_profile(const SemimetricContext& ctx, const Point& x,
                                           const std::vector<double>& eps_grid,
                                           int samples = 2000);

// T'(b) = Tb + h (linear) / proximinal partner of Tb in B0 (geodesic); checks
// the parallel-image identity T(b-h) = Tb + h on samples and that the lift
// stays in B0.
std::function<Point(const Point&)> lift_map(const CyclicMap& map,
                                            const SemimetricContext& ctx,
                                            int samples = 64);

struct D1ContractionReport {
  bool pass = true;
  double worst_ratio = 0.0;  // max d1(T'x,T'y)/d1(x,y) over separated pairs
  Point witness_x, witness_y;
};

D1ContractionReport verify_d1_contraction(const std::function<Point(const Point&)>& Tprime,
                                          const SemimetricContext& ctx, double k,
                                          int samples, std::uint64_t seed,
                                          double tol = 1e-9);

struct PicardResult {
  Point limit;
  std::vector<Point> iterates;
  std::vector<double> d1_residuals;
  bool converged = false;
};

PicardResult semimetric_picard(const std::function<Point(const Point&)>& Tprime,
                               const SemimetricContext& ctx, const Point& b_start,
                               const SolverConfig& cfg);

// CAT(0) appendix: rectangle relations of (x, y, partner(x), partner(y)).
CheckReport flat_quadrilateral_check(const SpaceModel& space, const Point& x,
                                     const Point& y, const SemimetricContext& ctx,
                                     double tol);

// CAT(0) appendix ball identity: d1(x,y) = sqrt(d^2 + d(x,y)^2) - d on samples.
CheckReport cat0_ball_identity_check(const SemimetricContext& ctx, const Point& x,
                                     double r, int samples, std::uint64_t seed,
                                     double tol = 1e-9);

}  // namespace proxilab
