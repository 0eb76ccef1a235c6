#pragma once

#include <optional>

#include "proxilab/region.hpp"

namespace proxilab {

// The subsets of A and B realizing dist(A,B), plus the parallel-translation
// data when the pair turns out to be a translate of itself.
struct PairGeometry {
  double dist_ab = 0.0;
  Region core_a, core_b;  // clouds unless the inputs were clouds already
  std::optional<Point> translation;  // h with B0 = A0 + h, linear spaces
  bool sharp = false;     // every core point has a unique partner at resolution
  bool parallel = false;
  bool empty_core = false;  // nothing realized dist(A,B) at tolerance
};

// Sampled reconstruction of (A0, B0); budget points are drawn per side.
PairGeometry extract_proximinal_core(const Region& A, const Region& B, double tol,
                                     int budget = 2000);

// Candidate shift from matched witness pairs, verified by a Hausdorff check;
// empty optional when no translation fits at tolerance.
std::optional<Point> detect_parallel_translation(PairGeometry& core, double tol);

struct ChebyshevReport {
  enum class Verdict { Pass, Fail, VacuousPass };
  Verdict verdict = Verdict::Pass;
  Point witness;                 // offending proximinal point on FAIL
  std::vector<Point> projections;  // two separated minimizers on FAIL
  int probed = 0;
};

// Samples proximinal points x in B (dist(x,A) = dist(A,B) at tolerance) and
// demands P_A(x) be a singleton for each.
ChebyshevReport chebyshev_for_proximinal(const Region& A, const Region& B, double tol,
                                         int budget = 500);

}  // namespace proxilab
