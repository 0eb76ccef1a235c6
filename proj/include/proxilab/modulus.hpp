#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>

#include "proxilab/space.hpp"

namespace proxilab {

// delta(r, eps) evaluator. For CAT(0) instances the analytic formula
// 1 - sqrt(1 - eps^2/4) is returned (r-independent, hence monotone); for other
// p-norms the evaluator falls back to a search over constrained chord
// configurations.
struct ConvexityModulus {
  std::function<double(double r, double eps)> eval;
  bool monotone = false;
  bool analytic = false;
};

inline double cat0_modulus(double eps) {
  return 1.0 - std::sqrt(std::max(0.0, 1.0 - eps * eps / 4.0));
}

// Throws UnsupportedError for p in {1, inf}.
ConvexityModulus convexity_modulus(const SpaceModel& space);

// Optimization-based evaluation of delta(r, eps): maximizes d(m, a) over
// midpoints m of chords [x, y] with d(x,a) <= r, d(y,a) <= r, d(x,y) >= eps*r.
// Chords are parametrized through their midpoint so the constraints are exact;
// budget controls the size of the coarse search that precedes local
// refinement. Supported for euclidean-p (p in (1, inf)) and h2.
double brute_force_modulus(const SpaceModel& space, double r, double eps,
                           int budget = 4096);

struct PointwiseModulusEstimate {
  double value = 0.0;       // min over admissible sampled pairs of 1 - d(m,a)/r
  int admissible_pairs = 0; // 0 means the report is empty, not a verdict
  Point worst_x, worst_y;
};

PointwiseModulusEstimate pointwise_modulus_estimate(const SpaceModel& space,
                                                    const Point& a, double r,
                                                    double eps, int samples,
                                                    std::uint64_t seed = 1);

}  // namespace proxilab
