#pragma once

// Shared fixtures and independent oracles for the test suites. The oracles
// deliberately re-derive every quantity from scratch (own distance formulas,
// own grids, own refinement loops) so that agreement with the library is
// evidence, not circularity.

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "proxilab/cyclic.hpp"
#include "proxilab/region.hpp"
#include "proxilab/space.hpp"

namespace proxilab::testing {

// ---- independent metric formulas ------------------------------------------

inline double oracle_pnorm(const std::vector<double>& v, double p) {
  if (std::isinf(p)) {
    double m = 0.0;
    for (double c : v) m = std::max(m, std::fabs(c));
    return m;
  }
  double s = 0.0;
  for (double c : v) s += std::pow(std::fabs(c), p);
  return std::pow(s, 1.0 / p);
}

inline double oracle_dist(const SpaceModel& sp, const Point& x, const Point& y) {
  switch (sp.kind) {
    case SpaceModel::Kind::EuclideanP: {
      std::vector<double> diff(x.size());
      for (size_t i = 0; i < x.size(); ++i) diff[i] = x[i] - y[i];
      return oracle_pnorm(diff, sp.p);
    }
    case SpaceModel::Kind::HyperboloidH2: {
      double q = x[0] * y[0] + x[1] * y[1] - x[2] * y[2];
      return std::acosh(std::max(1.0, -q));
    }
    case SpaceModel::Kind::StarTree: {
      if (x[0] == y[0] || x[1] == 0.0 || y[1] == 0.0)
        return std::fabs(x[1] - y[1]);
      return x[1] + y[1];
    }
  }
  return 0.0;
}

// Canonical-segment point at parameter t, derived independently.
inline Point oracle_geo(const SpaceModel& sp, const Point& x, const Point& y, double t) {
  switch (sp.kind) {
    case SpaceModel::Kind::EuclideanP: {
      Point out(x.size());
      for (size_t i = 0; i < x.size(); ++i) out[i] = (1.0 - t) * x[i] + t * y[i];
      return out;
    }
    case SpaceModel::Kind::HyperboloidH2: {
      double theta = oracle_dist(sp, x, y);
      if (theta < 1e-14) return x;
      double a = std::sinh((1.0 - t) * theta) / std::sinh(theta);
      double b = std::sinh(t * theta) / std::sinh(theta);
      return Point{a * x[0] + b * y[0], a * x[1] + b * y[1], a * x[2] + b * y[2]};
    }
    case SpaceModel::Kind::StarTree: {
      double total = oracle_dist(sp, x, y);
      double s = t * total;
      if (x[0] == y[0]) {
        double coord = x[1] + (y[1] > x[1] ? s : -s);
        return Point{x[0], coord};
      }
      if (s <= x[1]) return Point{x[0], x[1] - s};
      return Point{y[0], s - x[1]};
    }
  }
  return x;
}

// min distance from x to the segment [a, b], dense grid + local refinement
inline double brute_segment_dist(const SpaceModel& sp, const Point& x, const Point& a,
                                 const Point& b, int n = 20001) {
  double best = infinity();
  double bt = 0.0;
  for (int i = 0; i <= n; ++i) {
    double t = static_cast<double>(i) / n;
    double d = oracle_dist(sp, x, oracle_geo(sp, a, b, t));
    if (d < best) {
      best = d;
      bt = t;
    }
  }
  double step = 1.0 / n;
  for (int it = 0; it < 80; ++it) {
    step *= 0.5;
    for (double t : {bt - step, bt + step}) {
      if (t < 0.0 || t > 1.0) continue;
      double d = oracle_dist(sp, x, oracle_geo(sp, a, b, t));
      if (d < best) {
        best = d;
        bt = t;
      }
    }
  }
  return best;
}

// min distance between two segments over a dense parameter grid + refinement
inline double brute_pair_dist(const SpaceModel& sp, const Point& a0, const Point& a1,
                              const Point& b0, const Point& b1, int n = 1000) {
  double best = infinity();
  double bs = 0.0;
  for (int i = 0; i <= n; ++i) {
    double s = static_cast<double>(i) / n;
    Point pa = oracle_geo(sp, a0, a1, s);
    double d = brute_segment_dist(sp, pa, b0, b1, 2000);
    if (d < best) {
      best = d;
      bs = s;
    }
  }
  double step = 1.0 / n;
  for (int it = 0; it < 60; ++it) {
    step *= 0.5;
    for (double s : {bs - step, bs + step}) {
      if (s < 0.0 || s > 1.0) continue;
      double d = brute_segment_dist(sp, oracle_geo(sp, a0, a1, s), b0, b1, 4000);
      if (d < best) {
        best = d;
        bs = s;
      }
    }
  }
  return best;
}

// delta(1, eps) of the planar l^p unit ball via the sphere-angle
// parametrization (independent of the library's chord-through-midpoint
// search): maximize ||(s(phi1)+s(phi2))/2||_p subject to ||s1 - s2||_p >= eps.
inline double oracle_planar_modulus(double p, double eps) {
  auto sphere = [&](double phi) {
    double c = std::cos(phi), s = std::sin(phi);
    auto comp = [&](double v) {
      return (v < 0 ? -1.0 : 1.0) * std::pow(std::fabs(v), 2.0 / p);
    };
    return std::vector<double>{comp(c), comp(s)};
  };
  auto objective = [&](double phi1, double phi2) {
    auto s1 = sphere(phi1), s2 = sphere(phi2);
    std::vector<double> diff{s1[0] - s2[0], s1[1] - s2[1]};
    if (oracle_pnorm(diff, p) < eps) return -1.0;
    std::vector<double> mid{0.5 * (s1[0] + s2[0]), 0.5 * (s1[1] + s2[1])};
    return oracle_pnorm(mid, p);
  };
  const int n = 1200;
  double best = -1.0, b1 = 0.0, b2 = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double phi1 = 2.0 * M_PI * i / n, phi2 = 2.0 * M_PI * j / n;
      double v = objective(phi1, phi2);
      if (v > best) {
        best = v;
        b1 = phi1;
        b2 = phi2;
      }
    }
  double step = 2.0 * M_PI / n;
  while (step > 1e-12) {
    bool improved = false;
    for (double d1 : {-step, 0.0, step})
      for (double d2 : {-step, 0.0, step}) {
        double v = objective(b1 + d1, b2 + d2);
        if (v > best) {
          best = v;
          b1 += d1;
          b2 += d2;
          improved = true;
        }
      }
    if (!improved) step *= 0.5;
  }
  return 1.0 - best;
}

// ---- canonical fixtures ----------------------------------------------------

inline Region vstrip(const SpaceModel& sp, double x0) {
  return Region::segment(sp, Point{x0, 0.0}, Point{x0, 1.0});
}

// parallel unit strips at distance 1 with the halving map (k = 1/2)
inline CyclicMap strips_map(double p = 2.0, double k = 0.5) {
  auto sp = SpaceModel::euclidean(2, p);
  auto T = [](const Point& q) { return Point{1.0 - q[0], q[1] / 2.0}; };
  return CyclicMap::make(T, vstrip(sp, 0.0), vstrip(sp, 1.0), k);
}

// max-norm strips with the isometric swap map: every point is a best
// proximity point
inline CyclicMap maxnorm_swap_map(double k = 0.5) {
  auto sp = SpaceModel::euclidean(2, infinity());
  auto T = [](const Point& q) { return Point{1.0 - q[0], q[1]}; };
  return CyclicMap::make(T, vstrip(sp, 0.0), vstrip(sp, 1.0), k);
}

inline std::mt19937_64 test_rng(std::uint64_t seed = 42) {
  return std::mt19937_64{seed};
}

}  // namespace proxilab::testing
