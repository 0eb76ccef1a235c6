#include "proxilab/modulus.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace proxilab {

namespace {

// Largest t >= 0 with g(t) <= r for g even, convex, g(0) <= r.
double bisect_max_t(const std::function<double(double)>& g, double r) {
  if (g(0.0) > r) return 0.0;
  double hi = r > 0 ? r : 1.0;
  int guard = 0;
  while (g(hi) <= r && guard++ < 200) hi *= 2.0;
  if (guard >= 200) return hi;  // unbounded in practice never happens here
  double lo = 0.0;
  for (int i = 0; i < 64; ++i) {
    double mid = 0.5 * (lo + hi);
    (g(mid) <= r ? lo : hi) = mid;
  }
  return lo;
}

// ---- linear case: chords c +/- (s/2) w in (R^n, ||.||_p) ----
struct LinearChordProblem {
  int n;
  double p, r, eps;

  // params: w raw (n), c raw (n), s
  double eval(const std::vector<double>& q) const {
    Point w(q.begin(), q.begin() + n);
    Point c(q.begin() + n, q.begin() + 2 * n);
    double s = std::clamp(q[2 * n], eps * r, 2.0 * r);
    double wn = p_norm(w, p), cn = p_norm(c, p);
    if (wn < 1e-12 || cn < 1e-12) return 0.0;
    Point half = scale(w, 0.5 * s / wn);
    Point cd = scale(c, 1.0 / cn);
    auto g = [&](double t) {
      Point tc = scale(cd, t);
      return std::max(p_norm(add(tc, half), p), p_norm(sub(tc, half), p));
    };
    return bisect_max_t(g, r);
  }
};

// ---- h2 case: chords through m = exp_a(t e1) with direction angle gamma ----
struct H2ChordProblem {
  SpaceModel space;
  Point a, e1, e2;
  double r, eps;

  // params: gamma, s
  double eval(const std::vector<double>& q) const {
    double gamma = q[0];
    double s = std::clamp(q[1], eps * r, 2.0 * r);
    auto g = [&](double t) {
      Point m = h2_exp(a, e1, t);
      // transported radial direction at m plus the orthogonal one
      Point u(3), w(3);
      for (int i = 0; i < 3; ++i) u[i] = std::sinh(t) * a[i] + std::cosh(t) * e1[i];
      for (int i = 0; i < 3; ++i) w[i] = std::cos(gamma) * u[i] + std::sin(gamma) * e2[i];
      Point x = h2_exp(m, w, 0.5 * s);
      Point nw = scale(w, -1.0);
      Point y = h2_exp(m, nw, 0.5 * s);
      return std::max(distance(space, x, a), distance(space, y, a));
    };
    return bisect_max_t(g, r);
  }
};

// Hooke-Jeeves maximization: exploratory coordinate sweeps plus pattern
// (extrapolation) moves, which keep the search from zigzagging along the
// curved ridges the chord objective develops for p far from 2.
template <typename F>
double pattern_search(std::vector<double>& q, const F& f, std::vector<double> steps,
                      double floor_step = 1e-11) {
  double best = f(q);
  int rounds = 0;
  while (*std::max_element(steps.begin(), steps.end()) > floor_step &&
         rounds++ < 2000) {
    std::vector<double> trial = q;
    double tbest = best;
    for (size_t i = 0; i < trial.size(); ++i)
      for (double sgn : {1.0, -1.0}) {
        std::vector<double> cand = trial;
        cand[i] += sgn * steps[i];
        double v = f(cand);
        if (v > tbest + 1e-15) {
          tbest = v;
          trial = cand;
        }
      }
    if (tbest > best + 1e-15) {
      std::vector<double> dir(q.size());
      for (size_t i = 0; i < q.size(); ++i) dir[i] = trial[i] - q[i];
      q = trial;
      best = tbest;
      for (int ext = 0; ext < 60; ++ext) {
        std::vector<double> cand = q;
        for (size_t i = 0; i < q.size(); ++i) cand[i] += dir[i];
        double v = f(cand);
        if (v <= best + 1e-15) break;
        best = v;
        q = cand;
      }
    } else {
      for (double& s : steps) s *= 0.5;
    }
  }
  return best;
}

}  // namespace

double brute_force_modulus(const SpaceModel& space, double r, double eps,
                           int budget) {
  if (r <= 0.0 || eps <= 0.0 || eps > 2.0)
    throw InputError("modulus arguments need r > 0 and eps in (0,2]");
  if (space.kind == SpaceModel::Kind::EuclideanP) {
    if (space.p <= 1.0 || !std::isfinite(space.p))
      throw UnsupportedError("space is not uniformly convex for p in {1, inf}");
    LinearChordProblem prob{space.dim, space.p, r, eps};
    int n = space.dim;
    // keep several coarse candidates: the objective has flat curved ridges
    // (especially for p > 2) where a single pattern search can stall
    std::vector<std::pair<double, std::vector<double>>> top;
    int coarse = std::max(budget, 64);
    for (int i = 0; i < coarse; ++i) {
      auto u = halton_point(static_cast<std::uint32_t>(i), 2 * n + 1);
      std::vector<double> q(2 * n + 1);
      for (int d = 0; d < 2 * n; ++d) {
        double t1 = std::max(u[d], 1e-12);
        double t2 = van_der_corput(static_cast<std::uint32_t>(i) * 97 + d + 1, 37);
        q[d] = std::sqrt(-2.0 * std::log(t1)) * std::cos(2.0 * M_PI * t2);
      }
      q[2 * n] = eps * r + (2.0 - eps) * r * u[2 * n];
      top.emplace_back(prob.eval(q), std::move(q));
    }
    size_t starts = std::min<size_t>(8, top.size());
    std::partial_sort(top.begin(), top.begin() + starts, top.end(),
                      [](const auto& a, const auto& b) { return a.first > b.first; });
    double best = -1.0;
    for (size_t i = 0; i < starts; ++i) {
      std::vector<double> steps(2 * n + 1, 0.3);
      steps[2 * n] = 0.3 * r;
      auto q = top[i].second;
      double v = pattern_search(
          q, [&](const std::vector<double>& c) { return prob.eval(c); }, steps,
          1e-12 * std::max(1.0, r));
      best = std::max(best, v);
    }
    return 1.0 - best / r;
  }
  if (space.kind == SpaceModel::Kind::HyperboloidH2) {
    Point a = {0, 0, 1}, e1, e2;
    h2_tangent_basis(a, e1, e2);
    H2ChordProblem prob{space, a, e1, e2, r, eps};
    std::vector<double> best_q;
    double best = -1.0;
    int gs = std::max(8, budget / 64), ss = 16;
    for (int i = 0; i <= gs; ++i)
      for (int j = 0; j <= ss; ++j) {
        std::vector<double> q = {M_PI * i / gs, eps * r + (2.0 - eps) * r * j / ss};
        double v = prob.eval(q);
        if (v > best) {
          best = v;
          best_q = q;
        }
      }
    best = pattern_search(best_q, [&](const std::vector<double>& q) { return prob.eval(q); },
                          {0.3, 0.3 * r}, 1e-12 * std::max(1.0, r));
    return 1.0 - best / r;
  }
  throw UnsupportedError("brute-force modulus not implemented for " + space.describe());
}

ConvexityModulus convexity_modulus(const SpaceModel& space) {
  if (space.kind == SpaceModel::Kind::EuclideanP &&
      (space.p == 1.0 || !std::isfinite(space.p)))
    throw UnsupportedError("space is not uniformly convex: " + space.describe());
  ConvexityModulus m;
  if (space.is_cat0()) {
    // CN inequality: d(m,a)^2 <= (d(x,a)^2 + d(y,a)^2)/2 - d(x,y)^2/4
    m.eval = [](double, double eps) { return cat0_modulus(eps); };
    m.monotone = true;
    m.analytic = true;
    return m;
  }
  // general p-norm: optimization-backed evaluator; the value is r-independent
  // by scale invariance of the norm, hence monotone
  SpaceModel sp = space;
  m.eval = [sp](double r, double eps) { return brute_force_modulus(sp, r, eps); };
  m.monotone = true;
  m.analytic = false;
  return m;
}

PointwiseModulusEstimate pointwise_modulus_estimate(const SpaceModel& space,
                                                    const Point& a, double r,
                                                    double eps, int samples,
                                                    std::uint64_t seed) {
  if (r <= 0.0 || eps <= 0.0 || eps > 2.0 || samples < 1)
    throw InputError("pointwise modulus needs r > 0, eps in (0,2], samples >= 1");
  validate_point(space, a);
  Rng rng(seed);
  int npts = std::max(4, static_cast<int>(std::ceil(std::sqrt(2.0 * samples))));
  std::vector<Point> pts;
  pts.reserve(npts + 64);
  for (int i = 0; i < npts; ++i) pts.push_back(sample_ball(space, a, r, i, rng));
  // deterministic boundary points so antipodal pairs (the eps = 2 extremals)
  // are present in the sample
  switch (space.kind) {
    case SpaceModel::Kind::EuclideanP: {
      int k = 32;
      for (int i = 0; i < k; ++i) {
        double th = 2.0 * M_PI * i / k;
        Point dir(space.dim, 0.0);
        dir[0] = std::cos(th);
        if (space.dim > 1) dir[1 % space.dim] = std::sin(th);
        pts.push_back(add(a, scale(dir, r / p_norm(dir, space.p))));
      }
      break;
    }
    case SpaceModel::Kind::HyperboloidH2: {
      Point e1, e2;
      h2_tangent_basis(a, e1, e2);
      int k = 32;
      for (int i = 0; i < k; ++i) {
        double th = 2.0 * M_PI * i / k;
        Point v(3);
        for (int d = 0; d < 3; ++d) v[d] = std::cos(th) * e1[d] + std::sin(th) * e2[d];
        pts.push_back(h2_exp(a, v, r));
      }
      break;
    }
    case SpaceModel::Kind::StarTree: {
      for (int ray = 0; ray < space.rays; ++ray) {
        double base = (ray == static_cast<int>(std::llround(a[0]))) ? a[1] : -a[1];
        double s = base + r;
        if (s >= 0.0) pts.push_back({static_cast<double>(ray), s});
      }
      if (a[1] - r >= 0.0)
        pts.push_back({a[0], a[1] - r});
      break;
    }
  }
  PointwiseModulusEstimate est;
  est.value = 1.0;
  for (size_t i = 0; i < pts.size(); ++i)
    for (size_t j = i + 1; j < pts.size(); ++j) {
      double dxy = distance(space, pts[i], pts[j]);
      if (dxy + 1e-12 < eps * r) continue;
      Point m = midpoint(space, pts[i], pts[j]);
      double v = 1.0 - distance(space, m, a) / r;
      ++est.admissible_pairs;
      if (v < est.value) {
        est.value = v;
        est.worst_x = pts[i];
        est.worst_y = pts[j];
      }
    }
  if (est.admissible_pairs == 0) est.value = 0.0;
  return est;
}

}  // namespace proxilab
