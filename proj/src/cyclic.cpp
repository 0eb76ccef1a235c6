#include "proxilab/cyclic.hpp"

#include <algorithm>
#include <cmath>

namespace proxilab {

namespace {

constexpr double kMembershipTol = 1e-6;

ContractionReport verify_condition(const CyclicMap& map, int samples,
                                   std::uint64_t seed, double tol, bool suzuki) {
  (void)seed;  // sampling is stratified and deterministic; seed reserved for
               // region kinds with randomized draws
  int per_side = std::max(2, static_cast<int>(std::ceil(std::sqrt(samples))));
  auto xs = sample_region(map.domain_a, per_side);
  auto ys = sample_region(map.domain_b, per_side);

  ContractionReport rep;
  rep.pass = true;
  rep.worst_slack = infinity();
  const auto& space = map.domain_a.space;
  for (const auto& x : xs) {
    Point tx = map.eval(x);
    if (point_set_distance(tx, map.domain_b).dist > kMembershipTol) {
      rep.pass = false;
      rep.error = "map image of a point of A escapes B";
      rep.witness_x = x;
      return rep;
    }
    for (const auto& y : ys) {
      Point ty = map.eval(y);
      if (point_set_distance(ty, map.domain_a).dist > kMembershipTol) {
        rep.pass = false;
        rep.error = "map image of a point of B escapes A";
        rep.witness_y = y;
        return rep;
      }
      double lhs = distance(space, tx, ty);
      double base = distance(space, x, y);
      if (suzuki)
        base = std::max({base, distance(space, x, tx), distance(space, ty, y)});
      double rhs = map.k * base + (1.0 - map.k) * map.dist_ab;
      double slack = rhs - lhs;
      if (slack < rep.worst_slack) {
        rep.worst_slack = slack;
        rep.witness_x = x;
        rep.witness_y = y;
      }
    }
  }
  rep.pass = rep.worst_slack >= -tol;
  return rep;
}

}  // namespace

CyclicMap CyclicMap::make(std::function<Point(const Point&)> eval, Region A, Region B,
                          double k, double tol) {
  if (!(k > 0.0 && k < 1.0)) throw InputError("contraction constant must be in (0,1)");
  CyclicMap m;
  m.eval = std::move(eval);
  m.dist_ab = set_pair_distance(A, B, tol).dist;
  m.domain_a = std::move(A);
  m.domain_b = std::move(B);
  m.k = k;
  return m;
}

ContractionReport verify_cyclic_contraction(const CyclicMap& map, int samples,
                                            std::uint64_t seed, double tol) {
  return verify_condition(map, samples, seed, tol, false);
}

ContractionReport verify_suzuki_condition(const CyclicMap& map, int samples,
                                          std::uint64_t seed, double tol) {
  return verify_condition(map, samples, seed, tol, true);
}

double orbit_bound(const CyclicMap& map, const Point& x, int N) {
  const auto& space = map.domain_a.space;
  Point tx = map.eval(x);
  Point cur = x;  // T^{2j} x
  double m = 0.0;
  for (int j = 0; j <= N; ++j) {
    m = std::max(m, distance(space, tx, cur));
    cur = map.eval(map.eval(cur));
  }
  return m;
}

SolveResult solve_best_proximity(const CyclicMap& map, const Point& x0,
                                 const SolverConfig& cfg) {
  const auto& space = map.domain_a.space;
  SolveResult out;
  Point x = x0;
  auto residual = [&](const Point& p) {
    return distance(space, p, map.eval(p)) - map.dist_ab;
  };

  // The residual can hit tol while the iterate still sits ~sqrt(tol) from the
  // fixed point of T^2 (flat residual profiles), so convergence additionally
  // polishes until the double-step movement itself dies out.
  auto polish = [&](Point z) {
    for (int extra = 0; extra < 4 * cfg.max_double_steps; ++extra) {
      Point nz = map.eval(map.eval(z));
      double moved = distance(space, z, nz);
      z = nz;
      if (moved <= 0.1 * cfg.tol) break;
    }
    return z;
  };

  double r = residual(x);
  out.trace.iterates.push_back(x);
  out.trace.residuals.push_back(r);
  if (r <= cfg.tol) {
    out.limit = polish(x);
    out.converged = true;
    out.trace.termination = "converged";
    return out;
  }

  double window_best = r;
  int stall = 0;
  for (int n = 0; n < cfg.max_double_steps; ++n) {
    x = map.eval(map.eval(x));
    r = residual(x);
    out.trace.iterates.push_back(x);
    out.trace.residuals.push_back(r);
    if (r <= cfg.tol) {
      out.limit = polish(x);
      out.converged = true;
      out.trace.termination = "converged";
      return out;
    }
    // divergence detection: no decrease by factor < 1 - 1e-12 over 50 steps
    if (r <= window_best * (1.0 - 1e-12)) {
      window_best = r;
      stall = 0;
    } else if (++stall >= 50) {
      out.limit = x;
      out.trace.termination = "stalled";
      return out;
    }
  }
  out.limit = x;
  out.trace.termination = "max-steps";
  return out;
}

RateFit rate_estimate(const IterationTrace& trace) {
  RateFit fit;
  // least squares on log residuals over the positive prefix
  std::vector<double> logs;
  for (double r : trace.residuals) {
    if (r <= 0.0) break;
    logs.push_back(std::log(r));
  }
  fit.points_used = static_cast<int>(logs.size());
  if (logs.size() < 4) {
    fit.degenerate = true;
    return fit;
  }
  double n = static_cast<double>(logs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < logs.size(); ++i) {
    double xi = static_cast<double>(i);
    sx += xi;
    sy += logs[i];
    sxx += xi * xi;
    sxy += xi * logs[i];
  }
  double denom = n * sxx - sx * sx;
  double slope = (n * sxy - sx * sy) / denom;
  double icept = (sy - slope * sx) / n;
  double ss = 0;
  for (size_t i = 0; i < logs.size(); ++i) {
    double e = logs[i] - (icept + slope * static_cast<double>(i));
    ss += e * e;
  }
  fit.rate = std::exp(slope);
  fit.fit_residual = std::sqrt(ss / n);
  if (fit.rate >= 1.0 - 1e-12) {
    fit.rate = 1.0;
    fit.degenerate = true;  // constant residual: no geometric decay visible
  }
  return fit;
}

UniquenessReport uniqueness_probe(const CyclicMap& map, int starts,
                                  const SolverConfig& cfg,
                                  const std::vector<Point>& explicit_starts) {
  UniquenessReport rep;
  if (!explicit_starts.empty()) {
    rep.starts = explicit_starts;
  } else {
    if (starts < 1) throw InputError("uniqueness_probe needs starts >= 1");
    auto pool = sample_region(map.domain_a, std::max(starts * 7, 32));
    Rng rng(cfg.seed);
    for (int i = 0; i < starts && !pool.empty(); ++i)
      rep.starts.push_back(pool[rng.uniform_index(pool.size())]);
  }
  const auto& space = map.domain_a.space;
  for (const auto& s : rep.starts) {
    auto res = solve_best_proximity(map, s, cfg);
    if (res.trace.termination == "stalled") {
      rep.verdict = UniquenessReport::Verdict::Inconclusive;
      return rep;
    }
    rep.limits.push_back(res.limit);
  }
  for (size_t i = 0; i < rep.limits.size(); ++i)
    for (size_t j = i + 1; j < rep.limits.size(); ++j)
      rep.spread = std::max(rep.spread, distance(space, rep.limits[i], rep.limits[j]));
  if (rep.limits.size() < 2) {
    rep.verdict = UniquenessReport::Verdict::VacuousPass;
  } else {
    rep.verdict = rep.spread <= 10.0 * cfg.tol ? UniquenessReport::Verdict::Pass
                                               : UniquenessReport::Verdict::Fail;
  }
  return rep;
}

}  // namespace proxilab
