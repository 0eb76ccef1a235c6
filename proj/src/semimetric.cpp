#include "proxilab/semimetric.hpp"

#include <algorithm>
#include <cmath>

namespace proxilab {

namespace {
constexpr double kMembershipTol = 1e-6;

void require_in_b0(const SemimetricContext& ctx, const Point& p) {
  if (point_set_distance(p, ctx.b0).dist > kMembershipTol)
    throw InputError("point lies outside B0");
}
}  // namespace

SemimetricContext SemimetricContext::make_linear(const SpaceModel& space, Region b0,
                                                 Point h, double d, double tol) {
  if (!space.is_linear())
    throw InputError("linear semimetric mode needs a euclidean-p space");
  SemimetricContext ctx;
  ctx.space = space;
  ctx.b0 = std::move(b0);
  ctx.linear = true;
  ctx.h = std::move(h);
  ctx.d = d;
  ctx.tol = tol;
  return ctx;
}

SemimetricContext SemimetricContext::make_geodesic(
    const SpaceModel& space, Region b0, std::function<Point(const Point&)> partner,
    std::function<Point(const Point&)> copartner, double d, double tol) {
  SemimetricContext ctx;
  ctx.space = space;
  ctx.b0 = std::move(b0);
  ctx.linear = false;
  ctx.partner = std::move(partner);
  ctx.copartner = std::move(copartner);
  ctx.d = d;
  ctx.tol = tol;
  return ctx;
}

Point SemimetricContext::partner_of(const Point& b) const {
  return linear ? sub(b, h) : partner(b);
}

Point SemimetricContext::copartner_of(const Point& a) const {
  return linear ? add(a, h) : copartner(a);
}

double d1_eval(const SemimetricContext& ctx, const Point& x, const Point& y) {
  require_in_b0(ctx, x);
  require_in_b0(ctx, y);
  if (ctx.linear) {
    double lower = distance(ctx.space, y, sub(x, ctx.h));
    double upper = distance(ctx.space, y, add(x, ctx.h));
    return std::max(lower, upper) - ctx.d;
  }
  double lower = distance(ctx.space, y, ctx.partner(x));
  double upper = distance(ctx.space, ctx.partner(y), x);
  return std::max(lower, upper) - ctx.d;
}

double d1_infimum_grid(const SemimetricContext& ctx, const Point& x, const Point& y,
                       double r_max, double resolution) {
  // membership scan straight from the definition, used to certify the closed
  // form above
  auto member = [&](double r) {
    if (ctx.linear)
      return distance(ctx.space, y, sub(x, ctx.h)) <= ctx.d + r &&
             distance(ctx.space, y, add(x, ctx.h)) <= ctx.d + r;
    return distance(ctx.space, y, ctx.partner(x)) <= ctx.d + r &&
           distance(ctx.space, ctx.partner(y), x) <= ctx.d + r;
  };
  for (double r = resolution; r <= r_max + resolution; r += resolution)
    if (member(r)) return r;
  return infinity();
}

CheckReport verify_semimetric_axioms(const SemimetricContext& ctx, int samples,
                                     std::uint64_t seed) {
  (void)seed;
  CheckReport rep;
  auto pts = sample_region(ctx.b0, std::max(2, static_cast<int>(std::sqrt(2.0 * samples)) + 1));
  for (size_t i = 0; i < pts.size(); ++i) {
    double self = d1_eval(ctx, pts[i], pts[i]);
    if (std::fabs(self) > ctx.tol * 10.0) {
      rep.pass = false;
      rep.note = "zero axiom fails: d1(x,x) != 0";
      rep.witness_x = pts[i];
      rep.value = self;
      return rep;
    }
    for (size_t j = i + 1; j < pts.size(); ++j) {
      double dij = d1_eval(ctx, pts[i], pts[j]);
      double dji = d1_eval(ctx, pts[j], pts[i]);
      if (dij < -ctx.tol * 10.0) {
        rep.pass = false;
        rep.note = "nonnegativity fails";
        rep.witness_x = pts[i];
        rep.witness_y = pts[j];
        rep.value = dij;
        return rep;
      }
      if (std::fabs(dij - dji) > ctx.tol * 10.0) {
        rep.pass = false;
        rep.note = "symmetry fails";
        rep.witness_x = pts[i];
        rep.witness_y = pts[j];
        rep.value = dij - dji;
        return rep;
      }
      double metric = distance(ctx.space, pts[i], pts[j]);
      if (metric > 100.0 * ctx.tol && dij <= ctx.tol) {
        rep.pass = false;
        rep.note = "separation fails: d1(x,y) = 0 for x != y";
        rep.witness_x = pts[i];
        rep.witness_y = pts[j];
        rep.value = dij;
        return rep;
      }
    }
  }
  rep.note = "axioms hold on sampled pairs";
  return rep;
}

CheckReport verify_domination(const SemimetricContext& ctx, int samples,
                              std::uint64_t seed) {
  (void)seed;
  CheckReport rep;
  auto pts = sample_region(ctx.b0, std::max(2, static_cast<int>(std::sqrt(2.0 * samples)) + 1));
  for (size_t i = 0; i < pts.size(); ++i)
    for (size_t j = i + 1; j < pts.size(); ++j) {
      double v = d1_eval(ctx, pts[i], pts[j]);
      double m = distance(ctx.space, pts[i], pts[j]);
      if (v > m + ctx.tol) {
        rep.pass = false;
        rep.note = "d1 exceeds the metric";
        rep.witness_x = pts[i];
        rep.witness_y = pts[j];
        rep.value = v - m;
        return rep;
      }
    }
  rep.note = "d1 <= metric on sampled pairs";
  return rep;
}

CompatibilityProfile compatibility_profile(const SemimetricContext& ctx, const Point& x,
                                           const std::vector<double>& eps_grid,
                                           int samples) {
  require_in_b0(ctx, x);
  CompatibilityProfile prof;
  prof.base = x;
  prof.eps = eps_grid;
  auto pts = sample_region(ctx.b0, samples);
  std::vector<std::pair<double, double>> md;  // (metric, d1) per sample
  md.reserve(pts.size());
  double max_m = 0.0, max_d1 = 0.0;
  for (const auto& y : pts) {
    double m = distance(ctx.space, x, y);
    double v = d1_eval(ctx, x, y);
    md.emplace_back(m, v);
    max_m = std::max(max_m, m);
    max_d1 = std::max(max_d1, v);
  }
  if (max_m <= 100.0 * ctx.tol) {
    prof.degenerate = true;  // singleton B0: trivial profile
    prof.f.assign(eps_grid.size(), 0.0);
    prof.g.assign(eps_grid.size(), 0.0);
    prof.f_saturated.assign(eps_grid.size(), true);
    prof.diam_d1_ball.assign(10, 0.0);
    return prof;
  }
  for (double eps : eps_grid) {
    // f(eps): largest metric radius whose sampled ball sits in the d1-ball
    double f = infinity();
    for (auto [m, v] : md)
      if (v > eps) f = std::min(f, m);
    bool saturated = !std::isfinite(f);
    if (saturated) f = max_m;  // region exhausted before leaving the d1 ball
    // g(eps): largest d1 radius whose sampled ball sits in the metric ball
    double g = infinity();
    for (auto [m, v] : md)
      if (m > eps) g = std::min(g, v);
    if (!std::isfinite(g)) g = max_d1;
    prof.f.push_back(f);
    prof.g.push_back(g);
    prof.f_saturated.push_back(saturated);
  }
  for (int n = 1; n <= 10; ++n) {
    double diam = 0.0;
    std::vector<const Point*> inside;
    for (size_t i = 0; i < pts.size(); ++i)
      if (md[i].second <= 1.0 / n) inside.push_back(&pts[i]);
    for (size_t i = 0; i < inside.size(); ++i)
      for (size_t j = i + 1; j < inside.size(); ++j)
        diam = std::max(diam, distance(ctx.space, *inside[i], *inside[j]));
    prof.diam_d1_ball.push_back(diam);
  }
  return prof;
}

std::function<Point(const Point&)> lift_map(const CyclicMap& map,
                                            const SemimetricContext& ctx,
                                            int samples) {
  auto lifted = [map, ctx](const Point& b) {
    Point tb = map.eval(b);
    return ctx.copartner_of(tb);
  };
  // parallel-image identity T(b-h) = Tb + h on samples, and closure of B0
  auto pts = sample_region(ctx.b0, samples);
  for (const auto& b : pts) {
    Point via_partner = map.eval(ctx.partner_of(b));
    Point via_lift = lifted(b);
    if (distance(ctx.space, via_partner, via_lift) > kMembershipTol)
      throw InputError("parallel-image identity T(b-h) = Tb + h fails on a sample");
    if (point_set_distance(via_lift, ctx.b0).dist > kMembershipTol)
      throw InputError("lifted image escapes B0");
  }
  return lifted;
}

D1ContractionReport verify_d1_contraction(const std::function<Point(const Point&)>& Tprime,
                                          const SemimetricContext& ctx, double k,
                                          int samples, std::uint64_t seed,
                                          double tol) {
  (void)seed;
  D1ContractionReport rep;
  auto pts = sample_region(ctx.b0, std::max(2, static_cast<int>(std::sqrt(2.0 * samples)) + 1));
  for (size_t i = 0; i < pts.size(); ++i) {
    Point ti = Tprime(pts[i]);
    for (size_t j = i + 1; j < pts.size(); ++j) {
      Point tj = Tprime(pts[j]);
      double before = d1_eval(ctx, pts[i], pts[j]);
      double after = d1_eval(ctx, ti, tj);
      if (after > k * before + tol) {
        rep.pass = false;
        rep.witness_x = pts[i];
        rep.witness_y = pts[j];
      }
      if (before > 100.0 * tol) {
        double ratio = after / before;
        if (ratio > rep.worst_ratio) {
          rep.worst_ratio = ratio;
          if (rep.pass) {
            rep.witness_x = pts[i];
            rep.witness_y = pts[j];
          }
        }
      }
    }
  }
  return rep;
}

PicardResult semimetric_picard(const std::function<Point(const Point&)>& Tprime,
                               const SemimetricContext& ctx, const Point& b_start,
                               const SolverConfig& cfg) {
  PicardResult out;
  Point b = b_start;
  out.iterates.push_back(b);
  double prev = infinity();
  int stall = 0;
  for (int n = 0; n <= cfg.max_double_steps; ++n) {
    Point nb = Tprime(b);
    double r = d1_eval(ctx, b, nb);
    out.d1_residuals.push_back(r);
    if (r <= cfg.tol) {
      // polish past the flat d1 profile until the step stops moving
      for (int extra = 0; extra < 4 * cfg.max_double_steps; ++extra) {
        nb = Tprime(b);
        double moved = distance(ctx.space, b, nb);
        b = nb;
        if (moved <= 0.1 * cfg.tol) break;
      }
      out.limit = b;
      out.converged = true;
      return out;
    }
    if (r <= prev * (1.0 - 1e-12)) {
      prev = r;
      stall = 0;
    } else if (++stall >= 50) {
      break;  // stall report, mirrors the direct solver
    }
    b = nb;
    out.iterates.push_back(b);
  }
  out.limit = b;
  return out;
}

CheckReport flat_quadrilateral_check(const SpaceModel& space, const Point& x,
                                     const Point& y, const SemimetricContext& ctx,
                                     double tol) {
  if (!space.is_cat0())
    throw UnsupportedError("flat quadrilateral check needs a CAT(0) instance");
  CheckReport rep;
  Point xp = ctx.partner_of(x);
  Point yp = ctx.partner_of(y);
  double dxy = distance(space, x, y);
  double diag = std::sqrt(ctx.d * ctx.d + dxy * dxy);
  struct Rel {
    const char* name;
    double got, want;
  } rels[] = {
      {"d(x, x') = d", distance(space, x, xp), ctx.d},
      {"d(y, y') = d", distance(space, y, yp), ctx.d},
      {"d(x', y') = d(x, y)", distance(space, xp, yp), dxy},
      {"diagonal d(x, y')", distance(space, x, yp), diag},
      {"diagonal d(x', y)", distance(space, xp, y), diag},
  };
  for (const auto& rel : rels) {
    if (std::fabs(rel.got - rel.want) > tol) {
      rep.pass = false;
      rep.note = rel.name;
      rep.witness_x = x;
      rep.witness_y = y;
      rep.value = rel.got - rel.want;
      return rep;
    }
  }
  rep.note = "rectangle relations hold";
  return rep;
}

CheckReport cat0_ball_identity_check(const SemimetricContext& ctx, const Point& x,
                                     double r, int samples, std::uint64_t seed,
                                     double tol) {
  if (!ctx.space.is_cat0())
    throw UnsupportedError("ball identity check needs a CAT(0) instance");
  if (r <= 0.0) throw InputError("ball identity check needs r > 0");
  (void)seed;
  CheckReport rep;
  auto pts = sample_region(ctx.b0, samples);
  double thr = std::sqrt(ctx.d * ctx.d + r * r) - ctx.d;
  for (const auto& y : pts) {
    double dm = distance(ctx.space, x, y);
    double dv = d1_eval(ctx, x, y);
    double expect = std::sqrt(ctx.d * ctx.d + dm * dm) - ctx.d;
    if (std::fabs(dv - expect) > tol) {
      rep.pass = false;
      rep.note = "d1 deviates from sqrt(d^2 + d(x,y)^2) - d";
      rep.witness_x = x;
      rep.witness_y = y;
      rep.value = dv - expect;
      return rep;
    }
    // biconditional at the given radius
    bool in_d1 = dv <= thr + tol;
    bool in_metric = dm <= r + tol;
    if (in_d1 != in_metric && std::fabs(dm - r) > 10.0 * tol) {
      rep.pass = false;
      rep.note = "ball identity biconditional fails";
      rep.witness_x = x;
      rep.witness_y = y;
      rep.value = dv - thr;
      return rep;
    }
  }
  rep.note = "ball identity holds on samples";
  return rep;
}

}  // namespace proxilab
