#include "proxilab/region.hpp"

#include <algorithm>
#include <cmath>

namespace proxilab {

namespace {

double dot(const Point& a, const Point& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

bool lex_less(const Point& a, const Point& b) {
  for (size_t i = 0; i < a.size() && i < b.size(); ++i) {
    if (a[i] < b[i]) return true;
    if (a[i] > b[i]) return false;
  }
  return a.size() < b.size();
}

double polytope_violation(const std::vector<Halfspace>& hs, const Point& x) {
  double worst = -infinity();
  for (const auto& h : hs) {
    double nn = p_norm(h.normal, 2.0);
    worst = std::max(worst, (dot(h.normal, x) - h.offset) / std::max(nn, 1e-300));
  }
  return worst;
}

// Exact exit parameter of the ray x0 + t*dir against the halfspace system;
// +inf when the ray never leaves.
double ray_exit(const std::vector<Halfspace>& hs, const Point& x0, const Point& dir) {
  double t = infinity();
  for (const auto& h : hs) {
    double nd = dot(h.normal, dir);
    if (nd > 1e-14) t = std::min(t, (h.offset - dot(h.normal, x0)) / nd);
  }
  return t;
}

Point quasi_direction(int n, std::uint32_t i) {
  Point dir(n);
  double norm2 = 0.0;
  for (int d = 0; d < n; ++d) {
    double t1 = std::max(van_der_corput(i + 1, d % 2 ? 3 : 2), 1e-12);
    double t2 = van_der_corput(i * 73 + d + 1, 43);
    dir[d] = std::sqrt(-2.0 * std::log(t1)) * std::cos(2.0 * M_PI * t2);
    norm2 += dir[d] * dir[d];
  }
  if (norm2 < 1e-30) dir[0] = 1.0;
  double nn = p_norm(dir, 2.0);
  for (double& v : dir) v /= nn;
  return dir;
}

// Euclidean projection onto an intersection of halfspaces (Dykstra).
Point dykstra_project(const std::vector<Halfspace>& hs, const Point& x,
                      int max_sweeps = 4000, double tol = 1e-13) {
  Point z = x;
  std::vector<Point> corr(hs.size(), Point(x.size(), 0.0));
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double moved = 0.0;
    for (size_t i = 0; i < hs.size(); ++i) {
      Point y = add(z, corr[i]);
      double nn2 = dot(hs[i].normal, hs[i].normal);
      double v = dot(hs[i].normal, y) - hs[i].offset;
      Point zi = y;
      if (v > 0.0) zi = sub(y, scale(hs[i].normal, v / nn2));
      corr[i] = sub(y, zi);
      moved += distance(SpaceModel::euclidean(static_cast<int>(x.size())), z, zi);
      z = zi;
    }
    if (moved < tol) break;
  }
  return z;
}

DistanceWitness project_segment(const Point& x, const Region& A) {
  auto g = [&](double t) {
    return distance(A.space, x, geodesic_point(A.space, A.seg_a, A.seg_b, t));
  };
  // golden-section on the convex profile along the geodesic
  double lo = 0.0, hi = 1.0;
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - gr * (hi - lo), d = lo + gr * (hi - lo);
  double fc = g(c), fd = g(d);
  for (int i = 0; i < 120; ++i) {
    if (fc <= fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - gr * (hi - lo);
      fc = g(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + gr * (hi - lo);
      fd = g(d);
    }
  }
  double tb = 0.5 * (lo + hi);
  double fb = g(tb);
  // endpoints can beat the interior on flat profiles
  double f0 = g(0.0), f1 = g(1.0);
  if (f0 <= fb && f0 <= f1) return {f0, A.seg_a};
  if (f1 < fb) return {f1, A.seg_b};
  return {fb, geodesic_point(A.space, A.seg_a, A.seg_b, tb)};
}

DistanceWitness project_polytope(const Point& x, const Region& A) {
  if (polytope_violation(A.halfspaces, x) <= 0.0) return {0.0, x};
  if (A.space.p == 2.0) {
    Point z = dykstra_project(A.halfspaces, x);
    return {distance(A.space, x, z), z};
  }
  // general p: projected subgradient on ||x-z||_p with Euclidean feasibility
  Point z = dykstra_project(A.halfspaces, x, 600);
  double best = distance(A.space, x, z);
  Point bestz = z;
  double step0 = std::max(best, 1e-6);
  for (int k = 1; k <= 400; ++k) {
    Point diff = sub(z, x);
    double nrm = p_norm(diff, A.space.p);
    if (nrm < 1e-15) break;
    Point gvec(diff.size());
    if (std::isfinite(A.space.p)) {
      for (size_t i = 0; i < diff.size(); ++i) {
        double a = std::fabs(diff[i]) / nrm;
        gvec[i] = std::copysign(std::pow(a, A.space.p - 1.0), diff[i]);
      }
    } else {
      size_t imax = 0;
      for (size_t i = 1; i < diff.size(); ++i)
        if (std::fabs(diff[i]) > std::fabs(diff[imax])) imax = i;
      gvec.assign(diff.size(), 0.0);
      gvec[imax] = std::copysign(1.0, diff[imax]);
    }
    double alpha = step0 / std::sqrt(static_cast<double>(k));
    z = dykstra_project(A.halfspaces, sub(z, scale(gvec, alpha)), 600);
    double v = distance(A.space, x, z);
    if (v < best) {
      best = v;
      bestz = z;
    }
  }
  return {best, bestz};
}

}  // namespace

Region Region::cloud(const SpaceModel& space, std::vector<Point> pts) {
  if (pts.empty()) throw InputError("point cloud must be nonempty");
  for (const auto& p : pts) validate_point(space, p);
  Region r;
  r.kind = Kind::Cloud;
  r.space = space;
  r.points = std::move(pts);
  return r;
}

Region Region::polytope(const SpaceModel& space, std::vector<Halfspace> hs) {
  if (space.kind != SpaceModel::Kind::EuclideanP)
    throw InputError("polytopes are supported in euclidean-p spaces only");
  if (hs.empty()) throw InputError("polytope needs at least one halfspace");
  for (auto& h : hs) {
    if (static_cast<int>(h.normal.size()) != space.dim)
      throw InputError("halfspace normal has wrong dimension");
    if (p_norm(h.normal, 2.0) < 1e-14) throw InputError("halfspace normal is zero");
  }
  Region r;
  r.kind = Kind::Polytope;
  r.space = space;
  r.halfspaces = std::move(hs);

  // feasibility by relaxed projections from the origin
  Point z(space.dim, 0.0);
  for (int it = 0; it < 50000; ++it) {
    double worst = -infinity();
    size_t wi = 0;
    for (size_t i = 0; i < r.halfspaces.size(); ++i) {
      double v = dot(r.halfspaces[i].normal, z) - r.halfspaces[i].offset;
      if (v > worst) {
        worst = v;
        wi = i;
      }
    }
    if (worst <= 1e-12) break;
    const auto& h = r.halfspaces[wi];
    z = sub(z, scale(h.normal, 1.5 * worst / dot(h.normal, h.normal)));
    if (it == 49999) throw InputError("polytope halfspaces are infeasible");
  }
  r.interior = z;

  // boundedness by exact ray exits along sampled directions
  double bound = 0.0;
  int ndirs = std::max(256, 64 * space.dim);
  for (int i = 0; i < ndirs; ++i) {
    double t = ray_exit(r.halfspaces, r.interior, quasi_direction(space.dim, i));
    if (!std::isfinite(t)) throw InputError("polytope is unbounded");
    bound = std::max(bound, t);
  }
  r.bound_radius = bound;
  return r;
}

Region Region::segment(const SpaceModel& space, Point a, Point b) {
  validate_point(space, a);
  validate_point(space, b);
  Region r;
  r.kind = Kind::Segment;
  r.space = space;
  r.seg_a = std::move(a);
  r.seg_b = std::move(b);
  return r;
}

Region Region::ball(const SpaceModel& space, Point center, double radius) {
  validate_point(space, center);
  if (radius < 0.0) throw InputError("ball radius must be >= 0");
  Region r;
  r.kind = Kind::Ball;
  r.space = space;
  r.center = std::move(center);
  r.radius = radius;
  return r;
}

Region translate(const Region& r, const Point& shift) {
  if (!r.space.is_linear())
    throw UnsupportedError("translate is defined in linear spaces only");
  Region out = r;
  switch (r.kind) {
    case Region::Kind::Cloud:
      for (auto& p : out.points) p = add(p, shift);
      break;
    case Region::Kind::Polytope:
      for (auto& h : out.halfspaces) h.offset += dot(h.normal, shift);
      out.interior = add(out.interior, shift);
      break;
    case Region::Kind::Segment:
      out.seg_a = add(out.seg_a, shift);
      out.seg_b = add(out.seg_b, shift);
      break;
    case Region::Kind::Ball:
      out.center = add(out.center, shift);
      break;
  }
  return out;
}

bool region_contains(const Region& r, const Point& x, double tol) {
  switch (r.kind) {
    case Region::Kind::Polytope: {
      validate_point(r.space, x);
      return polytope_violation(r.halfspaces, x) <= tol;
    }
    case Region::Kind::Ball:
      return distance(r.space, x, r.center) <= r.radius + tol;
    default:
      return point_set_distance(x, r).dist <= tol;
  }
}

DistanceWitness point_set_distance(const Point& x, const Region& A) {
  validate_point(A.space, x);
  switch (A.kind) {
    case Region::Kind::Cloud: {
      DistanceWitness best{infinity(), {}};
      for (const auto& p : A.points) {
        double d = distance(A.space, x, p);
        if (d < best.dist - 1e-15 ||
            (std::fabs(d - best.dist) <= 1e-15 && lex_less(p, best.witness)))
          best = {d, p};
      }
      return best;
    }
    case Region::Kind::Segment:
      return project_segment(x, A);
    case Region::Kind::Ball: {
      double dc = distance(A.space, x, A.center);
      if (dc <= A.radius) return {0.0, x};
      Point w = geodesic_point(A.space, A.center, x, A.radius / dc);
      return {distance(A.space, x, w), w};
    }
    case Region::Kind::Polytope:
      return project_polytope(x, A);
  }
  return {0.0, x};
}

ProjectionSet metric_projection(const Point& x, const Region& A, double tol) {
  if (tol <= 0.0) throw InputError("metric_projection needs tol > 0");
  auto best = point_set_distance(x, A);
  ProjectionSet out;
  out.dist = best.dist;

  auto collect = [&](double slack) {
    std::vector<Point> cand;
    switch (A.kind) {
      case Region::Kind::Cloud:
        for (const auto& p : A.points)
          if (distance(A.space, x, p) <= best.dist + slack) cand.push_back(p);
        break;
      case Region::Kind::Segment: {
        const int grid = 2001;
        for (int i = 0; i < grid; ++i) {
          Point p = geodesic_point(A.space, A.seg_a, A.seg_b,
                                   static_cast<double>(i) / (grid - 1));
          if (distance(A.space, x, p) <= best.dist + slack) cand.push_back(p);
        }
        cand.push_back(best.witness);
        break;
      }
      case Region::Kind::Ball:
        cand.push_back(best.witness);
        break;
      case Region::Kind::Polytope: {
        cand.push_back(best.witness);
        // boundary sweep catches flat faces for the non-strictly-convex norms
        for (int i = 0; i < 512; ++i) {
          Point dir = quasi_direction(A.space.dim, i);
          double t = ray_exit(A.halfspaces, A.interior, dir);
          if (std::isfinite(t)) {
            Point p = add(A.interior, scale(dir, t));
            if (distance(A.space, x, p) <= best.dist + slack) cand.push_back(p);
          }
        }
        break;
      }
    }
    return cand;
  };
  auto diam_of = [&](const std::vector<Point>& pts) {
    double d = 0.0;
    for (size_t i = 0; i < pts.size(); ++i)
      for (size_t j = i + 1; j < pts.size(); ++j)
        d = std::max(d, distance(A.space, pts[i], pts[j]));
    return d;
  };

  // dedup at resolution tol
  for (const auto& p : collect(tol)) {
    bool dup = false;
    for (const auto& q : out.points)
      if (distance(A.space, p, q) <= tol) {
        dup = true;
        break;
      }
    if (!dup) out.points.push_back(p);
  }
  std::sort(out.points.begin(), out.points.end(), lex_less);
  double diam = diam_of(out.points);
  // A tol-sublevel set of a smooth distance profile has positive width around a
  // unique minimizer (~ tol^{1/p} under p-th order growth), so the spread alone
  // cannot refute uniqueness. Around a unique minimizer the sublevel width
  // visibly grows with the slack; around a flat set of minimizers it does not.
  double resolution =
      std::max(10.0 * tol, 4.0 * std::sqrt(tol * (out.dist + tol)));
  if (diam <= resolution) {
    out.singleton = true;
  } else {
    double wide_diam = diam_of(collect(100.0 * tol));
    out.singleton = wide_diam >= 2.0 * diam;
  }
  return out;
}

PairDistance set_pair_distance(const Region& A, const Region& B, double tol) {
  if (tol <= 0.0) throw InputError("set_pair_distance needs tol > 0");
  if (A.space.describe() != B.space.describe())
    throw InputError("regions live in different spaces");
  // exhaustive whenever one side is a finite cloud
  if (A.kind == Region::Kind::Cloud || B.kind == Region::Kind::Cloud) {
    const Region& cloud = (A.kind == Region::Kind::Cloud) ? A : B;
    const Region& other = (A.kind == Region::Kind::Cloud) ? B : A;
    PairDistance best;
    best.dist = infinity();
    for (const auto& p : cloud.points) {
      auto dw = point_set_distance(p, other);
      if (dw.dist < best.dist - 1e-15 ||
          (std::fabs(dw.dist - best.dist) <= 1e-15 &&
           lex_less(p, (A.kind == Region::Kind::Cloud) ? best.witness_a : best.witness_b))) {
        best.dist = dw.dist;
        if (A.kind == Region::Kind::Cloud) {
          best.witness_a = p;
          best.witness_b = dw.witness;
        } else {
          best.witness_b = p;
          best.witness_a = dw.witness;
        }
      }
    }
    return best;
  }
  // alternating metric projections
  auto representative = [](const Region& r) -> Point {
    switch (r.kind) {
      case Region::Kind::Segment:
        return midpoint(r.space, r.seg_a, r.seg_b);
      case Region::Kind::Ball:
        return r.center;
      case Region::Kind::Polytope:
        return r.interior;
      default:
        return r.points.front();
    }
  };
  PairDistance out;
  Point a = representative(A);
  Point b;
  const int cap = 100000;
  // the value d(a_n, b_n) is monotone nonincreasing, so a value stall is a
  // legitimate stop even when the witnesses keep jittering at resolution
  double prev_value = infinity();
  int stalled = 0;
  for (out.iterations = 0; out.iterations < cap; ++out.iterations) {
    auto pb = point_set_distance(a, B);
    b = pb.witness;
    auto pa = point_set_distance(b, A);
    double movement = distance(A.space, a, pa.witness);
    a = pa.witness;
    double value = distance(A.space, a, b);
    if (value >= prev_value - 1e-3 * tol) {
      if (++stalled >= 5) movement = 0.0;
    } else {
      stalled = 0;
    }
    prev_value = std::min(prev_value, value);
    if (movement < tol) {
      out.dist = value;
      out.witness_a = a;
      out.witness_b = b;
      out.converged = true;
      return out;
    }
  }
  out.dist = distance(A.space, a, b);
  out.witness_a = a;
  out.witness_b = b;
  out.converged = false;  // convergence-failure report with best value
  return out;
}

double diameter(const Region& A, double tol) {
  switch (A.kind) {
    case Region::Kind::Cloud: {
      double d = 0.0;
      for (size_t i = 0; i < A.points.size(); ++i)
        for (size_t j = i + 1; j < A.points.size(); ++j)
          d = std::max(d, distance(A.space, A.points[i], A.points[j]));
      return d;
    }
    case Region::Kind::Segment:
      return distance(A.space, A.seg_a, A.seg_b);
    case Region::Kind::Ball:
      return 2.0 * A.radius;
    case Region::Kind::Polytope: {
      (void)tol;
      // support sampling over boundary ray exits
      std::vector<Point> bd;
      int ndirs = std::max(512, 128 * A.space.dim);
      for (int i = 0; i < ndirs; ++i) {
        Point dir = quasi_direction(A.space.dim, i);
        double t = ray_exit(A.halfspaces, A.interior, dir);
        if (std::isfinite(t)) bd.push_back(add(A.interior, scale(dir, t)));
      }
      double d = 0.0;
      for (size_t i = 0; i < bd.size(); ++i)
        for (size_t j = i + 1; j < bd.size(); ++j)
          d = std::max(d, distance(A.space, bd[i], bd[j]));
      return d;
    }
  }
  return 0.0;
}

std::vector<Point> sample_region(const Region& r, int n) {
  std::vector<Point> out;
  if (n <= 0) return out;
  Rng rng(0x5eed);
  switch (r.kind) {
    case Region::Kind::Cloud: {
      if (static_cast<int>(r.points.size()) <= n) return r.points;
      for (int i = 0; i < n; ++i)
        out.push_back(r.points[static_cast<size_t>(i) * r.points.size() / n]);
      return out;
    }
    case Region::Kind::Segment: {
      if (n == 1) return {midpoint(r.space, r.seg_a, r.seg_b)};
      for (int i = 0; i < n; ++i)
        out.push_back(geodesic_point(r.space, r.seg_a, r.seg_b,
                                     static_cast<double>(i) / (n - 1)));
      return out;
    }
    case Region::Kind::Ball: {
      for (int i = 0; i < n; ++i)
        out.push_back(sample_ball(r.space, r.center, r.radius, static_cast<std::uint32_t>(i), rng));
      return out;
    }
    case Region::Kind::Polytope: {
      for (int i = 0; i < n; ++i) {
        Point dir = quasi_direction(r.space.dim, static_cast<std::uint32_t>(i));
        double t = ray_exit(r.halfspaces, r.interior, dir);
        double u = van_der_corput(static_cast<std::uint32_t>(i) + 1, 5);
        out.push_back(add(r.interior, scale(dir, t * std::pow(u, 1.0 / r.space.dim))));
      }
      return out;
    }
  }
  return out;
}

}  // namespace proxilab
