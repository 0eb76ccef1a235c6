#include "proxilab/space.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace proxilab {

SpaceModel SpaceModel::euclidean(int dim, double p) {
  if (dim < 1) throw InputError("euclidean space needs dimension >= 1");
  if (!(p >= 1.0)) throw InputError("p-norm exponent must satisfy p >= 1");
  SpaceModel s;
  s.kind = Kind::EuclideanP;
  s.dim = dim;
  s.p = p;
  return s;
}

SpaceModel SpaceModel::h2() {
  SpaceModel s;
  s.kind = Kind::HyperboloidH2;
  return s;
}

SpaceModel SpaceModel::star_tree(int rays) {
  if (rays < 2) throw InputError("star tree needs at least 2 rays");
  SpaceModel s;
  s.kind = Kind::StarTree;
  s.rays = rays;
  return s;
}

bool SpaceModel::uniquely_geodesic() const {
  if (kind == Kind::EuclideanP) return p > 1.0 && std::isfinite(p);
  return true;
}

bool SpaceModel::is_cat0() const {
  switch (kind) {
    case Kind::EuclideanP:
      return p == 2.0;
    case Kind::HyperboloidH2:
    case Kind::StarTree:
      return true;
  }
  return false;
}

int SpaceModel::point_size() const {
  switch (kind) {
    case Kind::EuclideanP:
      return dim;
    case Kind::HyperboloidH2:
      return 3;
    case Kind::StarTree:
      return 2;
  }
  return 0;
}

std::string SpaceModel::describe() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::EuclideanP:
      os << "euclidean-" << dim << " (p=";
      if (std::isfinite(p))
        os << p;
      else
        os << "inf";
      os << ")";
      break;
    case Kind::HyperboloidH2:
      os << "hyperboloid-h2";
      break;
    case Kind::StarTree:
      os << "star-tree (" << rays << " rays)";
      break;
  }
  return os.str();
}

Point add(const Point& a, const Point& b) {
  Point r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Point sub(const Point& a, const Point& b) {
  Point r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Point scale(const Point& a, double s) {
  Point r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] * s;
  return r;
}

double p_norm(const Point& a, double p) {
  if (!std::isfinite(p)) {
    double m = 0.0;
    for (double v : a) m = std::max(m, std::fabs(v));
    return m;
  }
  if (p == 2.0) {
    double s = 0.0;
    for (double v : a) s += v * v;
    return std::sqrt(s);
  }
  if (p == 1.0) {
    double s = 0.0;
    for (double v : a) s += std::fabs(v);
    return s;
  }
  // scale by the max coordinate to avoid overflow in |v|^p
  double m = 0.0;
  for (double v : a) m = std::max(m, std::fabs(v));
  if (m == 0.0) return 0.0;
  double s = 0.0;
  for (double v : a) s += std::pow(std::fabs(v) / m, p);
  return m * std::pow(s, 1.0 / p);
}

double minkowski(const Point& x, const Point& y) {
  return x[0] * y[0] + x[1] * y[1] - x[2] * y[2];
}

void validate_point(const SpaceModel& space, const Point& x) {
  if (static_cast<int>(x.size()) != space.point_size())
    throw InputError("point has wrong number of coordinates for " + space.describe());
  for (double v : x)
    if (!std::isfinite(v)) throw InputError("point has non-finite coordinate");
  switch (space.kind) {
    case SpaceModel::Kind::EuclideanP:
      break;
    case SpaceModel::Kind::HyperboloidH2: {
      double q = minkowski(x, x);
      if (std::fabs(q + 1.0) > 1e-6 || x[2] <= 0.0)
        throw InputError("point is not on the hyperboloid sheet");
      break;
    }
    case SpaceModel::Kind::StarTree: {
      int ray = static_cast<int>(std::llround(x[0]));
      if (std::fabs(x[0] - ray) > 1e-12 || ray < 0 || ray >= space.rays)
        throw InputError("star-tree ray index out of range");
      if (x[1] < 0.0) throw InputError("star-tree radial coordinate must be >= 0");
      break;
    }
  }
}

double distance(const SpaceModel& space, const Point& x, const Point& y) {
  validate_point(space, x);
  validate_point(space, y);
  switch (space.kind) {
    case SpaceModel::Kind::EuclideanP:
      return p_norm(sub(x, y), space.p);
    case SpaceModel::Kind::HyperboloidH2: {
      double c = -minkowski(x, y);
      if (c < 1.0) c = 1.0;  // numerical guard, cosh(d) >= 1
      return std::acosh(c);
    }
    case SpaceModel::Kind::StarTree: {
      int rx = static_cast<int>(std::llround(x[0]));
      int ry = static_cast<int>(std::llround(y[0]));
      if (rx == ry) return std::fabs(x[1] - y[1]);
      return x[1] + y[1];  // path through the center
    }
  }
  return 0.0;
}

Point h2_exp(const Point& base, const Point& unit_tangent, double s) {
  double ch = std::cosh(s), sh = std::sinh(s);
  Point r(3);
  for (int i = 0; i < 3; ++i) r[i] = ch * base[i] + sh * unit_tangent[i];
  // renormalize onto the sheet
  double q = -minkowski(r, r);
  double f = 1.0 / std::sqrt(q);
  for (int i = 0; i < 3; ++i) r[i] *= f;
  return r;
}

void h2_tangent_basis(const Point& base, Point& e1, Point& e2) {
  // Gram-Schmidt of the coordinate directions against the base point under the
  // Minkowski form (signature ++-).
  auto project_out = [&](Point v, const Point& u, double uu) {
    double c = minkowski(v, u) / uu;
    for (int i = 0; i < 3; ++i) v[i] -= c * u[i];
    return v;
  };
  Point c1 = {1, 0, 0}, c2 = {0, 1, 0};
  e1 = project_out(c1, base, minkowski(base, base));
  double n1 = std::sqrt(minkowski(e1, e1));
  for (int i = 0; i < 3; ++i) e1[i] /= n1;
  e2 = project_out(c2, base, minkowski(base, base));
  e2 = project_out(e2, e1, 1.0);
  double n2 = std::sqrt(minkowski(e2, e2));
  for (int i = 0; i < 3; ++i) e2[i] /= n2;
}

Point geodesic_point(const SpaceModel& space, const Point& x, const Point& y, double t) {
  if (t < 0.0 || t > 1.0) throw InputError("geodesic parameter must lie in [0,1]");
  validate_point(space, x);
  validate_point(space, y);
  switch (space.kind) {
    case SpaceModel::Kind::EuclideanP: {
      // linear segment; the canonical choice also for p in {1, inf}
      return add(scale(x, 1.0 - t), scale(y, t));
    }
    case SpaceModel::Kind::HyperboloidH2: {
      double L = distance(space, x, y);
      if (L < 1e-15) return x;
      double sh = std::sinh(L), ch = std::cosh(L);
      Point u(3);
      for (int i = 0; i < 3; ++i) u[i] = (y[i] - ch * x[i]) / sh;
      return h2_exp(x, u, t * L);
    }
    case SpaceModel::Kind::StarTree: {
      int rx = static_cast<int>(std::llround(x[0]));
      int ry = static_cast<int>(std::llround(y[0]));
      if (rx == ry) {
        return {static_cast<double>(rx), x[1] + t * (y[1] - x[1])};
      }
      // path runs through the center; the center itself belongs to every ray
      double l = x[1] + y[1];
      double pos = t * l;
      if (pos <= x[1]) return {static_cast<double>(rx), x[1] - pos};
      return {static_cast<double>(ry), pos - x[1]};
    }
  }
  return x;
}

Point midpoint(const SpaceModel& space, const Point& x, const Point& y) {
  return geodesic_point(space, x, y, 0.5);
}

Point sample_ball(const SpaceModel& space, const Point& a, double r, std::uint32_t i,
                  Rng& rng) {
  (void)rng;
  switch (space.kind) {
    case SpaceModel::Kind::EuclideanP: {
      // quasi-random direction + radius; rejection-free for p=2, rejection via
      // renormalization otherwise (directions drawn on the p-sphere by scaling)
      auto u = halton_point(i, space.dim + 1);
      Point dir(space.dim);
      double norm2 = 0.0;
      for (int d = 0; d < space.dim; ++d) {
        // Box-Muller on stratified pairs gives an isotropic direction
        double t1 = std::max(u[d], 1e-12);
        double t2 = van_der_corput(i * 131 + d + 1, 31);
        dir[d] = std::sqrt(-2.0 * std::log(t1)) * std::cos(2.0 * M_PI * t2);
        norm2 += dir[d] * dir[d];
      }
      if (norm2 == 0.0) dir[0] = 1.0;
      double pn = p_norm(dir, space.p);
      double rho = r * std::pow(u[space.dim], 1.0 / space.dim);
      return add(a, scale(dir, rho / pn));
    }
    case SpaceModel::Kind::HyperboloidH2: {
      auto u = halton_point(i, 2);
      Point e1, e2;
      h2_tangent_basis(a, e1, e2);
      double th = 2.0 * M_PI * u[0];
      double rho = r * std::sqrt(u[1]);
      Point v(3);
      for (int d = 0; d < 3; ++d) v[d] = std::cos(th) * e1[d] + std::sin(th) * e2[d];
      return h2_exp(a, v, rho);
    }
    case SpaceModel::Kind::StarTree: {
      auto u = halton_point(i, 2);
      double s0 = a[1];
      int ray0 = static_cast<int>(std::llround(a[0]));
      // walk a signed distance in [-r, r] from a; negative walks through the
      // center onto another ray when it reaches it
      double w = (2.0 * u[0] - 1.0) * r;
      if (w >= -s0) return {static_cast<double>(ray0), s0 + w};
      int other = static_cast<int>(u[1] * space.rays) % space.rays;
      if (other == ray0) other = (other + 1) % space.rays;
      return {static_cast<double>(other), -(w + s0)};
    }
  }
  return a;
}

}  // namespace proxilab
