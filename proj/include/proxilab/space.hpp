#pragma once

#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "proxilab/rng.hpp"

namespace proxilab {

// Points are flat coordinate tuples whose meaning depends on the space:
//   euclidean-p : n coordinates
//   h2          : (x0, x1, x2) on the hyperboloid x0^2 + x1^2 - x2^2 = -1, x2 > 0
//   star-tree   : (ray index, distance from center >= 0)
using Point = std::vector<double>;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnsupportedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

constexpr double kDefaultTol = 1e-9;

inline double infinity() { return std::numeric_limits<double>::infinity(); }

struct SpaceModel {
  enum class Kind { EuclideanP, HyperboloidH2, StarTree };

  Kind kind = Kind::EuclideanP;
  int dim = 2;        // euclidean only
  double p = 2.0;     // euclidean only, p in [1, inf]
  int rays = 3;       // star-tree only
  double tol = kDefaultTol;

  static SpaceModel euclidean(int dim, double p = 2.0);
  static SpaceModel h2();
  static SpaceModel star_tree(int rays);

  // false exactly for p in {1, inf}; the linear segment is still the canonical
  // geodesic there.
  bool uniquely_geodesic() const;
  bool is_linear() const { return kind == Kind::EuclideanP; }
  // spaces where the CN inequality (and the flat quadrilateral argument) apply
  bool is_cat0() const;

  // number of raw coordinates a point carries
  int point_size() const;

  std::string describe() const;
};

// ---- linear coordinate helpers (euclidean-p points) ----
Point add(const Point& a, const Point& b);
Point sub(const Point& a, const Point& b);
Point scale(const Point& a, double s);
double p_norm(const Point& a, double p);

void validate_point(const SpaceModel& space, const Point& x);

double distance(const SpaceModel& space, const Point& x, const Point& y);
Point geodesic_point(const SpaceModel& space, const Point& x, const Point& y, double t);
Point midpoint(const SpaceModel& space, const Point& x, const Point& y);

// h2 helpers
double minkowski(const Point& x, const Point& y);
// exponential map at base point: tangent v with <v,base>=0, |v|=1, distance s
Point h2_exp(const Point& base, const Point& unit_tangent, double s);
// orthonormal tangent basis at a point of the hyperboloid
void h2_tangent_basis(const Point& base, Point& e1, Point& e2);

// Uniformly sample (quasi-random, deterministic in i) a point of the closed
// ball B(a, r). Used by the modulus estimators and property checkers.
Point sample_ball(const SpaceModel& space, const Point& a, double r, std::uint32_t i,
                  Rng& rng);

}  // namespace proxilab
