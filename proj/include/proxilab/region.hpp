#pragma once

#include <vector>

#include "proxilab/space.hpp"

namespace proxilab {

// normal . x <= offset
struct Halfspace {
  Point normal;
  double offset = 0.0;
};

// Set representation in a model space. Polytopes are restricted to euclidean-p
// spaces; segments are geodesic segments of the ambient space.
struct Region {
  enum class Kind { Cloud, Polytope, Segment, Ball };

  Kind kind = Kind::Cloud;
  SpaceModel space;

  std::vector<Point> points;          // cloud
  std::vector<Halfspace> halfspaces;  // polytope
  Point interior;                     // polytope: cached feasible point
  double bound_radius = 0.0;          // polytope: radius of validity around interior
  Point seg_a, seg_b;                 // segment
  Point center;                       // ball
  double radius = 0.0;                // ball
  bool approximate = false;           // set for sampled core reconstructions

  static Region cloud(const SpaceModel& space, std::vector<Point> pts);
  static Region polytope(const SpaceModel& space, std::vector<Halfspace> hs);
  static Region segment(const SpaceModel& space, Point a, Point b);
  static Region ball(const SpaceModel& space, Point center, double radius);
};

// Linear spaces only.
Region translate(const Region& r, const Point& shift);

bool region_contains(const Region& r, const Point& x, double tol);

struct DistanceWitness {
  double dist = 0.0;
  Point witness;
};

// dist(x, A) with a minimizing witness; witness ties broken toward the
// lexicographically smallest coordinate tuple where the minimizer is discrete.
DistanceWitness point_set_distance(const Point& x, const Region& A);

struct ProjectionSet {
  std::vector<Point> points;
  double dist = 0.0;
  bool singleton = true;  // diameter of the minimizer set <= 10 * tol
};

ProjectionSet metric_projection(const Point& x, const Region& A, double tol);

struct PairDistance {
  double dist = 0.0;
  Point witness_a, witness_b;
  bool converged = true;
  int iterations = 0;
};

// Exhaustive for cloud pairs, alternating metric projections otherwise
// (iteration cap 1e5, movement tolerance tol).
PairDistance set_pair_distance(const Region& A, const Region& B, double tol);

double diameter(const Region& A, double tol);

// Deterministic stratified sample of (up to) n points of the region.
std::vector<Point> sample_region(const Region& r, int n);

}  // namespace proxilab
