#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "proxilab/pair_geometry.hpp"

using namespace proxilab;
using namespace proxilab::testing;

namespace {

// Hausdorff distance between a cloud region and an explicit point list
double hausdorff_to(const Region& cloud, const std::vector<Point>& expected) {
  double h = 0.0;
  auto exp_cloud = Region::cloud(cloud.space, expected);
  for (const auto& p : cloud.points)
    h = std::max(h, point_set_distance(p, exp_cloud).dist);
  for (const auto& q : expected) h = std::max(h, point_set_distance(q, cloud).dist);
  return h;
}

}  // namespace

TEST_SUITE_BEGIN("pair_geometry");

TEST_CASE("offset strips: cores are the overlapping halves") {
  auto e2 = SpaceModel::euclidean(2, 2.0);
  auto A = Region::segment(e2, {0, 0}, {0, 2});
  auto B = Region::segment(e2, {1, 1}, {1, 3});
  auto core = extract_proximinal_core(A, B, 1e-6);
  CHECK(core.dist_ab == doctest::Approx(1.0).epsilon(1e-6));
  CHECK_FALSE(core.empty_core);
  CHECK(core.sharp);

  // A0 = {0} x [1,2], B0 = {1} x [1,2]
  std::vector<Point> a0_expected, b0_expected;
  for (int i = 0; i <= 200; ++i) {
    double s = 1.0 + static_cast<double>(i) / 200;
    a0_expected.push_back({0.0, s});
    b0_expected.push_back({1.0, s});
  }
  CHECK(hausdorff_to(core.core_a, a0_expected) <= 2e-2);
  CHECK(hausdorff_to(core.core_b, b0_expected) <= 2e-2);
}

TEST_CASE("parallel translation is recovered on the offset strips") {
  auto e2 = SpaceModel::euclidean(2, 2.0);
  auto A = Region::segment(e2, {0, 0}, {0, 2});
  auto B = Region::segment(e2, {1, 1}, {1, 3});
  auto core = extract_proximinal_core(A, B, 1e-6);
  auto h = detect_parallel_translation(core, 1e-2);
  REQUIRE(h.has_value());
  CHECK((*h)[0] == doctest::Approx(1.0).epsilon(1e-3));
  CHECK((*h)[1] == doctest::Approx(0.0).epsilon(1e-2));
  CHECK(core.parallel);
}

TEST_CASE("coincident sets give zero shift") {
  auto e2 = SpaceModel::euclidean(2, 2.0);
  auto cl = Region::cloud(e2, {{0, 0}, {0, 1}, {0, 2}});
  auto core = extract_proximinal_core(cl, cl, 1e-9);
  CHECK(core.dist_ab == doctest::Approx(0.0));
  auto h = detect_parallel_translation(core, 1e-6);
  REQUIRE(h.has_value());
  CHECK(p_norm(*h, 2.0) <= 1e-9);
}

TEST_CASE("non-congruent pairs admit no translation") {
  // max-norm pair whose cores have different lengths: A0 = {0} x [0,1] but
  // B0 = {1} x [0,2], so no translate of A0 can cover B0
  auto einf = SpaceModel::euclidean(2, infinity());
  auto A = Region::segment(einf, {0, 0}, {0, 1});
  auto B = Region::segment(einf, {1, 0}, {1, 3});
  auto core = extract_proximinal_core(A, B, 1e-6);
  CHECK(core.dist_ab == doctest::Approx(1.0).epsilon(1e-6));
  auto h = detect_parallel_translation(core, 1e-3);
  CHECK_FALSE(h.has_value());
  CHECK_FALSE(core.parallel);
}

TEST_CASE("translation detection requires a linear space") {
  auto tr = SpaceModel::star_tree(3);
  auto A = Region::segment(tr, {0, 1.0}, {0, 2.0});
  auto B = Region::segment(tr, {1, 1.0}, {1, 2.0});
  auto core = extract_proximinal_core(A, B, 1e-6);
  CHECK_THROWS_AS(detect_parallel_translation(core, 1e-6), UnsupportedError);
}

TEST_CASE("tree segments: one-point cores at the inner endpoints") {
  auto tr = SpaceModel::star_tree(3);
  auto A = Region::segment(tr, {0, 1.0}, {0, 2.0});
  auto B = Region::segment(tr, {1, 1.0}, {1, 2.0});
  auto core = extract_proximinal_core(A, B, 1e-6);
  CHECK(core.dist_ab == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(diameter(core.core_a, 1e-9) <= 1e-4);
  CHECK(diameter(core.core_b, 1e-9) <= 1e-4);
  CHECK(point_set_distance({0, 1.0}, core.core_a).dist <= 1e-4);
  CHECK(point_set_distance({1, 1.0}, core.core_b).dist <= 1e-4);
}

TEST_CASE("cloud cores agree with exhaustive brute force") {
  auto e2 = SpaceModel::euclidean(2, 2.0);
  Rng rng(31);
  std::vector<Point> pa, pb;
  for (int i = 0; i < 120; ++i) {
    Point p = sample_ball(e2, {0, 0}, 1.0, i, rng);
    pa.push_back({std::round(p[0] * 8) / 8, std::round(p[1] * 8) / 8});
    Point q = sample_ball(e2, {3, 0}, 1.0, i, rng);
    pb.push_back({std::round(q[0] * 8) / 8, std::round(q[1] * 8) / 8});
  }
  auto A = Region::cloud(e2, pa);
  auto B = Region::cloud(e2, pb);
  auto core = extract_proximinal_core(A, B, 1e-9);

  double dist = infinity();
  for (const auto& x : pa)
    for (const auto& y : pb) dist = std::min(dist, oracle_dist(e2, x, y));
  CHECK(core.dist_ab == doctest::Approx(dist).epsilon(1e-14));
  // the cores are exactly the distance-realizing points
  for (const auto& x : pa) {
    double dx = infinity();
    for (const auto& y : pb) dx = std::min(dx, oracle_dist(e2, x, y));
    bool in_core = point_set_distance(x, core.core_a).dist <= 1e-12;
    CHECK(in_core == (dx <= dist + 1e-9));
  }
}

TEST_CASE("parallel cores project onto each other by the shift") {
  auto e2 = SpaceModel::euclidean(2, 2.0);
  auto A = Region::segment(e2, {0, 0}, {0, 2});
  auto B = Region::segment(e2, {1, 1}, {1, 3});
  auto core = extract_proximinal_core(A, B, 1e-6);
  auto h = detect_parallel_translation(core, 1e-2);
  REQUIRE(h.has_value());
  for (const auto& b : sample_region(core.core_b, 20)) {
    auto proj = point_set_distance(b, core.core_a);
    Point shifted = sub(b, *h);
    CHECK(distance(e2, proj.witness, shifted) <= 2e-2);
  }
}

TEST_CASE("Chebyshev verdicts across the three canonical pairs") {
  auto e2 = SpaceModel::euclidean(2, 2.0);
  auto round_pair =
      chebyshev_for_proximinal(vstrip(e2, 0.0), vstrip(e2, 1.0), 1e-9);
  CHECK(round_pair.verdict == ChebyshevReport::Verdict::Pass);
  CHECK(round_pair.probed > 0);

  auto einf = SpaceModel::euclidean(2, infinity());
  auto flat = chebyshev_for_proximinal(vstrip(einf, 0.0), vstrip(einf, 1.0), 1e-9);
  CHECK(flat.verdict == ChebyshevReport::Verdict::Fail);
  REQUIRE(flat.projections.size() == 2);
  // the reported witness genuinely has two separated minimizers
  double d0 = distance(einf, flat.witness, flat.projections[0]);
  double d1 = distance(einf, flat.witness, flat.projections[1]);
  double dist = point_set_distance(flat.witness, vstrip(einf, 0.0)).dist;
  CHECK(std::fabs(d0 - dist) <= 1e-6);
  CHECK(std::fabs(d1 - dist) <= 1e-6);
  CHECK(distance(einf, flat.projections[0], flat.projections[1]) > 1e-3);

  auto single = chebyshev_for_proximinal(Region::cloud(e2, {{0.0, 0.5}}),
                                         vstrip(e2, 1.0), 1e-9);
  CHECK(single.verdict == ChebyshevReport::Verdict::Pass);
}

TEST_SUITE_END();
