#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "proxilab/properties.hpp"

using namespace proxilab;
using namespace proxilab::testing;

namespace {

PropertyConfig quick_cfg() {
  PropertyConfig cfg;
  cfg.anchor_budget = 100;
  cfg.set_budget = 256;
  return cfg;
}

}  // namespace

TEST_SUITE_BEGIN("properties");

TEST_CASE("UC holds on the round strips with a monotone delta table") {
  auto e2 = SpaceModel::euclidean(2, 2.0);
  auto rep = uc_check(vstrip(e2, 0.0), vstrip(e2, 1.0), {0.5, 0.1, 0.01},
                      quick_cfg());
  CHECK(rep.verdict == Verdict::Pass);
  REQUIRE(rep.delta_table.size() == 3);
  for (double d : rep.delta_table) CHECK(d > 0.0);
  // smaller eps needs smaller delta
  CHECK(rep.delta_table[0] >= rep.delta_table[1]);
  CHECK(rep.delta_table[1] >= rep.delta_table[2]);

  // independent re-verification of the certificate: for each (eps, delta)
  // pair, points of A within dist + delta of any anchor stay eps-close
  auto a_pts = sample_region(vstrip(e2, 0.0), 256);
  auto anchors = sample_region(vstrip(e2, 1.0), 100);
  for (size_t gi = 0; gi < rep.eps_grid.size(); ++gi) {
    double eps = rep.eps_grid[gi], delta = rep.delta_table[gi];
    for (const auto& y : anchors) {
      std::vector<Point> close;
      for (const auto& a : a_pts)
        if (oracle_dist(e2, a, y) <= 1.0 + delta) close.push_back(a);
      for (const auto& u : close)
        for (const auto& v : close) CHECK(oracle_dist(e2, u, v) <= eps + 1e-9);
    }
  }
}

TEST_CASE("UC fails on the max-norm strips with a genuine witness") {
  auto einf = SpaceModel::euclidean(2, infinity());
  auto A = vstrip(einf, 0.0);
  auto B = vstrip(einf, 1.0);
  auto rep = uc_check(A, B, {0.5}, quick_cfg());
  CHECK(rep.verdict == Verdict::Fail);
  REQUIRE(rep.witness_points.size() == 2);
  // the two witness points sit in A, are far apart, yet both nearly realize
  // dist(A,B) toward the anchor
  CHECK(point_set_distance(rep.witness_points[0], A).dist <= 1e-6);
  CHECK(point_set_distance(rep.witness_points[1], A).dist <= 1e-6);
  CHECK(oracle_dist(einf, rep.witness_points[0], rep.witness_points[1]) > 0.5);
  for (const auto& w : rep.witness_points)
    CHECK(oracle_dist(einf, w, rep.witness_anchor) <= 1.0 + 1e-3);
}

TEST_CASE("UC is trivial for a singleton approaching set") {
  auto e2 = SpaceModel::euclidean(2, 2.0);
  auto A = Region::cloud(e2, {{0.0, 0.5}});
  auto rep = uc_check(A, vstrip(e2, 1.0), {0.5, 0.1, 0.01}, quick_cfg());
  CHECK(rep.verdict == Verdict::Pass);
}

TEST_CASE("non-uniform diameter limits distinguish round from flat") {
  auto cfg = quick_cfg();
  std::vector<double> eps_seq{1.0, 0.5, 0.1, 0.01, 0.001};

  auto e2 = SpaceModel::euclidean(2, 2.0);
  auto tab = nonuniform_diam_limit(vstrip(e2, 0.0), vstrip(e2, 1.0), {1.0, 0.5},
                                   eps_seq, cfg);
  REQUIRE(tab.diam.size() == eps_seq.size());
  for (size_t i = 1; i < tab.diam.size(); ++i) CHECK(tab.diam[i] <= tab.diam[i - 1]);
  CHECK(tab.diam.back() <= 0.1);  // collapses toward a single nearest point

  auto einf = SpaceModel::euclidean(2, infinity());
  auto flat = nonuniform_diam_limit(vstrip(einf, 0.0), vstrip(einf, 1.0),
                                    {1.0, 0.5}, eps_seq, cfg);
  // the whole strip stays inside every ball: the diameter never decays
  for (double d : flat.diam) CHECK(d == doctest::Approx(1.0).epsilon(0.02));

  // a huge eps admits all of A
  auto wide = nonuniform_diam_limit(vstrip(e2, 0.0), vstrip(e2, 1.0), {1.0, 0.5},
                                    {100.0}, cfg);
  CHECK(wide.diam.front() == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("WUC verdicts on round, flat and singleton pairs") {
  auto cfg = quick_cfg();
  auto e2 = SpaceModel::euclidean(2, 2.0);
  CHECK(wuc_check(vstrip(e2, 0.0), vstrip(e2, 1.0), cfg).verdict == Verdict::Pass);

  auto einf = SpaceModel::euclidean(2, infinity());
  auto rep = wuc_check(vstrip(einf, 0.0), vstrip(einf, 1.0), cfg);
  CHECK(rep.verdict == Verdict::Fail);
  REQUIRE(rep.witness_points.size() >= 2);
  // the witness pair is separated yet shares an anchor realizing dist(A,B)
  CHECK(oracle_dist(einf, rep.witness_points[0], rep.witness_points[1]) >=
        cfg.cluster_gap);
  double worst = std::max(
      oracle_dist(einf, rep.witness_points[0], rep.witness_anchor),
      oracle_dist(einf, rep.witness_points[1], rep.witness_anchor));
  CHECK(worst <= 1.0 + 1e-3);

  auto single = Region::cloud(e2, {{0.0, 0.5}});
  CHECK(wuc_check(single, vstrip(e2, 1.0), cfg).verdict == Verdict::Pass);
}

TEST_CASE("W-WUC: compactness rescues the flat strips") {
  auto cfg = quick_cfg();
  auto einf = SpaceModel::euclidean(2, infinity());
  // WUC fails, but every near-optimal sequence lives in a compact strip, so
  // subsequential convergence still holds
  CHECK(wwuc_check(vstrip(einf, 0.0), vstrip(einf, 1.0), cfg).verdict ==
        Verdict::Pass);
  auto e2 = SpaceModel::euclidean(2, 2.0);
  CHECK(wwuc_check(vstrip(e2, 0.0), vstrip(e2, 1.0), cfg).verdict == Verdict::Pass);
}

TEST_CASE("W-WUC cannot be certified past the escape budget") {
  auto cfg = quick_cfg();
  auto e2 = SpaceModel::euclidean(2, 2.0);
  auto A = Region::segment(e2, {0, 0}, {0, 2.0e5});
  auto B = Region::segment(e2, {1, 0}, {1, 2.0e5});
  CHECK(wwuc_check(A, B, cfg).verdict == Verdict::Inconclusive);
}

TEST_CASE("the implication chain UC => WUC => W-WUC holds on every fixture") {
  auto cfg = quick_cfg();
  auto rank = [](Verdict v) {
    return v == Verdict::Pass ? 2 : v == Verdict::Inconclusive ? 1 : 0;
  };
  auto e2 = SpaceModel::euclidean(2, 2.0);
  auto einf = SpaceModel::euclidean(2, infinity());
  auto e4 = SpaceModel::euclidean(2, 4.0);
  struct PairCase {
    Region a, b;
  };
  std::vector<PairCase> cases = {
      {vstrip(e2, 0.0), vstrip(e2, 1.0)},
      {vstrip(einf, 0.0), vstrip(einf, 1.0)},
      {vstrip(e4, 0.0), vstrip(e4, 1.0)},
      {Region::segment(e2, {0, 0}, {0, 2}), Region::segment(e2, {1, 1}, {1, 3})},
  };
  for (auto& c : cases) {
    auto cfg_c = cfg;
    if (c.a.space.p > 2.0) cfg_c.cluster_gap = 0.05;  // quartic-flat growth
    int uc = rank(uc_check(c.a, c.b, {0.5, 0.05}, cfg_c).verdict);
    int wuc = rank(wuc_check(c.a, c.b, cfg_c).verdict);
    int wwuc = rank(wwuc_check(c.a, c.b, cfg_c).verdict);
    // a stronger property passing forces the weaker ones to pass
    if (uc == 2) CHECK(wuc == 2);
    if (wuc == 2) CHECK(wwuc == 2);
  }
}

TEST_SUITE_END();
