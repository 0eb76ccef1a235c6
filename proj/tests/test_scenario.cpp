#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "helpers.hpp"
#include "proxilab/scenario.hpp"

using namespace proxilab;
using namespace proxilab::testing;

TEST_SUITE_BEGIN("scenario");

TEST_CASE("space wire format round-trips") {
  for (auto sp : {SpaceModel::euclidean(3, 1.5), SpaceModel::euclidean(2, infinity()),
                  SpaceModel::h2(), SpaceModel::star_tree(4)}) {
    auto back = space_from_json(space_to_json(sp));
    CHECK(back.kind == sp.kind);
    CHECK(back.dim == sp.dim);
    CHECK(back.rays == sp.rays);
    if (sp.is_linear()) {
      if (std::isinf(sp.p))
        CHECK(std::isinf(back.p));
      else
        CHECK(back.p == doctest::Approx(sp.p));
    }
  }
  CHECK(std::isinf(space_from_json({{"model", "euclidean"}, {"dim", 2}, {"p", "inf"}}).p));
}

TEST_CASE("region wire format round-trips") {
  auto e2 = SpaceModel::euclidean(2, 2.0);
  for (auto r : {Region::segment(e2, {0, 0}, {0, 1}),
                 Region::cloud(e2, {{0, 0}, {1, 2}}),
                 Region::ball(e2, {1, 1}, 0.5)}) {
    auto back = region_from_json(region_to_json(r), e2);
    CHECK(back.kind == r.kind);
    auto s1 = sample_region(r, 16);
    auto s2 = sample_region(back, 16);
    REQUIRE(s1.size() == s2.size());
    for (size_t i = 0; i < s1.size(); ++i)
      CHECK(distance(e2, s1[i], s2[i]) == doctest::Approx(0.0));
  }
}

TEST_CASE("malformed scenarios are rejected as input errors") {
  json base = {
      {"name", "t"},
      {"space", {{"model", "euclidean"}, {"dim", 2}, {"p", 2.0}}},
      {"A", {{"kind", "segment"}, {"a", {0.0, 0.0}}, {"b", {0.0, 1.0}}}},
      {"B", {{"kind", "segment"}, {"a", {1.0, 0.0}}, {"b", {1.0, 1.0}}}},
      {"map",
       {{"on_A", {{"matrix", {{0.0, 0.0}, {0.0, 0.5}}}, {"offset", {1.0, 0.0}}}},
        {"on_B", {{"matrix", {{0.0, 0.0}, {0.0, 0.5}}}, {"offset", {0.0, 0.0}}}}}},
      {"k", 0.5},
      {"seed", 1}};
  CHECK_NOTHROW(scenario_from_json(base));

  auto no_map = base;
  no_map.erase("map");
  CHECK_THROWS_AS(scenario_from_json(no_map), InputError);

  auto bad_k = base;
  bad_k["k"] = 1.5;
  CHECK_THROWS_AS(scenario_from_json(bad_k), InputError);

  auto bad_region = base;
  bad_region["A"] = {{"kind", "segment"}, {"a", {0.0, 0.0}}};
  CHECK_THROWS_AS(scenario_from_json(bad_region), InputError);

  CHECK_THROWS_AS(load_scenario("/nonexistent/path.json"), InputError);
  // unparseable file
  std::string path = "/tmp/proxilab_bad_scenario.json";
  std::ofstream(path) << "{ not json";
  CHECK_THROWS_AS(load_scenario(path), InputError);
  std::remove(path.c_str());
}

TEST_CASE("an affine scenario runs end to end from JSON") {
  json j = {
      {"name", "json-strips"},
      {"space", {{"model", "euclidean"}, {"dim", 2}, {"p", 2.0}}},
      {"A", {{"kind", "segment"}, {"a", {0.0, 0.0}}, {"b", {0.0, 1.0}}}},
      {"B", {{"kind", "segment"}, {"a", {1.0, 0.0}}, {"b", {1.0, 1.0}}}},
      {"map",
       {{"on_A", {{"matrix", {{0.0, 0.0}, {0.0, 0.5}}}, {"offset", {1.0, 0.0}}}},
        {"on_B", {{"matrix", {{0.0, 0.0}, {0.0, 0.5}}}, {"offset", {0.0, 0.0}}}}}},
      {"k", 0.5},
      {"seed", 1},
      {"start", {0.0, 1.0}}};
  auto sc = scenario_from_json(j);
  auto out = run_scenario(sc);
  CHECK(out.exit_code == 0);
  auto limit = out.report["solver"]["limit"].get<std::vector<double>>();
  CHECK(std::fabs(limit[0]) <= 1e-9);
  CHECK(std::fabs(limit[1]) <= 1e-9);
}

TEST_CASE("the gallery lists its six scenarios and all of them load") {
  auto names = gallery_names();
  REQUIRE(names.size() == 6);
  std::vector<std::string> expected = {"euclid-strips",  "maxnorm-flat",
                                       "lp4-strips",     "offset-cores",
                                       "tree-segments",  "h2-geodesic-pair"};
  for (const auto& n : expected)
    CHECK(std::find(names.begin(), names.end(), n) != names.end());
  for (const auto& n : names) {
    auto sc = gallery_scenario(n);
    CHECK(sc.name == n);
    CHECK_FALSE(sc.description.empty());
  }
  CHECK_THROWS_AS(gallery_scenario("no-such-scenario"), InputError);
}

TEST_CASE("euclid-strips: every verdict passes and the trace is well formed") {
  auto out = run_scenario(load_scenario("euclid-strips"));
  CHECK(out.exit_code == 0);
  for (const auto& [key, v] : out.report["verdicts"].items()) {
    INFO(key);
    CHECK((v == "PASS" || v == "SKIPPED"));
  }
  REQUIRE(out.trace_csv_lines.size() >= 2);
  CHECK(out.trace_csv_lines.front().rfind("step,", 0) == 0);
}

TEST_CASE("maxnorm-flat: exactly the geometric verdicts fail") {
  auto out = run_scenario(load_scenario("maxnorm-flat"));
  CHECK(out.exit_code == 2);
  std::vector<std::string> failed;
  for (const auto& [key, v] : out.report["verdicts"].items())
    if (v == "FAIL") failed.push_back(key);
  std::vector<std::string> expected = {"uniqueness", "uc", "wuc", "chebyshev",
                                       "d1_axioms"};
  std::sort(failed.begin(), failed.end());
  std::sort(expected.begin(), expected.end());
  CHECK(failed == expected);
  // the contraction itself is intact: the degeneracy is geometric
  CHECK(out.report["verdicts"]["contraction"] == "PASS");
  CHECK(out.report["verdicts"]["wwuc"] == "PASS");
}

TEST_CASE("remaining gallery scenarios pass end to end") {
  for (const char* name : {"lp4-strips", "offset-cores", "tree-segments",
                           "h2-geodesic-pair"}) {
    INFO(name);
    auto out = run_scenario(load_scenario(name));
    CHECK(out.exit_code == 0);
  }
}

TEST_CASE("reports are byte-identical across repeated runs") {
  for (const char* name : {"euclid-strips", "tree-segments"}) {
    auto sc = load_scenario(name);
    auto r1 = run_scenario(sc);
    auto r2 = run_scenario(sc);
    CHECK(r1.report.dump(2) == r2.report.dump(2));
    CHECK(r1.trace_csv_lines == r2.trace_csv_lines);
  }
}

TEST_CASE("single-property checks mirror the full run") {
  auto sc = load_scenario("euclid-strips");
  auto uc = run_check(sc, "uc");
  CHECK(uc.exit_code == 0);
  CHECK(uc.report["uc"]["verdict"] == "PASS");

  auto flat = load_scenario("maxnorm-flat");
  auto wuc = run_check(flat, "wuc");
  CHECK(wuc.exit_code == 2);
  CHECK(wuc.report["wuc"]["verdict"] == "FAIL");
  CHECK_THROWS_AS(run_check(sc, "no-such-property"), InputError);
}

TEST_SUITE_END();
