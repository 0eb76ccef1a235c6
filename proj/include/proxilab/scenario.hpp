#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "proxilab/cyclic.hpp"
#include "proxilab/pair_geometry.hpp"
#include "proxilab/properties.hpp"
#include "proxilab/semimetric.hpp"

namespace proxilab {

using json = nlohmann::ordered_json;

// ---- JSON (de)serialization of the wire formats ----
json space_to_json(const SpaceModel& s);
SpaceModel space_from_json(const json& j);
json region_to_json(const Region& r);
Region region_from_json(const json& j, const SpaceModel& space);
json point_to_json(const Point& p);
Point point_from_json(const json& j);

// A fully resolved scenario: regions, evaluable map, configs and (optionally)
// the d1 context of its proximinal pair.
struct Scenario {
  std::string name;
  SpaceModel space;
  Region a, b;
  std::function<Point(const Point&)> map_eval;
  double k = 0.5;
  std::uint64_t seed = 1;
  SolverConfig solver;
  PropertyConfig props;
  Point start;
  std::vector<double> uc_eps = {0.5, 0.1, 0.01};
  std::vector<Point> probe_starts;  // optional explicit uniqueness starts
  std::optional<SemimetricContext> d1;
  std::string description;

  CyclicMap cyclic_map() const;
};

Scenario scenario_from_json(const json& j);
Scenario load_scenario(const std::string& path_or_name);

std::vector<std::string> gallery_names();
Scenario gallery_scenario(const std::string& name);

struct RunOutput {
  json report;
  std::vector<std::string> trace_csv_lines;  // header + rows
  int exit_code = 0;  // 0 all PASS, 2 some FAIL, 3 some INCONCLUSIVE
};

// Full pipeline: contraction checks, solve, properties, chebyshev, d1 suite
// and CAT(0) checks where applicable.
RunOutput run_scenario(const Scenario& sc);

// Single property: "uc" | "wuc" | "wwuc" | "chebyshev" | "d1".
RunOutput run_check(const Scenario& sc, const std::string& property);

}  // namespace proxilab
