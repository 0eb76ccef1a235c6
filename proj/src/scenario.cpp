#include "proxilab/scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace proxilab {

namespace {

double parse_p(const json& j) {
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (s == "inf" || s == "infinity") return infinity();
    throw InputError("space: p must be a number or \"inf\"");
  }
  return j.get<double>();
}

Point parse_point(const json& j) {
  if (!j.is_array()) throw InputError("point: expected an array of numbers");
  Point p;
  for (const auto& c : j) p.push_back(c.get<double>());
  return p;
}

json dump_point(const Point& p) {
  json a = json::array();
  for (double c : p) a.push_back(c);
  return a;
}

}  // namespace

json point_to_json(const Point& p) { return dump_point(p); }
Point point_from_json(const json& j) { return parse_point(j); }

json space_to_json(const SpaceModel& s) {
  json j;
  switch (s.kind) {
    case SpaceModel::Kind::EuclideanP:
      j["model"] = "euclidean";
      j["dim"] = s.dim;
      if (std::isinf(s.p))
        j["p"] = "inf";
      else
        j["p"] = s.p;
      break;
    case SpaceModel::Kind::HyperboloidH2:
      j["model"] = "h2";
      break;
    case SpaceModel::Kind::StarTree:
      j["model"] = "star_tree";
      j["rays"] = s.rays;
      break;
  }
  return j;
}

SpaceModel space_from_json(const json& j) {
  if (!j.is_object() || !j.contains("model"))
    throw InputError("space: expected an object with a \"model\" field");
  std::string model = j.at("model").get<std::string>();
  if (model == "euclidean")
    return SpaceModel::euclidean(j.at("dim").get<int>(),
                                 j.contains("p") ? parse_p(j.at("p")) : 2.0);
  if (model == "h2") return SpaceModel::h2();
  if (model == "star_tree") return SpaceModel::star_tree(j.at("rays").get<int>());
  throw InputError("space: unknown model \"" + model + "\"");
}

json region_to_json(const Region& r) {
  json j;
  switch (r.kind) {
    case Region::Kind::Cloud: {
      j["kind"] = "cloud";
      json pts = json::array();
      for (const auto& p : r.points) pts.push_back(dump_point(p));
      j["points"] = pts;
      break;
    }
    case Region::Kind::Polytope: {
      j["kind"] = "polytope";
      json hs = json::array();
      for (const auto& h : r.halfspaces)
        hs.push_back(json{{"normal", dump_point(h.normal)}, {"offset", h.offset}});
      j["halfspaces"] = hs;
      break;
    }
    case Region::Kind::Segment:
      j["kind"] = "segment";
      j["a"] = dump_point(r.seg_a);
      j["b"] = dump_point(r.seg_b);
      break;
    case Region::Kind::Ball:
      j["kind"] = "ball";
      j["center"] = dump_point(r.center);
      j["radius"] = r.radius;
      break;
  }
  return j;
}

Region region_from_json(const json& j, const SpaceModel& space) {
  if (!j.is_object() || !j.contains("kind"))
    throw InputError("region: expected an object with a \"kind\" field");
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "cloud") {
    std::vector<Point> pts;
    for (const auto& p : j.at("points")) pts.push_back(parse_point(p));
    return Region::cloud(space, std::move(pts));
  }
  if (kind == "polytope") {
    std::vector<Halfspace> hs;
    for (const auto& h : j.at("halfspaces"))
      hs.push_back({parse_point(h.at("normal")), h.at("offset").get<double>()});
    return Region::polytope(space, std::move(hs));
  }
  if (kind == "segment")
    return Region::segment(space, parse_point(j.at("a")), parse_point(j.at("b")));
  if (kind == "ball")
    return Region::ball(space, parse_point(j.at("center")), j.at("radius").get<double>());
  throw InputError("region: unknown kind \"" + kind + "\"");
}

// ---- map machinery ----

namespace {

// y = M x + c on raw coordinates
struct AffinePiece {
  std::vector<Point> rows;
  Point offset;

  Point operator()(const Point& x) const {
    Point y = offset;
    for (size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != x.size())
        throw InputError("affine map: matrix width does not match the point size");
      for (size_t k = 0; k < x.size(); ++k) y[i] += rows[i][k] * x[k];
    }
    return y;
  }
};

AffinePiece affine_from_json(const json& j) {
  AffinePiece piece;
  for (const auto& row : j.at("matrix")) piece.rows.push_back(parse_point(row));
  piece.offset = parse_point(j.at("offset"));
  if (piece.rows.size() != piece.offset.size())
    throw InputError("affine map: matrix height does not match the offset size");
  return piece;
}

// evaluate the A-branch for points closer to A, the B-branch otherwise
std::function<Point(const Point&)> dispatch_by_side(
    Region A, Region B, std::function<Point(const Point&)> on_a,
    std::function<Point(const Point&)> on_b) {
  return [A = std::move(A), B = std::move(B), on_a = std::move(on_a),
          on_b = std::move(on_b)](const Point& x) {
    double da = point_set_distance(x, A).dist;
    double db = point_set_distance(x, B).dist;
    return da <= db ? on_a(x) : on_b(x);
  };
}

// The built-in closure between two geodesic segments: maps the point at signed
// arclength t from the source midpoint to the point at arclength t/4 from the
// target midpoint. Same-side pairs contract exactly by 1/4; the slack under the
// declared k = 1/2 absorbs the curvature asymmetry of the cross terms.
std::function<Point(const Point&)> segment_contraction_map(const SpaceModel& space,
                                                           const Region& A,
                                                           const Region& B) {
  if (A.kind != Region::Kind::Segment || B.kind != Region::Kind::Segment)
    throw InputError("segment-contraction needs segment regions on both sides");
  auto across = [space](const Region& from, const Region& to, const Point& x) {
    double len_f = distance(space, from.seg_a, from.seg_b);
    double len_t = distance(space, to.seg_a, to.seg_b);
    if (len_t <= 0.0) return midpoint(space, to.seg_a, to.seg_b);
    double s = len_f > 0.0 ? distance(space, from.seg_a, x) / len_f : 0.5;
    double t = 0.5 + 0.25 * (s - 0.5) * len_f / len_t;
    return geodesic_point(space, to.seg_a, to.seg_b, std::clamp(t, 0.0, 1.0));
  };
  return dispatch_by_side(
      A, B, [space, A, B, across](const Point& x) { return across(A, B, x); },
      [space, A, B, across](const Point& x) { return across(B, A, x); });
}

std::function<Point(const Point&)> map_from_json(const json& j, const SpaceModel& space,
                                                 const Region& A, const Region& B) {
  if (!j.is_object()) throw InputError("map: expected an object");
  if (j.contains("builtin")) {
    std::string name = j.at("builtin").get<std::string>();
    if (name == "segment-contraction") return segment_contraction_map(space, A, B);
    throw InputError("map: unknown builtin \"" + name + "\"");
  }
  if (!j.contains("on_A") || !j.contains("on_B"))
    throw InputError("map: expected \"builtin\" or affine pieces \"on_A\"/\"on_B\"");
  AffinePiece fa = affine_from_json(j.at("on_A"));
  AffinePiece fb = affine_from_json(j.at("on_B"));
  return dispatch_by_side(A, B, fa, fb);
}

// generic proximinal partners used by geodesic-mode d1 contexts
std::function<Point(const Point&)> projection_partner(const Region& target) {
  return [target](const Point& x) { return point_set_distance(x, target).witness; };
}

std::optional<SemimetricContext> d1_from_json(const json& j, const SpaceModel& space,
                                              const Region& A, const Region& B,
                                              double tol) {
  if (!j.is_object() || !j.contains("B0"))
    throw InputError("d1: expected an object with \"B0\"");
  Region b0 = region_from_json(j.at("B0"), space);
  double d;
  if (j.contains("d"))
    d = j.at("d").get<double>();
  else
    d = set_pair_distance(A, B, tol).dist;
  if (j.contains("h"))
    return SemimetricContext::make_linear(space, std::move(b0), parse_point(j.at("h")),
                                          d, tol);
  if (j.contains("partner"))
    return SemimetricContext::make_geodesic(space, std::move(b0),
                                            projection_partner(A),
                                            projection_partner(B), d, tol);
  throw InputError("d1: expected \"h\" (linear) or \"partner\" (geodesic)");
}

}  // namespace

CyclicMap Scenario::cyclic_map() const {
  return CyclicMap::make(map_eval, a, b, k, solver.tol);
}

Scenario scenario_from_json(const json& j) try {
  if (!j.is_object()) throw InputError("scenario: expected a JSON object");
  for (const char* field : {"name", "space", "A", "B", "map", "k", "seed"})
    if (!j.contains(field))
      throw InputError(std::string("scenario: missing field \"") + field + "\"");
  Scenario sc;
  sc.name = j.at("name").get<std::string>();
  sc.space = space_from_json(j.at("space"));
  sc.a = region_from_json(j.at("A"), sc.space);
  sc.b = region_from_json(j.at("B"), sc.space);
  sc.k = j.at("k").get<double>();
  if (!(sc.k > 0.0 && sc.k < 1.0)) throw InputError("scenario: k must lie in (0,1)");
  sc.seed = j.at("seed").get<std::uint64_t>();
  sc.solver.seed = sc.seed;
  sc.props.seed = sc.seed;
  if (j.contains("solver")) {
    const json& s = j.at("solver");
    if (s.contains("tol")) sc.solver.tol = s.at("tol").get<double>();
    if (s.contains("max_double_steps"))
      sc.solver.max_double_steps = s.at("max_double_steps").get<int>();
    if (s.contains("sample_budget"))
      sc.solver.sample_budget = s.at("sample_budget").get<int>();
  }
  if (j.contains("properties")) {
    const json& p = j.at("properties");
    if (p.contains("anchor_budget")) sc.props.anchor_budget = p.at("anchor_budget").get<int>();
    if (p.contains("set_budget")) sc.props.set_budget = p.at("set_budget").get<int>();
    if (p.contains("cluster_gap")) sc.props.cluster_gap = p.at("cluster_gap").get<double>();
  }
  sc.props.tol = sc.solver.tol;
  sc.map_eval = map_from_json(j.at("map"), sc.space, sc.a, sc.b);
  if (j.contains("start"))
    sc.start = parse_point(j.at("start"));
  else
    sc.start = sample_region(sc.a, 2).front();
  if (j.contains("probe_starts"))
    for (const auto& p : j.at("probe_starts")) sc.probe_starts.push_back(parse_point(p));
  if (j.contains("uc_eps")) {
    sc.uc_eps.clear();
    for (const auto& e : j.at("uc_eps")) sc.uc_eps.push_back(e.get<double>());
  }
  if (j.contains("d1"))
    sc.d1 = d1_from_json(j.at("d1"), sc.space, sc.a, sc.b, sc.solver.tol);
  if (j.contains("description")) sc.description = j.at("description").get<std::string>();
  return sc;
} catch (const nlohmann::json::exception& e) {
  // missing keys / wrong types inside nested blocks surface as input errors
  throw InputError(std::string("scenario: malformed field: ") + e.what());
}

// ---- gallery ----

std::vector<std::string> gallery_names() {
  return {"euclid-strips", "maxnorm-flat",  "lp4-strips",
          "offset-cores",  "tree-segments", "h2-geodesic-pair"};
}

namespace {

json strips_json(const std::string& name, double p, const json& uc_eps,
                 const std::string& description) {
  json j;
  j["name"] = name;
  j["space"] = {{"model", "euclidean"}, {"dim", 2}, {"p", p}};
  j["A"] = {{"kind", "segment"}, {"a", {0.0, 0.0}}, {"b", {0.0, 1.0}}};
  j["B"] = {{"kind", "segment"}, {"a", {1.0, 0.0}}, {"b", {1.0, 1.0}}};
  j["map"] = {{"on_A", {{"matrix", {{0.0, 0.0}, {0.0, 0.5}}}, {"offset", {1.0, 0.0}}}},
              {"on_B", {{"matrix", {{0.0, 0.0}, {0.0, 0.5}}}, {"offset", {0.0, 0.0}}}}};
  j["k"] = 0.5;
  j["seed"] = 1;
  j["start"] = {0.0, 1.0};
  j["uc_eps"] = uc_eps;
  j["d1"] = {{"B0", {{"kind", "segment"}, {"a", {1.0, 0.0}}, {"b", {1.0, 1.0}}}},
             {"h", {1.0, 0.0}},
             {"d", 1.0}};
  j["description"] = description;
  return j;
}

json gallery_json(const std::string& name) {
  if (name == "euclid-strips")
    return strips_json(
        "euclid-strips", 2.0, json::array({0.5, 0.1, 0.01}),
        "Two parallel vertical unit segments at distance 1 in the Euclidean plane; "
        "the halving map contracts both strips toward the bottom pair. Exercises "
        "solver convergence and rate, uniqueness, the UC delta table, the lifted "
        "d1 contraction, and the flat-quadrilateral identities.");
  if (name == "lp4-strips") {
    json j = strips_json(
        "lp4-strips", 4.0, json::array({0.5, 0.1, 0.05}),
        "The parallel strips measured in the l4 norm: still uniformly convex, but "
        "the modulus is quartically flat, so the UC deltas shrink like eps^4, the "
        "epsilon grid stops at 0.05, and the witness-search separation widens to "
        "keep quartic excesses above the floor.");
    j["properties"] = {{"cluster_gap", 0.05}};
    return j;
  }
  if (name == "maxnorm-flat") {
    json j;
    j["name"] = "maxnorm-flat";
    j["space"] = {{"model", "euclidean"}, {"dim", 2}, {"p", "inf"}};
    j["A"] = {{"kind", "segment"}, {"a", {0.0, 0.0}}, {"b", {1.0, 0.0}}};
    j["B"] = {{"kind", "segment"}, {"a", {0.0, 1.0}}, {"b", {1.0, 1.0}}};
    j["map"] = {
        {"on_A", {{"matrix", {{-1.0, 0.0}, {0.0, 0.0}}}, {"offset", {1.0, 1.0}}}},
        {"on_B", {{"matrix", {{-1.0, 0.0}, {0.0, 0.0}}}, {"offset", {1.0, 0.0}}}}};
    j["k"] = 0.5;
    j["seed"] = 1;
    j["start"] = {0.3, 0.0};
    j["probe_starts"] = {{0.2, 0.0}, {0.8, 0.0}};
    j["uc_eps"] = {0.5, 0.1, 0.01};
    j["d1"] = {{"B0", {{"kind", "segment"}, {"a", {0.0, 1.0}}, {"b", {1.0, 1.0}}}},
               {"h", {0.0, 1.0}},
               {"d", 1.0}};
    j["description"] =
        "Two horizontal unit segments at distance 1 in the max norm with the swap "
        "map x -> (1-x, other strip). The map is a genuine cyclic contraction, yet "
        "every point is a best proximity point: flat spheres make uniqueness, "
        "property UC, the WUC witness search, the Chebyshev condition, and d1 "
        "separation all fail. The expected exit code is 2.";
    return j;
  }
  if (name == "offset-cores") {
    json j;
    j["name"] = "offset-cores";
    j["space"] = {{"model", "euclidean"}, {"dim", 2}, {"p", 2.0}};
    j["A"] = {{"kind", "segment"}, {"a", {0.0, 0.0}}, {"b", {0.0, 2.0}}};
    j["B"] = {{"kind", "segment"}, {"a", {1.0, 1.0}}, {"b", {1.0, 3.0}}};
    double third = 1.0 / 3.0;
    j["map"] = {
        {"on_A", {{"matrix", {{0.0, 0.0}, {0.0, third}}}, {"offset", {1.0, 1.0}}}},
        {"on_B", {{"matrix", {{0.0, 0.0}, {0.0, third}}}, {"offset", {0.0, 1.0}}}}};
    j["k"] = 0.5;
    j["seed"] = 1;
    j["start"] = {0.0, 0.0};
    j["uc_eps"] = {0.5, 0.1, 0.01};
    j["d1"] = {{"B0", {{"kind", "segment"}, {"a", {1.0, 1.0}}, {"b", {1.0, 2.0}}}},
               {"h", {1.0, 0.0}},
               {"d", 1.0}};
    j["description"] =
        "Two offset vertical segments whose proximinal cores are the proper "
        "sub-segments with overlapping heights; demonstrates core extraction, the "
        "parallel shift h, and convergence to the core pair (0,1.5)/(1,1.5).";
    return j;
  }
  if (name == "tree-segments") {
    json j;
    j["name"] = "tree-segments";
    j["space"] = {{"model", "star_tree"}, {"rays", 3}};
    j["A"] = {{"kind", "segment"}, {"a", {0.0, 1.0}}, {"b", {0.0, 2.0}}};
    j["B"] = {{"kind", "segment"}, {"a", {1.0, 1.0}}, {"b", {1.0, 2.0}}};
    j["map"] = {
        {"on_A", {{"matrix", {{0.0, 0.0}, {0.0, 0.5}}}, {"offset", {1.0, 0.5}}}},
        {"on_B", {{"matrix", {{0.0, 0.0}, {0.0, 0.5}}}, {"offset", {0.0, 0.5}}}}};
    j["k"] = 0.5;
    j["seed"] = 1;
    j["start"] = {0.0, 2.0};
    j["uc_eps"] = {0.5, 0.1, 0.01};
    j["d1"] = {{"B0", {{"kind", "cloud"}, {"points", {{1.0, 1.0}}}}},
               {"partner", "builtin:tree-segments"},
               {"d", 2.0}};
    j["description"] =
        "Radial segments [1,2] on two rays of a 3-ray star tree; every distance "
        "between the sets passes through the center, the proximinal core is the "
        "single inner pair, and the flat-quadrilateral relations degenerate: no "
        "distinct core pair exists, and any constructed one breaks the rectangle "
        "identities.";
    return j;
  }
  if (name == "h2-geodesic-pair") {
    double t = 0.25;
    double c1 = std::cosh(1.0), s1 = std::sinh(1.0);
    json j;
    j["name"] = "h2-geodesic-pair";
    j["space"] = {{"model", "h2"}};
    j["A"] = {{"kind", "segment"},
              {"a", {std::sinh(-t), 0.0, std::cosh(t)}},
              {"b", {std::sinh(t), 0.0, std::cosh(t)}}};
    j["B"] = {{"kind", "segment"},
              {"a", {c1 * std::sinh(-t), s1, c1 * std::cosh(t)}},
              {"b", {c1 * std::sinh(t), s1, c1 * std::cosh(t)}}};
    j["map"] = {{"builtin", "segment-contraction"}};
    j["k"] = 0.5;
    j["seed"] = 1;
    j["start"] = {std::sinh(t), 0.0, std::cosh(t)};
    j["uc_eps"] = {0.5, 0.1, 0.01};
    // the symmetric closest pair: A's midpoint and B's chord midpoint
    j["d1"] = {{"B0", {{"kind", "cloud"}, {"points", json::array()}}},
               {"partner", "builtin:h2-geodesic-pair"}};
    j["description"] =
        "Two geodesic segments in the hyperboloid plane, one on the axis and one "
        "a chord of its distance-1 equidistant curve; the segment-contraction map "
        "solves toward the unique symmetric closest pair, exercised with the "
        "geodesic-mode semimetric on the singleton core.";
    return j;
  }
  throw InputError("unknown gallery scenario \"" + name + "\"");
}

}  // namespace

Scenario gallery_scenario(const std::string& name) {
  json j = gallery_json(name);
  if (name == "h2-geodesic-pair") {
    // fill in the numerically-known core midpoint of B
    SpaceModel space = SpaceModel::h2();
    Point ba = parse_point(j["B"]["a"]);
    Point bb = parse_point(j["B"]["b"]);
    j["d1"]["B0"]["points"].push_back(dump_point(midpoint(space, ba, bb)));
  }
  return scenario_from_json(j);
}

Scenario load_scenario(const std::string& path_or_name) {
  for (const auto& name : gallery_names())
    if (name == path_or_name) return gallery_scenario(name);
  std::ifstream in(path_or_name);
  if (!in) throw InputError("cannot open scenario file: " + path_or_name);
  json j;
  try {
    j = json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(path_or_name + ": " + e.what());
  }
  return scenario_from_json(j);
}

// ---- orchestration ----

namespace {

const char* verdict_str(Verdict v) {
  switch (v) {
    case Verdict::Pass:
      return "PASS";
    case Verdict::Fail:
      return "FAIL";
    case Verdict::Inconclusive:
      return "INCONCLUSIVE";
  }
  return "?";
}

const char* verdict_str(bool pass) { return pass ? "PASS" : "FAIL"; }

const char* verdict_str(UniquenessReport::Verdict v) {
  switch (v) {
    case UniquenessReport::Verdict::Pass:
      return "PASS";
    case UniquenessReport::Verdict::Fail:
      return "FAIL";
    case UniquenessReport::Verdict::Inconclusive:
      return "INCONCLUSIVE";
    case UniquenessReport::Verdict::VacuousPass:
      return "VACUOUS-PASS";
  }
  return "?";
}

const char* verdict_str(ChebyshevReport::Verdict v) {
  switch (v) {
    case ChebyshevReport::Verdict::Pass:
      return "PASS";
    case ChebyshevReport::Verdict::Fail:
      return "FAIL";
    case ChebyshevReport::Verdict::VacuousPass:
      return "VACUOUS-PASS";
  }
  return "?";
}

json points_json(const std::vector<Point>& pts) {
  json a = json::array();
  for (const auto& p : pts) a.push_back(dump_point(p));
  return a;
}

json property_json(const PropertyReport& rep) {
  json j;
  j["property"] = rep.property;
  j["verdict"] = verdict_str(rep.verdict);
  if (!rep.eps_grid.empty()) j["eps"] = rep.eps_grid;
  if (!rep.delta_table.empty()) j["delta"] = rep.delta_table;
  if (rep.verdict == Verdict::Fail) {
    j["witness_anchor"] = dump_point(rep.witness_anchor);
    j["witness_points"] = points_json(rep.witness_points);
    j["witness_value"] = rep.witness_value;
  }
  if (!rep.note.empty()) j["note"] = rep.note;
  return j;
}

int exit_from_verdicts(const json& verdicts) {
  bool inconclusive = false;
  for (const auto& [key, value] : verdicts.items()) {
    (void)key;
    std::string v = value.get<std::string>();
    if (v == "FAIL") return 2;
    if (v == "INCONCLUSIVE") inconclusive = true;
  }
  return inconclusive ? 3 : 0;
}

std::string csv_number(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

std::vector<std::string> trace_csv(const SpaceModel& space, const IterationTrace& trace) {
  std::vector<std::string> lines;
  std::ostringstream header;
  header << "step";
  for (int i = 0; i < space.point_size(); ++i) header << ",x" << i;
  header << ",residual";
  lines.push_back(header.str());
  for (size_t n = 0; n < trace.iterates.size(); ++n) {
    std::ostringstream row;
    row << n;
    for (double c : trace.iterates[n]) row << "," << csv_number(c);
    row << "," << csv_number(n < trace.residuals.size() ? trace.residuals[n] : 0.0);
    lines.push_back(row.str());
  }
  return lines;
}

}  // namespace

RunOutput run_scenario(const Scenario& sc) {
  RunOutput out;
  json rep;
  rep["scenario"] = sc.name;
  if (!sc.description.empty()) rep["description"] = sc.description;
  rep["space"] = space_to_json(sc.space);
  rep["seed"] = sc.seed;
  rep["tolerance"] = sc.solver.tol;

  CyclicMap map = sc.cyclic_map();
  rep["dist_ab"] = map.dist_ab;

  json verdicts;
  double tol = sc.solver.tol;

  auto contraction =
      verify_cyclic_contraction(map, sc.solver.sample_budget, sc.seed, tol);
  verdicts["contraction"] = verdict_str(contraction.pass);
  auto suzuki = verify_suzuki_condition(map, sc.solver.sample_budget, sc.seed, tol);
  verdicts["suzuki"] = verdict_str(suzuki.pass);
  rep["contraction"] = {{"worst_slack", contraction.worst_slack},
                        {"suzuki_worst_slack", suzuki.worst_slack}};
  if (!contraction.error.empty()) rep["contraction"]["error"] = contraction.error;

  auto solved = solve_best_proximity(map, sc.start, sc.solver);
  auto rate = rate_estimate(solved.trace);
  verdicts["solver"] = solved.converged
                           ? "PASS"
                           : (solved.trace.termination == "stalled" ? "INCONCLUSIVE"
                                                                    : "FAIL");
  rep["solver"] = {{"start", dump_point(sc.start)},
                   {"limit", dump_point(solved.limit)},
                   {"residual", solved.trace.residuals.empty()
                                    ? 0.0
                                    : solved.trace.residuals.back()},
                   {"double_steps", solved.trace.iterates.size() - 1},
                   {"termination", solved.trace.termination},
                   {"rate", rate.rate},
                   {"rate_degenerate", rate.degenerate}};

  auto uniq = uniqueness_probe(map, 5, sc.solver, sc.probe_starts);
  verdicts["uniqueness"] = verdict_str(uniq.verdict);
  rep["uniqueness"] = {{"spread", uniq.spread},
                       {"starts", uniq.starts.size()},
                       {"limits", points_json(uniq.limits)}};

  auto uc = uc_check(sc.a, sc.b, sc.uc_eps, sc.props);
  verdicts["uc"] = verdict_str(uc.verdict);
  rep["uc"] = property_json(uc);
  auto wuc = wuc_check(sc.a, sc.b, sc.props);
  verdicts["wuc"] = verdict_str(wuc.verdict);
  rep["wuc"] = property_json(wuc);
  auto wwuc = wwuc_check(sc.a, sc.b, sc.props);
  verdicts["wwuc"] = verdict_str(wwuc.verdict);
  rep["wwuc"] = property_json(wwuc);

  auto cheb = chebyshev_for_proximinal(sc.a, sc.b, tol);
  verdicts["chebyshev"] = verdict_str(cheb.verdict);
  rep["chebyshev"] = {{"verdict", verdict_str(cheb.verdict)}, {"probed", cheb.probed}};
  if (cheb.verdict == ChebyshevReport::Verdict::Fail) {
    rep["chebyshev"]["witness"] = dump_point(cheb.witness);
    rep["chebyshev"]["projections"] = points_json(cheb.projections);
  }

  if (sc.d1) {
    const SemimetricContext& ctx = *sc.d1;
    json d1;
    d1["mode"] = ctx.linear ? "linear" : "geodesic";
    d1["d"] = ctx.d;
    auto axioms = verify_semimetric_axioms(ctx, 1000, sc.seed);
    verdicts["d1_axioms"] = verdict_str(axioms.pass);
    if (!axioms.note.empty()) d1["axioms_note"] = axioms.note;
    auto domination = verify_domination(ctx, 1000, sc.seed);
    verdicts["d1_domination"] = verdict_str(domination.pass);
    try {
      auto lifted = lift_map(map, ctx);
      auto contraction_d1 =
          verify_d1_contraction(lifted, ctx, sc.k, 1000, sc.seed, tol);
      verdicts["d1_contraction"] = verdict_str(contraction_d1.pass);
      d1["worst_ratio"] = contraction_d1.worst_ratio;

      Point b_start = sample_region(ctx.b0, 2).front();
      auto picard = semimetric_picard(lifted, ctx, b_start, sc.solver);
      auto direct = solve_best_proximity(map, b_start, sc.solver);
      double agreement = distance(sc.space, picard.limit, direct.limit);
      // floor 1e-7: near-zero distances in h2 carry ~sqrt(eps) rounding noise
      bool agree = picard.converged && direct.converged &&
                   agreement <= std::max(1e-7, 10.0 * tol);
      verdicts["d1_picard"] = verdict_str(agree);
      d1["picard_limit"] = dump_point(picard.limit);
      d1["direct_limit"] = dump_point(direct.limit);
      d1["agreement"] = agreement;
    } catch (const InputError& e) {
      verdicts["d1_contraction"] = "FAIL";
      verdicts["d1_picard"] = "FAIL";
      d1["lift_error"] = e.what();
    }
    rep["d1"] = d1;

    if (sc.space.is_cat0()) {
      json cat0;
      auto b0_samples = sample_region(ctx.b0, 64);
      const Point& x = b0_samples.front();
      auto ball = cat0_ball_identity_check(ctx, x, 0.5, 1000, sc.seed, 10.0 * tol);
      verdicts["cat0_ball_identity"] = verdict_str(ball.pass);
      cat0["ball_identity_note"] = ball.note;
      const Point* y = nullptr;
      for (const auto& cand : b0_samples)
        if (distance(sc.space, x, cand) > 100.0 * tol) {
          y = &cand;
          break;
        }
      if (y) {
        auto quad = flat_quadrilateral_check(sc.space, x, *y, ctx, 10.0 * tol);
        verdicts["flat_quadrilateral"] = verdict_str(quad.pass);
        cat0["flat_quadrilateral_note"] = quad.note;
      } else {
        verdicts["flat_quadrilateral"] = "DEGENERATE";
        cat0["flat_quadrilateral_note"] =
            "the core is a single point; no distinct pair exists";
      }
      rep["cat0"] = cat0;
    } else {
      verdicts["cat0_ball_identity"] = "SKIPPED";
      verdicts["flat_quadrilateral"] = "SKIPPED";
    }
  }

  rep["verdicts"] = verdicts;
  out.exit_code = exit_from_verdicts(verdicts);
  rep["exit_code"] = out.exit_code;
  out.report = std::move(rep);
  out.trace_csv_lines = trace_csv(sc.space, solved.trace);
  return out;
}

RunOutput run_check(const Scenario& sc, const std::string& property) {
  RunOutput out;
  json rep;
  rep["scenario"] = sc.name;
  rep["property"] = property;
  rep["seed"] = sc.seed;
  json verdicts;

  if (property == "uc") {
    auto r = uc_check(sc.a, sc.b, sc.uc_eps, sc.props);
    verdicts["uc"] = verdict_str(r.verdict);
    rep["uc"] = property_json(r);
  } else if (property == "wuc") {
    auto r = wuc_check(sc.a, sc.b, sc.props);
    verdicts["wuc"] = verdict_str(r.verdict);
    rep["wuc"] = property_json(r);
  } else if (property == "wwuc") {
    auto r = wwuc_check(sc.a, sc.b, sc.props);
    verdicts["wwuc"] = verdict_str(r.verdict);
    rep["wwuc"] = property_json(r);
  } else if (property == "chebyshev") {
    auto r = chebyshev_for_proximinal(sc.a, sc.b, sc.solver.tol);
    verdicts["chebyshev"] = verdict_str(r.verdict);
    rep["chebyshev"] = {{"verdict", verdict_str(r.verdict)}, {"probed", r.probed}};
    if (r.verdict == ChebyshevReport::Verdict::Fail) {
      rep["chebyshev"]["witness"] = dump_point(r.witness);
      rep["chebyshev"]["projections"] = points_json(r.projections);
    }
  } else if (property == "d1") {
    if (!sc.d1) throw InputError("scenario has no d1 context");
    const SemimetricContext& ctx = *sc.d1;
    auto axioms = verify_semimetric_axioms(ctx, 1000, sc.seed);
    verdicts["d1_axioms"] = verdict_str(axioms.pass);
    auto domination = verify_domination(ctx, 1000, sc.seed);
    verdicts["d1_domination"] = verdict_str(domination.pass);
    CyclicMap map = sc.cyclic_map();
    try {
      auto lifted = lift_map(map, ctx);
      auto c = verify_d1_contraction(lifted, ctx, sc.k, 1000, sc.seed, sc.solver.tol);
      verdicts["d1_contraction"] = verdict_str(c.pass);
      rep["worst_ratio"] = c.worst_ratio;
    } catch (const InputError& e) {
      verdicts["d1_contraction"] = "FAIL";
      rep["lift_error"] = e.what();
    }
  } else {
    throw InputError("unknown property \"" + property +
                     "\" (expected uc|wuc|wwuc|chebyshev|d1)");
  }

  rep["verdicts"] = verdicts;
  out.exit_code = exit_from_verdicts(verdicts);
  rep["exit_code"] = out.exit_code;
  out.report = std::move(rep);
  return out;
}

}  // namespace proxilab
