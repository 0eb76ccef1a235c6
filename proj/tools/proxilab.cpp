#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "proxilab/scenario.hpp"

namespace fs = std::filesystem;
using proxilab::json;

namespace {

struct CommonFlags {
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  std::optional<int> max_steps;
  std::string out_dir = ".";
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--seed", flags.seed, "override the scenario seed");
  cmd->add_option("--tol", flags.tol, "override the residual tolerance");
  cmd->add_option("--max-steps", flags.max_steps, "override the double-step cap");
  cmd->add_option("--out", flags.out_dir, "output directory for report/trace files");
}

proxilab::Scenario load_with_overrides(const std::string& ref, const CommonFlags& f) {
  proxilab::Scenario sc = proxilab::load_scenario(ref);
  if (f.seed) {
    sc.seed = *f.seed;
    sc.solver.seed = *f.seed;
    sc.props.seed = *f.seed;
  }
  if (f.tol) {
    sc.solver.tol = *f.tol;
    sc.props.tol = *f.tol;
    if (sc.d1) sc.d1->tol = *f.tol;
  }
  if (f.max_steps) sc.solver.max_double_steps = *f.max_steps;
  return sc;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw proxilab::InputError("cannot write " + path.string());
  out << content;
}

int cmd_solve(const std::string& ref, const CommonFlags& flags) {
  proxilab::Scenario sc = load_with_overrides(ref, flags);
  proxilab::RunOutput run = proxilab::run_scenario(sc);

  fs::create_directories(flags.out_dir);
  std::string report = run.report.dump(2) + "\n";
  write_file(fs::path(flags.out_dir) / "report.json", report);
  std::string trace;
  for (const auto& line : run.trace_csv_lines) trace += line + "\n";
  write_file(fs::path(flags.out_dir) / "trace.csv", trace);

  std::cout << report;
  return run.exit_code;
}

int cmd_check(const std::string& ref, const std::string& property,
              const CommonFlags& flags) {
  proxilab::Scenario sc = load_with_overrides(ref, flags);
  proxilab::RunOutput run = proxilab::run_check(sc, property);
  std::string report = run.report.dump(2) + "\n";
  if (flags.out_dir != ".") {
    fs::create_directories(flags.out_dir);
    write_file(fs::path(flags.out_dir) / "report.json", report);
  }
  std::cout << report;
  return run.exit_code;
}

int cmd_gallery(const std::string& action, const std::string& name) {
  if (action == "list") {
    for (const auto& n : proxilab::gallery_names()) std::cout << n << "\n";
    return 0;
  }
  if (action == "describe") {
    proxilab::Scenario sc = proxilab::gallery_scenario(name);
    std::cout << sc.name << "\n" << sc.description << "\n";
    std::cout << "space: " << sc.space.describe() << ", k = " << sc.k << "\n";
    return 0;
  }
  std::cerr << "gallery: unknown action \"" << action << "\" (use list|describe)\n";
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"best proximity points of cyclic contractions in model spaces"};
  app.require_subcommand(1);

  std::string scenario_ref, property, gallery_action, gallery_name;
  CommonFlags solve_flags, check_flags;

  CLI::App* solve = app.add_subcommand("solve", "run the full verification pipeline");
  solve->add_option("scenario", scenario_ref, "scenario file or gallery name")
      ->required();
  add_common(solve, solve_flags);

  CLI::App* check = app.add_subcommand("check", "run a single property check");
  check->add_option("scenario", scenario_ref, "scenario file or gallery name")
      ->required();
  check->add_option("--property", property, "uc|wuc|wwuc|chebyshev|d1")->required();
  add_common(check, check_flags);

  CLI::App* gallery = app.add_subcommand("gallery", "list or describe builtins");
  gallery->add_option("action", gallery_action, "list|describe")->required();
  gallery->add_option("name", gallery_name, "scenario name for describe");

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) return cmd_solve(scenario_ref, solve_flags);
    if (check->parsed()) return cmd_check(scenario_ref, property, check_flags);
    return cmd_gallery(gallery_action, gallery_name);
  } catch (const proxilab::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const proxilab::UnsupportedError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  }
}
