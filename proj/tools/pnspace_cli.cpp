// Copyright 2026 The pnspace Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// pnspace: batch verdicts for probabilistic normed spaces.
//
// Exit codes: 0 verdicts produced (passing or not), 2 configuration error,
// 3 precondition not met, 1 anything else.

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pnspace/pnspace.hpp"

namespace fs = std::filesystem;
using pnspace::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitPrecondition = 3;

struct Options {
  std::string command;
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out = "pnspace-out";
  std::optional<std::size_t> n_max;
  std::optional<double> tol;
  bool plot = false;
};

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

class Csv {
 public:
  explicit Csv(std::vector<std::string> header) : header_(std::move(header)) {}
  void row(const std::vector<double>& values) { rows_.push_back(values); }
  void write(const fs::path& path) const {
    std::ofstream os(path, std::ios::binary);
    for (std::size_t i = 0; i < header_.size(); ++i)
      os << (i ? "," : "") << header_[i];
    os << '\n';
    for (const auto& r : rows_) {
      for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << g17(r[i]);
      os << '\n';
    }
  }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<double>> rows_;
};

json load_config(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw pnspace::ConfigError("cannot read config '" + path + "'");
  try {
    json j = json::parse(is);
    if (!j.is_object()) throw pnspace::ConfigError("config: top level must be an object");
    return j;
  } catch (const json::parse_error& e) {
    throw pnspace::ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

/// Shared state of one run.
struct Run {
  Options opt;
  json config;
  pnspace::SamplePlan plan;
  json result;
  std::vector<std::pair<std::string, Csv>> plots;

  pnspace::PNSpace space() const {
    return pnspace::space_from_json(pnspace::detail::req(config, "space", "config"),
                                    "config.space");
  }
  void add_plot(const std::string& name, Csv csv) {
    if (opt.plot) plots.emplace_back(name, std::move(csv));
  }
};

void trajectory_plot(Run& run, const std::string& name, const pnspace::Verdict& v) {
  Csv csv({"n", "d_S"});
  for (const auto& [n, d] : v.trajectory) csv.row({n, d});
  run.add_plot(name, std::move(csv));
}

void cmd_axioms(Run& run) {
  const auto space = run.space();
  const auto ax = pnspace::check_axioms(space, run.plan);
  json r;
  r["space"] = space.describe();
  r["axioms"] = pnspace::to_json(ax);
  r["serstnev"] = pnspace::to_json(pnspace::check_serstnev(space, run.plan));
  r["characteristic"] = pnspace::to_json(pnspace::is_characteristic(space, run.plan));
  run.result = std::move(r);
  const auto pts = pnspace::sample_vectors(space.carrier().dim, 3, run.plan.seed);
  Csv csv({"x", "nu_p1", "nu_p2", "nu_p3"});
  for (double x : pnspace::detail::logspace(1e-3, 1e3, 121))
    csv.row({x, space.nu(pts[0]).eval(x), space.nu(pts[1]).eval(x), space.nu(pts[2]).eval(x)});
  run.add_plot("nu_profiles.csv", std::move(csv));
}

void cmd_tv(Run& run) {
  const auto space = run.space();
  const auto v = pnspace::tv_continuity_check(space, run.plan);
  json r;
  r["space"] = space.describe();
  r["tv"] = pnspace::to_json(v);
  run.result = std::move(r);
  trajectory_plot(run, "tv_trajectory.csv", v);
}

std::vector<pnspace::SetSpec> load_sets(const Run& run, const pnspace::PNSpace& space) {
  const json& sets = pnspace::detail::req(run.config, "sets", "config");
  if (!sets.is_array() || sets.empty())
    throw pnspace::ConfigError("config.sets: expected a nonempty array");
  std::vector<pnspace::SetSpec> out;
  for (std::size_t i = 0; i < sets.size(); ++i)
    out.push_back(pnspace::set_from_json(sets[i], space, pnspace::detail::concat("config.sets[", i, "]")));
  return out;
}

void cmd_bounded(Run& run) {
  const auto space = run.space();
  const auto sets = load_sets(run, space);
  const std::string mode = run.config.contains("bounded_mode")
                               ? pnspace::detail::get_string(run.config["bounded_mode"], "config.bounded_mode")
                               : "harness";
  pnspace::BoundednessReport rep;
  if (mode == "harness") {
    rep = pnspace::boundedness_equivalence_harness(space, sets, run.plan);
  } else if (mode == "verdicts") {
    for (const auto& A : sets)
      rep.entries.push_back({A.label, pnspace::is_d_bounded(space, A),
                             pnspace::is_topologically_bounded(space, A, run.plan)});
  } else {
    throw pnspace::ConfigError("config.bounded_mode: expected 'harness' or 'verdicts'");
  }
  json r;
  r["space"] = space.describe();
  r["mode"] = mode;
  r["bounded"] = pnspace::to_json(rep);
  run.result = std::move(r);
  std::vector<std::string> header{"x"};
  for (std::size_t i = 0; i < sets.size(); ++i) header.push_back(pnspace::detail::concat("R_set", i));
  Csv csv(header);
  for (double x : pnspace::detail::logspace(1e-3, 1e3, 61)) {
    std::vector<double> row{x};
    for (const auto& A : sets) row.push_back(pnspace::prob_radius(space, A, x));
    csv.row(row);
  }
  run.add_plot("radius_profiles.csv", std::move(csv));
  for (std::size_t i = 0; i < rep.entries.size(); ++i)
    trajectory_plot(run, pnspace::detail::concat("bounded_trajectory_set", i, ".csv"),
                    rep.entries[i].topologically_bounded);
}

void cmd_normability(Run& run) {
  const auto space = run.space();
  std::vector<double> grid = pnspace::default_t_grid();
  if (run.config.contains("t_grid"))
    grid = pnspace::detail::get_numbers(run.config["t_grid"], "config.t_grid");
  for (double t : grid)
    if (!(t > 0.0 && t < 1.0)) throw pnspace::ConfigError("config.t_grid: values must lie in (0, 1)");
  const auto cert = pnspace::kolmogorov_certificate(space, grid, run.plan);
  json r;
  r["space"] = space.describe();
  r["certificate"] = pnspace::to_json(cert);
  run.result = std::move(r);
}

void cmd_convolve(Run& run) {
  const json& c = pnspace::detail::req(run.config, "convolve", "config");
  const auto tau = pnspace::triangle_from_string(
      pnspace::detail::get_string(pnspace::detail::req(c, "tau", "config.convolve"), "config.convolve.tau"),
      "config.convolve.tau");
  const auto F = pnspace::distfn_from_json(pnspace::detail::req(c, "F", "config.convolve"), "config.convolve.F");
  const auto G = pnspace::distfn_from_json(pnspace::detail::req(c, "G", "config.convolve"), "config.convolve.G");
  const auto xs = c.contains("x") ? pnspace::detail::get_numbers(c["x"], "config.convolve.x")
                                  : pnspace::detail::linspace(0.25, 5.0, 20);
  json table = json::array();
  Csv csv({"x", "F", "G", "tau"});
  for (double x : xs) {
    if (!(x > 0.0)) throw pnspace::ConfigError("config.convolve.x: values must be > 0");
    const double v = tau(F, G, x);
    table.push_back(json::array({pnspace::detail::num(x), pnspace::detail::num(v)}));
    csv.row({x, F.eval(x), G.eval(x), v});
  }
  json r;
  r["tau"] = tau.name();
  r["F"] = pnspace::to_json(F);
  r["G"] = pnspace::to_json(G);
  r["values"] = std::move(table);
  run.result = std::move(r);
  run.add_plot("convolution.csv", std::move(csv));
}

void cmd_distance(Run& run) {
  const json& c = pnspace::detail::req(run.config, "distance", "config");
  const auto F = pnspace::distfn_from_json(pnspace::detail::req(c, "F", "config.distance"), "config.distance.F");
  const auto G = pnspace::distfn_from_json(pnspace::detail::req(c, "G", "config.distance"), "config.distance.G");
  json r;
  r["F"] = pnspace::to_json(F);
  r["G"] = pnspace::to_json(G);
  r["sibley_distance"] = pnspace::sibley_distance(F, G);
  run.result = std::move(r);
  Csv csv({"x", "F", "G"});
  for (double x : pnspace::detail::linspace(0.0, 5.0, 201)) csv.row({x, F.eval(x), G.eval(x)});
  run.add_plot("profiles.csv", std::move(csv));
}

int execute(const Options& opt) {
  Run run;
  run.opt = opt;
  run.config = load_config(opt.config);
  if (run.config.contains("plan")) run.plan = pnspace::plan_from_json(run.config["plan"], run.plan, "config.plan");
  if (opt.seed) run.plan.seed = *opt.seed;
  if (opt.n_max) run.plan.n_max = *opt.n_max;
  if (opt.tol) {
    if (!(*opt.tol > 0.0)) throw pnspace::ConfigError("--tol must be > 0");
    if (opt.command == "axioms") run.plan.tol = *opt.tol;
    else run.plan.convergence_tol = *opt.tol;
  }
  run.plan.validate();

  if (opt.command == "axioms") cmd_axioms(run);
  else if (opt.command == "tv") cmd_tv(run);
  else if (opt.command == "bounded") cmd_bounded(run);
  else if (opt.command == "normability") cmd_normability(run);
  else if (opt.command == "convolve") cmd_convolve(run);
  else if (opt.command == "distance") cmd_distance(run);

  json report;
  report["tool"] = "pnspace";
  report["version"] = pnspace::kVersion;
  report["command"] = opt.command;
  report["config_hash"] = pnspace::config_hash(run.config);
  report["seed"] = run.plan.seed;
  json tol;
  tol["tol"] = run.plan.tol;
  tol["convergence_tol"] = run.plan.convergence_tol;
  tol["tol_tail"] = pnspace::kTolTail;
  tol["tol_root"] = pnspace::kTolRoot;
  tol["tol_convolution_exact"] = 1e-9;
  tol["tol_convolution_grid"] = 1e-4;
  report["tolerances"] = std::move(tol);
  report["n_max"] = run.plan.n_max;
  report["result"] = std::move(run.result);
  json files = json::array();
  for (const auto& [name, _] : run.plots) files.push_back(name);
  report["plot_files"] = std::move(files);

  fs::create_directories(opt.out);
  for (const auto& [name, csv] : run.plots) csv.write(fs::path(opt.out) / name);
  {
    std::ofstream os(fs::path(opt.out) / "report.json", std::ios::binary);
    os << report.dump(2) << '\n';
  }
  {
    json meta;
    meta["timestamp"] = utc_timestamp();
    meta["report"] = "report.json";
    std::ofstream os(fs::path(opt.out) / "metadata.json", std::ios::binary);
    os << meta.dump(2) << '\n';
  }
  std::cout << opt.command << ": report written to " << (fs::path(opt.out) / "report.json").string() << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verdicts for probabilistic normed spaces"};
  app.require_subcommand(1);
  Options opt;
  const std::vector<std::pair<std::string, std::string>> commands{
      {"axioms", "check N1-N4, the Serstnev condition and the characteristic property"},
      {"tv", "continuity of alpha -> alpha p in the strong topology"},
      {"bounded", "D-boundedness and topological boundedness on a set panel"},
      {"normability", "Kolmogorov normability certificate"},
      {"convolve", "table of a triangle function applied to two distribution functions"},
      {"distance", "Sibley distance between two distribution functions"}};
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", opt.config, "config JSON path")->required()->check(CLI::ExistingFile);
    sub->add_option("--seed", opt.seed, "sampling seed (overrides config)");
    sub->add_option("--out", opt.out, "output directory")->capture_default_str();
    sub->add_option("--n-max", opt.n_max, "dense trajectory length")->check(CLI::Range(std::size_t{10}, std::size_t{100000000}));
    sub->add_option("--tol", opt.tol, "axiom tolerance (axioms) or convergence tolerance (others)");
    sub->add_flag("--plot", opt.plot, "write CSV plot data");
    sub->callback([&opt, n = name] { opt.command = n; });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }
  try {
    return execute(opt);
  } catch (const pnspace::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const pnspace::PreconditionError& e) {
    std::cerr << "precondition failed [" << e.hypothesis() << "]: " << e.what() << '\n';
    return kExitPrecondition;
  } catch (const pnspace::ConstructionError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const pnspace::DomainError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
