// Copyright 2026 The cgvf Authors
//
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

#include "cgvf/cli.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <CLI11.hpp>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "cgvf/config.hpp"
#include "cgvf/csv_writer.hpp"
#include "cgvf/errors.hpp"
#include "cgvf/field_sampler.hpp"
#include "cgvf/sim.hpp"
#include "cgvf/verify.hpp"

namespace cgvf {
namespace {

constexpr const char* kSynopsis =
    "usage:\n"
    "  cgvf run <config> [--out DIR] [--dt X] [--t-end X]\n"
    "  cgvf field <config> --grid xmin,xmax,ymin,ymax,nx,ny [--theta T,...]\n"
    "             [--time X] [--fixed Z,...] --out FILE\n"
    "  cgvf check\n"
    "  cgvf demo sim1|sim2 [--out DIR]\n";

struct RunOptions {
  std::string config;
  std::optional<std::string> out_dir;
  std::optional<double> dt;
  std::optional<double> t_end;
};

struct FieldOptions {
  std::string config;
  std::vector<double> grid;
  std::vector<double> thetas{0.0};
  double time = 0.0;
  std::vector<double> fixed;
  std::string out;
};

struct DemoOptions {
  std::string name;
  std::optional<std::string> out_dir;
};

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write '" + path + "'");
  f << text;
  if (!f) throw std::runtime_error("write failed for '" + path + "'");
}

void print_metrics(std::ostream& out, const TrajectoryRecord& record) {
  const RunMetrics m = metrics(record);
  fmt::print(out, "final time: {} s\n", m.final_time);
  for (std::size_t i = 0; i < m.agents.size(); ++i) {
    fmt::print(out, "agent {}: final ||phi|| = {:.6e}, max ||phi|| = {:.6e}\n", i + 1,
               std::sqrt(m.agents[i].final_phi_sq), std::sqrt(m.agents[i].max_phi_sq));
  }
  for (std::size_t e = 0; e < record.edges.size(); ++e) {
    fmt::print(out, "edge ({},{}): final theta error = {:.6e} rad\n",
               record.edges[e].first + 1, record.edges[e].second + 1,
               m.final_edge_errors(static_cast<Eigen::Index>(e)));
  }
  if (m.time_to_tolerance) {
    fmt::print(out, "time to tolerance 1e-2: {:.3f} s\n", *m.time_to_tolerance);
  } else {
    fmt::print(out, "time to tolerance 1e-2: not reached\n");
  }
  fmt::print(out, "max composite Lyapunov rise: {:.3e}\n", m.max_composite_increase);
}

int execute_scenario(ScenarioConfig cfg, std::ostream& out) {
  cfg.scenario.validate();
  const TrajectoryRecord record = run(cfg.scenario);

  const std::filesystem::path dir(cfg.output.dir);
  std::filesystem::create_directories(dir);
  const std::string csv = (dir / (cfg.output.name + ".csv")).string();
  write_trajectory_csv(record, csv);
  const std::string effective = (dir / (cfg.output.name + "_scenario.cfg")).string();
  write_text(effective, serialize_config(cfg));

  fmt::print(out, "trajectory: {}\n", csv);
  fmt::print(out, "edges: {}\n", companion_path(csv, "_edges"));
  fmt::print(out, "header: {}\n", companion_path(csv, "_header"));
  fmt::print(out, "scenario: {}\n", effective);
  print_metrics(out, record);
  return kExitOk;
}

int cmd_run(const RunOptions& o, std::ostream& out) {
  ScenarioConfig cfg = load_config_file(o.config);
  if (o.out_dir) cfg.output.dir = *o.out_dir;
  if (o.dt) cfg.scenario.dt = *o.dt;
  if (o.t_end) cfg.scenario.t_end = *o.t_end;
  return execute_scenario(std::move(cfg), out);
}

int cmd_demo(const DemoOptions& o, std::ostream& out) {
  ScenarioConfig cfg = parse_config(bundled_config(o.name));
  if (o.out_dir) cfg.output.dir = *o.out_dir;
  return execute_scenario(std::move(cfg), out);
}

int cmd_field(const FieldOptions& o, std::ostream& out) {
  const ScenarioConfig cfg = load_config_file(o.config);
  if (o.grid.size() != 6) {
    throw std::invalid_argument("--grid expects xmin,xmax,ymin,ymax,nx,ny");
  }
  FieldSampleGrid grid;
  grid.x_range = {o.grid[0], o.grid[1]};
  grid.y_range = {o.grid[2], o.grid[3]};
  for (const double count : {o.grid[4], o.grid[5]}) {
    if (count != std::floor(count)) throw std::invalid_argument("--grid: nx, ny must be integers");
  }
  grid.nx = static_cast<int>(o.grid[4]);
  grid.ny = static_cast<int>(o.grid[5]);
  grid.thetas = o.thetas;
  grid.time = o.time;
  grid.fixed = Eigen::Map<const VecN>(o.fixed.data(), static_cast<Eigen::Index>(o.fixed.size()));

  const FieldSampleResult result = sample_field(cfg.scenario, grid);
  const std::filesystem::path dest(o.out);
  if (dest.has_parent_path()) std::filesystem::create_directories(dest.parent_path());
  write_field_csv(result, o.out);
  fmt::print(out, "field: {} ({} rows)\n", o.out, result.rows.size());
  fmt::print(out, "min ||field|| = {:.12f}, min ||w|| = {:.12f}, singular rows = {}\n",
             result.min_norm, result.min_pre_norm, result.flagged);
  return kExitOk;
}

int cmd_check(std::ostream& out) {
  fmt::print(out, "{:<6}{:>4}  {}\n", "result", "id", "check");
  const std::vector<CheckResult> results = run_acceptance_suite(nullptr);
  std::size_t passed = 0;
  for (const CheckResult& r : results) {
    fmt::print(out, "{:<6}{:>4}  {:<36} {} ({:.2f} s)\n", r.passed ? "PASS" : "FAIL", r.id,
               r.name, r.detail, r.seconds);
    if (r.passed) ++passed;
  }
  fmt::print(out, "{}/{} checks passed\n", passed, results.size());
  return passed == results.size() ? kExitOk : kExitRuntime;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out,
             std::ostream& err) {
  CLI::App app{"Cooperative guiding vector field simulator", "cgvf"};
  app.require_subcommand(1);
  app.footer(kSynopsis);

  RunOptions run_opts;
  CLI::App* run_cmd = app.add_subcommand("run", "Simulate a scenario config and write CSVs");
  run_cmd->add_option("config", run_opts.config, "Scenario config file")->required();
  run_cmd->add_option("--out", run_opts.out_dir, "Output directory");
  run_cmd->add_option("--dt", run_opts.dt, "Step size override, s");
  run_cmd->add_option("--t-end", run_opts.t_end, "Final time override, s");

  FieldOptions field_opts;
  CLI::App* field_cmd = app.add_subcommand("field", "Sample the guiding field on a grid");
  field_cmd->add_option("config", field_opts.config, "Scenario config file")->required();
  field_cmd->add_option("--grid", field_opts.grid, "xmin,xmax,ymin,ymax,nx,ny")
      ->required()
      ->delimiter(',')
      ->expected(6);
  field_cmd->add_option("--theta", field_opts.thetas, "Virtual-coordinate slices")
      ->delimiter(',');
  field_cmd->add_option("--time", field_opts.time, "Target time, s");
  field_cmd->add_option("--fixed", field_opts.fixed, "Values for axes 3..n")->delimiter(',');
  field_cmd->add_option("--out", field_opts.out, "Output CSV")->required();

  CLI::App* check_cmd = app.add_subcommand("check", "Run the property suite");

  DemoOptions demo_opts;
  CLI::App* demo_cmd = app.add_subcommand("demo", "Run a bundled scenario");
  demo_cmd->add_option("name", demo_opts.name, "sim1 or sim2")
      ->required()
      ->check(CLI::IsMember({"sim1", "sim2"}));
  demo_cmd->add_option("--out", demo_opts.out_dir, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    fmt::print(err, "error: {}\n{}", e.what(), kSynopsis);
    return kExitValidation;
  }

  try {
    if (*run_cmd) return cmd_run(run_opts, out);
    if (*field_cmd) return cmd_field(field_opts, out);
    if (*check_cmd) return cmd_check(out);
    if (*demo_cmd) return cmd_demo(demo_opts, out);
  } catch (const ConfigError& e) {
    fmt::print(err, "config error: {}\n", e.what());
    return kExitValidation;
  } catch (const std::logic_error& e) {
    // invalid_argument family (gains, graph, dimensions) and domain errors
    fmt::print(err, "validation error: {}\n", e.what());
    return kExitValidation;
  } catch (const std::exception& e) {
    fmt::print(err, "runtime error: {}\n", e.what());
    return kExitRuntime;
  }
  fmt::print(err, "{}", kSynopsis);
  return kExitValidation;
}

}  // namespace cgvf
