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

#include "cgvf/verify.hpp"

#include <fmt/format.h>
#include <fmt/ranges.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>
#include <span>

#include "cgvf/config.hpp"
#include "cgvf/coop.hpp"
#include "cgvf/errors.hpp"
#include "cgvf/field_sampler.hpp"
#include "cgvf/frames.hpp"
#include "cgvf/gvf.hpp"
#include "cgvf/linalg.hpp"
#include "cgvf/paths.hpp"
#include "cgvf/rk4.hpp"
#include "cgvf/sim.hpp"

namespace cgvf {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }
  VecN vec(Eigen::Index n, double lo, double hi) {
    VecN v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = uniform(lo, hi);
    return v;
  }

 private:
  std::mt19937_64 engine_;
};

// Textbook 3-D cross product, written out independently of the library.
std::array<double, 3> classical_cross(const VecN& a, const VecN& b) {
  return {a(1) * b(2) - a(2) * b(1), a(2) * b(0) - a(0) * b(2),
          a(0) * b(1) - a(1) * b(0)};
}

Scenario bundled_scenario(const char* name) {
  return parse_config(bundled_config(name)).scenario;
}

double final_phi_norm_max(const RunMetrics& m) {
  double worst = 0.0;
  for (const AgentMetrics& a : m.agents) worst = std::max(worst, a.final_phi_sq);
  return std::sqrt(worst);
}

double final_phi_sq_max(const RunMetrics& m) {
  double worst = 0.0;
  for (const AgentMetrics& a : m.agents) worst = std::max(worst, a.final_phi_sq);
  return worst;
}

std::vector<LyapunovSample> agent_trace(const TrajectoryRecord& record,
                                        std::size_t agent) {
  std::vector<LyapunovSample> out;
  out.reserve(record.samples.size());
  for (const TrajectorySample& s : record.samples) {
    out.push_back({s.t, s.agents[agent].V, s.agents[agent].grad_norm});
  }
  return out;
}

Scenario single_agent(Scenario s, const GainSet& gains) {
  s.agents.resize(1);
  s.coordination.reset();
  s.gains = gains;
  s.record_stride = 1;
  return s;
}

}  // namespace

CheckResult check_wedge_orthogonality() {
  const auto start = Clock::now();
  Rng rng(0x5eed01);
  constexpr int kSets = 10000;
  double max_dot = 0.0;
  bool exact3 = true;
  for (int s = 0; s < kSets; ++s) {
    const Eigen::Index dim = (s % 2 == 0) ? 3 : 4;
    std::vector<VecN> vs;
    for (Eigen::Index i = 0; i + 1 < dim; ++i) vs.push_back(rng.vec(dim, -1.0, 1.0));
    const VecN w = generalized_cross(vs);
    for (const VecN& v : vs) max_dot = std::max(max_dot, std::abs(w.dot(v)));
    if (dim == 3) {
      const auto c = classical_cross(vs[0], vs[1]);
      exact3 = exact3 && w(0) == c[0] && w(1) == c[1] && w(2) == c[2];
    }
  }
  CheckResult r;
  r.seconds = seconds_since(start);
  r.passed = max_dot < 1e-10 && exact3 && r.seconds < 1.0;
  r.detail = fmt::format("{} sets, max |<w,v>| = {:.3e}, R^3 exact = {}, {:.3f} s",
                         kSets, max_dot, exact3 ? "yes" : "no", r.seconds);
  return r;
}

CheckResult check_wedge_closed_form() {
  const auto start = Clock::now();
  Rng rng(0x5eed02);
  double max_err = 0.0;
  for (const ParametricPath& path : {builtin_ellipse(), builtin_lissajous()}) {
    for (int s = 0; s < 1000; ++s) {
      const double theta = rng.uniform(-4.0 * std::numbers::pi, 4.0 * std::numbers::pi);
      const VecN x = rng.vec(path.dim(), -3.0, 3.0);
      const LevelSetErrors e = level_set_errors(path, x, theta);
      const VecN w = generalized_cross(e.grads_xi);
      max_err = std::max(max_err, (w - wedge_closed_form(path, theta)).cwiseAbs().maxCoeff());
    }
  }
  CheckResult r;
  r.seconds = seconds_since(start);
  r.passed = max_err <= 1e-12;
  r.detail = fmt::format("2 paths x 1000 theta, max error = {:.3e}", max_err);
  return r;
}

CheckResult check_non_vanishing() {
  const auto start = Clock::now();
  Rng rng(0x5eed03);
  double min_w = std::numeric_limits<double>::infinity();
  constexpr int kStates = 100000;
  const std::array<ParametricPath, 2> paths{builtin_ellipse(), builtin_lissajous()};
  for (int s = 0; s < kStates; ++s) {
    const ParametricPath& path = paths[static_cast<std::size_t>(s % 2)];
    const VecN x = rng.vec(path.dim(), -5.0, 5.0);
    const double theta = rng.uniform(-4.0 * std::numbers::pi, 4.0 * std::numbers::pi);
    const VecN w = pre_field(path, x, theta, GainSet::unit(path.dim()));
    min_w = std::min(min_w, w.norm());
  }

  FieldSampleGrid grid;  // [-3, 3] x [-2, 2], 41 x 41, theta = 0
  const FieldSampleResult field =
      sample_field(paths[0], *identity_transform(2), VecN(0), VecN(0),
                   GainSet::unit(2), grid);

  CheckResult r;
  r.seconds = seconds_since(start);
  r.passed = min_w >= 1.0 - 1e-9 && field.min_norm >= 1.0 - 1e-9 && field.flagged == 0;
  r.detail = fmt::format(
      "{} states, min ||w|| = {:.12f}; 41x41 grid min ||field|| = {:.12f}, flagged {}",
      kStates, min_w, field.min_norm, field.flagged);
  return r;
}

CheckResult check_lyapunov_descent() {
  const auto start = Clock::now();
  const Scenario sim1 = bundled_scenario("sim1");

  const Scenario unit_run = single_agent(sim1, GainSet::unit(2));
  const TrajectoryRecord rec = run(unit_run);
  const auto trace = agent_trace(rec, 0);
  const LyapunovRateReport identity = lyapunov_rate_check(trace, 1.0);

  GainSet planar{VecN(2), VecN(3), VecN::Ones(3), 0.0, 1.0};
  planar.k << 1.5, 0.8;
  planar.G_diag << 0.5, 2.0, 0.7;
  Scenario general2 = single_agent(sim1, planar);
  general2.t_end = 20.0;
  const auto rate2 = lyapunov_rate_check(agent_trace(run(general2), 0), std::nullopt);

  GainSet spatial{VecN(3), VecN(4), VecN::Ones(4), 0.0, -1.0};
  spatial.k << 0.7, 1.2, 2.0;
  spatial.G_diag << 0.8, 1.3, 0.6, 1.7;
  Scenario general3 = single_agent(bundled_scenario("sim2"), spatial);
  general3.t_end = 20.0;
  const auto rate3 = lyapunov_rate_check(agent_trace(run(general3), 0), std::nullopt);

  const double identity_err = identity.max_identity_error.value_or(INFINITY);
  CheckResult r;
  r.seconds = seconds_since(start);
  r.passed = identity.checked > 0 && identity_err < 1e-3 && rate2.max_rate <= 1e-8 &&
             rate3.max_rate <= 1e-8;
  r.detail = fmt::format(
      "G=I: {} samples, max rel identity error = {:.3e}; general G: max dV/dt = "
      "{:.3e} (n=2), {:.3e} (n=3)",
      identity.checked, identity_err, rate2.max_rate, rate3.max_rate);
  return r;
}

CheckResult check_planar_oracle() {
  const auto start = Clock::now();
  Rng rng(0x5eed05);
  const Scenario sim1 = bundled_scenario("sim1");
  const auto& spec = std::get<UnicycleTarget>(sim1.frame);
  const MovingFrame frame = MovingFrame::from_spec(sim1.frame, 2);
  const ParametricPath path = make_path(sim1.path);
  const auto se2 = se2_transform();

  double max_diff = 0.0;
  for (int s = 0; s < 100; ++s) {
    const double t = rng.uniform(0.0, 30.0);
    const VecN zeta = frame.state_at(t, 1e-2);
    const UnicycleTarget target = spec.with_state(zeta);
    GainSet gains = sim1.gains;
    if (s % 2 == 1) {
      gains.k = rng.vec(2, 0.2, 3.0);
      gains.G_diag = rng.vec(3, 0.2, 3.0);
      gains.H_diag = rng.vec(3, 0.2, 3.0);
      gains.orientation = (s % 4 == 1) ? 1.0 : -1.0;
    }
    const ExtendedState xi{rng.vec(2, -6.0, 6.0) + zeta.head(2),
                           rng.uniform(-2.0 * std::numbers::pi, 2.0 * std::numbers::pi)};
    const FieldOutput a = chi_theorem3(xi, t, path, target, gains);
    const FieldOutput b = chi_mpf(xi, path, *se2, zeta, target.rates(zeta, t), gains);
    max_diff = std::max({max_diff, (a.xdot - b.xdot).cwiseAbs().maxCoeff(),
                         std::abs(a.theta_dot - b.theta_dot)});
  }
  CheckResult r;
  r.seconds = seconds_since(start);
  r.passed = max_diff < 1e-9;
  r.detail = fmt::format("100 (state, time) pairs, max component difference = {:.3e}",
                         max_diff);
  return r;
}

CheckResult check_planar_reproduction() {
  const Scenario sim1 = bundled_scenario("sim1");
  const auto start = Clock::now();
  const TrajectoryRecord rec = run(sim1);
  const double runtime = seconds_since(start);
  const RunMetrics m = metrics(rec);

  CheckResult r;
  r.seconds = runtime;
  const double phi = final_phi_norm_max(m);
  r.passed = std::abs(m.final_time - 30.0) < 1e-9 && phi < 1e-2 &&
             m.max_final_edge_error < 1e-2 && runtime < 5.0;
  r.detail = fmt::format(
      "t = {:.1f} s: max ||phi|| = {:.3e}, |theta1 - theta2 - pi/4| = {:.3e}, "
      "settled at {} s, runtime {:.2f} s",
      m.final_time, phi, m.max_final_edge_error,
      m.time_to_tolerance ? fmt::format("{:.2f}", *m.time_to_tolerance) : "never",
      runtime);
  return r;
}

CheckResult check_spatial_reproduction() {
  const Scenario sim2 = bundled_scenario("sim2");
  const auto start = Clock::now();
  CheckResult r;
  TrajectoryRecord rec;
  try {
    rec = run(sim2);
  } catch (const EulerSingularityError& e) {
    r.seconds = seconds_since(start);
    r.detail = fmt::format("Euler guard tripped: {}", e.what());
    return r;
  }
  const double runtime = seconds_since(start);
  const RunMetrics m = metrics(rec);
  double max_pitch = 0.0;
  for (const TrajectorySample& s : rec.samples) max_pitch = std::max(max_pitch, std::abs(s.target(4)));

  const double phi_sq = final_phi_sq_max(m);
  const double pitch_limit = std::numbers::pi / 2.0 - kEulerGuard;
  r.seconds = runtime;
  r.passed = std::abs(m.final_time - 60.0) < 1e-9 && phi_sq < 1e-3 &&
             m.max_final_edge_error < 5e-2 && max_pitch < pitch_limit && runtime < 30.0;
  r.detail = fmt::format(
      "t = {:.1f} s: max ||Phi||^2 = {:.3e}, max edge error = {:.3e} rad, "
      "max |pitch| = {:.3e} rad, settled at {} s, runtime {:.2f} s",
      m.final_time, phi_sq, m.max_final_edge_error, max_pitch,
      m.time_to_tolerance ? fmt::format("{:.2f}", *m.time_to_tolerance) : "never",
      runtime);
  return r;
}

CheckResult check_coordination_gate() {
  const auto start = Clock::now();
  std::vector<std::string> notes;
  bool ok = true;

  // Composite descent on coordinated runs, every integration step recorded.
  for (const char* name : {"sim1", "sim2"}) {
    for (double g : {0.3, 1.0}) {
      Scenario s = bundled_scenario(name);
      s.gains.G_diag(s.gains.G_diag.size() - 1) = g;
      s.record_stride = 1;
      if (std::string(name) == "sim2") s.t_end = 20.0;
      const RunMetrics m = metrics(run(s));
      ok = ok && m.max_composite_increase <= 1e-8;
      notes.push_back(fmt::format("{} g={}: max rise {:.2e}", name, g, m.max_composite_increase));
    }
  }

  // Parse-time rejection of g = 1.5 with a graph.
  ScenarioConfig bad = parse_config(bundled_config("sim1"));
  bad.scenario.gains.G_diag(2) = 1.5;
  bool rejected = false;
  try {
    parse_config(serialize_config(bad));
  } catch (const ConfigError&) {
    rejected = true;
  }
  ok = ok && rejected;
  notes.push_back(fmt::format("g=1.5 config {}", rejected ? "rejected" : "ACCEPTED"));

  // Sign of det M = g (1 - g) against the case split.
  bool signs = true;
  GainSet gains = GainSet::unit(2, 1.0);
  for (double g : {0.05, 0.3, 0.7, 0.999}) {
    gains.G_diag(2) = g;
    const GainGateResult res = gain_gate(gains, true);
    signs = signs && res.which == CoordinationCase::kStrict && res.det_m > 0.0;
  }
  gains.G_diag(2) = 1.0;
  const GainGateResult boundary = gain_gate(gains, true);
  signs = signs && boundary.which == CoordinationCase::kLaSalle && boundary.det_m == 0.0;
  for (double g : {1.5, 2.0}) {
    gains.G_diag(2) = g;
    bool threw = false;
    try {
      gain_gate(gains, true);
    } catch (const InvalidGainError&) {
      threw = g * (1.0 - g) < 0.0;
    }
    signs = signs && threw;
    signs = signs && gain_gate(gains, false).which == CoordinationCase::kNone;
  }
  ok = ok && signs;
  notes.push_back(fmt::format("det M sign cases {}", signs ? "match" : "MISMATCH"));

  CheckResult r;
  r.seconds = seconds_since(start);
  r.passed = ok;
  r.detail = fmt::format("{}", fmt::join(notes, "; "));
  return r;
}

CheckResult check_frame_compensation() {
  const auto start = Clock::now();
  const Scenario sim1 = bundled_scenario("sim1");

  UnicycleTarget moving = std::get<UnicycleTarget>(sim1.frame);
  moving.x_d = 1.0;
  moving.y_d = -0.5;
  moving.phi_d = 0.3;

  VecN x_path(2);
  x_path << 2.0, 1.0;
  const double theta0 = 0.4;

  Scenario fixed = single_agent(sim1, GainSet::unit(2));
  fixed.t_end = 10.0;
  fixed.record_stride = 10;
  fixed.frame = StaticFrame{};
  fixed.agents[0] = {x_path, theta0};

  Scenario carried = fixed;
  carried.frame = moving;
  carried.agents[0] = {se2_transform()->inverse_apply(x_path, moving.state()), theta0};

  const TrajectoryRecord a = run(fixed);
  const TrajectoryRecord b = run(carried);
  double max_diff = a.samples.size() == b.samples.size() ? 0.0 : INFINITY;
  for (std::size_t i = 0; i < std::min(a.samples.size(), b.samples.size()); ++i) {
    max_diff = std::max(max_diff, std::abs(a.samples[i].agents[0].V - b.samples[i].agents[0].V));
  }
  CheckResult r;
  r.seconds = seconds_since(start);
  r.passed = max_diff < 1e-4 && a.samples.back().t >= 10.0 - 1e-9;
  r.detail = fmt::format("{} samples over 10 s, max |V_static - V_moving| = {:.3e}",
                         a.samples.size(), max_diff);
  return r;
}

CheckResult check_integrator_order() {
  const auto start = Clock::now();
  auto global_error = [](double dt) {
    VecN y = VecN::Ones(1);
    const int steps = static_cast<int>(std::lround(1.0 / dt));
    for (int i = 0; i < steps; ++i) {
      y = rk4_step(y, i * dt, dt, [](double, const VecN& v) -> VecN { return v; });
    }
    return std::abs(y(0) - std::exp(1.0));
  };
  const double e1 = global_error(0.1);
  const double e2 = global_error(0.05);
  const double ratio = e1 / e2;

  Scenario coarse = bundled_scenario("sim1");
  Scenario fine = coarse;
  fine.dt = 5e-4;
  fine.record_stride = coarse.record_stride * 2;
  const TrajectoryRecord rc = run(coarse);
  const TrajectoryRecord rf = run(fine);
  const RunMetrics mc = metrics(rc);
  const RunMetrics mf = metrics(rf);
  double drift = std::abs(mc.max_final_edge_error - mf.max_final_edge_error);
  for (std::size_t i = 0; i < mc.agents.size(); ++i) {
    drift = std::max(drift, std::abs(std::sqrt(mc.agents[i].final_phi_sq) -
                                     std::sqrt(mf.agents[i].final_phi_sq)));
  }
  const bool same_time = std::abs(mc.final_time - mf.final_time) < 1e-9 &&
                         rc.samples.size() == rf.samples.size();

  // Whole-trajectory agreement at the shared sample times.
  double path_gap = same_time ? 0.0 : INFINITY;
  for (std::size_t k = 0; same_time && k < rc.samples.size(); ++k) {
    for (std::size_t i = 0; i < rc.samples[k].agents.size(); ++i) {
      const AgentSample& a = rc.samples[k].agents[i];
      const AgentSample& b = rf.samples[k].agents[i];
      path_gap = std::max({path_gap, (a.x_inertial - b.x_inertial).cwiseAbs().maxCoeff(),
                           std::abs(a.theta - b.theta)});
    }
  }

  CheckResult r;
  r.seconds = seconds_since(start);
  r.passed = ratio > 14.0 && ratio < 18.0 && drift < 1e-4 && path_gap < 1e-4;
  r.detail = fmt::format(
      "exp test error ratio (dt 0.1 -> 0.05) = {:.2f}; sim1 dt 1e-3 vs 5e-4: final "
      "metric change {:.3e}, max state gap {:.3e}",
      ratio, drift, path_gap);
  return r;
}

const std::vector<NamedCheck>& acceptance_checks() {
  static const std::vector<NamedCheck> checks{
      {1, "wedge orthogonality", check_wedge_orthogonality},
      {2, "wedge closed form", check_wedge_closed_form},
      {3, "non-vanishing field", check_non_vanishing},
      {4, "Lyapunov descent", check_lyapunov_descent},
      {5, "planar closed-form oracle", check_planar_oracle},
      {6, "planar two-agent reproduction", check_planar_reproduction},
      {7, "spatial four-agent reproduction", check_spatial_reproduction},
      {8, "coordination gain gate and descent", check_coordination_gate},
      {9, "frame compensation", check_frame_compensation},
      {10, "integrator order", check_integrator_order},
  };
  return checks;
}

std::vector<CheckResult> run_acceptance_suite(std::ostream* progress) {
  std::vector<CheckResult> results;
  for (const NamedCheck& c : acceptance_checks()) {
    const auto start = Clock::now();
    CheckResult r;
    try {
      r = c.fn();
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = fmt::format("exception: {}", e.what());
      r.seconds = seconds_since(start);
    }
    r.id = c.id;
    r.name = c.name;
    if (progress) *progress << format_result(r) << '\n' << std::flush;
    results.push_back(std::move(r));
  }
  return results;
}

std::string format_result(const CheckResult& result) {
  return fmt::format("{} [{:>2}] {}: {} ({:.2f} s)", result.passed ? "PASS" : "FAIL",
                     result.id, result.name, result.detail, result.seconds);
}

}  // namespace cgvf
