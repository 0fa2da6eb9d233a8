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

#include "cgvf/sim.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "cgvf/errors.hpp"
#include "cgvf/rk4.hpp"

namespace cgvf {
namespace {

// Shortest decimal that round-trips.
std::string num(double x) {
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), res.ptr);
}

std::string join(const VecN& v) {
  std::string out;
  for (Eigen::Index i = 0; i < v.size(); ++i) out += (i ? " " : "") + num(v(i));
  return out;
}

// Layout of the bundled ODE state: [zeta | x_1, theta_1 | x_2, theta_2 | ...].
struct Layout {
  Eigen::Index target_dim;
  Eigen::Index n;
  std::size_t agents;

  Eigen::Index agent_offset(std::size_t i) const {
    return target_dim + static_cast<Eigen::Index>(i) * (n + 1);
  }
  Eigen::Index size() const { return agent_offset(agents); }

  VecN theta(const VecN& y) const {
    VecN out(static_cast<Eigen::Index>(agents));
    for (std::size_t i = 0; i < agents; ++i) {
      out(static_cast<Eigen::Index>(i)) = y(agent_offset(i) + n);
    }
    return out;
  }
  ExtendedState agent(const VecN& y, std::size_t i) const {
    return {y.segment(agent_offset(i), n), y(agent_offset(i) + n)};
  }
};

class Runner {
 public:
  Runner(const Scenario& s, const ParametricPath& path, const MovingFrame& frame)
      : s_(s),
        path_(path),
        frame_(frame),
        layout_{frame.target_dim(), s.dim, s.agents.size()} {
    if (s.coordination) {
      graph_.emplace(s.agents.size(), s.coordination->edges);
      pattern_.emplace(s.coordination->theta_star);
    }
  }

  VecN derivative(double t, const VecN& y) const {
    const VecN zeta = y.head(layout_.target_dim);
    const VecN zeta_dot = frame_.rates(zeta, t);
    VecN dy(layout_.size());
    dy.head(layout_.target_dim) = zeta_dot;

    VecN consensus;
    if (graph_) {
      consensus = s_.gains.k_c * consensus_term(layout_.theta(y), *graph_, *pattern_);
    }
    for (std::size_t i = 0; i < layout_.agents; ++i) {
      const FieldOutput f = chi_mpf(layout_.agent(y, i), path_,
                                    frame_.transform(), zeta, zeta_dot, s_.gains);
      const Eigen::Index off = layout_.agent_offset(i);
      dy.segment(off, layout_.n) = f.xdot;
      dy(off + layout_.n) =
          f.theta_dot + (graph_ ? consensus(static_cast<Eigen::Index>(i)) : 0.0);
    }
    return dy;
  }

  TrajectorySample sample(double t, const VecN& y) const {
    TrajectorySample out;
    out.t = t;
    out.target = y.head(layout_.target_dim);
    std::vector<double> values;
    for (std::size_t i = 0; i < layout_.agents; ++i) {
      const ExtendedState xi = layout_.agent(y, i);
      AgentSample a;
      a.x_inertial = xi.x;
      a.x_path = frame_.transform().apply(xi.x, out.target);
      a.theta = xi.theta;
      const LevelSetErrors errs = level_set_errors(path_, a.x_path, xi.theta);
      a.V = lyapunov_V(errs.phi, s_.gains.k);
      a.phi_norm = errs.phi.norm();
      a.grad_norm = grad_xi_V(errs, s_.gains.k).norm();
      values.push_back(a.V);
      out.agents.push_back(std::move(a));
    }
    if (graph_) {
      const VecN theta = layout_.theta(y);
      out.edge_errors = edge_errors(theta, *graph_, *pattern_);
      out.composite_V =
          composite_lyapunov(values, theta, *graph_, *pattern_, s_.gains.k_c);
    } else {
      out.edge_errors = VecN(0);
      for (double v : values) out.composite_V += v;
    }
    return out;
  }

  TrajectoryRecord run() const {
    VecN y(layout_.size());
    y.head(layout_.target_dim) = frame_.initial_state();
    for (std::size_t i = 0; i < layout_.agents; ++i) {
      y.segment(layout_.agent_offset(i), layout_.n) = s_.agents[i].x;
      y(layout_.agent_offset(i) + layout_.n) = s_.agents[i].theta;
    }

    TrajectoryRecord record;
    if (s_.coordination) record.edges = s_.coordination->edges;
    const auto steps = static_cast<long long>(std::llround(s_.t_end / s_.dt));
    const auto stride = static_cast<long long>(s_.record_stride);
    record.samples.reserve(static_cast<std::size_t>(steps / stride + 2));
    record.samples.push_back(sample(0.0, y));

    auto deriv = [this](double t, const VecN& state) {
      return derivative(t, state);
    };
    for (long long k = 0; k < steps; ++k) {
      const double t = static_cast<double>(k) * s_.dt;
      y = rk4_step(y, t, s_.dt, deriv);
      if (!y.allFinite() || y.cwiseAbs().maxCoeff() > kDivergenceBound) {
        std::ostringstream os;
        os << "state diverged (|state| > " << kDivergenceBound << ") at t = "
           << t + s_.dt << " s";
        throw DivergenceError(os.str());
      }
      if ((k + 1) % stride == 0 || k + 1 == steps) {
        record.samples.push_back(
            sample(static_cast<double>(k + 1) * s_.dt, y));
      }
    }
    return record;
  }

 private:
  const Scenario& s_;
  const ParametricPath& path_;
  const MovingFrame& frame_;
  Layout layout_;
  std::optional<CommGraph> graph_;
  std::optional<FormationPattern> pattern_;
};

std::vector<std::pair<std::string, std::string>> make_header(
    const Scenario& s, const ParametricPath& path) {
  std::vector<std::pair<std::string, std::string>> h;
  h.emplace_back("dimension", std::to_string(s.dim));
  h.emplace_back("path", path.name());
  h.emplace_back("frame", frame_kind_name(s.frame));
  h.emplace_back("agents", std::to_string(s.agents.size()));
  h.emplace_back("dt_s", num(s.dt));
  h.emplace_back("t_end_s", num(s.t_end));
  h.emplace_back("record_stride", std::to_string(s.record_stride));
  h.emplace_back("k", join(s.gains.k));
  h.emplace_back("G_diag", join(s.gains.G_diag));
  h.emplace_back("H_diag", join(s.gains.H_diag));
  h.emplace_back("g", num(s.gains.g()));
  h.emplace_back("k_c", num(s.gains.k_c));
  h.emplace_back("orientation", num(s.gains.orientation));
  h.emplace_back("coordination",
                 s.coordination ? to_string(gain_gate(s.gains, true).which)
                                : std::string("none"));
  return h;
}

}  // namespace

void Scenario::validate() const {
  if (dim < 1) throw DimensionError("scenario: dimension must be >= 1");
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw std::invalid_argument("scenario: dt_s must be positive");
  }
  if (!(t_end > dt)) {
    throw std::invalid_argument("scenario: t_end_s must exceed dt_s");
  }
  if (record_stride < 1) {
    throw std::invalid_argument("scenario: record_stride must be >= 1");
  }
  if (agents.empty()) throw std::invalid_argument("scenario: no agents");
  for (std::size_t i = 0; i < agents.size(); ++i) {
    require_dim(agents[i].x, dim, "agent " + std::to_string(i + 1) + " position");
    require_finite(agents[i].x, "agent position");
    if (!std::isfinite(agents[i].theta)) {
      throw std::invalid_argument("scenario: agent theta must be finite");
    }
  }
  validate_gains(gains, dim);
  gain_gate(gains, coordination.has_value());
  if (coordination) {
    CommGraph graph(agents.size(), coordination->edges);
    require_dim(coordination->theta_star,
                static_cast<Eigen::Index>(agents.size()), "theta_star");
    FormationPattern pattern(coordination->theta_star);
  }
  const ParametricPath p = make_path(path);
  if (p.dim() != dim) {
    throw DimensionError("scenario: path dimension " + std::to_string(p.dim()) +
                         " differs from scenario dimension " +
                         std::to_string(dim));
  }
  MovingFrame::from_spec(frame, dim);
}

TrajectoryRecord run(const Scenario& scenario) {
  scenario.validate();
  const ParametricPath path = make_path(scenario.path);
  const MovingFrame frame = MovingFrame::from_spec(scenario.frame, scenario.dim);
  return run(scenario, path, frame);
}

TrajectoryRecord run(const Scenario& scenario, const ParametricPath& path,
                     const MovingFrame& frame) {
  if (path.dim() != scenario.dim || frame.transform().dim() != scenario.dim) {
    throw DimensionError("run: path/frame dimension differs from scenario");
  }
  TrajectoryRecord record = Runner(scenario, path, frame).run();
  record.header = make_header(scenario, path);
  return record;
}

RunMetrics metrics(const TrajectoryRecord& record, double tolerance) {
  if (record.samples.empty()) {
    throw std::invalid_argument("metrics: empty trajectory record");
  }
  RunMetrics m;
  const TrajectorySample& last = record.samples.back();
  m.final_time = last.t;
  m.agents.resize(record.agent_count());
  for (const TrajectorySample& s : record.samples) {
    for (std::size_t i = 0; i < s.agents.size(); ++i) {
      const double sq = s.agents[i].phi_norm * s.agents[i].phi_norm;
      m.agents[i].max_phi_sq = std::max(m.agents[i].max_phi_sq, sq);
    }
  }
  for (std::size_t i = 0; i < last.agents.size(); ++i) {
    m.agents[i].final_phi_sq = last.agents[i].phi_norm * last.agents[i].phi_norm;
  }
  m.final_edge_errors = last.edge_errors;
  m.max_final_edge_error =
      last.edge_errors.size() ? last.edge_errors.cwiseAbs().maxCoeff() : 0.0;

  // Walk backwards to find where the errors last exceeded the tolerance.
  std::optional<double> settled;
  for (auto it = record.samples.rbegin(); it != record.samples.rend(); ++it) {
    bool within = true;
    for (const AgentSample& a : it->agents) within = within && a.phi_norm < tolerance;
    if (it->edge_errors.size()) {
      within = within && it->edge_errors.cwiseAbs().maxCoeff() < tolerance;
    }
    if (!within) break;
    settled = it->t;
  }
  m.time_to_tolerance = settled;

  m.max_composite_increase = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k < record.samples.size(); ++k) {
    m.max_composite_increase =
        std::max(m.max_composite_increase, record.samples[k].composite_V -
                                               record.samples[k - 1].composite_V);
  }
  if (record.samples.size() < 2) m.max_composite_increase = 0.0;
  return m;
}

}  // namespace cgvf
