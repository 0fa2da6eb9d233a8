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

#include "cgvf/coop.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "cgvf/errors.hpp"

namespace cgvf {

CommGraph::CommGraph(std::size_t agents, std::vector<Edge> edges)
    : agents_(agents), edges_(std::move(edges)) {
  if (agents_ == 0) throw GraphError("graph needs at least one agent");
  std::set<Edge> seen;
  for (const auto& [i, j] : edges_) {
    if (i >= agents_ || j >= agents_) {
      throw GraphError("edge references an agent outside 1.." +
                       std::to_string(agents_));
    }
    if (i == j) throw GraphError("self-loop on agent " + std::to_string(i + 1));
    if (!seen.insert({std::min(i, j), std::max(i, j)}).second) {
      throw GraphError("duplicate edge (" + std::to_string(i + 1) + ", " +
                       std::to_string(j + 1) + ")");
    }
  }

  std::vector<bool> reached(agents_, false);
  std::vector<std::size_t> stack{0};
  reached[0] = true;
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    stack.pop_back();
    for (std::size_t w : neighbors(v)) {
      if (!reached[w]) {
        reached[w] = true;
        stack.push_back(w);
      }
    }
  }
  if (std::find(reached.begin(), reached.end(), false) != reached.end()) {
    throw GraphError("communication graph is not connected");
  }
}

std::vector<std::size_t> CommGraph::neighbors(std::size_t i) const {
  std::vector<std::size_t> out;
  for (const auto& [a, b] : edges_) {
    if (a == i) out.push_back(b);
    if (b == i) out.push_back(a);
  }
  return out;
}

MatN CommGraph::adjacency() const {
  const auto n = static_cast<Eigen::Index>(agents_);
  MatN a = MatN::Zero(n, n);
  for (const auto& [i, j] : edges_) {
    a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = 1.0;
    a(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = 1.0;
  }
  return a;
}

MatN CommGraph::incidence() const {
  MatN d = MatN::Zero(static_cast<Eigen::Index>(agents_),
                      static_cast<Eigen::Index>(edges_.size()));
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    d(static_cast<Eigen::Index>(edges_[e].first), static_cast<Eigen::Index>(e)) = 1.0;
    d(static_cast<Eigen::Index>(edges_[e].second), static_cast<Eigen::Index>(e)) = -1.0;
  }
  return d;
}

MatN CommGraph::laplacian() const {
  const MatN a = adjacency();
  MatN l = -a;
  l.diagonal() = a.rowwise().sum();
  return l;
}

MatN laplacian(const CommGraph& graph) { return graph.laplacian(); }

FormationPattern::FormationPattern(VecN theta_star)
    : theta_star_(std::move(theta_star)) {
  require_finite(theta_star_, "formation pattern");
}

double FormationPattern::delta(std::size_t i, std::size_t j) const {
  const auto n = static_cast<std::size_t>(theta_star_.size());
  if (i >= n || j >= n) throw DimensionError("formation pattern: bad index");
  return theta_star_(static_cast<Eigen::Index>(i)) -
         theta_star_(static_cast<Eigen::Index>(j));
}

VecN FormationPattern::offsets(const CommGraph& graph) const {
  require_dim(theta_star_, static_cast<Eigen::Index>(graph.size()),
              "formation pattern");
  return graph.incidence().transpose() * theta_star_;
}

VecN SwarmState::theta() const {
  VecN out(static_cast<Eigen::Index>(agents.size()));
  for (std::size_t i = 0; i < agents.size(); ++i) {
    out(static_cast<Eigen::Index>(i)) = agents[i].theta;
  }
  return out;
}

VecN consensus_term(const VecN& theta, const CommGraph& graph,
                    const FormationPattern& pattern) {
  const auto n = static_cast<Eigen::Index>(graph.size());
  require_dim(theta, n, "consensus_term");
  require_dim(pattern.theta_star(), n, "consensus_term pattern");
  return -(graph.laplacian() * (theta - pattern.theta_star()));
}

VecN edge_errors(const VecN& theta, const CommGraph& graph,
                 const FormationPattern& pattern) {
  const auto n = static_cast<Eigen::Index>(graph.size());
  require_dim(theta, n, "edge_errors");
  require_dim(pattern.theta_star(), n, "edge_errors pattern");
  return graph.incidence().transpose() * (theta - pattern.theta_star());
}

VecN chi_cr(std::size_t agent, const VecN& theta, const CommGraph& graph,
            const FormationPattern& pattern, double k_c, Eigen::Index n) {
  if (agent >= graph.size()) throw DimensionError("chi_cr: bad agent index");
  VecN out = VecN::Zero(n + 1);
  out(n) = k_c * consensus_term(theta, graph, pattern)(
                     static_cast<Eigen::Index>(agent));
  return out;
}

FieldOutput combined_field(std::size_t agent, const ExtendedState& xi,
                           const VecN& theta, const ParametricPath& path,
                           const FrameTransform& transform, const VecN& target,
                           const VecN& target_rate, const CommGraph& graph,
                           const FormationPattern& pattern,
                           const GainSet& gains) {
  gain_gate(gains, true);
  FieldOutput out = chi_mpf(xi, path, transform, target, target_rate, gains);
  out.theta_dot +=
      chi_cr(agent, theta, graph, pattern, gains.k_c, path.dim())(path.dim());
  return out;
}

double composite_lyapunov(std::span<const double> agent_V, const VecN& theta,
                          const CommGraph& graph,
                          const FormationPattern& pattern, double k_c) {
  if (agent_V.size() != graph.size()) {
    throw DimensionError("composite_lyapunov: one V per agent required");
  }
  double total = 0.0;
  for (double v : agent_V) total += v;
  const VecN e = edge_errors(theta, graph, pattern);
  // Theta~^T L Theta~ = ||D^T Theta~||^2.
  return total + 0.5 * k_c * e.squaredNorm();
}

double composite_lyapunov(const SwarmState& swarm, const ParametricPath& path,
                          const FrameTransform& transform, const VecN& target,
                          const CommGraph& graph,
                          const FormationPattern& pattern,
                          const GainSet& gains) {
  std::vector<double> values;
  values.reserve(swarm.agents.size());
  for (const ExtendedState& xi : swarm.agents) {
    const VecN xp = transform.apply(xi.x, target);
    values.push_back(
        lyapunov_V(level_set_errors(path, xp, xi.theta).phi, gains.k));
  }
  return composite_lyapunov(values, swarm.theta(), graph, pattern, gains.k_c);
}

VecN edge_error_rate(const VecN& alpha, const VecN& theta,
                     const CommGraph& graph, const FormationPattern& pattern,
                     double g, double k_c) {
  const auto n = static_cast<Eigen::Index>(graph.size());
  require_dim(alpha, n, "edge_error_rate alpha");
  const MatN dt = graph.incidence().transpose();
  return -g * (dt * alpha) -
         k_c * (dt * (graph.laplacian() * (theta - pattern.theta_star())));
}

GainGateResult gain_gate(const GainSet& gains, bool coordination) {
  const double g = gains.g();
  if (!(g > 0.0)) {
    throw InvalidGainError("last entry g of G must be > 0");
  }
  GainGateResult result;
  result.det_m = g * (1.0 - g);
  if (!coordination) return result;
  if (g > 1.0) {
    std::ostringstream os;
    os << "g = " << g
       << " violates the coordination stability condition 0 < g <= 1 "
          "(det M = g(1-g) = "
       << result.det_m << " < 0)";
    throw InvalidGainError(os.str());
  }
  result.which = g < 1.0 ? CoordinationCase::kStrict : CoordinationCase::kLaSalle;
  return result;
}

std::string to_string(CoordinationCase c) {
  switch (c) {
    case CoordinationCase::kNone: return "none";
    case CoordinationCase::kStrict: return "strict";
    case CoordinationCase::kLaSalle: return "LaSalle";
  }
  return "?";
}

}  // namespace cgvf
