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

#pragma once

// Communication graphs, virtual-coordinate consensus and the cooperative
// field X_i = chi_mpf_i + chi_cr_i. Agent indices are zero based.

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cgvf/gvf.hpp"

namespace cgvf {

using Edge = std::pair<std::size_t, std::size_t>;

// Undirected, connected graph. Edge (i, j) is oriented i -> j in the
// incidence matrix: D(i, e) = +1, D(j, e) = -1.
class CommGraph {
 public:
  // Throws GraphError for out-of-range or self-loop edges, duplicates and
  // disconnected graphs.
  CommGraph(std::size_t agents, std::vector<Edge> edges);

  std::size_t size() const { return agents_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::vector<std::size_t> neighbors(std::size_t i) const;

  MatN adjacency() const;
  MatN incidence() const;  // N x |E|
  MatN laplacian() const;  // degree - adjacency

  bool operator==(const CommGraph&) const = default;

 private:
  std::size_t agents_;
  std::vector<Edge> edges_;
};

MatN laplacian(const CommGraph& graph);

// Reference configuration Theta*; edge offsets are Delta* = D^T Theta*, so
// Delta[i, j] = theta_i* - theta_j* and every cycle is consistent.
class FormationPattern {
 public:
  explicit FormationPattern(VecN theta_star);

  const VecN& theta_star() const { return theta_star_; }
  double delta(std::size_t i, std::size_t j) const;
  VecN offsets(const CommGraph& graph) const;

 private:
  VecN theta_star_;
};

struct SwarmState {
  std::vector<ExtendedState> agents;
  VecN theta() const;
};

// c = -L (Theta - Theta*), i.e. c_i = -sum_{j in N_i} (theta_i - theta_j - Delta[i,j]).
VecN consensus_term(const VecN& theta, const CommGraph& graph,
                    const FormationPattern& pattern);

// theta_i - theta_j - Delta[i, j] for each edge, in edge order.
VecN edge_errors(const VecN& theta, const CommGraph& graph,
                 const FormationPattern& pattern);

// (0, ..., 0, k_c c_i) in R^(n+1).
VecN chi_cr(std::size_t agent, const VecN& theta, const CommGraph& graph,
            const FormationPattern& pattern, double k_c, Eigen::Index n);

// chi_mpf for agent `agent` plus k_c c_i on theta_dot. The gains must pass
// the coordination gate (0 < g <= 1).
FieldOutput combined_field(std::size_t agent, const ExtendedState& xi,
                           const VecN& theta, const ParametricPath& path,
                           const FrameTransform& transform, const VecN& target,
                           const VecN& target_rate, const CommGraph& graph,
                           const FormationPattern& pattern,
                           const GainSet& gains);

// sum_i V_i + (k_c / 2) Theta~^T L Theta~.
double composite_lyapunov(std::span<const double> agent_V, const VecN& theta,
                          const CommGraph& graph,
                          const FormationPattern& pattern, double k_c);

double composite_lyapunov(const SwarmState& swarm, const ParametricPath& path,
                          const FrameTransform& transform, const VecN& target,
                          const CommGraph& graph,
                          const FormationPattern& pattern,
                          const GainSet& gains);

// Right-hand side of the edge-error dynamics
//   D^T dTheta~/dt = -g D^T alpha - k_c D^T L Theta~,
// where alpha_i = dV_i / d theta_i.
VecN edge_error_rate(const VecN& alpha, const VecN& theta,
                     const CommGraph& graph, const FormationPattern& pattern,
                     double g, double k_c);

enum class CoordinationCase {
  kNone,     // coordination disabled, only g > 0 required
  kStrict,   // 0 < g < 1: det M = g(1 - g) > 0
  kLaSalle,  // g = 1: negative semidefinite rate, LaSalle invariance
};

struct GainGateResult {
  CoordinationCase which = CoordinationCase::kNone;
  double det_m = 0.0;  // g (1 - g)
};

// Throws InvalidGainError for g <= 0, or for g > 1 when coordinating.
GainGateResult gain_gate(const GainSet& gains, bool coordination);

std::string to_string(CoordinationCase c);

}  // namespace cgvf
