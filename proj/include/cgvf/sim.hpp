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

// Deterministic fixed-step scenario runner. Target state and all agents
// form one ODE state advanced by RK4; every stage re-reads the neighbours'
// virtual coordinates at that stage (fully coupled swarm).

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cgvf/coop.hpp"
#include "cgvf/frames.hpp"
#include "cgvf/gvf.hpp"
#include "cgvf/paths.hpp"

namespace cgvf {

inline constexpr double kDefaultDt = 1e-3;          // s
inline constexpr double kDivergenceBound = 1e6;

struct AgentInit {
  VecN x;  // inertial position, m
  double theta = 0.0;

  bool operator==(const AgentInit& other) const {
    return x.size() == other.x.size() && (x.size() == 0 || x == other.x) &&
           theta == other.theta;
  }
};

struct Coordination {
  std::vector<Edge> edges;  // zero based
  VecN theta_star;          // rad

  bool operator==(const Coordination& other) const {
    return edges == other.edges && theta_star.size() == other.theta_star.size() &&
           (theta_star.size() == 0 || theta_star == other.theta_star);
  }
};

struct Scenario {
  Eigen::Index dim = 2;
  PathSpec path;
  FrameSpec frame;
  std::vector<AgentInit> agents;
  GainSet gains;
  std::optional<Coordination> coordination;  // absent: independent agents
  double dt = kDefaultDt;                    // s
  double t_end = 0.0;                        // s
  std::size_t record_stride = 1;

  // Throws DimensionError / InvalidGainError / GraphError /
  // std::invalid_argument describing the first problem found.
  void validate() const;

  bool operator==(const Scenario&) const = default;
};

struct AgentSample {
  VecN x_inertial;
  VecN x_path;
  double theta = 0.0;
  double V = 0.0;
  double phi_norm = 0.0;
  double grad_norm = 0.0;
};

struct TrajectorySample {
  double t = 0.0;
  VecN target;
  std::vector<AgentSample> agents;
  VecN edge_errors;           // per edge, theta_i - theta_j - Delta[i,j]
  double composite_V = 0.0;   // sum V_i (+ consensus energy when coordinating)
};

struct TrajectoryRecord {
  std::vector<std::pair<std::string, std::string>> header;
  std::vector<Edge> edges;
  std::vector<TrajectorySample> samples;

  std::size_t agent_count() const {
    return samples.empty() ? 0 : samples.front().agents.size();
  }
};

// Builds path and frame from the scenario and integrates to t_end.
TrajectoryRecord run(const Scenario& scenario);

// Same, with an explicit path and frame (e.g. custom transforms).
TrajectoryRecord run(const Scenario& scenario, const ParametricPath& path,
                     const MovingFrame& frame);

struct AgentMetrics {
  double final_phi_sq = 0.0;
  double max_phi_sq = 0.0;
};

struct RunMetrics {
  double final_time = 0.0;
  std::vector<AgentMetrics> agents;
  VecN final_edge_errors;
  double max_final_edge_error = 0.0;
  // Earliest sample time after which every ||phi|| and |edge error| stays
  // below the tolerance.
  std::optional<double> time_to_tolerance;
  // Largest increase of the composite Lyapunov value between consecutive
  // samples (negative when it strictly decreases throughout).
  double max_composite_increase = 0.0;
};

// Throws std::invalid_argument on an empty record.
RunMetrics metrics(const TrajectoryRecord& record, double tolerance = 1e-2);

}  // namespace cgvf
