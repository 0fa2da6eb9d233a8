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

#include <string>

#include "cgvf/sim.hpp"

namespace cgvf {

// Writes `path` (one row per sample and agent)
//
//   t,agent,xI_1..xI_n,xP_1..xP_n,theta,V,phi_norm
//
// plus `<stem>_edges.csv` (t,i,j,theta_error) and, when the record carries
// one, `<stem>_header.csv` (key,value). Agents and edge endpoints are 1 based;
// numbers use the shortest representation that round-trips a double.
// Throws std::invalid_argument on an empty record (nothing is written) and
// std::runtime_error on I/O failure.
void write_trajectory_csv(const TrajectoryRecord& record,
                          const std::string& path);

// "<dir>/<stem>_edges.csv" for "<dir>/<stem>.csv".
std::string companion_path(const std::string& path, const std::string& suffix);

}  // namespace cgvf
