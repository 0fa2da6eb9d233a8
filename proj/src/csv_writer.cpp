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

#include "cgvf/csv_writer.hpp"

#include <fmt/format.h>

#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace cgvf {
namespace {

std::ofstream open_or_throw(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  return out;
}

void put_vec(std::ofstream& out, const VecN& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) out << ',' << fmt::format("{}", v(i));
}

}  // namespace

std::string companion_path(const std::string& path, const std::string& suffix) {
  const std::filesystem::path p(path);
  return (p.parent_path() / (p.stem().string() + suffix + ".csv")).string();
}

void write_trajectory_csv(const TrajectoryRecord& record,
                          const std::string& path) {
  if (record.samples.empty()) {
    throw std::invalid_argument("write_trajectory_csv: empty trajectory record");
  }
  const Eigen::Index n = record.samples.front().agents.front().x_inertial.size();

  std::ofstream out = open_or_throw(path);
  out << "t,agent";
  for (Eigen::Index i = 1; i <= n; ++i) out << ",xI_" << i;
  for (Eigen::Index i = 1; i <= n; ++i) out << ",xP_" << i;
  out << ",theta,V,phi_norm\n";
  for (const TrajectorySample& s : record.samples) {
    for (std::size_t a = 0; a < s.agents.size(); ++a) {
      const AgentSample& ag = s.agents[a];
      out << fmt::format("{}", s.t) << ',' << a + 1;
      put_vec(out, ag.x_inertial);
      put_vec(out, ag.x_path);
      out << fmt::format(",{},{},{}\n", ag.theta, ag.V, ag.phi_norm);
    }
  }
  if (!out) throw std::runtime_error("write failed for '" + path + "'");

  const std::string edges_path = companion_path(path, "_edges");
  std::ofstream edges = open_or_throw(edges_path);
  edges << "t,i,j,theta_error\n";
  for (const TrajectorySample& s : record.samples) {
    for (std::size_t e = 0; e < record.edges.size(); ++e) {
      edges << fmt::format("{},{},{},{}\n", s.t, record.edges[e].first + 1,
                           record.edges[e].second + 1,
                           s.edge_errors(static_cast<Eigen::Index>(e)));
    }
  }
  if (!edges) throw std::runtime_error("write failed for '" + edges_path + "'");

  if (!record.header.empty()) {
    const std::string header_path = companion_path(path, "_header");
    std::ofstream header = open_or_throw(header_path);
    header << "key,value\n";
    for (const auto& [key, value] : record.header) {
      header << key << ',' << value << '\n';
    }
  }
}

}  // namespace cgvf
