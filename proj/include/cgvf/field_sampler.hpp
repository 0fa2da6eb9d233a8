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

// Grid sampling of the guiding field for quiver plots. The grid spans the
// first two inertial axes; remaining axes (3-D problems) are held fixed.

#include <array>
#include <string>
#include <vector>

#include "cgvf/sim.hpp"

namespace cgvf {

struct FieldSampleGrid {
  std::array<double, 2> x_range{-3.0, 3.0};  // m
  std::array<double, 2> y_range{-2.0, 2.0};  // m
  int nx = 41;
  int ny = 41;
  std::vector<double> thetas{0.0};  // virtual-coordinate slices
  double time = 0.0;                // s, target state evaluated here
  VecN fixed;                       // values for axes 3..n

  // Throws std::invalid_argument: fewer than 2 samples per axis, empty or
  // reversed box, no theta slice, wrong number of fixed coordinates.
  void validate(Eigen::Index n) const;
};

struct FieldSampleRow {
  VecN x;                 // inertial point
  double theta = 0.0;
  VecN u;                 // inertial velocity command (NaN when singular)
  double theta_dot = 0.0;
  double norm = 0.0;      // ||(u, theta_dot)||
  double pre_norm = 0.0;  // ||w||, path-frame pre-field
  bool singular = false;  // Jacobian not invertible here
};

struct FieldSampleResult {
  Eigen::Index dim = 0;
  std::vector<FieldSampleRow> rows;
  double min_norm = 0.0;      // over non-singular rows
  double min_pre_norm = 0.0;  // over non-singular rows
  std::size_t flagged = 0;
};

FieldSampleResult sample_field(const ParametricPath& path,
                               const FrameTransform& transform,
                               const VecN& target, const VecN& target_rate,
                               const GainSet& gains,
                               const FieldSampleGrid& grid);

// Uses the scenario's path, frame and gains; agents are ignored. The target
// state at grid.time is integrated from its initial state at scenario.dt.
FieldSampleResult sample_field(const Scenario& scenario,
                               const FieldSampleGrid& grid);

// Columns: x,y[,z...],theta,u_x,u_y[,u_z...],theta_dot,norm,pre_norm,singular
void write_field_csv(const FieldSampleResult& result, const std::string& path);

}  // namespace cgvf
