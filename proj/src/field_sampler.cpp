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

#include "cgvf/field_sampler.hpp"

#include <fmt/format.h>

#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "cgvf/errors.hpp"

namespace cgvf {
namespace {

const char* axis_name(Eigen::Index i) {
  static const char* kNames[] = {"x", "y", "z"};
  return i < 3 ? kNames[i] : nullptr;
}

std::string axis_label(const std::string& prefix, Eigen::Index i) {
  const char* name = axis_name(i);
  return prefix + (name ? std::string(name) : std::to_string(i + 1));
}

}  // namespace

void FieldSampleGrid::validate(Eigen::Index n) const {
  if (nx < 2 || ny < 2) {
    throw std::invalid_argument("field grid: need at least 2 samples per axis");
  }
  if (!(x_range[1] > x_range[0]) || !(y_range[1] > y_range[0])) {
    throw std::invalid_argument("field grid: bounding box is degenerate");
  }
  if (thetas.empty()) throw std::invalid_argument("field grid: no theta slice");
  if (n < 2) throw DimensionError("field grid: planar sampling needs n >= 2");
  require_dim(fixed, n - 2, "field grid fixed coordinates");
}

FieldSampleResult sample_field(const ParametricPath& path,
                               const FrameTransform& transform,
                               const VecN& target, const VecN& target_rate,
                               const GainSet& gains,
                               const FieldSampleGrid& grid) {
  const Eigen::Index n = path.dim();
  grid.validate(n);
  validate_gains(gains, n);

  FieldSampleResult result;
  result.dim = n;
  result.min_norm = std::numeric_limits<double>::infinity();
  result.min_pre_norm = std::numeric_limits<double>::infinity();
  const double nan = std::numeric_limits<double>::quiet_NaN();

  for (double theta : grid.thetas) {
    for (int iy = 0; iy < grid.ny; ++iy) {
      for (int ix = 0; ix < grid.nx; ++ix) {
        FieldSampleRow row;
        row.x = VecN(n);
        row.x(0) = grid.x_range[0] +
                   (grid.x_range[1] - grid.x_range[0]) * ix / (grid.nx - 1);
        row.x(1) = grid.y_range[0] +
                   (grid.y_range[1] - grid.y_range[0]) * iy / (grid.ny - 1);
        if (n > 2) row.x.tail(n - 2) = grid.fixed;
        row.theta = theta;
        try {
          const FieldOutput f =
              chi_mpf({row.x, theta}, path, transform, target, target_rate, gains);
          row.u = f.xdot;
          row.theta_dot = f.theta_dot;
          row.norm = std::hypot(f.xdot.norm(), f.theta_dot);
          row.pre_norm = f.pre_field.norm();
          result.min_norm = std::min(result.min_norm, row.norm);
          result.min_pre_norm = std::min(result.min_pre_norm, row.pre_norm);
        } catch (const SingularJacobianError&) {
          row.u = VecN::Constant(n, nan);
          row.theta_dot = row.norm = row.pre_norm = nan;
          row.singular = true;
          ++result.flagged;
        }
        result.rows.push_back(std::move(row));
      }
    }
  }
  return result;
}

FieldSampleResult sample_field(const Scenario& scenario,
                               const FieldSampleGrid& grid) {
  const ParametricPath path = make_path(scenario.path);
  const MovingFrame frame = MovingFrame::from_spec(scenario.frame, scenario.dim);
  const VecN target = frame.state_at(grid.time, scenario.dt);
  const VecN rate = frame.rates(target, grid.time);
  return sample_field(path, frame.transform(), target, rate, scenario.gains,
                      grid);
}

void write_field_csv(const FieldSampleResult& result, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  const Eigen::Index n = result.dim;
  for (Eigen::Index i = 0; i < n; ++i) out << axis_label("", i) << ',';
  out << "theta";
  for (Eigen::Index i = 0; i < n; ++i) out << ',' << axis_label("u_", i);
  out << ",theta_dot,norm,pre_norm,singular\n";
  for (const FieldSampleRow& row : result.rows) {
    for (Eigen::Index i = 0; i < n; ++i) out << fmt::format("{},", row.x(i));
    out << fmt::format("{}", row.theta);
    for (Eigen::Index i = 0; i < n; ++i) out << fmt::format(",{}", row.u(i));
    out << fmt::format(",{},{},{},{}\n", row.theta_dot, row.norm, row.pre_norm,
                       row.singular ? 1 : 0);
  }
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

}  // namespace cgvf
