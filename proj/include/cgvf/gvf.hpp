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

// Single-agent extended guiding vector field. The pre-field
//
//   w = -G grad_xi V + orientation * H * wedge(grad_xi phi_1..n)
//
// is built in the path frame and mapped back to the inertial frame through
// the inverse Jacobian with the frame drift removed.

#include <optional>
#include <span>
#include <vector>

#include "cgvf/frames.hpp"
#include "cgvf/linalg.hpp"
#include "cgvf/paths.hpp"

namespace cgvf {

struct GainSet {
  VecN k;            // Lyapunov weights k_i, length n
  VecN G_diag;       // length n + 1; the last entry is g
  VecN H_diag;       // length n + 1
  double k_c = 0.0;  // consensus gain
  // +1 or -1 multiplier on the wedge term; selects traversal direction.
  double orientation = 1.0;

  double g() const { return G_diag(G_diag.size() - 1); }

  // k = 1, G = I, H = I.
  static GainSet unit(Eigen::Index n, double k_c = 0.0);

  bool operator==(const GainSet& other) const;
};

// Positivity of k, G, H, k_c >= 0, orientation = +-1 and dimensions for an
// n-dimensional path. Throws InvalidGainError or DimensionError.
void validate_gains(const GainSet& gains, Eigen::Index n);

struct FieldOutput {
  VecN xdot;                // commanded inertial velocity, m/s
  double theta_dot = 0.0;
  VecN pre_field;           // w in R^(n+1), path-frame coordinates
  double V = 0.0;
  double grad_norm = 0.0;   // ||grad_xi V||
  double phi_norm = 0.0;    // ||phi||
};

// V = sum_i k_i phi_i^2 / 2.
double lyapunov_V(const VecN& phi, const VecN& k);

// sum_i k_i phi_i grad_xi phi_i.
VecN grad_xi_V(const LevelSetErrors& errors, const VecN& k);

// Pre-field w at path-frame point x_path.
VecN pre_field(const ParametricPath& path, const VecN& x_path, double theta,
               const GainSet& gains);

// Moving-path-following field. `target` / `target_rate` are zeta and
// zeta_dot at the evaluation time. Throws SingularJacobianError when the
// transform Jacobian is not invertible at x.
FieldOutput chi_mpf(const ExtendedState& xi, const ParametricPath& path,
                    const FrameTransform& transform, const VecN& target,
                    const VecN& target_rate, const GainSet& gains);

// Closed-form planar field for a unicycle target (state read from `target`,
// speed profiles evaluated at t):
//   u = xdot_d - R(phi_d) S(omega_d) x_P + R(phi_d) w_spatial,
//   theta_dot = w_theta.
FieldOutput chi_theorem3(const ExtendedState& xi, double t,
                         const ParametricPath& path,
                         const UnicycleTarget& target, const GainSet& gains);

struct LyapunovSample {
  double t = 0.0;
  double V = 0.0;
  double grad_norm = 0.0;
};

struct LyapunovRateReport {
  std::size_t checked = 0;
  // max |dV/dt + g ||grad V||^2| / (1 + ||grad V||^2); only with scalar g.
  std::optional<double> max_identity_error;
  // max dV/dt over the trajectory.
  double max_rate = 0.0;
};

// Differentiates V along the samples with central differences (interior
// samples only) and compares against -g ||grad_xi V||^2 when `scalar_g` is
// given. Without it only the descent rate is reported.
LyapunovRateReport lyapunov_rate_check(std::span<const LyapunovSample> samples,
                                       std::optional<double> scalar_g);

}  // namespace cgvf
