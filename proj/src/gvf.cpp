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

#include "cgvf/gvf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "cgvf/errors.hpp"

namespace cgvf {
namespace {

bool same(const VecN& a, const VecN& b) {
  return a.size() == b.size() && (a.size() == 0 || a == b);
}

struct PathFrameEval {
  LevelSetErrors errors;
  VecN grad;
  VecN w;
  double V = 0.0;
};

PathFrameEval evaluate(const ParametricPath& path, const VecN& x_path,
                       double theta, const GainSet& gains) {
  PathFrameEval e;
  e.errors = level_set_errors(path, x_path, theta);
  e.V = lyapunov_V(e.errors.phi, gains.k);
  e.grad = grad_xi_V(e.errors, gains.k);
  const VecN wedge = wedge_closed_form(path, theta);
  e.w = -gains.G_diag.cwiseProduct(e.grad) +
        gains.orientation * gains.H_diag.cwiseProduct(wedge);
  return e;
}

}  // namespace

GainSet GainSet::unit(Eigen::Index n, double k_c) {
  return {VecN::Ones(n), VecN::Ones(n + 1), VecN::Ones(n + 1), k_c, 1.0};
}

bool GainSet::operator==(const GainSet& other) const {
  return same(k, other.k) && same(G_diag, other.G_diag) &&
         same(H_diag, other.H_diag) && k_c == other.k_c &&
         orientation == other.orientation;
}

void validate_gains(const GainSet& gains, Eigen::Index n) {
  require_dim(gains.k, n, "gains.k");
  require_dim(gains.G_diag, n + 1, "gains.G_diag");
  require_dim(gains.H_diag, n + 1, "gains.H_diag");
  positive_diagonal(gains.k, "gains.k");
  positive_diagonal(gains.G_diag, "gains.G_diag");
  positive_diagonal(gains.H_diag, "gains.H_diag");
  if (!(gains.k_c >= 0.0) || !std::isfinite(gains.k_c)) {
    throw InvalidGainError("gains.k_c must be finite and >= 0");
  }
  if (gains.orientation != 1.0 && gains.orientation != -1.0) {
    throw InvalidGainError("gains.orientation must be +1 or -1");
  }
}

double lyapunov_V(const VecN& phi, const VecN& k) {
  require_dim(k, phi.size(), "lyapunov_V weights");
  return 0.5 * k.cwiseProduct(phi.cwiseAbs2()).sum();
}

VecN grad_xi_V(const LevelSetErrors& errors, const VecN& k) {
  const Eigen::Index n = errors.phi.size();
  require_dim(k, n, "grad_xi_V weights");
  VecN grad = VecN::Zero(n + 1);
  for (Eigen::Index i = 0; i < n; ++i) {
    grad += k(i) * errors.phi(i) * errors.grads_xi[static_cast<std::size_t>(i)];
  }
  return grad;
}

VecN pre_field(const ParametricPath& path, const VecN& x_path, double theta,
               const GainSet& gains) {
  validate_gains(gains, path.dim());
  return evaluate(path, x_path, theta, gains).w;
}

FieldOutput chi_mpf(const ExtendedState& xi, const ParametricPath& path,
                    const FrameTransform& transform, const VecN& target,
                    const VecN& target_rate, const GainSet& gains) {
  const Eigen::Index n = path.dim();
  validate_gains(gains, n);
  require_dim(xi.x, n, "chi_mpf state");
  if (transform.dim() != n) {
    throw DimensionError("chi_mpf: transform dimension " +
                         std::to_string(transform.dim()) +
                         " differs from path dimension " + std::to_string(n));
  }

  const VecN x_path = transform.apply(xi.x, target);
  const PathFrameEval e = evaluate(path, x_path, xi.theta, gains);

  Eigen::FullPivLU<MatN> lu(transform.jacobian(xi.x, target));
  lu.setThreshold(1e-10);
  if (!lu.isInvertible()) {
    throw SingularJacobianError("frame Jacobian is singular at the state");
  }
  const VecN drift = transform.drift(xi.x, target, target_rate);

  FieldOutput out;
  out.xdot = lu.solve(VecN(e.w.head(n) - drift));
  out.theta_dot = e.w(n);
  out.pre_field = e.w;
  out.V = e.V;
  out.grad_norm = e.grad.norm();
  out.phi_norm = e.errors.phi.norm();
  return out;
}

FieldOutput chi_theorem3(const ExtendedState& xi, double t,
                         const ParametricPath& path,
                         const UnicycleTarget& target, const GainSet& gains) {
  if (path.dim() != 2) {
    throw DimensionError("chi_theorem3: planar paths only (n = 2)");
  }
  validate_gains(gains, 2);
  require_dim(xi.x, 2, "chi_theorem3 state");

  const VecN zeta = target.state();
  const VecN zeta_dot = target.rates(zeta, t);
  const MatN to_inertial = rotation2(target.phi_d);

  VecN target_pos(2);
  target_pos << target.x_d, target.y_d;
  const VecN x_path = to_inertial.transpose() * (xi.x - target_pos);
  const PathFrameEval e = evaluate(path, x_path, xi.theta, gains);

  FieldOutput out;
  out.xdot = zeta_dot.head(2) - to_inertial * skew2(zeta_dot(2)) * x_path +
             to_inertial * e.w.head(2);
  out.theta_dot = e.w(2);
  out.pre_field = e.w;
  out.V = e.V;
  out.grad_norm = e.grad.norm();
  out.phi_norm = e.errors.phi.norm();
  return out;
}

LyapunovRateReport lyapunov_rate_check(std::span<const LyapunovSample> samples,
                                       std::optional<double> scalar_g) {
  LyapunovRateReport report;
  report.max_rate = -std::numeric_limits<double>::infinity();
  if (scalar_g) report.max_identity_error = 0.0;
  for (std::size_t i = 1; i + 1 < samples.size(); ++i) {
    const LyapunovSample& prev = samples[i - 1];
    const LyapunovSample& next = samples[i + 1];
    const double rate = (next.V - prev.V) / (next.t - prev.t);
    const double grad_sq = samples[i].grad_norm * samples[i].grad_norm;
    report.max_rate = std::max(report.max_rate, rate);
    if (scalar_g) {
      const double dev = std::abs(rate + *scalar_g * grad_sq) / (1.0 + grad_sq);
      report.max_identity_error = std::max(*report.max_identity_error, dev);
    }
    ++report.checked;
  }
  if (report.checked == 0) report.max_rate = 0.0;
  return report;
}

}  // namespace cgvf
