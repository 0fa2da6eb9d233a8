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

#include "cgvf/frames.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "cgvf/errors.hpp"
#include "cgvf/rk4.hpp"

namespace cgvf {
namespace {

MatN rot_x(double a) {
  const double c = std::cos(a), s = std::sin(a);
  MatN r(3, 3);
  r << 1, 0, 0,
       0, c, -s,
       0, s, c;
  return r;
}

MatN rot_y(double a) {
  const double c = std::cos(a), s = std::sin(a);
  MatN r(3, 3);
  r << c, 0, s,
       0, 1, 0,
       -s, 0, c;
  return r;
}

MatN rot_z(double a) {
  const double c = std::cos(a), s = std::sin(a);
  MatN r(3, 3);
  r << c, -s, 0,
       s, c, 0,
       0, 0, 1;
  return r;
}

VecN unit3(int axis) {
  VecN e = VecN::Zero(3);
  e(axis) = 1.0;
  return e;
}

class IdentityTransform final : public FrameTransform {
 public:
  explicit IdentityTransform(Eigen::Index n) : n_(n) {}
  Eigen::Index dim() const override { return n_; }
  Eigen::Index target_dim() const override { return 0; }
  VecN apply(const VecN& x, const VecN&) const override {
    require_dim(x, n_, "identity transform");
    return x;
  }
  VecN inverse_apply(const VecN& x, const VecN&) const override {
    require_dim(x, n_, "identity transform");
    return x;
  }
  MatN jacobian(const VecN&, const VecN&) const override {
    return MatN::Identity(n_, n_);
  }
  VecN drift(const VecN&, const VecN&, const VecN&) const override {
    return VecN::Zero(n_);
  }

 private:
  Eigen::Index n_;
};

class Se2Transform final : public FrameTransform {
 public:
  Eigen::Index dim() const override { return 2; }
  Eigen::Index target_dim() const override { return 3; }

  VecN apply(const VecN& x, const VecN& zeta) const override {
    check(x, zeta);
    return rotation2(zeta(2)).transpose() * (x - zeta.head(2));
  }
  VecN inverse_apply(const VecN& xp, const VecN& zeta) const override {
    check(xp, zeta);
    return rotation2(zeta(2)) * xp + zeta.head(2);
  }
  MatN jacobian(const VecN& x, const VecN& zeta) const override {
    check(x, zeta);
    return rotation2(zeta(2)).transpose();
  }
  // d/dt [R^T (x - x_d)] = S(phi_dot) x_P - R^T xdot_d.
  VecN drift(const VecN& x, const VecN& zeta,
             const VecN& zeta_dot) const override {
    check(x, zeta);
    require_dim(zeta_dot, 3, "se2 target rate");
    const VecN xp = apply(x, zeta);
    return skew2(zeta_dot(2)) * xp -
           rotation2(zeta(2)).transpose() * zeta_dot.head(2);
  }

 private:
  static void check(const VecN& x, const VecN& zeta) {
    require_dim(x, 2, "se2 point");
    require_dim(zeta, 3, "se2 target state");
  }
};

class Se3EulerTransform final : public FrameTransform {
 public:
  explicit Se3EulerTransform(double guard) : guard_(guard) {}
  Eigen::Index dim() const override { return 3; }
  Eigen::Index target_dim() const override { return 6; }

  VecN apply(const VecN& x, const VecN& zeta) const override {
    return path_from_inertial(zeta) * (x - position(x, zeta));
  }
  VecN inverse_apply(const VecN& xp, const VecN& zeta) const override {
    return path_from_inertial(zeta).transpose() * xp + position(xp, zeta);
  }
  MatN jacobian(const VecN& x, const VecN& zeta) const override {
    position(x, zeta);
    return path_from_inertial(zeta);
  }
  // Chain rule through the Euler-angle rates:
  // sum_k (dC^T / d psi_k) psi_k_dot (x - X_d) - C^T Xdot_d.
  VecN drift(const VecN& x, const VecN& zeta,
             const VecN& zeta_dot) const override {
    const VecN rel = x - position(x, zeta);
    require_dim(zeta_dot, 6, "se3 target rate");
    const double p1 = zeta(3), p2 = zeta(4), p3 = zeta(5);
    const MatN rx = rot_x(p1), ry = rot_y(p2), rz = rot_z(p3);
    const MatN d1 = rz * ry * rx * skew3(unit3(0));
    const MatN d2 = rz * ry * skew3(unit3(1)) * rx;
    const MatN d3 = rz * skew3(unit3(2)) * ry * rx;
    const MatN dc = d1 * zeta_dot(3) + d2 * zeta_dot(4) + d3 * zeta_dot(5);
    const MatN c = rz * ry * rx;
    return dc.transpose() * rel - c.transpose() * zeta_dot.head(3);
  }

 private:
  VecN position(const VecN& x, const VecN& zeta) const {
    require_dim(x, 3, "se3 point");
    require_dim(zeta, 6, "se3 target state");
    check_euler_guard(zeta(4), guard_);
    return zeta.head(3);
  }
  MatN path_from_inertial(const VecN& zeta) const {
    return euler_body_to_inertial(zeta(3), zeta(4), zeta(5)).transpose();
  }

  double guard_;
};

class CustomTransform final : public FrameTransform {
 public:
  explicit CustomTransform(CustomTransformFns fns) : fns_(std::move(fns)) {}
  Eigen::Index dim() const override { return fns_.dim; }
  Eigen::Index target_dim() const override { return fns_.target_dim; }
  VecN apply(const VecN& x, const VecN& z) const override {
    return fns_.apply(x, z);
  }
  VecN inverse_apply(const VecN& x, const VecN& z) const override {
    return fns_.inverse_apply(x, z);
  }
  MatN jacobian(const VecN& x, const VecN& z) const override {
    return fns_.jacobian(x, z);
  }
  VecN drift(const VecN& x, const VecN& z, const VecN& zd) const override {
    return fns_.drift(x, z, zd);
  }

 private:
  CustomTransformFns fns_;
};

std::string describe(const VecN& v) {
  std::ostringstream os;
  os << "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v(i);
  os << ")";
  return os.str();
}

}  // namespace

TimeProfile TimeProfile::constant(double value) {
  return {{{ProfileKind::kConst, value, 0.0, 0.0}}};
}

TimeProfile TimeProfile::sine(double amplitude, double frequency,
                              double phase) {
  return {{{ProfileKind::kSin, amplitude, frequency, phase}}};
}

TimeProfile TimeProfile::cosine(double amplitude, double frequency,
                                double phase) {
  return {{{ProfileKind::kCos, amplitude, frequency, phase}}};
}

double TimeProfile::eval(double t) const {
  double sum = 0.0;
  for (const ProfileTerm& term : terms) {
    const double arg = term.frequency * t + term.phase;
    switch (term.kind) {
      case ProfileKind::kConst: sum += term.amplitude; break;
      case ProfileKind::kSin: sum += term.amplitude * std::sin(arg); break;
      case ProfileKind::kCos: sum += term.amplitude * std::cos(arg); break;
    }
  }
  return sum;
}

double TimeProfile::rate(double t) const {
  double sum = 0.0;
  for (const ProfileTerm& term : terms) {
    const double arg = term.frequency * t + term.phase;
    switch (term.kind) {
      case ProfileKind::kConst: break;
      case ProfileKind::kSin:
        sum += term.amplitude * term.frequency * std::cos(arg);
        break;
      case ProfileKind::kCos:
        sum -= term.amplitude * term.frequency * std::sin(arg);
        break;
    }
  }
  return sum;
}

TimeProfile TimeProfile::operator+(const TimeProfile& other) const {
  TimeProfile out = *this;
  out.terms.insert(out.terms.end(), other.terms.begin(), other.terms.end());
  return out;
}

VecN UnicycleTarget::state() const {
  VecN z(3);
  z << x_d, y_d, phi_d;
  return z;
}

UnicycleTarget UnicycleTarget::with_state(const VecN& zeta) const {
  require_dim(zeta, 3, "unicycle state");
  require_finite(zeta, "unicycle state");
  UnicycleTarget out = *this;
  out.x_d = zeta(0);
  out.y_d = zeta(1);
  out.phi_d = zeta(2);
  return out;
}

VecN UnicycleTarget::rates(const VecN& zeta, double t) const {
  require_dim(zeta, 3, "unicycle state");
  const double v = v_d.eval(t);
  VecN r(3);
  r << v * std::cos(zeta(2)), v * std::sin(zeta(2)), omega_d.eval(t);
  return r;
}

VecN AircraftTarget::state() const {
  VecN z(6);
  z << position[0], position[1], position[2], euler[0], euler[1], euler[2];
  return z;
}

AircraftTarget AircraftTarget::with_state(const VecN& zeta) const {
  require_dim(zeta, 6, "aircraft state");
  require_finite(zeta, "aircraft state");
  AircraftTarget out = *this;
  for (int i = 0; i < 3; ++i) {
    out.position[i] = zeta(i);
    out.euler[i] = zeta(3 + i);
  }
  return out;
}

VecN AircraftTarget::rates(const VecN& zeta, double t) const {
  require_dim(zeta, 6, "aircraft state");
  const double p1 = zeta(3), p2 = zeta(4), p3 = zeta(5);
  check_euler_guard(p2);

  VecN uvw(3);
  uvw << body_vel[0].eval(t), body_vel[1].eval(t), body_vel[2].eval(t);
  const double p = body_rates[0].eval(t);
  const double q = body_rates[1].eval(t);
  const double r = body_rates[2].eval(t);

  VecN out(6);
  out.head(3) = euler_body_to_inertial(p1, p2, p3) * uvw;
  const double yaw_term = r * std::cos(p1) + q * std::sin(p1);
  out(3) = p + yaw_term * std::tan(p2);
  out(4) = q * std::cos(p1) - r * std::sin(p1);
  out(5) = yaw_term / std::cos(p2);
  return out;
}

void check_euler_guard(double pitch, double guard) {
  const double limit = std::numbers::pi / 2.0 - guard;
  if (!(std::abs(pitch) < limit)) {
    std::ostringstream os;
    os << "Euler pitch " << pitch << " rad outside guard |psi2| < " << limit;
    throw EulerSingularityError(os.str());
  }
}

MatN rotation2(double phi) {
  const double c = std::cos(phi), s = std::sin(phi);
  MatN r(2, 2);
  r << c, -s, s, c;
  return r;
}

MatN euler_body_to_inertial(double psi1, double psi2, double psi3) {
  return rot_z(psi3) * rot_y(psi2) * rot_x(psi1);
}

std::shared_ptr<const FrameTransform> identity_transform(Eigen::Index n) {
  return std::make_shared<IdentityTransform>(n);
}

std::shared_ptr<const FrameTransform> se2_transform() {
  return std::make_shared<Se2Transform>();
}

std::shared_ptr<const FrameTransform> se3_euler_transform(double guard) {
  return std::make_shared<Se3EulerTransform>(guard);
}

UnicycleTarget step_unicycle(const UnicycleTarget& target, double t,
                             double dt) {
  const VecN next =
      rk4_step(target.state(), t, dt, [&target](double s, const VecN& z) {
        return target.rates(z, s);
      });
  return target.with_state(next);
}

AircraftTarget step_aircraft(const AircraftTarget& target, double t,
                             double dt) {
  const VecN next =
      rk4_step(target.state(), t, dt, [&target](double s, const VecN& z) {
        return target.rates(z, s);
      });
  check_euler_guard(next(4));
  return target.with_state(next);
}

void self_check(const FrameTransform& transform,
                std::span<const TransformProbe> probes) {
  constexpr double kRoundTripTol = 1e-10;
  constexpr double kJacobianTol = 1e-6;
  constexpr double kDriftTol = 1e-5;
  const double h = kDefaultFdStep;
  const Eigen::Index n = transform.dim();

  for (const TransformProbe& probe : probes) {
    const VecN& x = probe.x_inertial;
    const VecN& z = probe.target;
    require_dim(x, n, "self_check probe");
    require_dim(z, transform.target_dim(), "self_check probe target");

    const VecN xp = transform.apply(x, z);
    const VecN back = transform.inverse_apply(xp, z);
    if ((back - x).cwiseAbs().maxCoeff() > kRoundTripTol) {
      throw TransformCheckError("inverse round trip failed at x = " +
                                describe(x));
    }

    const MatN jac = transform.jacobian(x, z);
    MatN fd_jac(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
      VecN up = x, down = x;
      up(j) += h;
      down(j) -= h;
      fd_jac.col(j) =
          (transform.apply(up, z) - transform.apply(down, z)) / (2.0 * h);
    }
    if ((jac - fd_jac).cwiseAbs().maxCoeff() > kJacobianTol) {
      throw TransformCheckError("Jacobian disagrees with differences at x = " +
                                describe(x));
    }

    const VecN fd_drift = (transform.apply(x, z + h * probe.target_rate) -
                           transform.apply(x, z - h * probe.target_rate)) /
                          (2.0 * h);
    const VecN drift = transform.drift(x, z, probe.target_rate);
    if ((drift - fd_drift).cwiseAbs().maxCoeff() > kDriftTol) {
      throw TransformCheckError("drift disagrees with differences at x = " +
                                describe(x));
    }
  }
}

std::shared_ptr<const FrameTransform> register_custom_transform(
    CustomTransformFns fns, std::span<const TransformProbe> probes) {
  if (!fns.apply || !fns.inverse_apply || !fns.jacobian || !fns.drift) {
    throw std::invalid_argument("custom transform: all four maps are required");
  }
  if (probes.empty()) {
    throw std::invalid_argument("custom transform: self-check needs probes");
  }
  auto transform = std::make_shared<CustomTransform>(std::move(fns));
  self_check(*transform, probes);
  return transform;
}

MovingFrame::MovingFrame(std::shared_ptr<const FrameTransform> transform,
                         VecN initial_state, RateFn rates)
    : transform_(std::move(transform)),
      initial_(std::move(initial_state)),
      rates_(std::move(rates)) {
  if (!transform_) throw std::invalid_argument("MovingFrame: null transform");
  require_dim(initial_, transform_->target_dim(), "MovingFrame initial state");
  if (!rates_) throw std::invalid_argument("MovingFrame: missing rates");
}

MovingFrame MovingFrame::from_spec(const FrameSpec& spec, Eigen::Index n) {
  struct Builder {
    Eigen::Index n;
    MovingFrame operator()(const StaticFrame&) const {
      return MovingFrame(identity_transform(n), VecN(0),
                         [](const VecN&, double) { return VecN(0); });
    }
    MovingFrame operator()(const UnicycleTarget& target) const {
      if (n != 2) throw DimensionError("se2_unicycle frame requires n = 2");
      return MovingFrame(se2_transform(), target.state(),
                         [target](const VecN& z, double t) {
                           return target.rates(z, t);
                         });
    }
    MovingFrame operator()(const AircraftTarget& target) const {
      if (n != 3) throw DimensionError("se3_euler frame requires n = 3");
      check_euler_guard(target.euler[1]);
      return MovingFrame(se3_euler_transform(), target.state(),
                         [target](const VecN& z, double t) {
                           return target.rates(z, t);
                         });
    }
  };
  return std::visit(Builder{n}, spec);
}

VecN MovingFrame::rates(const VecN& zeta, double t) const {
  return rates_(zeta, t);
}

VecN MovingFrame::state_at(double t, double dt) const {
  VecN z = initial_;
  if (z.size() == 0 || t <= 0.0) return z;
  double now = 0.0;
  while (now < t) {
    const double step = std::min(dt, t - now);
    z = rk4_step(z, now, step,
                 [this](double s, const VecN& y) { return rates_(y, s); });
    now += step;
    if (t - now < 1e-12) break;
  }
  return z;
}

std::string frame_kind_name(const FrameSpec& spec) {
  switch (spec.index()) {
    case 0: return "static";
    case 1: return "se2_unicycle";
    default: return "se3_euler";
  }
}

}  // namespace cgvf
