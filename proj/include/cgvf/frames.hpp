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

// Time-varying frame transformations x_P = F(x_I, zeta(t)) and the moving
// target kinematics that generate zeta(t). Target states are co-simulated
// plain vectors; transforms are immutable and evaluate purely.

#include <array>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "cgvf/linalg.hpp"

namespace cgvf {

enum class ProfileKind { kConst, kSin, kCos };

// amplitude * {1, sin(frequency t + phase), cos(frequency t + phase)}.
// frequency in rad/s, phase in rad.
struct ProfileTerm {
  ProfileKind kind = ProfileKind::kConst;
  double amplitude = 0.0;
  double frequency = 0.0;
  double phase = 0.0;

  bool operator==(const ProfileTerm&) const = default;
};

// Scalar time signal given as a sum of terms; the empty profile is zero.
struct TimeProfile {
  std::vector<ProfileTerm> terms;

  static TimeProfile constant(double value);
  static TimeProfile sine(double amplitude, double frequency,
                          double phase = 0.0);
  static TimeProfile cosine(double amplitude, double frequency,
                            double phase = 0.0);

  double eval(double t) const;
  double rate(double t) const;

  TimeProfile operator+(const TimeProfile& other) const;
  bool operator==(const TimeProfile&) const = default;
};

// Identity frame: the path is fixed in the inertial frame.
struct StaticFrame {
  bool operator==(const StaticFrame&) const = default;
};

// Planar unicycle target. State zeta = (x_d [m], y_d [m], phi_d [rad]).
struct UnicycleTarget {
  double x_d = 0.0;
  double y_d = 0.0;
  double phi_d = 0.0;
  TimeProfile v_d;      // m/s
  TimeProfile omega_d;  // rad/s

  VecN state() const;
  UnicycleTarget with_state(const VecN& zeta) const;
  // (v cos phi, v sin phi, omega) at the given state and time.
  VecN rates(const VecN& zeta, double t) const;

  bool operator==(const UnicycleTarget&) const = default;
};

inline constexpr double kEulerGuard = 0.1;  // rad

// Aircraft target with x-y-z Euler angles (roll psi1, pitch psi2, yaw psi3).
// State zeta = (x_d, y_d, z_d [m], psi1, psi2, psi3 [rad]).
struct AircraftTarget {
  std::array<double, 3> position{};
  std::array<double, 3> euler{};
  std::array<TimeProfile, 3> body_vel;    // (u, v, w) m/s in {P}
  std::array<TimeProfile, 3> body_rates;  // (p, q, r) rad/s in {P}

  VecN state() const;
  AircraftTarget with_state(const VecN& zeta) const;
  // Translational and Euler-angle kinematics. Throws EulerSingularityError
  // when |psi2| >= pi/2 - kEulerGuard.
  VecN rates(const VecN& zeta, double t) const;

  bool operator==(const AircraftTarget&) const = default;
};

using FrameSpec = std::variant<StaticFrame, UnicycleTarget, AircraftTarget>;

// Throws EulerSingularityError if |pitch| >= pi/2 - guard.
void check_euler_guard(double pitch, double guard = kEulerGuard);

// Rotation {P} -> {I} for heading phi.
MatN rotation2(double phi);

// Body-to-inertial rotation Rz(psi3) Ry(psi2) Rx(psi1).
MatN euler_body_to_inertial(double psi1, double psi2, double psi3);

class FrameTransform {
 public:
  virtual ~FrameTransform() = default;

  virtual Eigen::Index dim() const = 0;
  virtual Eigen::Index target_dim() const = 0;

  virtual VecN apply(const VecN& x_inertial, const VecN& target) const = 0;
  virtual VecN inverse_apply(const VecN& x_path, const VecN& target) const = 0;
  // d x_P / d x_I.
  virtual MatN jacobian(const VecN& x_inertial, const VecN& target) const = 0;
  // (dF / d zeta) * zeta_dot: the frame-motion part of d x_P / dt.
  virtual VecN drift(const VecN& x_inertial, const VecN& target,
                     const VecN& target_rate) const = 0;
};

std::shared_ptr<const FrameTransform> identity_transform(Eigen::Index n);

// x_P = R(phi_d)^T (x_I - x_d).
std::shared_ptr<const FrameTransform> se2_transform();

// x_P = C(psi)^T (x_I - X_d) with C from euler_body_to_inertial.
std::shared_ptr<const FrameTransform> se3_euler_transform(
    double guard = kEulerGuard);

UnicycleTarget step_unicycle(const UnicycleTarget& target, double t, double dt);
AircraftTarget step_aircraft(const AircraftTarget& target, double t, double dt);

// One evaluation point for transform self-checks.
struct TransformProbe {
  VecN x_inertial;
  VecN target;
  VecN target_rate;
};

// Verifies inverse round trip (1e-10), Jacobian against central differences
// of apply in x (1e-6) and drift against central differences of apply along
// zeta + s * zeta_dot (1e-5). Throws TransformCheckError on the first failure.
void self_check(const FrameTransform& transform,
                std::span<const TransformProbe> probes);

struct CustomTransformFns {
  Eigen::Index dim = 0;
  Eigen::Index target_dim = 0;
  std::function<VecN(const VecN&, const VecN&)> apply;
  std::function<VecN(const VecN&, const VecN&)> inverse_apply;
  std::function<MatN(const VecN&, const VecN&)> jacobian;
  std::function<VecN(const VecN&, const VecN&, const VecN&)> drift;
};

// Builds a user transform and runs self_check on the probes before
// returning it. At least one probe is required.
std::shared_ptr<const FrameTransform> register_custom_transform(
    CustomTransformFns fns, std::span<const TransformProbe> probes);

// A transform paired with the kinematics of its target.
class MovingFrame {
 public:
  using RateFn = std::function<VecN(const VecN&, double)>;

  MovingFrame(std::shared_ptr<const FrameTransform> transform,
              VecN initial_state, RateFn rates);

  // Builds the frame described by `spec` for an n-dimensional problem.
  // se2 requires n == 2, se3 requires n == 3.
  static MovingFrame from_spec(const FrameSpec& spec, Eigen::Index n);

  const FrameTransform& transform() const { return *transform_; }
  const VecN& initial_state() const { return initial_; }
  Eigen::Index target_dim() const { return initial_.size(); }
  VecN rates(const VecN& zeta, double t) const;

  // Target state at time t, integrated from the initial state with RK4.
  VecN state_at(double t, double dt) const;

 private:
  std::shared_ptr<const FrameTransform> transform_;
  VecN initial_;
  RateFn rates_;
};

std::string frame_kind_name(const FrameSpec& spec);

}  // namespace cgvf
