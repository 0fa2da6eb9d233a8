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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "cgvf/errors.hpp"
#include "cgvf/frames.hpp"

namespace cgvf {
namespace {

constexpr double kPi = std::numbers::pi;

VecN vec(std::initializer_list<double> xs) {
  VecN v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

void expect_vec_near(const VecN& a, const VecN& b, double tol) {
  ASSERT_EQ(a.size(), b.size());
  EXPECT_LE((a - b).cwiseAbs().maxCoeff(), tol) << a.transpose() << " vs " << b.transpose();
}

UnicycleTarget sim1_target() {
  UnicycleTarget t;
  t.v_d = TimeProfile::constant(1.0);
  t.omega_d = TimeProfile::sine(0.5, 1.0);
  return t;
}

AircraftTarget sim2_target() {
  AircraftTarget a;
  a.position = {0.0, 0.0, 1.0};
  a.euler = {0.0, 0.0, kPi / 4};
  a.body_vel = {TimeProfile::constant(1.0) + TimeProfile::sine(0.1, 1.0),
                TimeProfile::cosine(0.1, 1.0), TimeProfile::sine(0.1, 1.0)};
  const double rate = 0.01 * kPi / 180.0;
  a.body_rates = {TimeProfile::sine(rate, 1.0), TimeProfile::sine(rate, 1.0),
                  TimeProfile::sine(rate, 1.0)};
  return a;
}

TEST(TimeProfile, EvalAndRate) {
  const TimeProfile p = TimeProfile::constant(1.0) + TimeProfile::sine(0.5, 2.0, 0.1) +
                        TimeProfile::cosine(-0.3, 0.5);
  for (double t : {0.0, 0.7, 3.1}) {
    EXPECT_NEAR(p.eval(t), 1.0 + 0.5 * std::sin(2 * t + 0.1) - 0.3 * std::cos(0.5 * t), 1e-15);
    const double h = 1e-6;
    EXPECT_NEAR(p.rate(t), (p.eval(t + h) - p.eval(t - h)) / (2 * h), 1e-8);
  }
  EXPECT_EQ(TimeProfile{}.eval(2.0), 0.0);
}

TEST(Se2, ApplyExamples) {
  const auto tf = se2_transform();
  expect_vec_near(tf->apply(vec({1, 2}), vec({0, 0, 0})), vec({1, 2}), 1e-15);
  expect_vec_near(tf->apply(vec({1, 0}), vec({0, 0, kPi / 2})), vec({0, -1}), 1e-15);
}

TEST(Se2, PureTranslationDrift) {
  const auto tf = se2_transform();
  UnicycleTarget target;
  target.v_d = TimeProfile::constant(1.0);
  const VecN z = target.state();
  for (const VecN& x : {vec({0, 0}), vec({3, -1}), vec({-7, 2})}) {
    expect_vec_near(tf->drift(x, z, target.rates(z, 0.0)), vec({-1, 0}), 1e-15);
  }
}

TEST(Se2, DriftMatchesFiniteDifferenceAlongTargetMotion) {
  const auto tf = se2_transform();
  const UnicycleTarget spec = sim1_target();
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int i = 0; i < 50; ++i) {
    const double t = std::abs(u(rng)) * 3;
    const VecN z = vec({u(rng), u(rng), u(rng)});
    const VecN x = vec({u(rng), u(rng)});
    const double h = 1e-5;
    const VecN rate = spec.rates(z, t);
    const VecN fd = (tf->apply(x, z + h * rate) - tf->apply(x, z - h * rate)) / (2 * h);
    expect_vec_near(tf->drift(x, z, spec.rates(z, t)), fd, 1e-5);
  }
}

TEST(Se2, JacobianIsRotation) {
  const auto tf = se2_transform();
  const MatN j = tf->jacobian(vec({1, 2}), vec({0.4, -0.2, 1.1}));
  EXPECT_LE((j * j.transpose() - MatN::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-12);
  expect_vec_near(tf->inverse_apply(tf->apply(vec({1, 2}), vec({0.4, -0.2, 1.1})),
                                    vec({0.4, -0.2, 1.1})),
                  vec({1, 2}), 1e-10);
}

TEST(Se2, KinematicIdentityAlongTrajectory) {
  // d/dt x_P = S(omega) x_P + R^T (xdot_I - xdot_d) for a moving point.
  const auto tf = se2_transform();
  const UnicycleTarget spec = sim1_target();
  const double dt = 1e-4;
  VecN z = spec.state();
  VecN x = vec({2, 1});
  const VecN x_rate = vec({0.3, -0.7});
  for (int k = 0; k < 1000; ++k) {
    const double t = k * dt;
    const VecN z_rate = spec.rates(z, t);
    const VecN xp = tf->apply(x, z);
    const VecN predicted = skew2(z_rate(2)) * xp +
                           rotation2(z(2)).transpose() * (x_rate - z_rate.head(2));
    const VecN z_next = step_unicycle(spec.with_state(z), t, dt).state();
    const VecN x_next = x + dt * x_rate;
    const VecN fd = (tf->apply(x_next, z_next) - xp) / dt;
    if (k % 100 == 0) expect_vec_near(fd, predicted, 5e-3);
    z = z_next;
    x = x_next;
  }
}

TEST(Se3, ApplyExamples) {
  const auto tf = se3_euler_transform();
  expect_vec_near(tf->apply(vec({1, -2, 3}), VecN::Zero(6)), vec({1, -2, 3}), 1e-15);
  expect_vec_near(tf->apply(vec({0, 0, 1}), vec({0, 0, 1, 0, 0, kPi / 4})), vec({0, 0, 0}),
                  1e-15);
}

TEST(Se3, JacobianOrthogonalAndRoundTrip) {
  const auto tf = se3_euler_transform();
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-1.2, 1.2);
  for (int i = 0; i < 50; ++i) {
    const VecN z = vec({u(rng), u(rng), u(rng), u(rng) * 2, u(rng), u(rng) * 2});
    const VecN x = vec({u(rng) * 4, u(rng) * 4, u(rng) * 4});
    const MatN j = tf->jacobian(x, z);
    EXPECT_LE((j * j.transpose() - MatN::Identity(3, 3)).cwiseAbs().maxCoeff(), 1e-12);
    expect_vec_near(tf->inverse_apply(tf->apply(x, z), z), x, 1e-10);
  }
}

TEST(Se3, DriftMatchesFiniteDifference) {
  const auto tf = se3_euler_transform();
  const AircraftTarget spec = sim2_target();
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-1.2, 1.2);
  for (int i = 0; i < 50; ++i) {
    const double t = 10 * std::abs(u(rng));
    const VecN z = vec({u(rng), u(rng), u(rng), u(rng) * 2, u(rng), u(rng) * 2});
    const VecN x = vec({u(rng) * 4, u(rng) * 4, u(rng) * 4});
    const VecN rate = spec.rates(z, t);
    const double h = 1e-6;
    const VecN fd = (tf->apply(x, z + h * rate) - tf->apply(x, z - h * rate)) / (2 * h);
    expect_vec_near(tf->drift(x, z, rate), fd, 1e-5);
  }
}

TEST(Se3, GuardRejectsGimbalLock) {
  const auto tf = se3_euler_transform();
  EXPECT_THROW(tf->apply(vec({0, 0, 0}), vec({0, 0, 0, 0, kPi / 2 - 0.05, 0})),
               EulerSingularityError);
  EXPECT_THROW(check_euler_guard(-1.5), EulerSingularityError);
  EXPECT_NO_THROW(check_euler_guard(1.4));
}

TEST(StepUnicycle, StraightLine) {
  UnicycleTarget t;
  t.v_d = TimeProfile::constant(1.0);
  const UnicycleTarget next = step_unicycle(t, 0.0, 0.1);
  EXPECT_NEAR(next.x_d, 0.1, 1e-15);
  EXPECT_EQ(next.y_d, 0.0);
  EXPECT_EQ(next.phi_d, 0.0);
}

TEST(StepUnicycle, ConstantTurnStaysOnCircle) {
  UnicycleTarget t;
  t.v_d = TimeProfile::constant(1.0);
  t.omega_d = TimeProfile::constant(1.0);
  const double dt = 1e-2;
  const double horizon = 20.0;
  for (int k = 0; k < static_cast<int>(horizon / dt); ++k) {
    t = step_unicycle(t, k * dt, dt);
  }
  // Circle of radius 1 centred at (0, 1).
  const double radius = std::hypot(t.x_d, t.y_d - 1.0);
  EXPECT_LT(std::abs(radius - 1.0), 1e-6 * horizon);
  EXPECT_NEAR(t.phi_d, horizon, 1e-9);
}

TEST(StepUnicycle, FourthOrderAgainstHalfStep) {
  const UnicycleTarget spec = sim1_target();
  auto integrate = [&](double dt) {
    UnicycleTarget t = spec;
    const int steps = static_cast<int>(std::lround(2.0 / dt));
    for (int k = 0; k < steps; ++k) t = step_unicycle(t, k * dt, dt);
    return t.state();
  };
  const VecN ref = integrate(1e-3);
  const double e1 = (integrate(0.1) - ref).norm();
  const double e2 = (integrate(0.05) - ref).norm();
  EXPECT_GT(e1 / e2, 12.0);
  EXPECT_LT(e2, 1e-5);
}

TEST(Aircraft, KinematicsExamples) {
  AircraftTarget a;
  a.body_vel = {TimeProfile::constant(1.0), TimeProfile{}, TimeProfile{}};
  expect_vec_near(a.rates(a.state(), 0.0), vec({1, 0, 0, 0, 0, 0}), 1e-15);
  a.euler = {0.0, 0.0, kPi / 4};
  expect_vec_near(a.rates(a.state(), 0.0).head(3),
                  vec({std::sqrt(0.5), std::sqrt(0.5), 0.0}), 1e-15);
}

TEST(Aircraft, BodyToInertialFirstColumn) {
  // First column of the body-to-inertial rotation as in the translational kinematics.
  const double a = 0.3, b = -0.4, c = 1.1;
  const MatN r = euler_body_to_inertial(a, b, c);
  expect_vec_near(r.col(0), vec({std::cos(b) * std::cos(c), std::cos(b) * std::sin(c), -std::sin(b)}),
                  1e-15);
}

TEST(Aircraft, PaperProfilesKeepGuardFor60s) {
  AircraftTarget a = sim2_target();
  const double dt = 1e-2;
  double max_pitch = 0.0;
  for (int k = 0; k < 6000; ++k) {
    ASSERT_NO_THROW(a = step_aircraft(a, k * dt, dt));
    max_pitch = std::max(max_pitch, std::abs(a.euler[1]));
  }
  EXPECT_LT(max_pitch, kPi / 2 - kEulerGuard);
}

TEST(Aircraft, StepRejectsGuardViolation) {
  AircraftTarget a;
  a.euler = {0.0, 1.47, 0.0};
  a.body_rates = {TimeProfile{}, TimeProfile::constant(1.0), TimeProfile{}};
  EXPECT_THROW(step_aircraft(a, 0.0, 0.1), EulerSingularityError);
}

TEST(MovingFrame, FromSpec) {
  const MovingFrame s = MovingFrame::from_spec(StaticFrame{}, 3);
  EXPECT_EQ(s.target_dim(), 0);
  EXPECT_EQ(s.transform().dim(), 3);
  const MovingFrame u = MovingFrame::from_spec(sim1_target(), 2);
  EXPECT_EQ(u.target_dim(), 3);
  EXPECT_THROW(MovingFrame::from_spec(sim1_target(), 3), DimensionError);
  EXPECT_THROW(MovingFrame::from_spec(sim2_target(), 2), DimensionError);
  EXPECT_EQ(frame_kind_name(StaticFrame{}), "static");
  EXPECT_EQ(frame_kind_name(sim1_target()), "se2_unicycle");
  EXPECT_EQ(frame_kind_name(sim2_target()), "se3_euler");
}

TEST(MovingFrame, StateAtMatchesStepping) {
  const UnicycleTarget spec = sim1_target();
  const MovingFrame f = MovingFrame::from_spec(spec, 2);
  UnicycleTarget t = spec;
  for (int k = 0; k < 100; ++k) t = step_unicycle(t, k * 0.01, 0.01);
  expect_vec_near(f.state_at(1.0, 0.01), t.state(), 1e-12);
}

TEST(CustomTransform, AcceptsConsistentTransform) {
  CustomTransformFns fns;
  fns.dim = 2;
  fns.target_dim = 1;
  fns.apply = [](const VecN& x, const VecN& z) { return VecN(x - VecN::Constant(2, z(0))); };
  fns.inverse_apply = [](const VecN& xp, const VecN& z) {
    return VecN(xp + VecN::Constant(2, z(0)));
  };
  fns.jacobian = [](const VecN&, const VecN&) { return MatN(MatN::Identity(2, 2)); };
  fns.drift = [](const VecN&, const VecN&, const VecN& zd) {
    return VecN(-VecN::Constant(2, zd(0)));
  };
  const std::vector<TransformProbe> probes{{vec({1, 2}), vec({0.5}), vec({2.0})}};
  const auto tf = register_custom_transform(fns, probes);
  expect_vec_near(tf->apply(vec({1, 2}), vec({0.5})), vec({0.5, 1.5}), 1e-15);
}

TEST(CustomTransform, RejectsWrongDrift) {
  CustomTransformFns fns;
  fns.dim = 2;
  fns.target_dim = 1;
  fns.apply = [](const VecN& x, const VecN& z) { return VecN(x - VecN::Constant(2, z(0))); };
  fns.inverse_apply = [](const VecN& xp, const VecN& z) {
    return VecN(xp + VecN::Constant(2, z(0)));
  };
  fns.jacobian = [](const VecN&, const VecN&) { return MatN(MatN::Identity(2, 2)); };
  fns.drift = [](const VecN&, const VecN&, const VecN& zd) {
    return VecN(VecN::Constant(2, zd(0)));
  };
  const std::vector<TransformProbe> probes{{vec({1, 2}), vec({0.5}), vec({2.0})}};
  EXPECT_THROW(register_custom_transform(fns, probes), TransformCheckError);
}

TEST(CustomTransform, RejectsBrokenInverse) {
  CustomTransformFns fns;
  fns.dim = 1;
  fns.target_dim = 1;
  fns.apply = [](const VecN& x, const VecN&) { return VecN(2.0 * x); };
  fns.inverse_apply = [](const VecN& xp, const VecN&) { return VecN(xp); };
  fns.jacobian = [](const VecN&, const VecN&) { return MatN(MatN::Constant(1, 1, 2.0)); };
  fns.drift = [](const VecN&, const VecN&, const VecN&) { return VecN(VecN::Zero(1)); };
  const std::vector<TransformProbe> probes{{vec({1}), vec({0}), vec({0})}};
  EXPECT_THROW(register_custom_transform(fns, probes), TransformCheckError);
}

}  // namespace
}  // namespace cgvf
