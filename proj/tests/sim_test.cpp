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
#include <string>

#include "cgvf/errors.hpp"
#include "cgvf/rk4.hpp"
#include "cgvf/sim.hpp"

namespace cgvf {
namespace {

constexpr double kPi = std::numbers::pi;

VecN vec(std::initializer_list<double> xs) {
  VecN v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

UnicycleTarget planar_target() {
  UnicycleTarget t;
  t.v_d = TimeProfile::constant(1.0);
  t.omega_d = TimeProfile::sine(0.5, 1.0);
  return t;
}

Scenario planar_pair(double g, double t_end) {
  Scenario s;
  s.dim = 2;
  s.path = PathSpec{"ellipse", {}};
  s.frame = planar_target();
  s.agents = {{vec({2, 1}), 0.0}, {vec({1, -2}), 0.0}};
  s.gains = GainSet::unit(2, 1.0);
  s.gains.G_diag(2) = g;
  s.coordination = Coordination{{{0, 1}}, vec({kPi / 4, 0})};
  s.dt = 1e-3;
  s.t_end = t_end;
  s.record_stride = 1;
  return s;
}

Scenario on_path_static() {
  Scenario s;
  s.dim = 2;
  s.path = PathSpec{"ellipse", {}};
  s.frame = StaticFrame{};
  s.agents = {{vec({2, 0}), 0.0}};
  s.gains = GainSet::unit(2);
  s.t_end = 5.0;
  s.record_stride = 50;
  return s;
}

TEST(Rk4, ZeroDerivativeKeepsState) {
  const VecN y = vec({1, -2, 3});
  EXPECT_EQ(rk4_step(y, 0.0, 0.1, [](double, const VecN& v) -> VecN { return VecN::Zero(v.size()); }),
            y);
}

TEST(Rk4, ExponentialSingleStep) {
  const VecN y = rk4_step(vec({1}), 0.0, 0.1, [](double, const VecN& v) -> VecN { return v; });
  EXPECT_NEAR(y(0), 1.1051708, 1e-7);
  EXPECT_LT(std::abs(y(0) - std::exp(0.1)), 1e-7);
}

TEST(Rk4, FourthOrderConvergence) {
  auto error = [](double dt) {
    VecN y = vec({1});
    const int steps = static_cast<int>(std::lround(1.0 / dt));
    for (int i = 0; i < steps; ++i) {
      y = rk4_step(y, i * dt, dt, [](double, const VecN& v) -> VecN { return v; });
    }
    return std::abs(y(0) - std::exp(1.0));
  };
  const double ratio = error(0.1) / error(0.05);
  EXPECT_GT(ratio, 14.0);
  EXPECT_LT(ratio, 18.0);
}

TEST(Rk4, UsesStageTimes) {
  // ydot = t integrates exactly for a polynomial of degree < 5.
  const VecN y = rk4_step(vec({0}), 1.0, 0.5, [](double t, const VecN&) -> VecN {
    return vec({t * t * t});
  });
  EXPECT_NEAR(y(0), (std::pow(1.5, 4) - 1.0) / 4.0, 1e-14);
}

TEST(Rk4, RejectsNonPositiveStep) {
  EXPECT_THROW(rk4_step(vec({1}), 0.0, 0.0, [](double, const VecN& v) -> VecN { return v; }),
               std::invalid_argument);
}

TEST(Run, OnPathStaticStaysOnPath) {
  const TrajectoryRecord rec = run(on_path_static());
  ASSERT_FALSE(rec.samples.empty());
  for (const TrajectorySample& s : rec.samples) EXPECT_LT(s.agents[0].phi_norm, 1e-9);
  const RunMetrics m = metrics(rec);
  EXPECT_LT(m.agents[0].max_phi_sq, 1e-9);
  EXPECT_LT(m.agents[0].final_phi_sq, 1e-9);
  EXPECT_EQ(m.max_final_edge_error, 0.0);
  ASSERT_TRUE(m.time_to_tolerance.has_value());
  EXPECT_EQ(*m.time_to_tolerance, 0.0);
  EXPECT_LE(m.max_composite_increase, 1e-9);
  EXPECT_NEAR(rec.samples.back().t, 5.0, 1e-12);
  // theta advances at the wedge rate 1 on the path.
  EXPECT_NEAR(rec.samples.back().agents[0].theta, 5.0, 1e-9);
}

TEST(Run, SampleTimesAndStride) {
  Scenario s = on_path_static();
  s.t_end = 1.0;
  s.record_stride = 300;
  const TrajectoryRecord rec = run(s);
  ASSERT_EQ(rec.samples.size(), 5u);  // 0, 0.3, 0.6, 0.9, 1.0
  EXPECT_EQ(rec.samples[0].t, 0.0);
  EXPECT_NEAR(rec.samples[1].t, 0.3, 1e-12);
  EXPECT_NEAR(rec.samples.back().t, 1.0, 1e-12);
  for (std::size_t k = 1; k < rec.samples.size(); ++k) {
    EXPECT_GT(rec.samples[k].t, rec.samples[k - 1].t);
  }
}

TEST(Run, Deterministic) {
  const Scenario s = planar_pair(1.0, 2.0);
  const TrajectoryRecord a = run(s);
  const TrajectoryRecord b = run(s);
  ASSERT_EQ(a.samples.size(), b.samples.size());
  for (std::size_t k = 0; k < a.samples.size(); ++k) {
    EXPECT_EQ(a.samples[k].target, b.samples[k].target);
    for (std::size_t i = 0; i < 2; ++i) {
      EXPECT_EQ(a.samples[k].agents[i].x_inertial, b.samples[k].agents[i].x_inertial);
      EXPECT_EQ(a.samples[k].agents[i].theta, b.samples[k].agents[i].theta);
    }
    EXPECT_EQ(a.samples[k].composite_V, b.samples[k].composite_V);
  }
}

TEST(Run, RecordedPathCoordinatesMatchTransform) {
  const TrajectoryRecord rec = run(planar_pair(1.0, 3.0));
  const auto se2 = se2_transform();
  for (std::size_t k = 0; k < rec.samples.size(); k += 97) {
    for (const AgentSample& a : rec.samples[k].agents) {
      EXPECT_LE((se2->apply(a.x_inertial, rec.samples[k].target) - a.x_path).cwiseAbs().maxCoeff(),
                1e-10);
    }
  }
}

TEST(Run, TargetFollowsUnicycleKinematics) {
  const TrajectoryRecord rec = run(planar_pair(1.0, 2.0));
  const MovingFrame frame = MovingFrame::from_spec(planar_target(), 2);
  EXPECT_LE((rec.samples.back().target - frame.state_at(2.0, 1e-3)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Run, EdgeErrorDynamicsMatchFiniteDifference) {
  const Scenario s = planar_pair(0.3, 2.0);
  const TrajectoryRecord rec = run(s);
  const CommGraph graph(2, s.coordination->edges);
  const FormationPattern pattern(s.coordination->theta_star);
  const ParametricPath path = builtin_ellipse();
  for (std::size_t k = 1; k + 1 < rec.samples.size(); k += 111) {
    const TrajectorySample& now = rec.samples[k];
    const double h = rec.samples[k + 1].t - rec.samples[k - 1].t;
    const VecN fd = (rec.samples[k + 1].edge_errors - rec.samples[k - 1].edge_errors) / h;
    VecN theta(2), alpha(2);
    for (Eigen::Index i = 0; i < 2; ++i) {
      const AgentSample& a = now.agents[static_cast<std::size_t>(i)];
      theta(i) = a.theta;
      alpha(i) = grad_xi_V(level_set_errors(path, a.x_path, a.theta), s.gains.k)(2);
    }
    const VecN predicted =
        edge_error_rate(alpha, theta, graph, pattern, s.gains.g(), s.gains.k_c);
    EXPECT_LE((fd - predicted).cwiseAbs().maxCoeff(), 1e-5);
  }
}

TEST(Run, CoordinatedCompositeNonIncreasing) {
  for (double g : {0.3, 0.7, 1.0}) {
    const RunMetrics m = metrics(run(planar_pair(g, 15.0)));
    EXPECT_LE(m.max_composite_increase, 1e-8) << "g=" << g;
  }
}

TEST(Run, SingleAgentDescentForDiagonalGains) {
  Scenario s = planar_pair(1.0, 10.0);
  s.agents.resize(1);
  s.coordination.reset();
  s.gains.k = vec({1.5, 0.8});
  s.gains.G_diag = vec({0.5, 2.0, 0.7});
  s.gains.k_c = 0.0;
  const TrajectoryRecord rec = run(s);
  std::vector<LyapunovSample> trace;
  for (const TrajectorySample& smp : rec.samples) {
    trace.push_back({smp.t, smp.agents[0].V, smp.agents[0].grad_norm});
  }
  EXPECT_LE(lyapunov_rate_check(trace, std::nullopt).max_rate, 1e-8);
}

TEST(Run, PlanarPairConverges) {
  const RunMetrics m = metrics(run(planar_pair(1.0, 30.0)));
  for (const AgentMetrics& a : m.agents) EXPECT_LT(std::sqrt(a.final_phi_sq), 1e-2);
  EXPECT_LT(m.max_final_edge_error, 1e-2);
  ASSERT_TRUE(m.time_to_tolerance.has_value());
  EXPECT_LT(*m.time_to_tolerance, 30.0);
}

TEST(Run, HeaderRecordsProvenance) {
  Scenario s = planar_pair(1.0, 0.5);
  s.dt = 2.5e-3;
  const TrajectoryRecord rec = run(s);
  auto find = [&](const std::string& key) {
    for (const auto& [k, v] : rec.header) {
      if (k == key) return v;
    }
    return std::string("<missing>");
  };
  EXPECT_EQ(find("dt_s"), "0.0025");
  EXPECT_EQ(find("frame"), "se2_unicycle");
  EXPECT_EQ(find("path"), "ellipse");
  EXPECT_EQ(find("coordination"), "LaSalle");
  EXPECT_EQ(find("g"), "1");
  EXPECT_EQ(rec.edges, s.coordination->edges);
}

TEST(Run, DivergenceGuard) {
  Scenario s = on_path_static();
  s.path = PathSpec{"", {{{1e10, 0.0, 1.0}}, {{0.0, 1e10, 1.0}}}};
  s.agents = {{vec({0, 0}), 0.0}};
  EXPECT_THROW(run(s), DivergenceError);
}

TEST(Scenario, ValidationErrors) {
  Scenario s = planar_pair(1.0, 1.0);
  EXPECT_NO_THROW(s.validate());

  Scenario bad = s;
  bad.dt = 0.0;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  bad = s;
  bad.t_end = bad.dt;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  bad = s;
  bad.agents[1].x = vec({1, 2, 3});
  EXPECT_THROW(bad.validate(), DimensionError);
  bad = s;
  bad.gains.G_diag(2) = 1.5;
  EXPECT_THROW(bad.validate(), InvalidGainError);
  bad.coordination.reset();
  EXPECT_NO_THROW(bad.validate());
  bad = s;
  bad.coordination->theta_star = vec({1, 2, 3});
  EXPECT_THROW(bad.validate(), DimensionError);
  bad = s;
  bad.agents.push_back({vec({0, 0}), 0.0});
  EXPECT_THROW(bad.validate(), std::invalid_argument);  // third agent not in graph
  bad = s;
  bad.path = PathSpec{"lissajous", {}};
  EXPECT_THROW(bad.validate(), DimensionError);
  EXPECT_THROW(run(bad), DimensionError);
}

TEST(Metrics, EmptyRecordRejected) {
  EXPECT_THROW(metrics(TrajectoryRecord{}), std::invalid_argument);
}

}  // namespace
}  // namespace cgvf
