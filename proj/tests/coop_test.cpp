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

#include "cgvf/coop.hpp"
#include "cgvf/errors.hpp"

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

CommGraph chain(std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return CommGraph(n, edges);
}

TEST(CommGraph, PairLaplacian) {
  MatN expected(2, 2);
  expected << 1, -1, -1, 1;
  EXPECT_EQ(laplacian(chain(2)), expected);
}

TEST(CommGraph, ChainLaplacian) {
  const CommGraph g = chain(4);
  MatN expected = MatN::Zero(4, 4);
  expected.diagonal() = vec({1, 2, 2, 1});
  expected -= g.adjacency();
  EXPECT_EQ(g.laplacian(), expected);
  EXPECT_EQ(g.adjacency()(1, 2), 1.0);
  EXPECT_EQ(g.adjacency()(0, 2), 0.0);
  EXPECT_EQ(g.neighbors(1), (std::vector<std::size_t>{0, 2}));
}

TEST(CommGraph, LaplacianProperties) {
  const std::vector<CommGraph> graphs{
      chain(2), chain(4), CommGraph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}}),
      CommGraph(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}})};
  for (const CommGraph& g : graphs) {
    const MatN l = g.laplacian();
    const MatN d = g.incidence();
    EXPECT_EQ(l, d * d.transpose());
    EXPECT_EQ(l, l.transpose());
    EXPECT_LE((l * VecN::Ones(l.rows())).cwiseAbs().maxCoeff(), 0.0);
    Eigen::SelfAdjointEigenSolver<MatN> eig(l);
    EXPECT_GT(eig.eigenvalues()(0), -1e-12);
    EXPECT_EQ(Eigen::FullPivLU<MatN>(l).rank(), l.rows() - 1);
    for (Eigen::Index e = 0; e < d.cols(); ++e) EXPECT_EQ(d.col(e).sum(), 0.0);
  }
}

TEST(CommGraph, RejectsInvalidGraphs) {
  EXPECT_THROW(CommGraph(3, {{0, 1}}), GraphError);                  // disconnected
  EXPECT_THROW(CommGraph(2, {{0, 2}}), GraphError);                  // out of range
  EXPECT_THROW(CommGraph(2, {{1, 1}}), GraphError);                  // self loop
  EXPECT_THROW(CommGraph(2, {{0, 1}, {1, 0}}), GraphError);          // duplicate
  EXPECT_THROW(CommGraph(0, {}), GraphError);
  EXPECT_NO_THROW(CommGraph(1, {}));
}

TEST(FormationPattern, AntisymmetricOffsets) {
  const FormationPattern p(vec({kPi / 2, kPi / 3, kPi / 6, 0}));
  EXPECT_DOUBLE_EQ(p.delta(0, 1), kPi / 6);
  EXPECT_EQ(p.delta(1, 0), -p.delta(0, 1));
  const CommGraph g = chain(4);
  expect_vec_near(p.offsets(g), g.incidence().transpose() * p.theta_star(), 0.0);
}

TEST(Consensus, Examples) {
  const CommGraph g = chain(2);
  const FormationPattern p(vec({kPi / 4, 0}));
  expect_vec_near(consensus_term(vec({kPi / 4, 0}), g, p), vec({0, 0}), 0.0);
  expect_vec_near(consensus_term(vec({0, 0}), g, p), vec({kPi / 4, -kPi / 4}), 1e-15);
}

TEST(Consensus, SumsToZeroAndShiftInvariant) {
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> u(-5, 5);
  const CommGraph g(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}, {1, 3}});
  for (int i = 0; i < 100; ++i) {
    VecN star(5), theta(5);
    for (int k = 0; k < 5; ++k) {
      star(k) = u(rng);
      theta(k) = u(rng);
    }
    const VecN c = consensus_term(theta, g, FormationPattern(star));
    EXPECT_LT(std::abs(c.sum()), 1e-12);
    const double shift = u(rng);
    const VecN ones = VecN::Ones(5);
    const VecN c2 =
        consensus_term(theta + shift * ones, g, FormationPattern(star + shift * ones));
    expect_vec_near(c2, c, 1e-12);
    expect_vec_near(consensus_term(theta + shift * ones, g, FormationPattern(star)),
                    c, 1e-12);
    expect_vec_near(c, -(g.laplacian() * (theta - star)), 1e-12);
  }
}

TEST(ChiCr, Examples) {
  const CommGraph g = chain(2);
  const FormationPattern p(vec({kPi / 4, 0}));
  expect_vec_near(chi_cr(0, vec({kPi / 4, 0}), g, p, 1.0, 2), VecN::Zero(3), 0.0);
  const VecN c = chi_cr(0, vec({0, 0}), g, p, 1.0, 2);
  expect_vec_near(c, vec({0, 0, kPi / 4}), 1e-15);
  EXPECT_EQ(c.head(2), VecN::Zero(2));
  EXPECT_THROW(chi_cr(2, vec({0, 0}), g, p, 1.0, 2), DimensionError);
}

TEST(CombinedField, ComposesPlanarStart) {
  const CommGraph g = chain(2);
  const FormationPattern p(vec({kPi / 4, 0}));
  UnicycleTarget target;
  target.v_d = TimeProfile::constant(1.0);
  target.omega_d = TimeProfile::sine(0.5, 1.0);
  const VecN z = target.state();
  const VecN zr = target.rates(z, 0.0);
  const auto se2 = se2_transform();
  const ExtendedState xi{vec({2, 1}), 0.0};
  const GainSet gains = GainSet::unit(2, 1.0);
  const FieldOutput base = chi_mpf(xi, builtin_ellipse(), *se2, z, zr, gains);
  const FieldOutput both =
      combined_field(0, xi, vec({0, 0}), builtin_ellipse(), *se2, z, zr, g, p, gains);
  expect_vec_near(both.xdot, base.xdot, 0.0);
  EXPECT_NEAR(both.theta_dot, base.theta_dot + kPi / 4, 1e-15);

  GainSet no_coupling = gains;
  no_coupling.k_c = 0.0;
  EXPECT_EQ(combined_field(0, xi, vec({0, 0}), builtin_ellipse(), *se2, z, zr, g, p,
                           no_coupling)
                .theta_dot,
            chi_mpf(xi, builtin_ellipse(), *se2, z, zr, no_coupling).theta_dot);
  EXPECT_EQ(combined_field(0, xi, vec({kPi / 4, 0}), builtin_ellipse(), *se2, z, zr, g, p, gains)
                .theta_dot,
            base.theta_dot);
}

TEST(CombinedField, RejectsGainAboveOne) {
  const CommGraph g = chain(2);
  const FormationPattern p(vec({kPi / 4, 0}));
  GainSet gains = GainSet::unit(2, 1.0);
  gains.G_diag(2) = 1.5;
  EXPECT_THROW(combined_field(0, {vec({2, 1}), 0.0}, vec({0, 0}), builtin_ellipse(),
                              *identity_transform(2), VecN(0), VecN(0), g, p, gains),
               InvalidGainError);
}

TEST(CompositeLyapunov, Examples) {
  const CommGraph g = chain(2);
  const FormationPattern p(vec({kPi / 4, 0}));
  const std::vector<double> zeros{0.0, 0.0};
  EXPECT_EQ(composite_lyapunov(zeros, vec({kPi / 4, 0}), g, p, 1.0), 0.0);
  EXPECT_NEAR(composite_lyapunov(zeros, vec({kPi / 4 + 1, 1}), g, p, 1.0), 0.0, 1e-15);
  EXPECT_NEAR(composite_lyapunov(zeros, vec({kPi / 4 + 1, 0}), g, p, 1.0), 0.5, 1e-15);
  const std::vector<double> vs{0.25, 0.5};
  EXPECT_NEAR(composite_lyapunov(vs, vec({kPi / 4 + 1, 0}), g, p, 2.0), 1.75, 1e-15);
}

TEST(CompositeLyapunov, SwarmOverloadOnPath) {
  const ParametricPath path = builtin_ellipse();
  const CommGraph g = chain(2);
  const FormationPattern p(vec({kPi / 4, 0}));
  SwarmState swarm{{{path.eval(kPi / 4), kPi / 4}, {path.eval(0.0), 0.0}}};
  EXPECT_EQ(swarm.theta(), vec({kPi / 4, 0}));
  EXPECT_NEAR(composite_lyapunov(swarm, path, *identity_transform(2), VecN(0), g, p,
                                 GainSet::unit(2, 1.0)),
              0.0, 1e-15);
}

TEST(EdgeErrorRate, MatchesIncidenceOfThetaRates) {
  std::mt19937_64 rng(67);
  std::uniform_real_distribution<double> u(-3, 3);
  const ParametricPath path = builtin_ellipse();
  const CommGraph g = chain(4);
  const FormationPattern p(vec({kPi / 2, kPi / 3, kPi / 6, 0}));
  const auto id = identity_transform(2);
  for (int trial = 0; trial < 50; ++trial) {
    GainSet gains = GainSet::unit(2, 1.3);
    gains.G_diag(2) = 0.3 + 0.7 * std::abs(u(rng)) / 3.0;
    VecN theta(4), alpha(4), rates(4);
    std::vector<ExtendedState> agents;
    for (int i = 0; i < 4; ++i) theta(i) = u(rng);
    for (Eigen::Index i = 0; i < 4; ++i) {
      const ExtendedState xi{vec({u(rng), u(rng)}), theta(i)};
      alpha(i) = grad_xi_V(level_set_errors(path, xi.x, xi.theta), gains.k)(2);
      rates(i) = combined_field(static_cast<std::size_t>(i), xi, theta, path, *id, VecN(0),
                                VecN(0), g, p, gains)
                     .theta_dot;
    }
    expect_vec_near(g.incidence().transpose() * rates,
                    edge_error_rate(alpha, theta, g, p, gains.g(), gains.k_c), 1e-12);
  }
}

TEST(GainGate, Cases) {
  GainSet gains = GainSet::unit(2, 1.0);
  gains.G_diag(2) = 0.5;
  GainGateResult r = gain_gate(gains, true);
  EXPECT_EQ(r.which, CoordinationCase::kStrict);
  EXPECT_EQ(to_string(r.which), "strict");
  EXPECT_DOUBLE_EQ(r.det_m, 0.25);

  gains.G_diag(2) = 1.0;
  r = gain_gate(gains, true);
  EXPECT_EQ(r.which, CoordinationCase::kLaSalle);
  EXPECT_EQ(to_string(r.which), "LaSalle");
  EXPECT_EQ(r.det_m, 0.0);

  gains.G_diag(2) = 1.5;
  EXPECT_THROW(gain_gate(gains, true), InvalidGainError);
  EXPECT_EQ(gain_gate(gains, false).which, CoordinationCase::kNone);
  EXPECT_LT(gain_gate(gains, false).det_m, 0.0);

  gains.G_diag(2) = 0.0;
  EXPECT_THROW(gain_gate(gains, false), InvalidGainError);
  gains.G_diag(2) = -0.2;
  EXPECT_THROW(gain_gate(gains, true), InvalidGainError);
}

TEST(GainGate, MessageStatesCondition) {
  GainSet gains = GainSet::unit(2, 1.0);
  gains.G_diag(2) = 2.0;
  try {
    gain_gate(gains, true);
    FAIL() << "expected rejection";
  } catch (const InvalidGainError& e) {
    EXPECT_NE(std::string(e.what()).find("0 < g <= 1"), std::string::npos);
  }
}

}  // namespace
}  // namespace cgvf
