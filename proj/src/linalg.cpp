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

#include "cgvf/linalg.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "cgvf/errors.hpp"

namespace cgvf {
namespace {

// Laplace expansion along the first row.
double cofactor_determinant(const MatN& m) {
  const Eigen::Index n = m.rows();
  if (n == 0) return 1.0;
  if (n == 1) return m(0, 0);
  if (n == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);

  double det = 0.0;
  MatN minor(n - 1, n - 1);
  for (Eigen::Index col = 0; col < n; ++col) {
    if (m(0, col) == 0.0) continue;
    for (Eigen::Index r = 1; r < n; ++r) {
      Eigen::Index dst = 0;
      for (Eigen::Index c = 0; c < n; ++c) {
        if (c == col) continue;
        minor(r - 1, dst++) = m(r, c);
      }
    }
    const double sign = (col % 2 == 0) ? 1.0 : -1.0;
    det += sign * m(0, col) * cofactor_determinant(minor);
  }
  return det;
}

}  // namespace

void require_dim(const VecN& v, Eigen::Index expected, std::string_view what) {
  if (v.size() != expected) {
    throw DimensionError(std::string(what) + ": expected dimension " +
                         std::to_string(expected) + ", got " +
                         std::to_string(v.size()));
  }
}

bool all_finite(const VecN& v) { return v.allFinite(); }

void require_finite(const VecN& v, std::string_view what) {
  if (!v.allFinite()) {
    throw std::domain_error(std::string(what) + ": non-finite entry");
  }
}

double determinant(const MatN& m) {
  if (m.rows() != m.cols()) {
    throw DimensionError("determinant: matrix is " + std::to_string(m.rows()) +
                         "x" + std::to_string(m.cols()));
  }
  if (m.rows() <= kCofactorMaxOrder) return cofactor_determinant(m);
  return m.partialPivLu().determinant();
}

VecN generalized_cross(std::span<const VecN> vs) {
  const auto n = static_cast<Eigen::Index>(vs.size());
  if (n < 1) {
    throw DimensionError("generalized_cross: need at least one vector");
  }
  MatN stacked(n, n + 1);
  for (Eigen::Index i = 0; i < n; ++i) {
    require_dim(vs[i], n + 1, "generalized_cross");
    require_finite(vs[i], "generalized_cross");
    stacked.row(i) = vs[i].transpose();
  }

  VecN out(n + 1);
  MatN minor(n, n);
  for (Eigen::Index k = 0; k <= n; ++k) {
    if (k > 0) minor.leftCols(k) = stacked.leftCols(k);
    if (k < n) minor.rightCols(n - k) = stacked.rightCols(n - k);
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    out(k) = sign * determinant(minor);
  }
  return out;
}

VecN finite_diff_gradient(const ScalarField& f, const VecN& x, double h) {
  if (!(h > 0.0)) {
    throw std::invalid_argument("finite_diff_gradient: step must be positive");
  }
  VecN grad(x.size());
  VecN probe = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    probe(i) = x(i) + h;
    const double up = f(probe);
    probe(i) = x(i) - h;
    const double down = f(probe);
    probe(i) = x(i);
    grad(i) = (up - down) / (2.0 * h);
  }
  return grad;
}

MatN skew2(double omega) {
  MatN s(2, 2);
  s << 0.0, omega, -omega, 0.0;
  return s;
}

MatN skew3(const VecN& v) {
  require_dim(v, 3, "skew3");
  MatN s(3, 3);
  s << 0.0, -v(2), v(1),
       v(2), 0.0, -v(0),
       -v(1), v(0), 0.0;
  return s;
}

MatN positive_diagonal(const VecN& entries, std::string_view what) {
  for (Eigen::Index i = 0; i < entries.size(); ++i) {
    if (!(entries(i) > 0.0) || !std::isfinite(entries(i))) {
      throw InvalidGainError(std::string(what) + ": diagonal entry " +
                             std::to_string(i) + " must be positive");
    }
  }
  return entries.asDiagonal();
}

}  // namespace cgvf
