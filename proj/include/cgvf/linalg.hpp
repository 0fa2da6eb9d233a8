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

// Small dense vector/matrix helpers shared by every module. Dimensions are
// runtime properties of values so 2-D and 3-D problems share one code path.

#include <Eigen/Dense>

#include <functional>
#include <span>
#include <string_view>

namespace cgvf {

using VecN = Eigen::VectorXd;
using MatN = Eigen::MatrixXd;

inline constexpr double kDefaultFdStep = 1e-5;

// Largest matrix order for which determinant() uses cofactor expansion.
inline constexpr Eigen::Index kCofactorMaxOrder = 5;

// Throws DimensionError unless v.size() == expected.
void require_dim(const VecN& v, Eigen::Index expected, std::string_view what);

// Throws std::domain_error if any entry is NaN or infinite.
void require_finite(const VecN& v, std::string_view what);

bool all_finite(const VecN& v);

// Cofactor expansion up to kCofactorMaxOrder, partial-pivot LU above.
double determinant(const MatN& m);

/// Generalized cross (wedge) product of n vectors in R^(n+1).
///
/// Component k (zero based) is (-1)^k times the determinant of the n x n
/// matrix obtained by stacking the inputs as rows and deleting column k.
/// The result is orthogonal to every input and vanishes exactly when the
/// inputs are linearly dependent. For two vectors in R^3 it is the classical
/// cross product.
VecN generalized_cross(std::span<const VecN> vs);

using ScalarField = std::function<double(const VecN&)>;

// Central-difference gradient, component-wise (f(x+h e_i) - f(x-h e_i)) / 2h.
VecN finite_diff_gradient(const ScalarField& f, const VecN& x,
                          double h = kDefaultFdStep);

// S(omega) = [[0, omega], [-omega, 0]].
MatN skew2(double omega);

// 3x3 matrix [v]x with [v]x * a == v.cross(a).
MatN skew3(const VecN& v);

// Diagonal gain matrix; every entry must be strictly positive.
MatN positive_diagonal(const VecN& entries, std::string_view what);

}  // namespace cgvf
