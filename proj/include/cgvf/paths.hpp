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

// Parametric desired paths x_P = f(theta), the hyperplane encoding
// phi_i = x_P,i - f_i(theta) and its extended-space gradients.

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cgvf/linalg.hpp"

namespace cgvf {

// One term a*cos(k*theta) + b*sin(k*theta). k = 0 with a != 0 is a constant.
struct FourierTerm {
  double cos_coeff = 0.0;
  double sin_coeff = 0.0;
  double freq = 1.0;

  bool operator==(const FourierTerm&) const = default;
};

using FourierSeries = std::vector<FourierTerm>;

// Declarative path description used by scenario files: either a builtin
// name ("ellipse", "lissajous") or one Fourier series per coordinate.
struct PathSpec {
  std::string builtin;
  std::vector<FourierSeries> coords;

  bool operator==(const PathSpec&) const = default;
};

class ParametricPath {
 public:
  using CurveFn = std::function<VecN(double)>;

  ParametricPath(std::string name, Eigen::Index dim, CurveFn eval,
                 CurveFn deriv, CurveFn second_deriv = {});

  static ParametricPath fourier(std::string name,
                                std::vector<FourierSeries> coords);

  const std::string& name() const { return name_; }
  Eigen::Index dim() const { return dim_; }

  VecN eval(double theta) const;
  VecN deriv(double theta) const;
  bool has_second_deriv() const { return static_cast<bool>(second_); }
  std::optional<VecN> second_deriv(double theta) const;

 private:
  std::string name_;
  Eigen::Index dim_;
  CurveFn eval_;
  CurveFn deriv_;
  CurveFn second_;
};

// f(theta) = (2 cos theta, sin theta).
ParametricPath builtin_ellipse();

// f(theta) = (2 cos theta, sin theta, cos(theta / 2)).
ParametricPath builtin_lissajous();

// Throws std::invalid_argument for unknown builtins or empty coordinate lists.
ParametricPath make_path(const PathSpec& spec);

// Wraps a path given only by its values; the derivative comes from central
// differences. Prints a warning to `warn` (when non-null) because the field
// consumes f' directly and numeric derivatives cost accuracy.
ParametricPath numeric_derivative_path(std::string name, Eigen::Index dim,
                                       ParametricPath::CurveFn eval,
                                       std::ostream* warn,
                                       double h = kDefaultFdStep);

struct DerivativeCheck {
  double max_error = 0.0;
  bool ok = false;
};

// Compares deriv() against central differences of eval() on `samples`
// evenly spaced parameters in [lo, hi].
DerivativeCheck check_derivative(const ParametricPath& path, double lo,
                                 double hi, int samples, double tol = 1e-6);

struct DerivativeBounds {
  double max_first = 0.0;
  double max_second = 0.0;
  bool finite() const;
};

// Sampled max |f_i'| and |f_i''| over [lo, hi]. Second derivatives fall back
// to differences of deriv() when the path supplies none.
DerivativeBounds derivative_bounds(const ParametricPath& path, double lo,
                                   double hi, int samples);

struct LevelSetErrors {
  VecN phi;
  // grad_xi phi_i = (e_i, -f_i'(theta)) in R^(n+1).
  std::vector<VecN> grads_xi;
};

LevelSetErrors level_set_errors(const ParametricPath& path, const VecN& x_path,
                                double theta);

// (-1)^n (f'(theta), 1): the wedge of the grad_xi phi_i in closed form.
VecN wedge_closed_form(const ParametricPath& path, double theta);

// Extended state xi = (x, theta). The virtual coordinate lives on the whole
// real line; periodic paths are never wrapped.
struct ExtendedState {
  VecN x;
  double theta = 0.0;
};

// Drops the virtual coordinate.
VecN project(const ExtendedState& xi);

ExtendedState extend(const VecN& x, double theta);

// Stacks (x, theta) into one vector of length n + 1.
VecN stack(const ExtendedState& xi);

}  // namespace cgvf
