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

#include "cgvf/paths.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <ostream>
#include <stdexcept>
#include <utility>

#include "cgvf/errors.hpp"

namespace cgvf {
namespace {

enum class Order { kValue, kFirst, kSecond };

VecN eval_fourier(const std::vector<FourierSeries>& coords, double theta,
                  Order order) {
  VecN out = VecN::Zero(static_cast<Eigen::Index>(coords.size()));
  for (std::size_t i = 0; i < coords.size(); ++i) {
    double sum = 0.0;
    for (const FourierTerm& t : coords[i]) {
      const double c = std::cos(t.freq * theta);
      const double s = std::sin(t.freq * theta);
      switch (order) {
        case Order::kValue:
          sum += t.cos_coeff * c + t.sin_coeff * s;
          break;
        case Order::kFirst:
          sum += t.freq * (-t.cos_coeff * s + t.sin_coeff * c);
          break;
        case Order::kSecond:
          sum += -t.freq * t.freq * (t.cos_coeff * c + t.sin_coeff * s);
          break;
      }
    }
    out(static_cast<Eigen::Index>(i)) = sum;
  }
  return out;
}

}  // namespace

ParametricPath::ParametricPath(std::string name, Eigen::Index dim,
                               CurveFn eval, CurveFn deriv,
                               CurveFn second_deriv)
    : name_(std::move(name)),
      dim_(dim),
      eval_(std::move(eval)),
      deriv_(std::move(deriv)),
      second_(std::move(second_deriv)) {
  if (dim_ < 1) throw DimensionError("ParametricPath: dimension must be >= 1");
  if (!eval_ || !deriv_) {
    throw std::invalid_argument("ParametricPath: eval and deriv are required");
  }
}

ParametricPath ParametricPath::fourier(std::string name,
                                       std::vector<FourierSeries> coords) {
  if (coords.empty()) {
    throw std::invalid_argument("fourier path: no coordinates");
  }
  const auto dim = static_cast<Eigen::Index>(coords.size());
  auto shared = std::make_shared<const std::vector<FourierSeries>>(
      std::move(coords));
  return ParametricPath(
      std::move(name), dim,
      [shared](double th) { return eval_fourier(*shared, th, Order::kValue); },
      [shared](double th) { return eval_fourier(*shared, th, Order::kFirst); },
      [shared](double th) {
        return eval_fourier(*shared, th, Order::kSecond);
      });
}

VecN ParametricPath::eval(double theta) const {
  VecN v = eval_(theta);
  require_dim(v, dim_, name_ + " eval");
  return v;
}

VecN ParametricPath::deriv(double theta) const {
  VecN v = deriv_(theta);
  require_dim(v, dim_, name_ + " deriv");
  return v;
}

std::optional<VecN> ParametricPath::second_deriv(double theta) const {
  if (!second_) return std::nullopt;
  VecN v = second_(theta);
  require_dim(v, dim_, name_ + " second_deriv");
  return v;
}

ParametricPath builtin_ellipse() {
  return ParametricPath::fourier(
      "ellipse", {{{2.0, 0.0, 1.0}}, {{0.0, 1.0, 1.0}}});
}

ParametricPath builtin_lissajous() {
  return ParametricPath::fourier(
      "lissajous",
      {{{2.0, 0.0, 1.0}}, {{0.0, 1.0, 1.0}}, {{1.0, 0.0, 0.5}}});
}

ParametricPath make_path(const PathSpec& spec) {
  if (!spec.builtin.empty()) {
    if (!spec.coords.empty()) {
      throw std::invalid_argument(
          "path: give either a builtin name or Fourier coordinates, not both");
    }
    if (spec.builtin == "ellipse") return builtin_ellipse();
    if (spec.builtin == "lissajous") return builtin_lissajous();
    throw std::invalid_argument("path: unknown builtin '" + spec.builtin + "'");
  }
  return ParametricPath::fourier("fourier", spec.coords);
}

ParametricPath numeric_derivative_path(std::string name, Eigen::Index dim,
                                       ParametricPath::CurveFn eval,
                                       std::ostream* warn, double h) {
  if (warn != nullptr) {
    *warn << "warning: path '" << name
          << "' uses finite-difference derivatives; supply analytic "
             "derivatives for accurate extended gradients\n";
  }
  auto deriv = [eval, h](double th) -> VecN {
    return (eval(th + h) - eval(th - h)) / (2.0 * h);
  };
  return ParametricPath(std::move(name), dim, std::move(eval),
                        std::move(deriv));
}

DerivativeCheck check_derivative(const ParametricPath& path, double lo,
                                 double hi, int samples, double tol) {
  DerivativeCheck result;
  const double h = kDefaultFdStep;
  for (int s = 0; s < samples; ++s) {
    const double th =
        samples == 1 ? lo : lo + (hi - lo) * s / static_cast<double>(samples - 1);
    const VecN fd = (path.eval(th + h) - path.eval(th - h)) / (2.0 * h);
    result.max_error =
        std::max(result.max_error, (fd - path.deriv(th)).cwiseAbs().maxCoeff());
  }
  result.ok = result.max_error <= tol;
  return result;
}

bool DerivativeBounds::finite() const {
  return std::isfinite(max_first) && std::isfinite(max_second);
}

DerivativeBounds derivative_bounds(const ParametricPath& path, double lo,
                                   double hi, int samples) {
  DerivativeBounds b;
  const double h = kDefaultFdStep;
  for (int s = 0; s < samples; ++s) {
    const double th =
        samples == 1 ? lo : lo + (hi - lo) * s / static_cast<double>(samples - 1);
    b.max_first = std::max(b.max_first, path.deriv(th).cwiseAbs().maxCoeff());
    const VecN second = path.has_second_deriv()
                            ? *path.second_deriv(th)
                            : VecN((path.deriv(th + h) - path.deriv(th - h)) /
                                   (2.0 * h));
    b.max_second = std::max(b.max_second, second.cwiseAbs().maxCoeff());
  }
  return b;
}

LevelSetErrors level_set_errors(const ParametricPath& path, const VecN& x_path,
                                double theta) {
  const Eigen::Index n = path.dim();
  require_dim(x_path, n, "level_set_errors");
  const VecN f = path.eval(theta);
  const VecN df = path.deriv(theta);

  LevelSetErrors out;
  out.phi = x_path - f;
  out.grads_xi.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    VecN g = VecN::Zero(n + 1);
    g(i) = 1.0;
    g(n) = -df(i);
    out.grads_xi.push_back(std::move(g));
  }
  return out;
}

VecN wedge_closed_form(const ParametricPath& path, double theta) {
  const Eigen::Index n = path.dim();
  VecN w(n + 1);
  w.head(n) = path.deriv(theta);
  w(n) = 1.0;
  return (n % 2 == 0) ? w : VecN(-w);
}

VecN project(const ExtendedState& xi) { return xi.x; }

ExtendedState extend(const VecN& x, double theta) { return {x, theta}; }

VecN stack(const ExtendedState& xi) {
  VecN out(xi.x.size() + 1);
  out << xi.x, xi.theta;
  return out;
}

}  // namespace cgvf
