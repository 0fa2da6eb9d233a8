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

#include <stdexcept>
#include <utility>

#include "cgvf/linalg.hpp"

namespace cgvf {

// Classical fourth-order Runge-Kutta step of y' = f(t, y).
template <class Deriv>
VecN rk4_step(const VecN& y, double t, double dt, Deriv&& f) {
  if (!(dt > 0.0)) throw std::invalid_argument("rk4_step: dt must be positive");
  const double half = 0.5 * dt;
  const VecN k1 = f(t, y);
  const VecN k2 = f(t + half, VecN(y + half * k1));
  const VecN k3 = f(t + half, VecN(y + half * k2));
  const VecN k4 = f(t + dt, VecN(y + dt * k3));
  return y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace cgvf
