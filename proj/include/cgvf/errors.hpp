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
#include <string>

namespace cgvf {

// Operand sizes disagree (vector lengths, matrix shapes, agent dims).
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Gain set violates positivity or the coordination-mode bound 0 < g <= 1.
class InvalidGainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Communication graph malformed or disconnected.
class GraphError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Frame Jacobian not invertible at the evaluated state.
class SingularJacobianError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Pitch angle reached the Euler-angle gimbal-lock guard.
class EulerSingularityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Simulation state left the divergence bound.
class DivergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A user-registered transform failed its self-check.
class TransformCheckError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cgvf
