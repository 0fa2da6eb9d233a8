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

// Scenario files: one YAML document, unit-suffixed keys (m, rad, s).
// Unknown keys are rejected; errors carry the offending key and line.
//
//   dimension: 2
//   path: {builtin: ellipse}            # or fourier: [[{cos, sin, freq}...]...]
//   frame:
//     kind: se2_unicycle                # static | se2_unicycle | se3_euler
//     x_m: 0
//     y_m: 0
//     phi_rad: 0
//     v_mps: 1                          # number or list of profile terms
//     omega_radps: [{kind: sin, amplitude: 0.5, frequency_radps: 1}]
//   agents:
//     - {x_m: [2, 1], theta: 0}
//   gains: {k: [1, 1], g: 1, k_c: 1}    # G_diag / H_diag optional
//   graph: {edges: [[1, 2]], theta_star_rad: [0.785398, 0]}
//   integrator: {dt_s: 0.001, t_end_s: 30, record_stride: 10}
//   output: {dir: out/sim1, name: trajectory}

#include <stdexcept>
#include <string>
#include <string_view>

#include "cgvf/sim.hpp"

namespace cgvf {

class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, int line, const std::string& message);

  const std::string& key() const { return key_; }
  int line() const { return line_; }  // 1 based, 0 when unknown

 private:
  std::string key_;
  int line_;
};

struct OutputSpec {
  std::string dir = "out";
  std::string name = "trajectory";

  bool operator==(const OutputSpec&) const = default;
};

struct ScenarioConfig {
  Scenario scenario;
  OutputSpec output;

  bool operator==(const ScenarioConfig&) const = default;
};

// Parses and fully validates a scenario document. Defaults: dt_s = 1e-3,
// G = diag(1, ..., 1, g) with g = 1, H = I, k = 1, k_c = 1 with a graph
// (0 without), orientation = +1, record_stride = 1.
ScenarioConfig parse_config(std::string_view text);

// Reads a file and parses it. Missing files raise ConfigError with line 0.
ScenarioConfig load_config_file(const std::string& path);

// Text of a scenario shipped with the library ("sim1", "sim2"). Throws
// std::invalid_argument for other names.
std::string_view bundled_config(std::string_view name);

// Emits a document that parse_config maps back to an equal ScenarioConfig.
std::string serialize_config(const ScenarioConfig& config);

}  // namespace cgvf
