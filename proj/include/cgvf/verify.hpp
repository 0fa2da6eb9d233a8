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

// Property and reproduction checks shared by the acceptance binary and the
// `check` subcommand. Each check is self-contained and deterministic.

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace cgvf {

struct CheckResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;  // wall time of the whole check
};

CheckResult check_wedge_orthogonality();   // random sets in R^3 / R^4
CheckResult check_wedge_closed_form();     // builtin paths
CheckResult check_non_vanishing();         // random states + field grid
CheckResult check_lyapunov_descent();      // single-agent runs
CheckResult check_planar_oracle();         // closed-form 2-D control
CheckResult check_planar_reproduction();   // bundled sim1
CheckResult check_spatial_reproduction();  // bundled sim2
CheckResult check_coordination_gate();     // gain gate + composite descent
CheckResult check_frame_compensation();    // static vs moving frame
CheckResult check_integrator_order();      // RK4 order + dt robustness

struct NamedCheck {
  int id;
  const char* name;
  std::function<CheckResult()> fn;
};

// Ordered list of all checks.
const std::vector<NamedCheck>& acceptance_checks();

// Runs every check. Exceptions inside a check become a failed result.
// Progress lines are written to `progress` when non-null.
std::vector<CheckResult> run_acceptance_suite(std::ostream* progress = nullptr);

// "PASS [ 1] name ... detail (0.12 s)"
std::string format_result(const CheckResult& result);

}  // namespace cgvf
