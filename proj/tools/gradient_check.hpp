// Copyright 2026 The shvis Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#ifndef SHVIS_TOOLS_GRADIENT_CHECK_HPP_
#define SHVIS_TOOLS_GRADIENT_CHECK_HPP_

#include <cstdint>
#include <string>

namespace shvis::tools {

struct GradientCheckOptions {
  int trials = 100;
  double tolerance = 1e-4;
  double step = 1e-5;
  // Differences below this pass regardless of the relative error.
  double absolute_floor = 1e-8;
  std::uint64_t seed = 0;
};

struct GradientCheckReport {
  int trials = 0;
  int partials_checked = 0;
  int violations = 0;
  // Largest |analytic - numeric| / max(|analytic|, |numeric|, floor / tol).
  double worst_relative_error = 0.0;
  std::string worst_partial;
};

// Compares every analytic partial of ComputeRenderGradients with central
// differences on random pixels and lights.
GradientCheckReport RunGradientCheck(const GradientCheckOptions& options);

}  // namespace shvis::tools

#endif  // SHVIS_TOOLS_GRADIENT_CHECK_HPP_
