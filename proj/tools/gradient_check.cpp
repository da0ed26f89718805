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
#include "gradient_check.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include <Eigen/Geometry>

#include "shvis/renderer.hpp"

namespace shvis::tools {

namespace {

SHCoeffs9 RandomCoeffs(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  SHCoeffs9 c;
  for (double& v : c.c) v = u(rng);
  return c;
}

Direction RandomDirection(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  return Direction(g(rng), g(rng), g(rng));
}

class Checker {
 public:
  Checker(const GradientCheckOptions& options, GradientCheckReport& report)
      : options_(options), report_(report) {}

  void Compare(double analytic, double numeric, const std::string& name) {
    const double diff = std::abs(analytic - numeric);
    const double scale = std::max({std::abs(analytic), std::abs(numeric),
                                   options_.absolute_floor / options_.tolerance});
    const double error = diff / scale;
    ++report_.partials_checked;
    if (!(error < options_.tolerance)) ++report_.violations;
    if (error > report_.worst_relative_error || std::isnan(error)) {
      report_.worst_relative_error = error;
      report_.worst_partial = name;
    }
  }

  // Central difference of `channel` of RenderPixel with `perturb` applied
  // at +h and -h.
  double Central(const PixelIntrinsics& pixel, const IlluminationRgb& light, int channel,
                 const std::function<void(PixelIntrinsics&, IlluminationRgb&, double)>& perturb) {
    const double h = options_.step;
    PixelIntrinsics p_plus = pixel;
    IlluminationRgb l_plus = light;
    perturb(p_plus, l_plus, h);
    PixelIntrinsics p_minus = pixel;
    IlluminationRgb l_minus = light;
    perturb(p_minus, l_minus, -h);
    const auto c = static_cast<std::size_t>(channel);
    return (RenderPixel(p_plus, l_plus)[c] - RenderPixel(p_minus, l_minus)[c]) / (2.0 * h);
  }

 private:
  const GradientCheckOptions& options_;
  GradientCheckReport& report_;
};

}  // namespace

GradientCheckReport RunGradientCheck(const GradientCheckOptions& options) {
  GradientCheckReport report;
  Checker checker(options, report);
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> unit(0.05, 1.0);

  for (int trial = 0; trial < options.trials; ++trial) {
    PixelIntrinsics pixel;
    pixel.albedo = {unit(rng), unit(rng), unit(rng)};
    pixel.normal = RandomDirection(rng);
    pixel.visibility = RandomCoeffs(rng);
    IlluminationRgb light{{RandomCoeffs(rng), RandomCoeffs(rng), RandomCoeffs(rng)}};
    const PixelGradients grads = ComputeRenderGradients(pixel, light);

    const Eigen::Vector3d n = pixel.normal.vec();
    const Eigen::Vector3d t1 = n.unitOrthogonal();
    const Eigen::Vector3d t2 = n.cross(t1);

    for (int c = 0; c < 3; ++c) {
      const RenderGradients& g = grads[static_cast<std::size_t>(c)];
      const std::string tag = "trial " + std::to_string(trial) + " channel " + std::to_string(c);
      checker.Compare(g.d_albedo,
                      checker.Central(pixel, light, c,
                                      [c](PixelIntrinsics& p, IlluminationRgb&, double h) {
                                        p.albedo[static_cast<std::size_t>(c)] += h;
                                      }),
                      tag + " albedo");
      for (int k = 0; k < kNumCoeffs; ++k) {
        checker.Compare(g.d_visibility[k],
                        checker.Central(pixel, light, c,
                                        [k](PixelIntrinsics& p, IlluminationRgb&, double h) {
                                          p.visibility[k] += h;
                                        }),
                        tag + " visibility[" + std::to_string(k) + "]");
        checker.Compare(g.d_light[k],
                        checker.Central(pixel, light, c,
                                        [c, k](PixelIntrinsics&, IlluminationRgb& l, double h) {
                                          l[c][k] += h;
                                        }),
                        tag + " light[" + std::to_string(k) + "]");
      }
      for (const Eigen::Vector3d& t : {t1, t2}) {
        checker.Compare(g.d_normal.dot(t),
                        checker.Central(pixel, light, c,
                                        [&](PixelIntrinsics& p, IlluminationRgb&, double h) {
                                          p.normal = Direction(n + h * t);
                                        }),
                        tag + " normal");
      }
    }
    ++report.trials;
  }
  return report;
}

}  // namespace shvis::tools
