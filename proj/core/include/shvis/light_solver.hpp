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
// Recovery of incident illumination from shading coefficients, plus the
// illumination hygiene steps applied when building datasets: clamping to
// non-negative radiance, intensity scaling and rotation.
//
// Shading here is S(n) = int L(w) max(cos(w, n), 0) dw (no 1/pi), expanded as
// S(n) = sum_i S_i Y_i(n). For every sampled normal n the identity
// sum_i S_i Y_i(n) = sum_i L_i c_i(n), with c(n) the clamped cosine lobe about
// n, is one row of an over-determined linear system in L.

#ifndef SHVIS_LIGHT_SOLVER_HPP_
#define SHVIS_LIGHT_SOLVER_HPP_

#include <cstddef>

#include "shvis/renderer.hpp"
#include "shvis/sh_core.hpp"

namespace shvis {

// SH coefficients of a shading function S(n), one channel.
using ShadingCoeffs = SHCoeffs9;

enum class LeastSquaresMethod {
  // Column-pivoting Householder QR of the full system (reference).
  kQr,
  // LDLT of the 9x9 normal equations.
  kNormalEquations,
};

struct LightSolution {
  SHCoeffs9 coeffs;
  // RMS misfit over the sampled equations.
  double rms_residual = 0.0;
  // Ratio of extreme singular values of the system matrix.
  double condition_number = 0.0;
};

// Least-squares illumination over a Fibonacci lattice of `sample_count`
// normals. Throws ArgumentError for sample_count < 9 and NumericalError when
// the system is rank deficient (condition number above 1e10).
LightSolution RecoverIllumination(const ShadingCoeffs& shading,
                                  std::size_t sample_count = kIntegrationSampleCount,
                                  LeastSquaresMethod method = LeastSquaresMethod::kQr);

// Shading coefficients of a light: S(n) = DoubleProduct(L, c(n)) sampled on the
// lattice and fitted by least squares onto Y_i(n).
ShadingCoeffs ForwardShading(const SHCoeffs9& light,
                             std::size_t sample_count = kIntegrationSampleCount);

// Evaluates on the lattice, clamps negative values to zero and re-projects.
SHCoeffs9 ClampNonnegative(const SHCoeffs9& coeffs,
                           std::size_t sample_count = kIntegrationSampleCount);

// Scales the light so that the brightest channel of any masked pixel of
// RenderImage(maps, light) equals `target`. Throws DegenerateInputError when
// the mask is empty or the render peaks at or below zero.
IlluminationRgb ScaleIntensity(const IlluminationRgb& light, const IntrinsicsMap& maps,
                               double target);

// Data augmentation by rotation; ZyzRotation semantics.
SHCoeffs9 RotateIllumination(const SHCoeffs9& light, double alpha, double beta, double gamma);
IlluminationRgb RotateIllumination(const IlluminationRgb& light, double alpha, double beta,
                                   double gamma);

}  // namespace shvis

#endif  // SHVIS_LIGHT_SOLVER_HPP_
