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
// Rotation of degree <= 2 SH coefficients. A rotation R in SO(3) acts on
// coefficients through the 9x9 matrix M_ij = int Y_i(R w) Y_j(w) dw, so that
// the rotated function g(R w) = f(w) has coefficients g = M f.
//
// General rotations are built from the ZYZ Euler decomposition
//   R(alpha, beta, gamma) = Z_gamma Y_beta Z_alpha
//                         = Z_gamma X_-90 Z_beta X_+90 Z_alpha,
// where every factor is a sparse matrix with closed-form entries.

#ifndef SHVIS_SH_TRANSFORM_HPP_
#define SHVIS_SH_TRANSFORM_HPP_

#include <array>

#include "shvis/sh_core.hpp"

namespace shvis {

class SHRotation {
 public:
  using Matrix = std::array<std::array<double, kNumCoeffs>, kNumCoeffs>;

  // Zero matrix.
  SHRotation() = default;
  explicit SHRotation(const Matrix& m) : m_(m) {}

  static SHRotation Identity();

  double& operator()(int row, int col) {
    return m_[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)];
  }
  double operator()(int row, int col) const {
    return m_[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)];
  }

  SHRotation Transposed() const;

  // Largest |M M^T - I| entry.
  double OrthogonalityError() const;
  // Largest |entry| coupling different degrees.
  double OffBlockMagnitude() const;

  friend SHRotation operator*(const SHRotation& a, const SHRotation& b);

 private:
  Matrix m_{};
};

// Rotation by alpha radians about +Z. Throws ArgumentError if not finite.
SHRotation ZRotation(double alpha);
// d/dalpha of ZRotation(alpha); zero on the degree-0 and Y10, Y20 entries.
SHRotation ZRotationDerivative(double alpha);

// Rotations of +90 and -90 degrees about +X. Each is the other's transpose.
const SHRotation& XPlus90();
const SHRotation& XMinus90();

// Z_gamma X_-90 Z_beta X_+90 Z_alpha. Throws ArgumentError on non-finite
// angles.
SHRotation ZyzRotation(double alpha, double beta, double gamma);

// g_i = sum_j f_j M_ij.
SHCoeffs9 Rotate(const SHRotation& rotation, const SHCoeffs9& coeffs);

struct EulerZyz {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
};

// Angles with R(angles) * z = n: alpha = 0, beta = acos(n_z),
// gamma = atan2(n_y, n_x), and gamma = 0 exactly on the poles.
EulerZyz EulerAnglesForNormal(const Direction& n);

// Re-centres a lobe that is symmetric about +Z onto the normal n.
SHCoeffs9 RotateToNormal(const SHCoeffs9& lobe_z, const Direction& n);

}  // namespace shvis

#endif  // SHVIS_SH_TRANSFORM_HPP_
