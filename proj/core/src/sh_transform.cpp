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
#include "shvis/sh_transform.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "shvis/errors.hpp"

namespace shvis {

namespace {

void RequireFinite(double angle, const char* name) {
  if (!std::isfinite(angle)) {
    throw ArgumentError(std::string("rotation angle '") + name + "' is not finite");
  }
}

// Entries below are listed with one-based (row, column) indices to match the
// usual tabulation; Set() converts.
void Set(SHRotation& m, int row, int col, double value) { m(row - 1, col - 1) = value; }

SHRotation MakeXPlus90() {
  const double half_sqrt3 = 0.5 * std::sqrt(3.0);
  SHRotation m;
  Set(m, 1, 1, 1.0);
  Set(m, 2, 3, -1.0);
  Set(m, 3, 2, 1.0);
  Set(m, 4, 4, 1.0);
  Set(m, 5, 8, -1.0);
  Set(m, 6, 6, -1.0);
  Set(m, 7, 7, -0.5);
  Set(m, 7, 9, -half_sqrt3);
  Set(m, 8, 5, 1.0);
  Set(m, 9, 7, -half_sqrt3);
  Set(m, 9, 9, 0.5);
  return m;
}

SHRotation MakeXMinus90() {
  const double half_sqrt3 = 0.5 * std::sqrt(3.0);
  SHRotation m;
  Set(m, 1, 1, 1.0);
  Set(m, 2, 3, 1.0);
  Set(m, 3, 2, -1.0);
  Set(m, 4, 4, 1.0);
  Set(m, 5, 8, 1.0);
  Set(m, 6, 6, -1.0);
  Set(m, 7, 7, -0.5);
  Set(m, 7, 9, -half_sqrt3);
  Set(m, 8, 5, -1.0);
  Set(m, 9, 7, -half_sqrt3);
  Set(m, 9, 9, 0.5);
  return m;
}

}  // namespace

SHRotation SHRotation::Identity() {
  SHRotation m;
  for (int i = 0; i < kNumCoeffs; ++i) m(i, i) = 1.0;
  return m;
}

SHRotation SHRotation::Transposed() const {
  SHRotation t;
  for (int i = 0; i < kNumCoeffs; ++i) {
    for (int j = 0; j < kNumCoeffs; ++j) t(j, i) = (*this)(i, j);
  }
  return t;
}

double SHRotation::OrthogonalityError() const {
  const SHRotation product = *this * Transposed();
  double worst = 0.0;
  for (int i = 0; i < kNumCoeffs; ++i) {
    for (int j = 0; j < kNumCoeffs; ++j) {
      const double expected = i == j ? 1.0 : 0.0;
      worst = std::max(worst, std::abs(product(i, j) - expected));
    }
  }
  return worst;
}

double SHRotation::OffBlockMagnitude() const {
  double worst = 0.0;
  for (int i = 0; i < kNumCoeffs; ++i) {
    for (int j = 0; j < kNumCoeffs; ++j) {
      if (DegreeOf(i) != DegreeOf(j)) worst = std::max(worst, std::abs((*this)(i, j)));
    }
  }
  return worst;
}

SHRotation operator*(const SHRotation& a, const SHRotation& b) {
  SHRotation out;
  for (int i = 0; i < kNumCoeffs; ++i) {
    for (int k = 0; k < kNumCoeffs; ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < kNumCoeffs; ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

SHRotation ZRotation(double alpha) {
  RequireFinite(alpha, "alpha");
  const double c1 = std::cos(alpha);
  const double s1 = std::sin(alpha);
  const double c2 = std::cos(2.0 * alpha);
  const double s2 = std::sin(2.0 * alpha);
  SHRotation m;
  Set(m, 1, 1, 1.0);
  Set(m, 2, 2, c1);
  Set(m, 2, 4, s1);
  Set(m, 3, 3, 1.0);
  Set(m, 4, 2, -s1);
  Set(m, 4, 4, c1);
  Set(m, 5, 5, c2);
  Set(m, 5, 9, s2);
  Set(m, 6, 6, c1);
  Set(m, 6, 8, s1);
  Set(m, 7, 7, 1.0);
  Set(m, 8, 6, -s1);
  Set(m, 8, 8, c1);
  Set(m, 9, 5, -s2);
  Set(m, 9, 9, c2);
  return m;
}

SHRotation ZRotationDerivative(double alpha) {
  RequireFinite(alpha, "alpha");
  const double c1 = std::cos(alpha);
  const double s1 = std::sin(alpha);
  const double c2 = std::cos(2.0 * alpha);
  const double s2 = std::sin(2.0 * alpha);
  SHRotation m;
  Set(m, 2, 2, -s1);
  Set(m, 2, 4, c1);
  Set(m, 4, 2, -c1);
  Set(m, 4, 4, -s1);
  Set(m, 5, 5, -2.0 * s2);
  Set(m, 5, 9, 2.0 * c2);
  Set(m, 6, 6, -s1);
  Set(m, 6, 8, c1);
  Set(m, 8, 6, -c1);
  Set(m, 8, 8, -s1);
  Set(m, 9, 5, -2.0 * c2);
  Set(m, 9, 9, -2.0 * s2);
  return m;
}

const SHRotation& XPlus90() {
  static const SHRotation m = MakeXPlus90();
  return m;
}

const SHRotation& XMinus90() {
  static const SHRotation m = MakeXMinus90();
  return m;
}

SHRotation ZyzRotation(double alpha, double beta, double gamma) {
  RequireFinite(alpha, "alpha");
  RequireFinite(beta, "beta");
  RequireFinite(gamma, "gamma");
  // Y_0 is the identity, so the two Z rotations merge exactly.
  if (beta == 0.0) return ZRotation(gamma) * ZRotation(alpha);
  return ZRotation(gamma) * XMinus90() * ZRotation(beta) * XPlus90() * ZRotation(alpha);
}

SHCoeffs9 Rotate(const SHRotation& rotation, const SHCoeffs9& coeffs) {
  SHCoeffs9 out;
  for (int i = 0; i < kNumCoeffs; ++i) {
    double sum = 0.0;
    for (int j = 0; j < kNumCoeffs; ++j) sum += coeffs[j] * rotation(i, j);
    out[i] = sum;
  }
  return out;
}

EulerZyz EulerAnglesForNormal(const Direction& n) {
  // atan2 keeps full precision for normals within a hair of the poles, where
  // acos(n_z) and a thresholded azimuth would both lose the tilt direction.
  EulerZyz angles;
  const double planar = std::hypot(n.x(), n.y());
  angles.beta = std::atan2(planar, n.z());
  if (planar > 0.0) angles.gamma = std::atan2(n.y(), n.x());
  return angles;
}

SHCoeffs9 RotateToNormal(const SHCoeffs9& lobe_z, const Direction& n) {
  const EulerZyz angles = EulerAnglesForNormal(n);
  // Same product as ZyzRotation, applied factor by factor.
  SHCoeffs9 c = Rotate(ZRotation(angles.alpha), lobe_z);
  c = Rotate(XPlus90(), c);
  c = Rotate(ZRotation(angles.beta), c);
  c = Rotate(XMinus90(), c);
  return Rotate(ZRotation(angles.gamma), c);
}

}  // namespace shvis
