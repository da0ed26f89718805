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
#include "shvis/sh_core.hpp"

#include <cmath>
#include <random>
#include <string>

#include "shvis/errors.hpp"

namespace shvis {

namespace {

constexpr double kPi = std::numbers::pi;

// Normalization constants of the nine basis functions.
const double kY00 = 0.5 * std::sqrt(1.0 / kPi);
const double kY1 = std::sqrt(3.0 / (4.0 * kPi));
const double kY2 = 0.5 * std::sqrt(15.0 / kPi);
const double kY20 = 0.25 * std::sqrt(5.0 / kPi);
const double kY22 = 0.25 * std::sqrt(15.0 / kPi);

constexpr double kMinNorm = 1e-12;

}  // namespace

Direction::Direction(double x, double y, double z)
    : Direction(Eigen::Vector3d(x, y, z)) {}

Direction::Direction(const Eigen::Vector3d& v) {
  const double norm = v.norm();
  if (!std::isfinite(norm) || norm < kMinNorm) {
    throw ArgumentError("degenerate direction: norm " + std::to_string(norm));
  }
  v_ = v / norm;
}

SHCoeffs9 SHCoeffs9::Constant(double value) {
  SHCoeffs9 out;
  out[0] = value / kY00;
  return out;
}

SHCoeffs9 SHCoeffs9::Unit(int index) {
  if (index < 0 || index >= kNumCoeffs) {
    throw ArgumentError("SH index out of range: " + std::to_string(index));
  }
  SHCoeffs9 out;
  out[index] = 1.0;
  return out;
}

SHCoeffs9& SHCoeffs9::operator+=(const SHCoeffs9& o) {
  for (int i = 0; i < kNumCoeffs; ++i) (*this)[i] += o[i];
  return *this;
}

SHCoeffs9& SHCoeffs9::operator-=(const SHCoeffs9& o) {
  for (int i = 0; i < kNumCoeffs; ++i) (*this)[i] -= o[i];
  return *this;
}

SHCoeffs9& SHCoeffs9::operator*=(double s) {
  for (double& v : c) v *= s;
  return *this;
}

double SHCoeffs9::Norm() const {
  double sum = 0.0;
  for (double v : c) sum += v * v;
  return std::sqrt(sum);
}

BasisValues EvalBasisAll(const Direction& w) {
  const double x = w.x();
  const double y = w.y();
  const double z = w.z();
  return {kY00,
          kY1 * y,
          kY1 * z,
          kY1 * x,
          kY2 * x * y,
          kY2 * y * z,
          kY20 * (3.0 * z * z - 1.0),
          kY2 * x * z,
          kY22 * (x * x - y * y)};
}

double EvalBasis(int index, const Direction& w) {
  if (index < 0 || index >= kNumCoeffs) {
    throw ArgumentError("SH index out of range: " + std::to_string(index));
  }
  return EvalBasisAll(w)[static_cast<std::size_t>(index)];
}

double EvalSH(const SHCoeffs9& coeffs, const Direction& w) {
  const BasisValues y = EvalBasisAll(w);
  double sum = 0.0;
  for (int i = 0; i < kNumCoeffs; ++i) sum += coeffs[i] * y[static_cast<std::size_t>(i)];
  return sum;
}

QuadratureSet FibonacciSphere(std::size_t count) {
  if (count == 0) throw ArgumentError("quadrature count must be positive");
  // Golden-angle increment of the azimuth.
  const double golden_angle = kPi * (3.0 - std::sqrt(5.0));
  const double n = static_cast<double>(count);

  QuadratureSet quad;
  quad.weight = 4.0 * kPi / n;
  quad.directions.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    const double z = 1.0 - (2.0 * static_cast<double>(k) + 1.0) / n;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden_angle * static_cast<double>(k);
    quad.directions.emplace_back(r * std::cos(phi), r * std::sin(phi), z);
  }
  return quad;
}

QuadratureSet RandomSphere(std::size_t count, std::uint64_t seed) {
  if (count == 0) throw ArgumentError("quadrature count must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);

  QuadratureSet quad;
  quad.weight = 4.0 * kPi / static_cast<double>(count);
  quad.directions.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    const double z = 1.0 - 2.0 * uniform(rng);
    const double phi = 2.0 * kPi * uniform(rng);
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    quad.directions.emplace_back(r * std::cos(phi), r * std::sin(phi), z);
  }
  return quad;
}

const QuadratureSet& DefaultLattice() {
  static const QuadratureSet lattice = FibonacciSphere(kIntegrationSampleCount);
  return lattice;
}

}  // namespace shvis
