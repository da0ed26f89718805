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
// Degree <= 2 real spherical harmonics: basis evaluation, quadrature sets on
// the sphere, and projection of spherical functions onto the nine-term basis.
//
// Coefficients use the flat index i = l(l+1)+m, zero-based, so the storage
// order is (Y00, Y1-1, Y10, Y11, Y2-2, Y2-1, Y20, Y21, Y22). The basis is the
// real SH with positive normalization constants (no Condon-Shortley phase):
//
//   Y00  = 1/2 sqrt(1/pi)
//   Y1-1 = sqrt(3/4pi) y     Y10 = sqrt(3/4pi) z     Y11 = sqrt(3/4pi) x
//   Y2-2 = 1/2 sqrt(15/pi) xy    Y2-1 = 1/2 sqrt(15/pi) yz
//   Y20  = 1/4 sqrt(5/pi) (3z^2 - 1)
//   Y21  = 1/2 sqrt(15/pi) xz    Y22  = 1/4 sqrt(15/pi) (x^2 - y^2)
//
// Directions are unit vectors in a right-handed frame with
// (x, y, z) = (sin t cos p, sin t sin p, cos t).

#ifndef SHVIS_SH_CORE_HPP_
#define SHVIS_SH_CORE_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <vector>

#include <Eigen/Core>

namespace shvis {

inline constexpr int kNumCoeffs = 9;

// Sample counts used throughout: visibility bakes use a coarse set, all other
// integrals (projection, losses, illumination recovery) the dense one.
inline constexpr std::size_t kVisibilitySampleCount = 872;
inline constexpr std::size_t kIntegrationSampleCount = 64000;

// Zero-based flat index of Y_l^m.
constexpr int FlatIndex(int l, int m) { return l * (l + 1) + m; }

// Degree l of the zero-based flat index.
constexpr int DegreeOf(int index) { return index == 0 ? 0 : (index < 4 ? 1 : 2); }

// A unit vector. Construction normalizes; vectors shorter than 1e-12 are
// rejected with ArgumentError.
class Direction {
 public:
  Direction(double x, double y, double z);
  explicit Direction(const Eigen::Vector3d& v);

  double x() const { return v_.x(); }
  double y() const { return v_.y(); }
  double z() const { return v_.z(); }
  const Eigen::Vector3d& vec() const { return v_; }

  Direction operator-() const { return Direction(-v_, Unchecked{}); }

  static Direction UnitX() { return Direction(Eigen::Vector3d::UnitX(), Unchecked{}); }
  static Direction UnitY() { return Direction(Eigen::Vector3d::UnitY(), Unchecked{}); }
  static Direction UnitZ() { return Direction(Eigen::Vector3d::UnitZ(), Unchecked{}); }

 private:
  struct Unchecked {};
  Direction(const Eigen::Vector3d& v, Unchecked) : v_(v) {}

  Eigen::Vector3d v_;
};

// Nine SH coefficients of a scalar spherical function.
struct SHCoeffs9 {
  std::array<double, kNumCoeffs> c{};

  double& operator[](int i) { return c[static_cast<std::size_t>(i)]; }
  double operator[](int i) const { return c[static_cast<std::size_t>(i)]; }

  // Coefficients of the constant function f(w) = value.
  static SHCoeffs9 Constant(double value);
  // Coefficient vector with a single 1 at index i.
  static SHCoeffs9 Unit(int index);

  SHCoeffs9& operator+=(const SHCoeffs9& o);
  SHCoeffs9& operator-=(const SHCoeffs9& o);
  SHCoeffs9& operator*=(double s);

  double Norm() const;

  friend SHCoeffs9 operator+(SHCoeffs9 a, const SHCoeffs9& b) { return a += b; }
  friend SHCoeffs9 operator-(SHCoeffs9 a, const SHCoeffs9& b) { return a -= b; }
  friend SHCoeffs9 operator*(SHCoeffs9 a, double s) { return a *= s; }
  friend SHCoeffs9 operator*(double s, SHCoeffs9 a) { return a *= s; }
  friend bool operator==(const SHCoeffs9&, const SHCoeffs9&) = default;
};

using BasisValues = std::array<double, kNumCoeffs>;

// Value of basis function `index` (0..8) at w. Throws ArgumentError when the
// index is out of range.
double EvalBasis(int index, const Direction& w);

// All nine basis values at w.
BasisValues EvalBasisAll(const Direction& w);

// Reconstructs sum_i c_i Y_i(w).
double EvalSH(const SHCoeffs9& coeffs, const Direction& w);

// A set of quadrature nodes on the unit sphere with a common weight in
// steradians; the weights sum to 4 pi.
struct QuadratureSet {
  std::vector<Direction> directions;
  double weight = 0.0;

  std::size_t size() const { return directions.size(); }
  double TotalWeight() const { return weight * static_cast<double>(directions.size()); }
};

// Deterministic spherical Fibonacci lattice with `count` nodes, each of weight
// 4 pi / count. Throws ArgumentError for count == 0.
QuadratureSet FibonacciSphere(std::size_t count);

// Seeded uniform random directions, for Monte Carlo cross-checks.
QuadratureSet RandomSphere(std::size_t count, std::uint64_t seed);

// The cached 64000-node Fibonacci lattice.
const QuadratureSet& DefaultLattice();

// c_i = sum_k weight * f(w_k) * Y_i(w_k).
template <typename Fn>
SHCoeffs9 Project(Fn&& f, const QuadratureSet& quad) {
  SHCoeffs9 out;
  for (const Direction& w : quad.directions) {
    const double value = f(w);
    const BasisValues y = EvalBasisAll(w);
    for (int i = 0; i < kNumCoeffs; ++i) out[i] += value * y[static_cast<std::size_t>(i)];
  }
  out *= quad.weight;
  return out;
}

}  // namespace shvis

#endif  // SHVIS_SH_CORE_HPP_
