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
#include "shvis/sh_products.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "shvis/errors.hpp"

namespace shvis {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kQuadratureTolerance = 2e-3;

const double k14pi = std::sqrt(1.0 / (4.0 * kPi));
const double k320pi = std::sqrt(3.0 / (20.0 * kPi));
const double k120pi = std::sqrt(1.0 / (20.0 * kPi));
const double k15pi = std::sqrt(1.0 / (5.0 * kPi));
const double k5pi = std::sqrt(5.0 / kPi);
const double k15 = std::sqrt(15.0 / kPi);

// One-based indices, i <= j <= k.
TriplingEntry E(int i, int j, int k, double value) { return {i - 1, j - 1, k - 1, value}; }

const std::array<TriplingEntry, 25> kCanonical = {
    E(1, 1, 1, k14pi),
    E(1, 2, 2, k14pi),
    E(1, 3, 3, k14pi),
    E(1, 4, 4, k14pi),
    E(1, 5, 5, k14pi),
    E(2, 4, 5, k320pi),
    E(1, 6, 6, k14pi),
    E(2, 3, 6, k320pi),
    E(1, 7, 7, k14pi),
    E(2, 2, 7, -k120pi),
    E(3, 3, 7, k15pi),
    E(4, 4, 7, -k120pi),
    E(5, 5, 7, -k5pi / 7.0),
    E(6, 6, 7, k5pi / 14.0),
    E(7, 7, 7, k5pi / 7.0),
    E(1, 8, 8, k14pi),
    E(3, 4, 8, k320pi),
    // Y2-2 Y2-1 Y21 ~ x^2 y^2 z^2. Tabulations that print this value under
    // (6,6,8) are mistaken: y^2 z^2 * xz is odd in x and integrates to 0.
    E(5, 6, 8, k15 / 14.0),
    E(7, 8, 8, k5pi / 14.0),
    E(1, 9, 9, k14pi),
    E(2, 2, 9, -k320pi),
    E(4, 4, 9, k320pi),
    E(6, 6, 9, -k15 / 14.0),
    E(7, 9, 9, -k5pi / 7.0),
    E(8, 8, 9, k15 / 14.0),
};

TriplingTensor BuildValidated() {
  TriplingTensor t = TriplingTensor::FromEntries(kCanonical);
  const double error = t.MaxQuadratureError(DefaultLattice());
  if (!(error < kQuadratureTolerance)) {
    throw NumericalError("tripling tensor disagrees with quadrature by " +
                         std::to_string(error));
  }
  return t;
}

}  // namespace

std::span<const TriplingEntry> CanonicalTriplingEntries() { return kCanonical; }

TriplingTensor TriplingTensor::FromEntries(std::span<const TriplingEntry> entries) {
  TriplingTensor t;
  for (const TriplingEntry& e : entries) {
    std::array<int, 3> idx = {e.i, e.j, e.k};
    std::sort(idx.begin(), idx.end());
    do {
      t.at(idx[0], idx[1], idx[2]) = e.value;
    } while (std::next_permutation(idx.begin(), idx.end()));
  }
  return t;
}

const TriplingTensor& TriplingTensor::Get() {
  static const TriplingTensor tensor = BuildValidated();
  return tensor;
}

double TriplingTensor::MaxQuadratureError(const QuadratureSet& quad) const {
  std::array<double, kNumCoeffs * kNumCoeffs * kNumCoeffs> sums{};
  for (const Direction& w : quad.directions) {
    const BasisValues y = EvalBasisAll(w);
    for (int i = 0; i < kNumCoeffs; ++i) {
      for (int j = i; j < kNumCoeffs; ++j) {
        const double yij = y[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(j)];
        for (int k = j; k < kNumCoeffs; ++k) {
          sums[static_cast<std::size_t>((i * kNumCoeffs + j) * kNumCoeffs + k)] +=
              yij * y[static_cast<std::size_t>(k)];
        }
      }
    }
  }
  double worst = 0.0;
  for (int i = 0; i < kNumCoeffs; ++i) {
    for (int j = i; j < kNumCoeffs; ++j) {
      for (int k = j; k < kNumCoeffs; ++k) {
        const double numeric =
            quad.weight * sums[static_cast<std::size_t>((i * kNumCoeffs + j) * kNumCoeffs + k)];
        worst = std::max(worst, std::abs(numeric - (*this)(i, j, k)));
      }
    }
  }
  return worst;
}

double DoubleProduct(const SHCoeffs9& f, const SHCoeffs9& g) {
  double sum = 0.0;
  for (int i = 0; i < kNumCoeffs; ++i) sum += f[i] * g[i];
  return sum;
}

SHCoeffs9 ProductCoeffs(const SHCoeffs9& f, const SHCoeffs9& g, const TriplingTensor& t) {
  SHCoeffs9 e;
  for (int i = 0; i < kNumCoeffs; ++i) {
    double sum = 0.0;
    for (int j = 0; j < kNumCoeffs; ++j) {
      if (f[j] == 0.0) continue;
      double inner = 0.0;
      for (int k = 0; k < kNumCoeffs; ++k) inner += g[k] * t(i, j, k);
      sum += f[j] * inner;
    }
    e[i] = sum;
  }
  return e;
}

double TripleProduct(const SHCoeffs9& h, const SHCoeffs9& f, const SHCoeffs9& g,
                     const TriplingTensor& t) {
  return DoubleProduct(h, ProductCoeffs(f, g, t));
}

}  // namespace shvis
