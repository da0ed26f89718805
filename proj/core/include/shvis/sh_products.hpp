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
#ifndef SHVIS_SH_PRODUCTS_HPP_
#define SHVIS_SH_PRODUCTS_HPP_

#include <array>
#include <span>

#include "shvis/sh_core.hpp"

namespace shvis {

// A nonzero tripling coefficient T_ijk = int Y_i Y_j Y_k dw with i <= j <= k
// (zero-based flat indices).
struct TriplingEntry {
  int i;
  int j;
  int k;
  double value;
};

// The 25 closed-form canonical entries. Every other (i <= j <= k) triple is
// zero.
std::span<const TriplingEntry> CanonicalTriplingEntries();

// Dense, fully symmetric 9x9x9 tensor of tripling coefficients.
class TriplingTensor {
 public:
  // Symmetrizes the canonical entries into the dense tensor. Does not
  // validate.
  static TriplingTensor FromEntries(std::span<const TriplingEntry> entries);

  // The shared tensor. Built on first use from the canonical entries and
  // checked against quadrature of Y_i Y_j Y_k on the default lattice; a
  // mismatch above 2e-3 throws NumericalError.
  static const TriplingTensor& Get();

  double operator()(int i, int j, int k) const {
    return t_[static_cast<std::size_t>((i * kNumCoeffs + j) * kNumCoeffs + k)];
  }

  // Largest |T_ijk - sum_w weight Y_i Y_j Y_k| over all 729 entries.
  double MaxQuadratureError(const QuadratureSet& quad) const;

 private:
  double& at(int i, int j, int k) {
    return t_[static_cast<std::size_t>((i * kNumCoeffs + j) * kNumCoeffs + k)];
  }

  std::array<double, kNumCoeffs * kNumCoeffs * kNumCoeffs> t_{};
};

// int f g dw for band-limited f and g: the coefficient dot product.
double DoubleProduct(const SHCoeffs9& f, const SHCoeffs9& g);

// Degree <= 2 projection of the pointwise product f * g:
// e_i = sum_j sum_k f_j g_k T_ijk.
SHCoeffs9 ProductCoeffs(const SHCoeffs9& f, const SHCoeffs9& g,
                        const TriplingTensor& t = TriplingTensor::Get());

// int h f g dw, exact when all three are band-limited.
double TripleProduct(const SHCoeffs9& h, const SHCoeffs9& f, const SHCoeffs9& g,
                     const TriplingTensor& t = TriplingTensor::Get());

}  // namespace shvis

#endif  // SHVIS_SH_PRODUCTS_HPP_
