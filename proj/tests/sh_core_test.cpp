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

#include <gtest/gtest.h>

#include "shvis/errors.hpp"
#include "test_util.hpp"

namespace shvis {
namespace {

using testing::kPi;

TEST(DirectionTest, NormalizesInput) {
  const Direction d(3.0, 0.0, 4.0);
  EXPECT_NEAR(d.vec().norm(), 1.0, 1e-12);
  EXPECT_NEAR(d.x(), 0.6, 1e-15);
  EXPECT_NEAR(d.z(), 0.8, 1e-15);
}

TEST(DirectionTest, RejectsDegenerateVectors) {
  EXPECT_THROW(Direction(0.0, 0.0, 0.0), ArgumentError);
  EXPECT_THROW(Direction(1e-13, 0.0, 0.0), ArgumentError);
}

TEST(FlatIndexTest, MatchesDegreeOrderLayout) {
  EXPECT_EQ(FlatIndex(0, 0), 0);
  EXPECT_EQ(FlatIndex(1, -1), 1);
  EXPECT_EQ(FlatIndex(1, 1), 3);
  EXPECT_EQ(FlatIndex(2, 0), 6);
  EXPECT_EQ(FlatIndex(2, 2), 8);
  for (int i = 0; i < kNumCoeffs; ++i) {
    const int l = DegreeOf(i);
    EXPECT_GE(i, l * l);
    EXPECT_LT(i, (l + 1) * (l + 1));
  }
}

TEST(EvalBasisTest, ConstantTerm) {
  std::mt19937_64 rng(1);
  for (int k = 0; k < 10; ++k) {
    EXPECT_NEAR(EvalBasis(0, Direction(testing::RandomUnit(rng))), 0.2820948, 1e-7);
  }
}

TEST(EvalBasisTest, PublishedValues) {
  EXPECT_NEAR(EvalBasis(2, Direction::UnitZ()), 0.4886025, 1e-7);
  EXPECT_NEAR(EvalBasis(6, Direction::UnitX()), -0.31539156525252005, 1e-12);
}

TEST(EvalBasisTest, ClosedFormsAtArbitraryDirection) {
  const Direction w(0.3, -0.5, 0.7);
  const double x = w.x();
  const double y = w.y();
  const double z = w.z();
  const double k1 = std::sqrt(3.0 / (4.0 * kPi));
  const double k2 = 0.5 * std::sqrt(15.0 / kPi);
  EXPECT_NEAR(EvalBasis(1, w), k1 * y, 1e-15);
  EXPECT_NEAR(EvalBasis(2, w), k1 * z, 1e-15);
  EXPECT_NEAR(EvalBasis(3, w), k1 * x, 1e-15);
  EXPECT_NEAR(EvalBasis(4, w), k2 * x * y, 1e-15);
  EXPECT_NEAR(EvalBasis(5, w), k2 * y * z, 1e-15);
  EXPECT_NEAR(EvalBasis(6, w), 0.25 * std::sqrt(5.0 / kPi) * (3.0 * z * z - 1.0), 1e-15);
  EXPECT_NEAR(EvalBasis(7, w), k2 * x * z, 1e-15);
  EXPECT_NEAR(EvalBasis(8, w), 0.25 * std::sqrt(15.0 / kPi) * (x * x - y * y), 1e-15);
}

TEST(EvalBasisTest, RejectsBadIndex) {
  EXPECT_THROW(EvalBasis(-1, Direction::UnitZ()), ArgumentError);
  EXPECT_THROW(EvalBasis(9, Direction::UnitZ()), ArgumentError);
}

TEST(FibonacciSphereTest, WeightsAndCounts) {
  const QuadratureSet one = FibonacciSphere(1);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_NEAR(one.weight, 4.0 * kPi, 1e-15);

  const QuadratureSet vis = FibonacciSphere(kVisibilitySampleCount);
  EXPECT_EQ(vis.size(), 872u);
  EXPECT_NEAR(vis.TotalWeight(), 4.0 * kPi, 4.0 * kPi * 1e-6);

  const QuadratureSet& big = DefaultLattice();
  EXPECT_EQ(big.size(), 64000u);
  // Compensated sum of the constant integrand.
  double integral = 0.0;
  double carry = 0.0;
  for (std::size_t k = 0; k < big.size(); ++k) {
    const double y = big.weight - carry;
    const double t = integral + y;
    carry = (t - integral) - y;
    integral = t;
  }
  EXPECT_NEAR(integral, 4.0 * kPi, 4.0 * kPi * 1e-12);
}

TEST(FibonacciSphereTest, RejectsZeroCount) { EXPECT_THROW(FibonacciSphere(0), ArgumentError); }

TEST(FibonacciSphereTest, Deterministic) {
  const QuadratureSet a = FibonacciSphere(500);
  const QuadratureSet b = FibonacciSphere(500);
  for (std::size_t k = 0; k < a.size(); ++k) EXPECT_EQ(a.directions[k].vec(), b.directions[k].vec());
}

TEST(RandomSphereTest, SeededAndUnit) {
  const QuadratureSet a = RandomSphere(100, 7);
  const QuadratureSet b = RandomSphere(100, 7);
  const QuadratureSet c = RandomSphere(100, 8);
  EXPECT_EQ(a.directions[10].vec(), b.directions[10].vec());
  EXPECT_NE(a.directions[10].vec(), c.directions[10].vec());
  for (const Direction& d : a.directions) EXPECT_NEAR(d.vec().norm(), 1.0, 1e-12);
}

TEST(ProjectTest, ConstantFunction) {
  const SHCoeffs9 c = Project([](const Direction&) { return 1.0; }, DefaultLattice());
  EXPECT_NEAR(c[0], 2.0 * std::sqrt(kPi), 1e-3);
  for (int i = 1; i < kNumCoeffs; ++i) EXPECT_NEAR(c[i], 0.0, 1e-3);
}

TEST(ProjectTest, SingleBasisFunction) {
  const SHCoeffs9 c = Project([](const Direction& w) { return EvalBasis(4, w); }, DefaultLattice());
  for (int i = 0; i < kNumCoeffs; ++i) EXPECT_NEAR(c[i], i == 4 ? 1.0 : 0.0, 2e-3);
}

TEST(ProjectTest, ClampedCosine) {
  const SHCoeffs9 c =
      Project([](const Direction& w) { return std::max(w.z(), 0.0); }, DefaultLattice());
  EXPECT_NEAR(c[0], std::sqrt(kPi) / 2.0, 2e-3);
  EXPECT_NEAR(c[2], std::sqrt(kPi / 3.0), 2e-3);
  EXPECT_NEAR(c[6], std::sqrt(5.0 * kPi) / 8.0, 2e-3);
  for (int i : {1, 3, 4, 5, 7, 8}) EXPECT_NEAR(c[i], 0.0, 2e-3);
}

TEST(ProjectTest, GramMatrixIsNearIdentity) {
  const QuadratureSet& quad = DefaultLattice();
  double gram[kNumCoeffs][kNumCoeffs] = {};
  for (const Direction& w : quad.directions) {
    const BasisValues y = EvalBasisAll(w);
    for (int i = 0; i < kNumCoeffs; ++i)
      for (int j = 0; j < kNumCoeffs; ++j) gram[i][j] += quad.weight * y[i] * y[j];
  }
  for (int i = 0; i < kNumCoeffs; ++i)
    for (int j = 0; j < kNumCoeffs; ++j) EXPECT_NEAR(gram[i][j], i == j ? 1.0 : 0.0, 2e-3);
}

TEST(ProjectTest, RoundTripAndLinearity) {
  std::mt19937_64 rng(2);
  const SHCoeffs9 f = testing::RandomCoeffs(rng);
  const SHCoeffs9 g = testing::RandomCoeffs(rng);
  const QuadratureSet& quad = DefaultLattice();
  const SHCoeffs9 pf = Project([&](const Direction& w) { return EvalSH(f, w); }, quad);
  const SHCoeffs9 pg = Project([&](const Direction& w) { return EvalSH(g, w); }, quad);
  for (int i = 0; i < kNumCoeffs; ++i) EXPECT_NEAR(pf[i], f[i], 2e-3);

  const SHCoeffs9 combo =
      Project([&](const Direction& w) { return 2.5 * EvalSH(f, w) - 0.75 * EvalSH(g, w); }, quad);
  const SHCoeffs9 expected = 2.5 * pf - 0.75 * pg;
  for (int i = 0; i < kNumCoeffs; ++i) EXPECT_NEAR(combo[i], expected[i], 1e-12);
}

TEST(ProjectTest, LatticeSizeRobustness) {
  std::mt19937_64 rng(3);
  const SHCoeffs9 f = testing::RandomCoeffs(rng);
  auto fn = [&](const Direction& w) { return std::exp(EvalSH(f, w)); };
  const SHCoeffs9 a = Project(fn, FibonacciSphere(32000));
  const SHCoeffs9 b = Project(fn, DefaultLattice());
  for (int i = 0; i < kNumCoeffs; ++i) EXPECT_NEAR(a[i], b[i], 1e-3);
}

TEST(EvalSHTest, ConstantAndZero) {
  std::mt19937_64 rng(4);
  const Direction w(testing::RandomUnit(rng));
  EXPECT_NEAR(EvalSH(SHCoeffs9::Constant(1.0), w), 1.0, 1e-15);
  EXPECT_EQ(EvalSH(SHCoeffs9{}, w), 0.0);
}

TEST(EvalSHTest, TruncatedClampedCosineOvershootsAtPole) {
  SHCoeffs9 c;
  c[0] = std::sqrt(kPi) / 2.0;
  c[2] = std::sqrt(kPi / 3.0);
  c[6] = std::sqrt(5.0 * kPi) / 8.0;
  // 1/4 + 1/2 + 5/16.
  EXPECT_NEAR(EvalSH(c, Direction::UnitZ()), 1.0625, 1e-12);
}

}  // namespace
}  // namespace shvis
