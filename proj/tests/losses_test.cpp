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
#include "shvis/losses.hpp"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "shvis/errors.hpp"
#include "shvis/light_solver.hpp"
#include "test_util.hpp"

namespace shvis {
namespace {

using testing::kPi;

IntrinsicsMap RandomMaps(std::mt19937_64& rng, int w, int h) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  IntrinsicsMap m = IntrinsicsMap::Create(w, h);
  for (std::size_t i = 0; i < m.size(); ++i) {
    m.albedo[i] = {u(rng), u(rng), u(rng)};
    m.normal[i] = testing::RandomUnit(rng);
    m.visibility[i] = testing::RandomCoeffs(rng);
    m.mask[i] = 1;
  }
  return m;
}

IlluminationRgb RandomLight(std::mt19937_64& rng) {
  IlluminationRgb l;
  for (int c = 0; c < 3; ++c) l[c] = testing::RandomCoeffs(rng);
  return l;
}

LossInputs RandomInputs(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  LossInputs in;
  in.estimate = RandomMaps(rng, 4, 3);
  in.ground_truth = RandomMaps(rng, 4, 3);
  in.mask = in.ground_truth.mask;
  in.mask[5] = 0;
  in.light_estimate = RandomLight(rng);
  in.light_ground_truth = RandomLight(rng);
  in.observed = RenderImage(in.ground_truth, in.light_ground_truth);
  return in;
}

TEST(LossWeightsTest, Defaults) {
  const LossWeights w;
  EXPECT_EQ(w.lambda_n, 0.2);
  EXPECT_EQ(w.lambda_v, 0.2);
  EXPECT_EQ(w.lambda_l, 0.01);
}

TEST(ComponentLossesTest, IdenticalMapsGiveZero) {
  const LossInputs in = RandomInputs(71);
  const ComponentLosses c = ComputeComponentLosses(in.ground_truth, in.ground_truth, in.mask);
  EXPECT_EQ(c.albedo, 0.0);
  EXPECT_EQ(c.normal, 0.0);
  EXPECT_EQ(c.visibility, 0.0);
}

TEST(ComponentLossesTest, SinglePixelAlbedo) {
  IntrinsicsMap gt = IntrinsicsMap::Create(1, 1);
  gt.albedo[0] = {0.2, 0.4, 0.6};
  IntrinsicsMap est = gt;
  est.albedo[0][1] = 0.9;
  const std::vector<std::uint8_t> mask = {1};
  EXPECT_NEAR(ComputeComponentLosses(est, gt, mask).albedo, 0.25 / 3.0, 1e-15);
}

TEST(ComponentLossesTest, MaskedOutDifferenceIgnored) {
  IntrinsicsMap gt = IntrinsicsMap::Create(2, 1);
  IntrinsicsMap est = gt;
  est.albedo[1] = {0.0, 0.0, 0.0};
  est.visibility[1] = SHCoeffs9::Constant(3.0);
  est.normal[1] = Eigen::Vector3d::UnitX();
  const std::vector<std::uint8_t> mask = {1, 0};
  const ComponentLosses c = ComputeComponentLosses(est, gt, mask);
  EXPECT_EQ(c.albedo, 0.0);
  EXPECT_EQ(c.normal, 0.0);
  EXPECT_EQ(c.visibility, 0.0);
}

TEST(ComponentLossesTest, NormalsAreUnitNormalized) {
  IntrinsicsMap gt = IntrinsicsMap::Create(1, 1);
  gt.normal[0] = Eigen::Vector3d::UnitZ();
  IntrinsicsMap est = gt;
  est.normal[0] = Eigen::Vector3d(0.0, 0.0, 5.0);
  const std::vector<std::uint8_t> mask = {1};
  EXPECT_EQ(ComputeComponentLosses(est, gt, mask).normal, 0.0);
  est.normal[0] = Eigen::Vector3d(0.0, 2.0, 0.0);
  // Difference (0, 1, -1): squared error 2 over 3 components.
  EXPECT_NEAR(ComputeComponentLosses(est, gt, mask).normal, 2.0 / 3.0, 1e-15);
}

TEST(ComponentLossesTest, UniformErrorIndependentOfMaskSize) {
  IntrinsicsMap gt = IntrinsicsMap::Create(4, 1);
  IntrinsicsMap est = gt;
  for (auto& a : est.albedo) a = {1.0, 1.0, 1.0};
  for (auto& a : gt.albedo) a = {0.7, 0.7, 0.7};
  const std::vector<std::uint8_t> full = {1, 1, 1, 1};
  const std::vector<std::uint8_t> part = {0, 1, 0, 1};
  EXPECT_NEAR(ComputeComponentLosses(est, gt, full).albedo,
              ComputeComponentLosses(est, gt, part).albedo, 1e-15);
}

TEST(ComponentLossesTest, Errors) {
  IntrinsicsMap a = IntrinsicsMap::Create(2, 2);
  IntrinsicsMap b = IntrinsicsMap::Create(2, 3);
  const std::vector<std::uint8_t> mask(4, 1);
  EXPECT_THROW(ComputeComponentLosses(a, b, mask), ArgumentError);
  const std::vector<std::uint8_t> empty(4, 0);
  EXPECT_THROW(ComputeComponentLosses(a, a, empty), DegenerateInputError);
}

TEST(IlluminationLossTest, ZeroAndConstantOffset) {
  std::mt19937_64 rng(72);
  const IlluminationRgb l = RandomLight(rng);
  EXPECT_EQ(IlluminationLoss(l, l), 0.0);
  IlluminationRgb shifted = l;
  const double delta = 0.3;
  for (int c = 0; c < 3; ++c) shifted[c][0] += delta;
  EXPECT_NEAR(IlluminationLoss(shifted, l), delta * delta / (4.0 * kPi), 1e-12);
  EXPECT_THROW(IlluminationLoss(l, l, 0), ArgumentError);
}

TEST(IlluminationLossTest, JointRotationInvariance) {
  std::mt19937_64 rng(73);
  const IlluminationRgb a = RandomLight(rng);
  const IlluminationRgb b = RandomLight(rng);
  const double base = IlluminationLoss(a, b);
  const double rotated = IlluminationLoss(RotateIllumination(a, 0.3, 1.1, -0.4),
                                          RotateIllumination(b, 0.3, 1.1, -0.4));
  EXPECT_NEAR(rotated, base, 1e-6 * std::max(1.0, base));
}

TEST(ReconstructionLossTest, PerfectFactorsGiveZero) {
  LossInputs in = RandomInputs(74);
  in.estimate = in.ground_truth;
  in.light_estimate = in.light_ground_truth;
  for (ReconVariant v : {ReconVariant::kAlbedo, ReconVariant::kNormal, ReconVariant::kVisibility,
                         ReconVariant::kLight, ReconVariant::kAlbedoNormalLight, ReconVariant::kAll}) {
    EXPECT_EQ(ReconstructionLoss(v, in.observed, in.estimate, in.ground_truth, in.light_estimate,
                                 in.light_ground_truth, in.mask)
                  .value,
              0.0);
  }
}

TEST(ReconstructionLossTest, HalfAlbedo) {
  LossInputs in = RandomInputs(75);
  in.estimate = in.ground_truth;
  for (auto& a : in.estimate.albedo)
    for (double& v : a) v *= 0.5;
  double sum = 0.0;
  int n = 0;
  for (std::size_t i = 0; i < in.observed.size(); ++i) {
    if (in.mask[i] == 0) continue;
    for (double v : in.observed.pixels[i]) sum += v * v;
    n += 3;
  }
  const ReconLoss loss = ReconstructionLoss(ReconVariant::kAlbedo, in.observed, in.estimate,
                                            in.ground_truth, in.light_estimate,
                                            in.light_ground_truth, in.mask);
  EXPECT_NEAR(loss.value, sum / n / 4.0, 1e-12);
  EXPECT_FALSE(loss.visibility_gradient_blocked);
}

TEST(ReconstructionLossTest, UnivariateUsesOneEstimatedFactor) {
  const LossInputs in = RandomInputs(76);
  // Only the light differs from ground truth in the light variant.
  IntrinsicsMap gt_only = in.ground_truth;
  const RgbImage rendered = RenderImage(gt_only, in.light_estimate, in.mask);
  double sum = 0.0;
  int n = 0;
  for (std::size_t i = 0; i < rendered.size(); ++i) {
    if (in.mask[i] == 0) continue;
    for (std::size_t c = 0; c < 3; ++c) {
      const double d = rendered.pixels[i][c] - in.observed.pixels[i][c];
      sum += d * d;
      ++n;
    }
  }
  EXPECT_NEAR(ReconstructionLoss(ReconVariant::kLight, in.observed, in.estimate, in.ground_truth,
                                 in.light_estimate, in.light_ground_truth, in.mask)
                  .value,
              sum / n, 1e-12);
}

TEST(ReconstructionLossTest, ThreeVariateBlocksVisibility) {
  const LossInputs in = RandomInputs(77);
  const ReconLoss loss = ReconstructionLoss(ReconVariant::kAlbedoNormalLight, in.observed,
                                            in.estimate, in.ground_truth, in.light_estimate,
                                            in.light_ground_truth, in.mask);
  EXPECT_TRUE(loss.visibility_gradient_blocked);
  EXPECT_GT(loss.value, 0.0);
}

TEST(TotalLossTest, WeightedSums) {
  const LossInputs in = RandomInputs(78);
  const LossWeights w;
  const LossBreakdown s1 = TotalLoss(TrainingStage::kSynthetic, in, w, 4000);
  const double hand1 = s1.recon_albedo + w.lambda_n * s1.recon_normal +
                       w.lambda_v * s1.recon_visibility + w.lambda_l * s1.recon_light +
                       s1.components.albedo + w.lambda_n * s1.components.normal +
                       w.lambda_v * s1.components.visibility + w.lambda_l * s1.illumination;
  EXPECT_NEAR(s1.total, hand1, 1e-12);

  const LossBreakdown s2 = TotalLoss(TrainingStage::kReal, in, w, 4000);
  const double hand2 = s2.recon_albedo_normal_light + s2.components.albedo +
                       w.lambda_n * s2.components.normal + w.lambda_v * s2.components.visibility +
                       w.lambda_l * s2.illumination;
  EXPECT_NEAR(s2.total, hand2, 1e-12);
}

TEST(TotalLossTest, DoublingLightWeight) {
  const LossInputs in = RandomInputs(79);
  LossWeights w;
  const LossBreakdown a = TotalLoss(TrainingStage::kReal, in, w, 4000);
  w.lambda_l *= 2.0;
  const LossBreakdown b = TotalLoss(TrainingStage::kReal, in, w, 4000);
  EXPECT_NEAR(b.total - a.total, 0.01 * a.illumination, 1e-12);
}

TEST(TotalLossTest, PerfectEstimatesAreZero) {
  LossInputs in = RandomInputs(80);
  in.estimate = in.ground_truth;
  in.light_estimate = in.light_ground_truth;
  EXPECT_EQ(TotalLoss(TrainingStage::kSynthetic, in, {}, 4000).total, 0.0);
  EXPECT_EQ(TotalLoss(TrainingStage::kReal, in, {}, 4000).total, 0.0);
}

}  // namespace
}  // namespace shvis
