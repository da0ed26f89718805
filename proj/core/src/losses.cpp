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

#include <string>

#include "shvis/errors.hpp"

namespace shvis {

namespace {

void RequireSameShape(const IntrinsicsMap& a, const IntrinsicsMap& b, std::size_t mask_size) {
  a.Validate();
  b.Validate();
  if (a.width != b.width || a.height != b.height) {
    throw ArgumentError("map dimensions differ: " + std::to_string(a.width) + "x" +
                        std::to_string(a.height) + " vs " + std::to_string(b.width) + "x" +
                        std::to_string(b.height));
  }
  if (mask_size != a.size()) {
    throw ArgumentError("mask has " + std::to_string(mask_size) + " pixels, expected " +
                        std::to_string(a.size()));
  }
}

std::size_t CountMasked(std::span<const std::uint8_t> mask) {
  std::size_t n = 0;
  for (std::uint8_t m : mask) n += m != 0 ? 1 : 0;
  if (n == 0) throw DegenerateInputError("loss mask selects no pixels");
  return n;
}

Eigen::Vector3d UnitOrZero(const Eigen::Vector3d& v) {
  const double norm = v.norm();
  return norm > 0.0 ? Eigen::Vector3d(v / norm) : Eigen::Vector3d::Zero();
}

double ImageMse(const RgbImage& a, const RgbImage& b, std::span<const std::uint8_t> mask) {
  if (a.width != b.width || a.height != b.height || mask.size() != a.size()) {
    throw ArgumentError("image dimensions differ");
  }
  const std::size_t n = CountMasked(mask);
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (mask[i] == 0) continue;
    for (std::size_t c = 0; c < 3; ++c) {
      const double d = a.pixels[i][c] - b.pixels[i][c];
      sum += d * d;
    }
  }
  return sum / (3.0 * static_cast<double>(n));
}

}  // namespace

ComponentLosses ComputeComponentLosses(const IntrinsicsMap& estimate,
                                       const IntrinsicsMap& ground_truth,
                                       std::span<const std::uint8_t> mask) {
  RequireSameShape(estimate, ground_truth, mask.size());
  const double n = static_cast<double>(CountMasked(mask));

  double albedo = 0.0;
  double normal = 0.0;
  double visibility = 0.0;
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (mask[i] == 0) continue;
    for (std::size_t c = 0; c < 3; ++c) {
      const double d = estimate.albedo[i][c] - ground_truth.albedo[i][c];
      albedo += d * d;
    }
    normal += (UnitOrZero(estimate.normal[i]) - UnitOrZero(ground_truth.normal[i])).squaredNorm();
    const double dv = (estimate.visibility[i] - ground_truth.visibility[i]).Norm();
    visibility += dv * dv;
  }
  return {albedo / (3.0 * n), normal / (3.0 * n), visibility / (kNumCoeffs * n)};
}

double IlluminationLoss(const IlluminationRgb& estimate, const IlluminationRgb& ground_truth,
                        std::size_t sample_count) {
  if (sample_count == 0) throw ArgumentError("illumination loss needs at least one direction");
  const QuadratureSet custom =
      sample_count == kIntegrationSampleCount ? QuadratureSet{} : FibonacciSphere(sample_count);
  const QuadratureSet& quad = sample_count == kIntegrationSampleCount ? DefaultLattice() : custom;

  double sum = 0.0;
  for (const Direction& w : quad.directions) {
    for (int c = 0; c < 3; ++c) {
      const double d = EvalSH(estimate[c] - ground_truth[c], w);
      sum += d * d;
    }
  }
  return sum / (3.0 * static_cast<double>(quad.size()));
}

ReconLoss ReconstructionLoss(ReconVariant variant, const RgbImage& observed,
                             const IntrinsicsMap& estimate, const IntrinsicsMap& ground_truth,
                             const IlluminationRgb& light_estimate,
                             const IlluminationRgb& light_ground_truth,
                             std::span<const std::uint8_t> mask) {
  RequireSameShape(estimate, ground_truth, mask.size());

  const bool all = variant == ReconVariant::kAll;
  const bool three = variant == ReconVariant::kAlbedoNormalLight;
  const bool use_albedo = all || three || variant == ReconVariant::kAlbedo;
  const bool use_normal = all || three || variant == ReconVariant::kNormal;
  const bool use_visibility = all || three || variant == ReconVariant::kVisibility;
  const bool use_light = all || three || variant == ReconVariant::kLight;

  IntrinsicsMap maps = ground_truth;
  if (use_albedo) maps.albedo = estimate.albedo;
  if (use_normal) maps.normal = estimate.normal;
  if (use_visibility) maps.visibility = estimate.visibility;
  const IlluminationRgb& light = use_light ? light_estimate : light_ground_truth;

  const RgbImage rendered = RenderImage(maps, light, mask);
  return {ImageMse(rendered, observed, mask), three};
}

LossBreakdown TotalLoss(TrainingStage stage, const LossInputs& in, const LossWeights& weights,
                        std::size_t light_samples) {
  LossBreakdown out;
  out.stage = stage;
  out.weights = weights;
  out.components = ComputeComponentLosses(in.estimate, in.ground_truth, in.mask);
  out.illumination = IlluminationLoss(in.light_estimate, in.light_ground_truth, light_samples);

  auto recon = [&](ReconVariant v) {
    return ReconstructionLoss(v, in.observed, in.estimate, in.ground_truth, in.light_estimate,
                              in.light_ground_truth, in.mask)
        .value;
  };

  const double supervised = out.components.albedo + weights.lambda_n * out.components.normal +
                            weights.lambda_v * out.components.visibility +
                            weights.lambda_l * out.illumination;
  if (stage == TrainingStage::kSynthetic) {
    out.recon_albedo = recon(ReconVariant::kAlbedo);
    out.recon_normal = recon(ReconVariant::kNormal);
    out.recon_visibility = recon(ReconVariant::kVisibility);
    out.recon_light = recon(ReconVariant::kLight);
    out.total = out.recon_albedo + weights.lambda_n * out.recon_normal +
                weights.lambda_v * out.recon_visibility + weights.lambda_l * out.recon_light +
                supervised;
  } else {
    out.recon_albedo_normal_light = recon(ReconVariant::kAlbedoNormalLight);
    out.total = out.recon_albedo_normal_light + supervised;
  }
  return out;
}

}  // namespace shvis
