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
// Training losses evaluated over provided maps. Every loss is a mean squared
// error averaged over the masked pixels and over the channels of the compared
// quantity (3 for albedo, normals and images, 9 for visibility).

#ifndef SHVIS_LOSSES_HPP_
#define SHVIS_LOSSES_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "shvis/renderer.hpp"
#include "shvis/sh_core.hpp"

namespace shvis {

struct LossWeights {
  double lambda_n = 0.2;
  double lambda_v = 0.2;
  double lambda_l = 0.01;
};

struct ComponentLosses {
  double albedo = 0.0;
  // Computed on unit-normalized normals.
  double normal = 0.0;
  double visibility = 0.0;
};

// Throws ArgumentError on dimension mismatch, DegenerateInputError on an
// empty mask.
ComponentLosses ComputeComponentLosses(const IntrinsicsMap& estimate,
                                       const IntrinsicsMap& ground_truth,
                                       std::span<const std::uint8_t> mask);

// MSE of the reconstructed illumination over a Fibonacci lattice, averaged
// over directions and channels.
double IlluminationLoss(const IlluminationRgb& estimate, const IlluminationRgb& ground_truth,
                        std::size_t sample_count = kIntegrationSampleCount);

// Which factors of the render come from the estimate; the rest are ground
// truth.
enum class ReconVariant {
  kAlbedo,
  kNormal,
  kVisibility,
  kLight,
  // Albedo, normal and light estimated; the estimated visibility is used as a
  // constant (no gradient flows into it).
  kAlbedoNormalLight,
  // All four estimated.
  kAll,
};

struct ReconLoss {
  double value = 0.0;
  // Metadata for training code: the visibility factor is excluded from
  // back-propagation.
  bool visibility_gradient_blocked = false;
};

// Masked MSE between `observed` and the render selected by `variant`.
ReconLoss ReconstructionLoss(ReconVariant variant, const RgbImage& observed,
                             const IntrinsicsMap& estimate, const IntrinsicsMap& ground_truth,
                             const IlluminationRgb& light_estimate,
                             const IlluminationRgb& light_ground_truth,
                             std::span<const std::uint8_t> mask);

enum class TrainingStage {
  // Synthetic data: four univariate reconstruction terms.
  kSynthetic,
  // Real-world part of the second stage: one three-variate term.
  kReal,
};

struct LossInputs {
  RgbImage observed;
  IntrinsicsMap estimate;
  IntrinsicsMap ground_truth;
  IlluminationRgb light_estimate;
  IlluminationRgb light_ground_truth;
  std::vector<std::uint8_t> mask;
};

// Every term is reported unweighted; total applies the weights.
struct LossBreakdown {
  TrainingStage stage = TrainingStage::kSynthetic;
  LossWeights weights;
  double recon_albedo = 0.0;
  double recon_normal = 0.0;
  double recon_visibility = 0.0;
  double recon_light = 0.0;
  double recon_albedo_normal_light = 0.0;
  ComponentLosses components;
  double illumination = 0.0;
  double total = 0.0;
};

// kSynthetic:
//   E = E_recon-albedo + ln E_recon-normal + lv E_recon-vis + lL E_recon-light
//     + E_albedo + ln E_normal + lv E_vis + lL E_light
// kReal:
//   E = E_recon-albedo,normal,light + E_albedo + ln E_normal + lv E_vis
//     + lL E_light
LossBreakdown TotalLoss(TrainingStage stage, const LossInputs& inputs, const LossWeights& weights,
                        std::size_t light_samples = kIntegrationSampleCount);

}  // namespace shvis

#endif  // SHVIS_LOSSES_HPP_
