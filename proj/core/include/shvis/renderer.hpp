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
// Lambertian shading with explicit visibility, evaluated in the SH domain.
//
// Per colour channel the radiance of a pixel is
//
//   I = albedo / pi * int L(w) v(w) max(cos(w, n), 0) dw
//     = albedo / pi * TripleProduct(L, v, RotateToNormal(ClampedCosineZ(), n)).
//
// "Shading" is the same quantity with unit albedo, so image = albedo * shading.
// Results are never clamped; negative SH ringing passes through.

#ifndef SHVIS_RENDERER_HPP_
#define SHVIS_RENDERER_HPP_

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "shvis/sh_core.hpp"

namespace shvis {

using Rgb = std::array<double, 3>;

struct PixelIntrinsics {
  Rgb albedo = {1.0, 1.0, 1.0};
  Direction normal = Direction::UnitZ();
  SHCoeffs9 visibility;
  bool mask = true;
};

// 27 illumination coefficients, nine per colour channel.
struct IlluminationRgb {
  std::array<SHCoeffs9, 3> channels;

  SHCoeffs9& operator[](int c) { return channels[static_cast<std::size_t>(c)]; }
  const SHCoeffs9& operator[](int c) const { return channels[static_cast<std::size_t>(c)]; }

  // The same coefficients in every channel.
  static IlluminationRgb Gray(const SHCoeffs9& coeffs) { return {{coeffs, coeffs, coeffs}}; }
};

// Partial derivatives of one output channel.
struct RenderGradients {
  double d_albedo = 0.0;
  // Tangent to the unit sphere at the normal.
  Eigen::Vector3d d_normal = Eigen::Vector3d::Zero();
  SHCoeffs9 d_visibility;
  // Derivatives with respect to this channel's light coefficients; the other
  // channels do not contribute.
  SHCoeffs9 d_light;
};

using PixelGradients = std::array<RenderGradients, 3>;

// (sqrt(pi)/2, 0, sqrt(pi/3), 0, 0, 0, sqrt(5 pi)/8, 0, 0): max(cos, 0)
// about +Z.
SHCoeffs9 ClampedCosineZ();

// The clamped cosine lobe about n.
SHCoeffs9 ClampedCosineLobe(const Direction& n);

Rgb RenderPixel(const PixelIntrinsics& pixel, const IlluminationRgb& light);

Rgb RenderShading(const Direction& n, const SHCoeffs9& visibility, const IlluminationRgb& light);

// Analytic gradients of RenderPixel, one set per output channel. The normal
// gradient is taken through the Euler-angle chart of RotateToNormal; within
// 45 degrees of the Z poles the frame is pre-rotated by +90 degrees about X.
PixelGradients ComputeRenderGradients(const PixelIntrinsics& pixel,
                                      const IlluminationRgb& light);

// Per-pixel intrinsic maps, row-major, top row first.
struct IntrinsicsMap {
  int width = 0;
  int height = 0;
  std::vector<Rgb> albedo;
  std::vector<Eigen::Vector3d> normal;
  std::vector<SHCoeffs9> visibility;
  std::vector<std::uint8_t> mask;

  // width*height pixels with unit albedo, +Z normals, zero visibility and
  // an all-foreground mask.
  static IntrinsicsMap Create(int width, int height);

  std::size_t size() const { return static_cast<std::size_t>(width) * static_cast<std::size_t>(height); }

  // Throws ArgumentError when any map's length differs from width*height.
  void Validate() const;

  // Throws DegenerateInputError when the pixel's normal is zero.
  PixelIntrinsics Pixel(std::size_t index) const;
};

struct RgbImage {
  int width = 0;
  int height = 0;
  std::vector<Rgb> pixels;

  static RgbImage Create(int width, int height);
  std::size_t size() const { return pixels.size(); }
};

// Renders every pixel whose mask is set; background pixels are zero.
RgbImage RenderImage(const IntrinsicsMap& maps, const IlluminationRgb& light);
RgbImage RenderImage(const IntrinsicsMap& maps, const IlluminationRgb& light,
                     std::span<const std::uint8_t> mask);

// Unit-albedo variant of RenderImage.
RgbImage RenderShadingImage(const IntrinsicsMap& maps, const IlluminationRgb& light);

}  // namespace shvis

#endif  // SHVIS_RENDERER_HPP_
