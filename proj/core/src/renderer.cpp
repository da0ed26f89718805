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
#include "shvis/renderer.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "shvis/errors.hpp"
#include "shvis/sh_products.hpp"
#include "shvis/sh_transform.hpp"

namespace shvis {

namespace {

constexpr double kPi = std::numbers::pi;

// |n_z| above which the normal gradient uses the X-rotated chart.
const double kChartSwitch = std::sqrt(0.5);

// Gradient of D(n) = e . ClampedCosineLobe(n) in the Euler chart
// n = (sin b cos g, sin b sin g, cos b). Requires sin b bounded away from 0.
Eigen::Vector3d EulerChartGradient(const SHCoeffs9& e, const Eigen::Vector3d& n) {
  const double beta = std::atan2(std::hypot(n.x(), n.y()), n.z());
  const double gamma = std::atan2(n.y(), n.x());
  const SHCoeffs9 tilted = Rotate(XPlus90(), ClampedCosineZ());

  const SHCoeffs9 d_beta_lobe = Rotate(
      ZRotation(gamma), Rotate(XMinus90(), Rotate(ZRotationDerivative(beta), tilted)));
  const SHCoeffs9 d_gamma_lobe = Rotate(
      ZRotationDerivative(gamma), Rotate(XMinus90(), Rotate(ZRotation(beta), tilted)));

  const double d_beta = DoubleProduct(e, d_beta_lobe);
  const double d_gamma = DoubleProduct(e, d_gamma_lobe);

  const double sb = std::sin(beta);
  const double cb = std::cos(beta);
  const double sg = std::sin(gamma);
  const double cg = std::cos(gamma);
  const Eigen::Vector3d e_beta(cb * cg, cb * sg, -sb);
  const Eigen::Vector3d e_gamma(-sg, cg, 0.0);
  return d_beta * e_beta + (d_gamma / sb) * e_gamma;
}

// Tangent gradient of D(n) = e . ClampedCosineLobe(n).
Eigen::Vector3d LobeNormalGradient(const SHCoeffs9& e, const Direction& normal) {
  const Eigen::Vector3d& n = normal.vec();
  Eigen::Vector3d grad;
  if (std::abs(n.z()) <= kChartSwitch) {
    grad = EulerChartGradient(e, n);
  } else {
    // n = Q m with Q the +90 degree X rotation (x, y, z) -> (x, -z, y), so
    // lobe(n) = XPlus90 lobe(m) and D(n) = (XMinus90 e) . lobe(m).
    const Eigen::Vector3d m(n.x(), n.z(), -n.y());
    const Eigen::Vector3d grad_m = EulerChartGradient(Rotate(XMinus90(), e), m);
    grad = Eigen::Vector3d(grad_m.x(), -grad_m.z(), grad_m.y());
  }
  grad -= grad.dot(n) * n;
  return grad;
}

}  // namespace

SHCoeffs9 ClampedCosineZ() {
  SHCoeffs9 c;
  c[0] = std::sqrt(kPi) / 2.0;
  c[2] = std::sqrt(kPi / 3.0);
  c[6] = std::sqrt(5.0 * kPi) / 8.0;
  return c;
}

SHCoeffs9 ClampedCosineLobe(const Direction& n) { return RotateToNormal(ClampedCosineZ(), n); }

Rgb RenderShading(const Direction& n, const SHCoeffs9& visibility, const IlluminationRgb& light) {
  const SHCoeffs9 transfer = ProductCoeffs(visibility, ClampedCosineLobe(n));
  Rgb out;
  for (int c = 0; c < 3; ++c) {
    out[static_cast<std::size_t>(c)] = DoubleProduct(light[c], transfer) / kPi;
  }
  return out;
}

Rgb RenderPixel(const PixelIntrinsics& pixel, const IlluminationRgb& light) {
  Rgb out = RenderShading(pixel.normal, pixel.visibility, light);
  for (std::size_t c = 0; c < 3; ++c) out[c] *= pixel.albedo[c];
  return out;
}

PixelGradients ComputeRenderGradients(const PixelIntrinsics& pixel, const IlluminationRgb& light) {
  if (!pixel.normal.vec().allFinite()) throw NumericalError("non-finite normal");
  const SHCoeffs9 lobe = ClampedCosineLobe(pixel.normal);
  const SHCoeffs9 transfer = ProductCoeffs(pixel.visibility, lobe);

  PixelGradients grads;
  for (int c = 0; c < 3; ++c) {
    const double scale = pixel.albedo[static_cast<std::size_t>(c)] / kPi;
    RenderGradients& g = grads[static_cast<std::size_t>(c)];
    g.d_albedo = DoubleProduct(light[c], transfer) / kPi;
    g.d_light = transfer * scale;
    g.d_visibility = ProductCoeffs(light[c], lobe) * scale;
    g.d_normal = scale * LobeNormalGradient(ProductCoeffs(light[c], pixel.visibility), pixel.normal);
  }
  return grads;
}

IntrinsicsMap IntrinsicsMap::Create(int width, int height) {
  if (width < 0 || height < 0) throw ArgumentError("negative map dimensions");
  IntrinsicsMap maps;
  maps.width = width;
  maps.height = height;
  const std::size_t n = maps.size();
  maps.albedo.assign(n, Rgb{1.0, 1.0, 1.0});
  maps.normal.assign(n, Eigen::Vector3d::UnitZ());
  maps.visibility.assign(n, SHCoeffs9{});
  maps.mask.assign(n, 1);
  return maps;
}

void IntrinsicsMap::Validate() const {
  const std::size_t n = size();
  auto check = [n](std::size_t got, const char* name) {
    if (got != n) {
      throw ArgumentError(std::string(name) + " map has " + std::to_string(got) +
                          " pixels, expected " + std::to_string(n));
    }
  };
  check(albedo.size(), "albedo");
  check(normal.size(), "normal");
  check(visibility.size(), "visibility");
  check(mask.size(), "mask");
}

PixelIntrinsics IntrinsicsMap::Pixel(std::size_t index) const {
  if (normal[index].norm() < 1e-12) {
    throw DegenerateInputError("zero normal at pixel " + std::to_string(index));
  }
  return PixelIntrinsics{albedo[index], Direction(normal[index]), visibility[index],
                         mask[index] != 0};
}

RgbImage RgbImage::Create(int width, int height) {
  if (width < 0 || height < 0) throw ArgumentError("negative image dimensions");
  RgbImage image;
  image.width = width;
  image.height = height;
  image.pixels.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height),
                      Rgb{0.0, 0.0, 0.0});
  return image;
}

RgbImage RenderImage(const IntrinsicsMap& maps, const IlluminationRgb& light,
                     std::span<const std::uint8_t> mask) {
  maps.Validate();
  if (mask.size() != maps.size()) {
    throw ArgumentError("mask has " + std::to_string(mask.size()) + " pixels, expected " +
                        std::to_string(maps.size()));
  }
  RgbImage image = RgbImage::Create(maps.width, maps.height);
  for (std::size_t i = 0; i < maps.size(); ++i) {
    if (mask[i] == 0) continue;
    image.pixels[i] = RenderPixel(maps.Pixel(i), light);
  }
  return image;
}

RgbImage RenderImage(const IntrinsicsMap& maps, const IlluminationRgb& light) {
  maps.Validate();
  return RenderImage(maps, light, maps.mask);
}

RgbImage RenderShadingImage(const IntrinsicsMap& maps, const IlluminationRgb& light) {
  IntrinsicsMap unit = maps;
  unit.Validate();
  unit.albedo.assign(unit.size(), Rgb{1.0, 1.0, 1.0});
  return RenderImage(unit, light);
}

}  // namespace shvis
