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
// File formats: PFM float images, normal-map encoding, 8-bit display export
// (PPM/PGM) and the SH coefficient text format.

#ifndef SHVIS_IMAGING_IO_HPP_
#define SHVIS_IMAGING_IO_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "shvis/renderer.hpp"
#include "shvis/sh_core.hpp"

namespace shvis {

// Row-major, top row first, channel-interleaved, linear radiometric values.
struct FloatImage {
  int width = 0;
  int height = 0;
  int channels = 0;
  std::vector<float> data;

  static FloatImage Create(int width, int height, int channels);

  float& at(int x, int y, int c) { return data[Index(x, y, c)]; }
  float at(int x, int y, int c) const { return data[Index(x, y, c)]; }

  std::size_t pixel_count() const {
    return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  }

 private:
  std::size_t Index(int x, int y, int c) const {
    return (static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
            static_cast<std::size_t>(x)) *
               static_cast<std::size_t>(channels) +
           static_cast<std::size_t>(c);
  }
};

// PFM: "PF" (RGB) or "Pf" (gray), "width height", then a scale whose sign
// gives the byte order (negative = little-endian), then 32-bit floats with
// the bottom row first. Parse errors throw FormatError with the byte offset.
FloatImage ParsePfm(std::string_view bytes);
std::string EncodePfm(const FloatImage& image);
FloatImage ReadPfm(const std::filesystem::path& path);
void WritePfm(const std::filesystem::path& path, const FloatImage& image);

// Conversions between float images and the renderer's map types.
FloatImage ToFloatImage(const RgbImage& image);
RgbImage ToRgbImage(const FloatImage& image);
// Nonzero in any channel = foreground.
std::vector<std::uint8_t> ToMask(const FloatImage& image);
FloatImage MaskImage(std::span<const std::uint8_t> mask, int width, int height);
// Raw normal components, one RGB pixel per normal.
FloatImage NormalsToImage(std::span<const Eigen::Vector3d> normals, int width, int height);
std::vector<Eigen::Vector3d> ImageToNormals(const FloatImage& image);

// n -> (n + 1) / 2 per component.
FloatImage EncodeNormalMap(std::span<const Eigen::Vector3d> normals, int width, int height);
// Inverse of EncodeNormalMap followed by renormalization. Pixels outside the
// mask decode to zero; an all-zero or zero-length pixel inside the mask
// throws DegenerateInputError.
std::vector<Eigen::Vector3d> DecodeNormalMap(const FloatImage& image,
                                             std::span<const std::uint8_t> mask);

// Clamp to [0, 1], apply the 1/gamma power and quantize round-half-up.
std::vector<std::uint8_t> ToDisplayBytes(const FloatImage& image, double gamma = 2.2);
// Binary PPM (3 channels) or PGM (1 channel).
void ExportDisplay(const std::filesystem::path& path, const FloatImage& image,
                   double gamma = 2.2);

// Projects an equirectangular environment map (row 0 at +Z, column 0 at
// azimuth 0 increasing towards +Y) onto SH, one coefficient set per channel,
// with bilinear lookups at the nodes of a Fibonacci lattice.
std::vector<SHCoeffs9> ProjectEquirectangular(const FloatImage& image,
                                              std::size_t sample_count = kIntegrationSampleCount);

// Coefficient text: one line of nine whitespace-separated numbers per
// function, '#' comment lines and blank lines ignored.
std::vector<SHCoeffs9> ParseCoefficients(std::istream& in);
std::vector<SHCoeffs9> ReadCoefficients(const std::filesystem::path& path);
std::string FormatCoefficients(std::span<const SHCoeffs9> coeffs);
void WriteCoefficients(const std::filesystem::path& path, std::span<const SHCoeffs9> coeffs);

// Three lines for RGB illumination; one line is rejected.
IlluminationRgb ReadIllumination(const std::filesystem::path& path);
void WriteIllumination(const std::filesystem::path& path, const IlluminationRgb& light);

}  // namespace shvis

#endif  // SHVIS_IMAGING_IO_HPP_
