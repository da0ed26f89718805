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
#include "shvis/imaging_io.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <numbers>
#include <sstream>

#include "shvis/errors.hpp"

namespace shvis {

namespace {

std::uint32_t ByteSwap(std::uint32_t v) {
  return ((v & 0xffu) << 24) | ((v & 0xff00u) << 8) | ((v >> 8) & 0xff00u) | (v >> 24);
}

// Reads one whitespace-delimited header token starting at pos.
std::string_view NextToken(std::string_view bytes, std::size_t& pos) {
  while (pos < bytes.size() && std::isspace(static_cast<unsigned char>(bytes[pos]))) ++pos;
  const std::size_t start = pos;
  while (pos < bytes.size() && !std::isspace(static_cast<unsigned char>(bytes[pos]))) ++pos;
  if (start == pos) throw FormatError("truncated PFM header", start);
  return bytes.substr(start, pos - start);
}

int ParsePositiveInt(std::string_view token, std::size_t offset) {
  int value = 0;
  const auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || end != token.data() + token.size() || value <= 0) {
    throw FormatError("bad PFM dimension '" + std::string(token) + "'", offset);
  }
  return value;
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void WriteFile(const std::filesystem::path& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace

FloatImage FloatImage::Create(int width, int height, int channels) {
  if (width < 0 || height < 0 || (channels != 1 && channels != 3)) {
    throw ArgumentError("images need non-negative size and 1 or 3 channels");
  }
  FloatImage image;
  image.width = width;
  image.height = height;
  image.channels = channels;
  image.data.assign(image.pixel_count() * static_cast<std::size_t>(channels), 0.0f);
  return image;
}

FloatImage ParsePfm(std::string_view bytes) {
  std::size_t pos = 0;
  const std::string_view magic = NextToken(bytes, pos);
  int channels = 0;
  if (magic == "PF") {
    channels = 3;
  } else if (magic == "Pf") {
    channels = 1;
  } else {
    throw FormatError("not a PFM file (magic '" + std::string(magic) + "')", 0);
  }
  auto offset_of = [&](std::string_view token) {
    return static_cast<std::size_t>(token.data() - bytes.data());
  };
  const std::string_view width_token = NextToken(bytes, pos);
  const int width = ParsePositiveInt(width_token, offset_of(width_token));
  const std::string_view height_token = NextToken(bytes, pos);
  const int height = ParsePositiveInt(height_token, offset_of(height_token));
  const std::string_view scale_token = NextToken(bytes, pos);
  const std::size_t token_start = offset_of(scale_token);
  double scale = 0.0;
  {
    const std::string text(scale_token);
    char* end = nullptr;
    scale = std::strtod(text.c_str(), &end);
    if (end != text.c_str() + text.size() || scale == 0.0 || !std::isfinite(scale)) {
      throw FormatError("bad PFM scale '" + text + "'", token_start);
    }
  }
  // Exactly one whitespace byte separates the header from the payload.
  if (pos >= bytes.size() || !std::isspace(static_cast<unsigned char>(bytes[pos]))) {
    throw FormatError("missing newline after PFM scale", pos);
  }
  ++pos;

  FloatImage image = FloatImage::Create(width, height, channels);
  const std::size_t row_floats = static_cast<std::size_t>(width) * static_cast<std::size_t>(channels);
  const std::size_t payload = image.data.size() * sizeof(float);
  if (bytes.size() - pos < payload) {
    throw FormatError("truncated PFM payload: need " + std::to_string(payload) + " bytes, have " +
                          std::to_string(bytes.size() - pos),
                      bytes.size());
  }
  const bool file_little = scale < 0.0;
  const bool swap = file_little != (std::endian::native == std::endian::little);
  for (int file_row = 0; file_row < height; ++file_row) {
    const int y = height - 1 - file_row;
    for (std::size_t k = 0; k < row_floats; ++k) {
      std::uint32_t word = 0;
      std::memcpy(&word, bytes.data() + pos, sizeof(word));
      pos += sizeof(word);
      if (swap) word = ByteSwap(word);
      image.data[static_cast<std::size_t>(y) * row_floats + k] = std::bit_cast<float>(word);
    }
  }
  return image;
}

std::string EncodePfm(const FloatImage& image) {
  if (image.channels != 1 && image.channels != 3) {
    throw ArgumentError("PFM images have 1 or 3 channels");
  }
  std::string out = image.channels == 3 ? "PF\n" : "Pf\n";
  out += std::to_string(image.width) + " " + std::to_string(image.height) + "\n";
  out += std::endian::native == std::endian::little ? "-1.0\n" : "1.0\n";
  const std::size_t row_floats =
      static_cast<std::size_t>(image.width) * static_cast<std::size_t>(image.channels);
  for (int y = image.height - 1; y >= 0; --y) {
    const float* row = image.data.data() + static_cast<std::size_t>(y) * row_floats;
    out.append(reinterpret_cast<const char*>(row), row_floats * sizeof(float));
  }
  return out;
}

FloatImage ReadPfm(const std::filesystem::path& path) { return ParsePfm(ReadFile(path)); }

void WritePfm(const std::filesystem::path& path, const FloatImage& image) {
  WriteFile(path, EncodePfm(image));
}

FloatImage ToFloatImage(const RgbImage& image) {
  FloatImage out = FloatImage::Create(image.width, image.height, 3);
  for (std::size_t i = 0; i < image.size(); ++i) {
    for (std::size_t c = 0; c < 3; ++c) out.data[3 * i + c] = static_cast<float>(image.pixels[i][c]);
  }
  return out;
}

RgbImage ToRgbImage(const FloatImage& image) {
  RgbImage out = RgbImage::Create(image.width, image.height);
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (std::size_t c = 0; c < 3; ++c) {
      const std::size_t src = image.channels == 3 ? 3 * i + c : i;
      out.pixels[i][c] = image.data[src];
    }
  }
  return out;
}

std::vector<std::uint8_t> ToMask(const FloatImage& image) {
  std::vector<std::uint8_t> mask(image.pixel_count(), 0);
  const auto channels = static_cast<std::size_t>(image.channels);
  for (std::size_t i = 0; i < mask.size(); ++i) {
    for (std::size_t c = 0; c < channels; ++c) {
      if (image.data[i * channels + c] != 0.0f) mask[i] = 1;
    }
  }
  return mask;
}

FloatImage MaskImage(std::span<const std::uint8_t> mask, int width, int height) {
  FloatImage out = FloatImage::Create(width, height, 1);
  if (mask.size() != out.pixel_count()) throw ArgumentError("mask size does not match image");
  for (std::size_t i = 0; i < mask.size(); ++i) out.data[i] = mask[i] != 0 ? 1.0f : 0.0f;
  return out;
}

FloatImage NormalsToImage(std::span<const Eigen::Vector3d> normals, int width, int height) {
  FloatImage out = FloatImage::Create(width, height, 3);
  if (normals.size() != out.pixel_count()) throw ArgumentError("normal count does not match image");
  for (std::size_t i = 0; i < normals.size(); ++i) {
    for (int c = 0; c < 3; ++c) {
      out.data[3 * i + static_cast<std::size_t>(c)] = static_cast<float>(normals[i][c]);
    }
  }
  return out;
}

std::vector<Eigen::Vector3d> ImageToNormals(const FloatImage& image) {
  if (image.channels != 3) throw ArgumentError("normal maps need 3 channels");
  std::vector<Eigen::Vector3d> out(image.pixel_count());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = Eigen::Vector3d(image.data[3 * i], image.data[3 * i + 1], image.data[3 * i + 2]);
  }
  return out;
}

FloatImage EncodeNormalMap(std::span<const Eigen::Vector3d> normals, int width, int height) {
  FloatImage out = NormalsToImage(normals, width, height);
  for (float& v : out.data) v = 0.5f * (v + 1.0f);
  return out;
}

std::vector<Eigen::Vector3d> DecodeNormalMap(const FloatImage& image,
                                             std::span<const std::uint8_t> mask) {
  if (image.channels != 3) throw ArgumentError("normal maps need 3 channels");
  if (mask.size() != image.pixel_count()) throw ArgumentError("mask size does not match image");
  std::vector<Eigen::Vector3d> out(image.pixel_count(), Eigen::Vector3d::Zero());
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (mask[i] == 0) continue;
    const Eigen::Vector3d encoded(image.data[3 * i], image.data[3 * i + 1], image.data[3 * i + 2]);
    const Eigen::Vector3d n = 2.0 * encoded - Eigen::Vector3d::Ones();
    if (encoded.isZero(0.0) || n.norm() < 1e-12) {
      throw DegenerateInputError("degenerate normal inside the mask at pixel " + std::to_string(i));
    }
    out[i] = n.normalized();
  }
  return out;
}

std::vector<std::uint8_t> ToDisplayBytes(const FloatImage& image, double gamma) {
  if (!(gamma > 0.0)) throw ArgumentError("gamma must be positive");
  std::vector<std::uint8_t> out(image.data.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    double v = image.data[i];
    v = std::isnan(v) ? 0.0 : std::clamp(v, 0.0, 1.0);
    v = std::pow(v, 1.0 / gamma);
    out[i] = static_cast<std::uint8_t>(std::floor(255.0 * v + 0.5));
  }
  return out;
}

void ExportDisplay(const std::filesystem::path& path, const FloatImage& image, double gamma) {
  const std::vector<std::uint8_t> bytes = ToDisplayBytes(image, gamma);
  std::string out = image.channels == 3 ? "P6\n" : "P5\n";
  out += std::to_string(image.width) + " " + std::to_string(image.height) + "\n255\n";
  out.append(reinterpret_cast<const char*>(bytes.data()), bytes.size());
  WriteFile(path, out);
}

std::vector<SHCoeffs9> ProjectEquirectangular(const FloatImage& image,
                                              std::size_t sample_count) {
  if (image.width < 1 || image.height < 1) throw ArgumentError("empty environment map");
  constexpr double kPi = std::numbers::pi;
  const QuadratureSet quad = FibonacciSphere(sample_count);
  const int w = image.width;
  const int h = image.height;

  std::vector<SHCoeffs9> out(static_cast<std::size_t>(image.channels));
  for (int c = 0; c < image.channels; ++c) {
    out[static_cast<std::size_t>(c)] = Project(
        [&](const Direction& dir) {
          double phi = std::atan2(dir.y(), dir.x());
          if (phi < 0.0) phi += 2.0 * kPi;
          const double theta = std::acos(std::clamp(dir.z(), -1.0, 1.0));
          const double u = phi / (2.0 * kPi) * w - 0.5;
          const double v = std::clamp(theta / kPi * h - 0.5, 0.0, h - 1.0);
          const double u0 = std::floor(u);
          const double v0 = std::floor(v);
          const double fu = u - u0;
          const double fv = v - v0;
          const int x0 = ((static_cast<int>(u0) % w) + w) % w;
          const int x1 = (x0 + 1) % w;
          const int y0 = static_cast<int>(v0);
          const int y1 = std::min(y0 + 1, h - 1);
          return (1.0 - fv) * ((1.0 - fu) * image.at(x0, y0, c) + fu * image.at(x1, y0, c)) +
                 fv * ((1.0 - fu) * image.at(x0, y1, c) + fu * image.at(x1, y1, c));
        },
        quad);
  }
  return out;
}

std::vector<SHCoeffs9> ParseCoefficients(std::istream& in) {
  std::vector<SHCoeffs9> out;
  std::string line;
  std::size_t offset = 0;
  while (std::getline(in, line)) {
    const std::size_t line_offset = offset;
    offset += line.size() + 1;
    const std::size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '#') continue;
    std::istringstream tokens(line);
    SHCoeffs9 c;
    int count = 0;
    double value = 0.0;
    while (tokens >> value) {
      if (count < kNumCoeffs) c[count] = value;
      ++count;
    }
    if (!tokens.eof() || count != kNumCoeffs) {
      throw FormatError("coefficient line must hold exactly 9 numbers", line_offset);
    }
    out.push_back(c);
  }
  return out;
}

std::vector<SHCoeffs9> ReadCoefficients(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open coefficient file '" + path.string() + "'");
  return ParseCoefficients(in);
}

std::string FormatCoefficients(std::span<const SHCoeffs9> coeffs) {
  std::string out;
  char buffer[64];
  for (const SHCoeffs9& c : coeffs) {
    for (int i = 0; i < kNumCoeffs; ++i) {
      // Shortest representation that round-trips exactly.
      const auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), c[i]);
      if (i > 0) out += ' ';
      out.append(buffer, end);
    }
    out += '\n';
  }
  return out;
}

void WriteCoefficients(const std::filesystem::path& path, std::span<const SHCoeffs9> coeffs) {
  WriteFile(path, FormatCoefficients(coeffs));
}

IlluminationRgb ReadIllumination(const std::filesystem::path& path) {
  const std::vector<SHCoeffs9> lines = ReadCoefficients(path);
  if (lines.size() != 3) {
    throw FormatError("illumination file '" + path.string() + "' needs 3 channel lines, has " +
                      std::to_string(lines.size()));
  }
  return {{lines[0], lines[1], lines[2]}};
}

void WriteIllumination(const std::filesystem::path& path, const IlluminationRgb& light) {
  WriteCoefficients(path, light.channels);
}

}  // namespace shvis
