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

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

using namespace std::string_literals;

#include "shvis/errors.hpp"
#include "test_util.hpp"

namespace shvis {
namespace {

using testing::kPi;

FloatImage RandomImage(int w, int h, int channels, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<float> u(-100.0f, 100.0f);
  FloatImage img = FloatImage::Create(w, h, channels);
  for (float& v : img.data) v = u(rng);
  return img;
}

std::string FloatBytes(float v) {
  std::string s(4, '\0');
  std::memcpy(s.data(), &v, 4);
  return s;
}

TEST(PfmTest, RoundTripIsBitExact) {
  FloatImage img = RandomImage(4, 4, 3, 81);
  img.data[0] = std::numeric_limits<float>::denorm_min();
  img.data[1] = -0.0f;
  img.data[2] = std::numeric_limits<float>::max();
  const FloatImage back = ParsePfm(EncodePfm(img));
  ASSERT_EQ(back.width, 4);
  ASSERT_EQ(back.channels, 3);
  for (std::size_t k = 0; k < img.data.size(); ++k) {
    EXPECT_EQ(std::bit_cast<std::uint32_t>(back.data[k]), std::bit_cast<std::uint32_t>(img.data[k]));
  }

  const auto dir = testing::ScratchDir("pfm");
  WritePfm(dir / "a.pfm", img);
  const FloatImage file = ReadPfm(dir / "a.pfm");
  EXPECT_EQ(file.data, img.data);
  EXPECT_THROW(ReadPfm(dir / "missing.pfm"), IoError);
}

TEST(PfmTest, SingleGrayPixelLayout) {
  FloatImage img = FloatImage::Create(1, 1, 1);
  img.data[0] = 0.5f;
  const std::string bytes = EncodePfm(img);
  const std::string header = "Pf\n1 1\n-1.0\n";
  ASSERT_EQ(bytes.size(), header.size() + 4);
  EXPECT_EQ(bytes.substr(0, header.size()), header);
  EXPECT_EQ(bytes.substr(header.size()), FloatBytes(0.5f));
}

TEST(PfmTest, RowsAreStoredBottomUp) {
  std::string bytes = "PF\n2 2\n-1.0\n";
  for (int k = 0; k < 12; ++k) bytes += FloatBytes(static_cast<float>(k));
  const FloatImage img = ParsePfm(bytes);
  EXPECT_EQ(img.width, 2);
  EXPECT_EQ(img.height, 2);
  EXPECT_EQ(img.channels, 3);
  // First stored row is the bottom image row.
  EXPECT_EQ(img.at(0, 1, 0), 0.0f);
  EXPECT_EQ(img.at(1, 1, 2), 5.0f);
  EXPECT_EQ(img.at(0, 0, 0), 6.0f);
}

TEST(PfmTest, BigEndianScale) {
  std::string bytes = "Pf\n1 1\n1.0\n";
  const std::uint32_t word = std::bit_cast<std::uint32_t>(2.0f);
  for (int shift = 24; shift >= 0; shift -= 8) bytes += static_cast<char>((word >> shift) & 0xff);
  EXPECT_EQ(ParsePfm(bytes).data[0], 2.0f);
}

TEST(PfmTest, MalformedInputsReportOffsets) {
  EXPECT_THROW(ParsePfm("P6\n1 1\n255\n"), FormatError);
  EXPECT_THROW(ParsePfm("PF\n0 1\n-1.0\n"), FormatError);
  EXPECT_THROW(ParsePfm("PF\n1 1\nabc\n"), FormatError);
  EXPECT_THROW(ParsePfm("PF\n1 1"), FormatError);
  try {
    ParsePfm("Pf\n2 2\n-1.0\n" + std::string(7, '\0'));
    FAIL() << "expected FormatError";
  } catch (const FormatError& e) {
    EXPECT_NE(e.offset(), FormatError::npos);
    EXPECT_NE(std::string(e.what()).find("byte offset"), std::string::npos);
  }
  try {
    ParsePfm("PF\n1 x\n-1.0\n");
    FAIL() << "expected FormatError";
  } catch (const FormatError& e) {
    EXPECT_EQ(e.offset(), 5u);
  }
}

TEST(NormalMapTest, EncodeExamples) {
  const std::vector<Eigen::Vector3d> normals = {Eigen::Vector3d::UnitZ(), Eigen::Vector3d::UnitX()};
  const FloatImage img = EncodeNormalMap(normals, 2, 1);
  EXPECT_EQ(img.at(0, 0, 0), 0.5f);
  EXPECT_EQ(img.at(0, 0, 1), 0.5f);
  EXPECT_EQ(img.at(0, 0, 2), 1.0f);
  EXPECT_EQ(img.at(1, 0, 0), 1.0f);
  EXPECT_EQ(img.at(1, 0, 1), 0.5f);
  EXPECT_EQ(img.at(1, 0, 2), 0.5f);
}

TEST(NormalMapTest, RoundTripAngle) {
  std::mt19937_64 rng(82);
  std::vector<Eigen::Vector3d> normals;
  for (int k = 0; k < 1000; ++k) normals.push_back(testing::RandomUnit(rng));
  const std::vector<std::uint8_t> mask(normals.size(), 1);
  const std::vector<Eigen::Vector3d> back = DecodeNormalMap(EncodeNormalMap(normals, 100, 10), mask);
  for (std::size_t k = 0; k < normals.size(); ++k) {
    EXPECT_NEAR(back[k].norm(), 1.0, 1e-12);
    EXPECT_LT(std::acos(std::min(1.0, back[k].dot(normals[k]))), 1e-6);
  }
}

TEST(NormalMapTest, ZeroPixelInMask) {
  FloatImage img = FloatImage::Create(2, 1, 3);
  std::fill(img.data.begin(), img.data.end(), 0.5f);
  img.at(1, 0, 2) = 1.0f;
  const std::vector<std::uint8_t> inside = {1, 1};
  EXPECT_THROW(DecodeNormalMap(img, inside), DegenerateInputError);
  const std::vector<std::uint8_t> outside = {0, 1};
  EXPECT_NO_THROW(DecodeNormalMap(img, outside));
}

TEST(DisplayTest, GammaQuantization) {
  FloatImage img = FloatImage::Create(5, 1, 1);
  img.data = {0.0f, 1.0f, 0.5f, 2.0f, -1.0f};
  const std::vector<std::uint8_t> bytes = ToDisplayBytes(img, 2.2);
  EXPECT_EQ(bytes[0], 0);
  EXPECT_EQ(bytes[1], 255);
  EXPECT_EQ(bytes[2], 186);
  EXPECT_EQ(bytes[3], 255);
  EXPECT_EQ(bytes[4], 0);
  EXPECT_THROW(ToDisplayBytes(img, 0.0), ArgumentError);
}

TEST(DisplayTest, PortablePixmapContainers) {
  const auto dir = testing::ScratchDir("display");
  FloatImage rgb = FloatImage::Create(2, 1, 3);
  rgb.data = {1.0f, 0.0f, 0.0f, 0.0f, 0.0f, 1.0f};
  ExportDisplay(dir / "a.ppm", rgb);
  std::ifstream in(dir / "a.ppm", std::ios::binary);
  const std::string bytes((std::istreambuf_iterator<char>(in)), {});
  EXPECT_EQ(bytes, std::string("P6\n2 1\n255\n") + "\xff\x00\x00\x00\x00\xff"s);

  FloatImage gray = FloatImage::Create(1, 1, 1);
  gray.data = {1.0f};
  ExportDisplay(dir / "b.pgm", gray);
  std::ifstream in2(dir / "b.pgm", std::ios::binary);
  const std::string bytes2((std::istreambuf_iterator<char>(in2)), {});
  EXPECT_EQ(bytes2, "P5\n1 1\n255\n\xff");
}

FloatImage Equirect(int w, int h, const std::function<double(const Eigen::Vector3d&)>& f) {
  FloatImage img = FloatImage::Create(w, h, 1);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double theta = (y + 0.5) / h * kPi;
      const double phi = (x + 0.5) / w * 2.0 * kPi;
      const Eigen::Vector3d d(std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
                              std::cos(theta));
      img.at(x, y, 0) = static_cast<float>(f(d));
    }
  }
  return img;
}

TEST(EquirectangularTest, ConstantAndAxes) {
  const double k = std::sqrt(4.0 * kPi / 3.0);
  const std::vector<SHCoeffs9> one = ProjectEquirectangular(Equirect(64, 32, [](auto&) { return 1.0; }), 20000);
  EXPECT_NEAR(one[0][0], 2.0 * std::sqrt(kPi), 1e-3);

  const SHCoeffs9 z = ProjectEquirectangular(Equirect(256, 128, [](auto& d) { return d.z(); }), 20000)[0];
  const SHCoeffs9 x = ProjectEquirectangular(Equirect(256, 128, [](auto& d) { return d.x(); }), 20000)[0];
  const SHCoeffs9 y = ProjectEquirectangular(Equirect(256, 128, [](auto& d) { return d.y(); }), 20000)[0];
  EXPECT_NEAR(z[2], k, 1e-2);
  EXPECT_NEAR(x[3], k, 1e-2);
  EXPECT_NEAR(y[1], k, 1e-2);
  EXPECT_NEAR(z[3], 0.0, 1e-2);
  EXPECT_NEAR(x[1], 0.0, 1e-2);
}

TEST(EquirectangularTest, RgbChannelsAndErrors) {
  FloatImage img = FloatImage::Create(8, 4, 3);
  for (int y = 0; y < 4; ++y)
    for (int x = 0; x < 8; ++x) {
      img.at(x, y, 0) = 1.0f;
      img.at(x, y, 1) = 2.0f;
      img.at(x, y, 2) = 0.0f;
    }
  const std::vector<SHCoeffs9> c = ProjectEquirectangular(img, 5000);
  ASSERT_EQ(c.size(), 3u);
  EXPECT_NEAR(c[1][0], 2.0 * c[0][0], 1e-12);
  EXPECT_EQ(c[2][0], 0.0);
}

TEST(CoefficientsTest, ParseFormatRoundTrip) {
  std::mt19937_64 rng(83);
  std::vector<SHCoeffs9> coeffs;
  for (int k = 0; k < 4; ++k) coeffs.push_back(testing::RandomCoeffs(rng));
  const std::string text = FormatCoefficients(coeffs);
  std::istringstream in("# header\n\n" + text);
  EXPECT_EQ(ParseCoefficients(in), coeffs);
}

TEST(CoefficientsTest, RejectsBadLines) {
  std::istringstream short_line("1 2 3\n");
  EXPECT_THROW(ParseCoefficients(short_line), FormatError);
  std::istringstream long_line("1 2 3 4 5 6 7 8 9 10\n");
  EXPECT_THROW(ParseCoefficients(long_line), FormatError);
  std::istringstream junk("1 2 3 4 5 6 7 8 x\n");
  EXPECT_THROW(ParseCoefficients(junk), FormatError);
}

TEST(CoefficientsTest, IlluminationFiles) {
  const auto dir = testing::ScratchDir("coeffs");
  std::mt19937_64 rng(84);
  IlluminationRgb light;
  for (int c = 0; c < 3; ++c) light[c] = testing::RandomCoeffs(rng);
  WriteIllumination(dir / "l.txt", light);
  const IlluminationRgb back = ReadIllumination(dir / "l.txt");
  for (int c = 0; c < 3; ++c) EXPECT_EQ(back[c], light[c]);

  const std::vector<SHCoeffs9> one = {light[0]};
  WriteCoefficients(dir / "one.txt", one);
  EXPECT_THROW(ReadIllumination(dir / "one.txt"), FormatError);
  EXPECT_THROW(ReadCoefficients(dir / "none.txt"), IoError);
}

TEST(ConversionTest, MaskAndRgb) {
  const std::vector<std::uint8_t> mask = {1, 0, 0, 1};
  const FloatImage img = MaskImage(mask, 2, 2);
  EXPECT_EQ(img.channels, 1);
  EXPECT_EQ(ToMask(img), mask);

  RgbImage rgb = RgbImage::Create(2, 1);
  rgb.pixels = {{0.1, 0.2, 0.3}, {0.4, 0.5, 0.6}};
  const RgbImage back = ToRgbImage(ToFloatImage(rgb));
  EXPECT_NEAR(back.pixels[1][2], 0.6, 1e-7);

  FloatImage gray = FloatImage::Create(1, 1, 1);
  gray.data = {0.25f};
  const RgbImage expanded = ToRgbImage(gray);
  EXPECT_EQ(expanded.pixels[0][0], 0.25);
  EXPECT_EQ(expanded.pixels[0][2], 0.25);
}

}  // namespace
}  // namespace shvis
