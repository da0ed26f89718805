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
#include "shvis/light_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include <Eigen/Dense>

#include "shvis/errors.hpp"
#include "shvis/sh_products.hpp"
#include "shvis/sh_transform.hpp"

namespace shvis {

namespace {

constexpr double kMaxCondition = 1e10;

using Matrix = Eigen::Matrix<double, Eigen::Dynamic, kNumCoeffs>;
using Vector9 = Eigen::Matrix<double, kNumCoeffs, 1>;

void RequireSampleCount(std::size_t count) {
  if (count < static_cast<std::size_t>(kNumCoeffs)) {
    throw ArgumentError("least squares needs at least 9 sample directions, got " +
                        std::to_string(count));
  }
}

SHCoeffs9 FromVector(const Vector9& v) {
  SHCoeffs9 c;
  for (int i = 0; i < kNumCoeffs; ++i) c[i] = v[i];
  return c;
}

// Solves min |A x - b| and reports the conditioning of A.
LightSolution SolveLeastSquares(const Matrix& a, const Eigen::VectorXd& b,
                                LeastSquaresMethod method) {
  const Eigen::JacobiSVD<Matrix> svd(a);
  const auto& sv = svd.singularValues();
  const double smallest = sv[sv.size() - 1];
  const double condition =
      smallest > 0.0 ? sv[0] / smallest : std::numeric_limits<double>::infinity();
  if (!(condition < kMaxCondition)) {
    std::ostringstream msg;
    msg << "rank-deficient illumination system (condition number " << condition << ", "
        << a.rows() << " equations)";
    throw NumericalError(msg.str());
  }

  Vector9 x;
  if (method == LeastSquaresMethod::kQr) {
    x = a.colPivHouseholderQr().solve(b);
  } else {
    const Eigen::Matrix<double, kNumCoeffs, kNumCoeffs> normal = a.transpose() * a;
    x = normal.ldlt().solve(a.transpose() * b);
  }

  LightSolution solution;
  solution.coeffs = FromVector(x);
  solution.rms_residual = std::sqrt((a * x - b).squaredNorm() / static_cast<double>(a.rows()));
  solution.condition_number = condition;
  return solution;
}

}  // namespace

LightSolution RecoverIllumination(const ShadingCoeffs& shading, std::size_t sample_count,
                                  LeastSquaresMethod method) {
  RequireSampleCount(sample_count);
  const QuadratureSet normals = FibonacciSphere(sample_count);

  Matrix a(static_cast<Eigen::Index>(sample_count), kNumCoeffs);
  Eigen::VectorXd b(static_cast<Eigen::Index>(sample_count));
  for (std::size_t k = 0; k < sample_count; ++k) {
    const Direction& n = normals.directions[k];
    const SHCoeffs9 cosine = ClampedCosineLobe(n);
    const auto row = static_cast<Eigen::Index>(k);
    for (int i = 0; i < kNumCoeffs; ++i) a(row, i) = cosine[i];
    b[row] = EvalSH(shading, n);
  }
  return SolveLeastSquares(a, b, method);
}

ShadingCoeffs ForwardShading(const SHCoeffs9& light, std::size_t sample_count) {
  RequireSampleCount(sample_count);
  const QuadratureSet normals = FibonacciSphere(sample_count);
  Matrix a(static_cast<Eigen::Index>(sample_count), kNumCoeffs);
  Eigen::VectorXd b(static_cast<Eigen::Index>(sample_count));
  for (std::size_t k = 0; k < sample_count; ++k) {
    const Direction& n = normals.directions[k];
    const BasisValues y = EvalBasisAll(n);
    const auto row = static_cast<Eigen::Index>(k);
    for (int i = 0; i < kNumCoeffs; ++i) a(row, i) = y[static_cast<std::size_t>(i)];
    b[row] = DoubleProduct(light, ClampedCosineLobe(n));
  }
  return SolveLeastSquares(a, b, LeastSquaresMethod::kQr).coeffs;
}

SHCoeffs9 ClampNonnegative(const SHCoeffs9& coeffs, std::size_t sample_count) {
  auto clamped = [&](const Direction& w) { return std::max(0.0, EvalSH(coeffs, w)); };
  if (sample_count == kIntegrationSampleCount) return Project(clamped, DefaultLattice());
  return Project(clamped, FibonacciSphere(sample_count));
}

IlluminationRgb ScaleIntensity(const IlluminationRgb& light, const IntrinsicsMap& maps,
                               double target) {
  if (!(std::isfinite(target) && target > 0.0)) {
    throw ArgumentError("target intensity must be positive and finite");
  }
  const RgbImage image = RenderImage(maps, light);
  bool any = false;
  double peak = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < image.size(); ++i) {
    if (maps.mask[i] == 0) continue;
    any = true;
    for (double v : image.pixels[i]) peak = std::max(peak, v);
  }
  if (!any) throw DegenerateInputError("intensity scaling needs at least one masked pixel");
  if (!(peak > 0.0)) throw DegenerateInputError("render is zero everywhere; cannot scale");

  IlluminationRgb out = light;
  const double factor = target / peak;
  for (SHCoeffs9& c : out.channels) c *= factor;
  return out;
}

SHCoeffs9 RotateIllumination(const SHCoeffs9& light, double alpha, double beta, double gamma) {
  return Rotate(ZyzRotation(alpha, beta, gamma), light);
}

IlluminationRgb RotateIllumination(const IlluminationRgb& light, double alpha, double beta,
                                   double gamma) {
  const SHRotation rotation = ZyzRotation(alpha, beta, gamma);
  IlluminationRgb out;
  for (int c = 0; c < 3; ++c) out[c] = Rotate(rotation, light[c]);
  return out;
}

}  // namespace shvis
