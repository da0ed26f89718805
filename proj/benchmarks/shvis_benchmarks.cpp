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
#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "shvis/light_solver.hpp"
#include "shvis/renderer.hpp"
#include "shvis/sh_core.hpp"
#include "shvis/sh_products.hpp"
#include "shvis/sh_transform.hpp"
#include "shvis/visibility.hpp"

namespace shvis {
namespace {

SHCoeffs9 RandomCoeffs(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  SHCoeffs9 c;
  for (int i = 0; i < kNumCoeffs; ++i) c[i] = u(rng);
  return c;
}

void BM_EvalBasisAll(benchmark::State& state) {
  const Direction w(0.3, -0.4, 0.8);
  for (auto _ : state) benchmark::DoNotOptimize(EvalBasisAll(w));
}
BENCHMARK(BM_EvalBasisAll);

void BM_ProductCoeffs(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const SHCoeffs9 f = RandomCoeffs(rng);
  const SHCoeffs9 g = RandomCoeffs(rng);
  const TriplingTensor& t = TriplingTensor::Get();
  for (auto _ : state) benchmark::DoNotOptimize(ProductCoeffs(f, g, t));
}
BENCHMARK(BM_ProductCoeffs);

void BM_TripleProduct(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const SHCoeffs9 h = RandomCoeffs(rng);
  const SHCoeffs9 f = RandomCoeffs(rng);
  const SHCoeffs9 g = RandomCoeffs(rng);
  for (auto _ : state) benchmark::DoNotOptimize(TripleProduct(h, f, g));
}
BENCHMARK(BM_TripleProduct);

void BM_ZyzRotationBuild(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(ZyzRotation(0.3, 1.1, -0.7));
}
BENCHMARK(BM_ZyzRotationBuild);

void BM_RotateToNormal(benchmark::State& state) {
  const Direction n(0.2, 0.5, 0.6);
  const SHCoeffs9 lobe = ClampedCosineZ();
  for (auto _ : state) benchmark::DoNotOptimize(RotateToNormal(lobe, n));
}
BENCHMARK(BM_RotateToNormal);

void BM_RenderPixel(benchmark::State& state) {
  std::mt19937_64 rng(3);
  PixelIntrinsics p;
  p.normal = Direction(0.2, 0.5, 0.6);
  p.visibility = RandomCoeffs(rng);
  IlluminationRgb light;
  for (int c = 0; c < 3; ++c) light[c] = RandomCoeffs(rng);
  for (auto _ : state) benchmark::DoNotOptimize(RenderPixel(p, light));
}
BENCHMARK(BM_RenderPixel);

void BM_RenderGradients(benchmark::State& state) {
  std::mt19937_64 rng(4);
  PixelIntrinsics p;
  p.normal = Direction(0.2, 0.5, 0.6);
  p.visibility = RandomCoeffs(rng);
  IlluminationRgb light;
  for (int c = 0; c < 3; ++c) light[c] = RandomCoeffs(rng);
  for (auto _ : state) benchmark::DoNotOptimize(ComputeRenderGradients(p, light));
}
BENCHMARK(BM_RenderGradients);

void BM_BakeSpherePoint(benchmark::State& state) {
  SphereSceneOptions options;
  options.blocker = true;
  const SyntheticScene s = GenerateSphereScene(options);
  const Eigen::Vector3d p = s.scene.sample_points().front().position;
  const std::size_t count = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(BakeVisibility(s.scene, p, count));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BakeSpherePoint)->Arg(872)->Arg(4096);

void BM_RecoverIllumination(benchmark::State& state) {
  std::mt19937_64 rng(5);
  const SHCoeffs9 s = ForwardShading(RandomCoeffs(rng), 4000);
  const std::size_t count = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(RecoverIllumination(s, count));
}
BENCHMARK(BM_RecoverIllumination)->Arg(4000)->Arg(64000)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace shvis

BENCHMARK_MAIN();
