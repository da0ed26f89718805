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
// Ray-traced visibility: a triangle-mesh scene with a median-split BVH,
// binary occlusion queries, and projection of the visibility function of a
// point onto SH.

#ifndef SHVIS_VISIBILITY_HPP_
#define SHVIS_VISIBILITY_HPP_

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "shvis/renderer.hpp"
#include "shvis/sh_core.hpp"

namespace shvis {

// kBack ignores hits on triangles whose front side (counter-clockwise
// winding) faces away from the ray, so a ray leaving a closed object through
// its surface is not occluded by it.
enum class FaceCulling { kBack, kNone };

using Triangle = std::array<int, 3>;

struct SamplePoint {
  Eigen::Vector3d position = Eigen::Vector3d::Zero();
  Eigen::Vector3d normal = Eigen::Vector3d::UnitZ();
};

struct RayHit {
  double t = 0.0;
  int triangle = -1;
};

struct AlignedBox {
  Eigen::Vector3d lo = Eigen::Vector3d::Constant(std::numeric_limits<double>::infinity());
  Eigen::Vector3d hi = Eigen::Vector3d::Constant(-std::numeric_limits<double>::infinity());

  bool empty() const { return (lo.array() > hi.array()).any(); }
  void Extend(const Eigen::Vector3d& p) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  void Extend(const AlignedBox& b) {
    lo = lo.cwiseMin(b.lo);
    hi = hi.cwiseMax(b.hi);
  }
  double Diagonal() const { return empty() ? 0.0 : (hi - lo).norm(); }
};

// Immutable triangle mesh plus optional sample points. Construction validates
// indices and rejects triangles with area <= 1e-12, then builds the BVH.
class Scene {
 public:
  Scene() = default;
  Scene(std::vector<Eigen::Vector3d> vertices, std::vector<Triangle> triangles,
        std::vector<SamplePoint> sample_points = {});

  const std::vector<Eigen::Vector3d>& vertices() const { return vertices_; }
  const std::vector<Triangle>& triangles() const { return triangles_; }
  const std::vector<SamplePoint>& sample_points() const { return sample_points_; }
  const AlignedBox& bounds() const { return bounds_; }

  // Ray origins are pushed along the ray by 1e-4 of the bounding-box
  // diagonal.
  double SelfIntersectionOffset() const { return 1e-4 * bounds_.Diagonal(); }

  // Closest hit with t > 0 along origin + t * dir (no offset applied).
  std::optional<RayHit> Intersect(const Eigen::Vector3d& origin, const Direction& dir,
                                  FaceCulling culling = FaceCulling::kBack) const;

  // Any hit with t > 0 (no offset applied). BVH and brute-force variants.
  bool AnyHit(const Eigen::Vector3d& origin, const Direction& dir, FaceCulling culling) const;
  bool AnyHitBruteForce(const Eigen::Vector3d& origin, const Direction& dir,
                        FaceCulling culling) const;

  // A copy with every vertex and sample point scaled about the origin.
  Scene Scaled(double factor) const;

 private:
  struct Node {
    AlignedBox box;
    // Leaves: [first, first + count) into order_. Interior: children at
    // index + 1 and right.
    int first = 0;
    int count = 0;
    int right = 0;
  };

  int Build(int first, int count, std::vector<Eigen::Vector3d>& centroids);
  template <typename Visit>
  void Traverse(const Eigen::Vector3d& origin, const Eigen::Vector3d& dir, double& t_max,
                Visit&& visit) const;
  bool HitTriangle(int tri, const Eigen::Vector3d& origin, const Eigen::Vector3d& dir,
                   FaceCulling culling, double t_max, double& t) const;

  std::vector<Eigen::Vector3d> vertices_;
  std::vector<Triangle> triangles_;
  std::vector<SamplePoint> sample_points_;
  AlignedBox bounds_;
  std::vector<Node> nodes_;
  std::vector<int> order_;
};

// True iff the ray from origin + offset * dir hits a triangle at t > 0.
bool Occluded(const Scene& scene, const Eigen::Vector3d& origin, const Direction& dir,
              FaceCulling culling = FaceCulling::kBack);

// Projects the binary visibility of `point` over a Fibonacci lattice of
// `count` directions (the full sphere) onto SH. Throws ArgumentError when
// count < 9.
SHCoeffs9 BakeVisibility(const Scene& scene, const Eigen::Vector3d& point,
                         std::size_t count = kVisibilitySampleCount,
                         FaceCulling culling = FaceCulling::kBack);

// Bakes every sample point of the scene.
std::vector<SHCoeffs9> BakeSamplePoints(const Scene& scene,
                                        std::size_t count = kVisibilitySampleCount,
                                        FaceCulling culling = FaceCulling::kBack);

// ASCII OBJ subset: "v x y z" and triangular "f" records (v, v/t, v//n and
// v/t/n forms; negative indices are relative). Other records are ignored.
// Polygons with more than three vertices throw FormatError.
Scene ParseObj(std::istream& in);
Scene LoadObj(const std::filesystem::path& path);
void WriteObj(const std::filesystem::path& path, const Scene& scene);

// Points file: one "x y z [nx ny nz]" line per sample point; '#' comments.
std::vector<SamplePoint> ParsePoints(std::istream& in);
std::vector<SamplePoint> LoadPoints(const std::filesystem::path& path);
void WritePoints(const std::filesystem::path& path, std::span<const SamplePoint> points);

struct SphereSceneOptions {
  int resolution = 8;
  // Closed box beside the sphere on the +X side.
  bool blocker = false;
  // Horizontal field of view of the camera at (0, 0, 5.8) looking down -Z.
  double fov_degrees = 22.5;
  // Drop mask pixels with a background 4-neighbour.
  bool erode_mask = false;
  int sphere_segments = 64;
  int sphere_rings = 32;
  Rgb albedo = {0.8, 0.7, 0.6};
};

struct SyntheticScene {
  Scene scene;
  // Visibility left zero; see BakeMapVisibility.
  IntrinsicsMap maps;
  // Surface position per pixel (zero on background pixels).
  std::vector<Eigen::Vector3d> positions;
  // Triangles [0, sphere_triangles) belong to the unit sphere.
  int sphere_triangles = 0;
};

// Unit UV-sphere at the origin (plus the optional blocker) seen through a
// perspective camera; per-pixel mask, position, normal and albedo maps.
SyntheticScene GenerateSphereScene(const SphereSceneOptions& options);

// Bakes visibility into every masked pixel of the scene's maps.
void BakeMapVisibility(SyntheticScene& synthetic, std::size_t count = kVisibilitySampleCount,
                       FaceCulling culling = FaceCulling::kBack);

}  // namespace shvis

#endif  // SHVIS_VISIBILITY_HPP_
