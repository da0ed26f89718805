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
#include "shvis/visibility.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <sstream>
#include <string>

#include <Eigen/Geometry>

#include "shvis/errors.hpp"

namespace shvis {

namespace {

constexpr int kLeafSize = 4;
constexpr double kMinTriangleArea = 1e-12;

const Eigen::Vector3d kCameraPosition(0.0, 0.0, 5.8);

bool RayHitsBox(const AlignedBox& box, const Eigen::Vector3d& origin,
                const Eigen::Vector3d& inv_dir, double t_max) {
  double t0 = 0.0;
  double t1 = t_max;
  for (int a = 0; a < 3; ++a) {
    double near = (box.lo[a] - origin[a]) * inv_dir[a];
    double far = (box.hi[a] - origin[a]) * inv_dir[a];
    if (near > far) std::swap(near, far);
    // fmax/fmin drop the NaN produced by 0 * inf on a slab boundary.
    t0 = std::fmax(t0, near);
    t1 = std::fmin(t1, far);
    if (t0 > t1) return false;
  }
  return true;
}

}  // namespace

Scene::Scene(std::vector<Eigen::Vector3d> vertices, std::vector<Triangle> triangles,
             std::vector<SamplePoint> sample_points)
    : vertices_(std::move(vertices)),
      triangles_(std::move(triangles)),
      sample_points_(std::move(sample_points)) {
  const int vertex_count = static_cast<int>(vertices_.size());
  for (const Eigen::Vector3d& v : vertices_) {
    if (!v.allFinite()) throw ArgumentError("non-finite vertex");
    bounds_.Extend(v);
  }
  std::vector<Eigen::Vector3d> centroids;
  centroids.reserve(triangles_.size());
  for (std::size_t t = 0; t < triangles_.size(); ++t) {
    for (int idx : triangles_[t]) {
      if (idx < 0 || idx >= vertex_count) {
        throw ArgumentError("triangle " + std::to_string(t) + " references vertex " +
                            std::to_string(idx) + " of " + std::to_string(vertex_count));
      }
    }
    const Eigen::Vector3d& a = vertices_[static_cast<std::size_t>(triangles_[t][0])];
    const Eigen::Vector3d& b = vertices_[static_cast<std::size_t>(triangles_[t][1])];
    const Eigen::Vector3d& c = vertices_[static_cast<std::size_t>(triangles_[t][2])];
    const double area = 0.5 * (b - a).cross(c - a).norm();
    if (!(area > kMinTriangleArea)) {
      throw ArgumentError("degenerate triangle " + std::to_string(t));
    }
    centroids.push_back((a + b + c) / 3.0);
  }

  order_.resize(triangles_.size());
  for (std::size_t i = 0; i < order_.size(); ++i) order_[i] = static_cast<int>(i);
  if (!triangles_.empty()) {
    nodes_.reserve(2 * triangles_.size() / kLeafSize + 1);
    Build(0, static_cast<int>(triangles_.size()), centroids);
  }
}

int Scene::Build(int first, int count, std::vector<Eigen::Vector3d>& centroids) {
  const int index = static_cast<int>(nodes_.size());
  nodes_.emplace_back();

  AlignedBox box;
  AlignedBox centroid_box;
  for (int i = first; i < first + count; ++i) {
    const Triangle& tri = triangles_[static_cast<std::size_t>(order_[static_cast<std::size_t>(i)])];
    for (int v : tri) box.Extend(vertices_[static_cast<std::size_t>(v)]);
    centroid_box.Extend(centroids[static_cast<std::size_t>(order_[static_cast<std::size_t>(i)])]);
  }
  nodes_[static_cast<std::size_t>(index)].box = box;

  const Eigen::Vector3d extent = centroid_box.hi - centroid_box.lo;
  int axis = 0;
  extent.maxCoeff(&axis);
  if (count <= kLeafSize || extent[axis] <= 0.0) {
    nodes_[static_cast<std::size_t>(index)].first = first;
    nodes_[static_cast<std::size_t>(index)].count = count;
    return index;
  }

  const int half = count / 2;
  auto begin = order_.begin() + first;
  std::nth_element(begin, begin + half, begin + count, [&](int a, int b) {
    return centroids[static_cast<std::size_t>(a)][axis] < centroids[static_cast<std::size_t>(b)][axis];
  });
  Build(first, half, centroids);
  const int right = Build(first + half, count - half, centroids);
  nodes_[static_cast<std::size_t>(index)].right = right;
  return index;
}

bool Scene::HitTriangle(int tri, const Eigen::Vector3d& origin, const Eigen::Vector3d& dir,
                        FaceCulling culling, double t_max, double& t) const {
  const Triangle& indices = triangles_[static_cast<std::size_t>(tri)];
  const Eigen::Vector3d& v0 = vertices_[static_cast<std::size_t>(indices[0])];
  const Eigen::Vector3d e1 = vertices_[static_cast<std::size_t>(indices[1])] - v0;
  const Eigen::Vector3d e2 = vertices_[static_cast<std::size_t>(indices[2])] - v0;
  const Eigen::Vector3d p = dir.cross(e2);
  // det > 0 when the ray travels against the counter-clockwise face normal.
  const double det = e1.dot(p);
  const double eps = 1e-14 * e1.norm() * e2.norm();
  if (culling == FaceCulling::kBack ? det <= eps : std::abs(det) <= eps) return false;

  const double inv_det = 1.0 / det;
  const Eigen::Vector3d s = origin - v0;
  const double u = s.dot(p) * inv_det;
  if (u < 0.0 || u > 1.0) return false;
  const Eigen::Vector3d q = s.cross(e1);
  const double v = dir.dot(q) * inv_det;
  if (v < 0.0 || u + v > 1.0) return false;
  const double hit_t = e2.dot(q) * inv_det;
  if (!(hit_t > 0.0) || hit_t >= t_max) return false;
  t = hit_t;
  return true;
}

template <typename Visit>
void Scene::Traverse(const Eigen::Vector3d& origin, const Eigen::Vector3d& dir, double& t_max,
                     Visit&& visit) const {
  if (nodes_.empty()) return;
  const Eigen::Vector3d inv_dir = dir.cwiseInverse();
  int stack[64];
  int top = 0;
  stack[top++] = 0;
  while (top > 0) {
    const Node& node = nodes_[static_cast<std::size_t>(stack[--top])];
    if (!RayHitsBox(node.box, origin, inv_dir, t_max)) continue;
    if (node.count > 0) {
      for (int i = node.first; i < node.first + node.count; ++i) {
        if (visit(order_[static_cast<std::size_t>(i)])) return;
      }
    } else {
      const int index = static_cast<int>(&node - nodes_.data());
      stack[top++] = node.right;
      stack[top++] = index + 1;
    }
  }
}

std::optional<RayHit> Scene::Intersect(const Eigen::Vector3d& origin, const Direction& dir,
                                       FaceCulling culling) const {
  std::optional<RayHit> best;
  double t_max = std::numeric_limits<double>::infinity();
  Traverse(origin, dir.vec(), t_max, [&](int tri) {
    double t = 0.0;
    if (HitTriangle(tri, origin, dir.vec(), culling, t_max, t)) {
      t_max = t;
      best = RayHit{t, tri};
    }
    return false;
  });
  return best;
}

bool Scene::AnyHit(const Eigen::Vector3d& origin, const Direction& dir, FaceCulling culling) const {
  bool hit = false;
  double t_max = std::numeric_limits<double>::infinity();
  Traverse(origin, dir.vec(), t_max, [&](int tri) {
    double t = 0.0;
    hit = HitTriangle(tri, origin, dir.vec(), culling, t_max, t);
    return hit;
  });
  return hit;
}

bool Scene::AnyHitBruteForce(const Eigen::Vector3d& origin, const Direction& dir,
                             FaceCulling culling) const {
  const double t_max = std::numeric_limits<double>::infinity();
  for (std::size_t tri = 0; tri < triangles_.size(); ++tri) {
    double t = 0.0;
    if (HitTriangle(static_cast<int>(tri), origin, dir.vec(), culling, t_max, t)) return true;
  }
  return false;
}

Scene Scene::Scaled(double factor) const {
  std::vector<Eigen::Vector3d> vertices = vertices_;
  for (Eigen::Vector3d& v : vertices) v *= factor;
  std::vector<SamplePoint> points = sample_points_;
  for (SamplePoint& p : points) p.position *= factor;
  return Scene(std::move(vertices), triangles_, std::move(points));
}

bool Occluded(const Scene& scene, const Eigen::Vector3d& origin, const Direction& dir,
              FaceCulling culling) {
  const Eigen::Vector3d start = origin + scene.SelfIntersectionOffset() * dir.vec();
  return scene.AnyHit(start, dir, culling);
}

SHCoeffs9 BakeVisibility(const Scene& scene, const Eigen::Vector3d& point, std::size_t count,
                         FaceCulling culling) {
  if (count < static_cast<std::size_t>(kNumCoeffs)) {
    throw ArgumentError("visibility bake needs at least 9 directions, got " +
                        std::to_string(count));
  }
  const QuadratureSet quad = FibonacciSphere(count);
  return Project(
      [&](const Direction& w) { return Occluded(scene, point, w, culling) ? 0.0 : 1.0; }, quad);
}

std::vector<SHCoeffs9> BakeSamplePoints(const Scene& scene, std::size_t count,
                                        FaceCulling culling) {
  std::vector<SHCoeffs9> out;
  out.reserve(scene.sample_points().size());
  for (const SamplePoint& p : scene.sample_points()) {
    out.push_back(BakeVisibility(scene, p.position, count, culling));
  }
  return out;
}

// ---------------------------------------------------------------------------
// OBJ and points files

namespace {

int ParseObjIndex(const std::string& token, int vertex_count, std::size_t offset) {
  const std::string head = token.substr(0, token.find('/'));
  int value = 0;
  try {
    std::size_t used = 0;
    value = std::stoi(head, &used);
    if (used != head.size()) throw std::invalid_argument(head);
  } catch (const std::exception&) {
    throw FormatError("bad OBJ face index '" + token + "'", offset);
  }
  if (value == 0) throw FormatError("OBJ face index 0", offset);
  return value > 0 ? value - 1 : vertex_count + value;
}

}  // namespace

Scene ParseObj(std::istream& in) {
  std::vector<Eigen::Vector3d> vertices;
  std::vector<Triangle> triangles;
  std::string line;
  std::size_t offset = 0;
  while (std::getline(in, line)) {
    const std::size_t line_offset = offset;
    offset += line.size() + 1;
    std::istringstream tokens(line);
    std::string tag;
    if (!(tokens >> tag) || tag[0] == '#') continue;
    if (tag == "v") {
      Eigen::Vector3d v;
      if (!(tokens >> v.x() >> v.y() >> v.z())) {
        throw FormatError("bad OBJ vertex record", line_offset);
      }
      vertices.push_back(v);
    } else if (tag == "f") {
      std::vector<std::string> corners;
      std::string corner;
      while (tokens >> corner) corners.push_back(corner);
      if (corners.size() != 3) {
        throw FormatError("non-triangulated OBJ face with " + std::to_string(corners.size()) +
                              " vertices",
                          line_offset);
      }
      Triangle tri;
      for (std::size_t k = 0; k < 3; ++k) {
        tri[k] = ParseObjIndex(corners[k], static_cast<int>(vertices.size()), line_offset);
      }
      triangles.push_back(tri);
    }
  }
  return Scene(std::move(vertices), std::move(triangles));
}

Scene LoadObj(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open mesh '" + path.string() + "'");
  return ParseObj(in);
}

void WriteObj(const std::filesystem::path& path, const Scene& scene) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write mesh '" + path.string() + "'");
  out << std::setprecision(17);
  for (const Eigen::Vector3d& v : scene.vertices()) {
    out << "v " << v.x() << ' ' << v.y() << ' ' << v.z() << '\n';
  }
  for (const Triangle& t : scene.triangles()) {
    out << "f " << t[0] + 1 << ' ' << t[1] + 1 << ' ' << t[2] + 1 << '\n';
  }
  if (!out) throw IoError("failed writing mesh '" + path.string() + "'");
}

std::vector<SamplePoint> ParsePoints(std::istream& in) {
  std::vector<SamplePoint> points;
  std::string line;
  std::size_t offset = 0;
  while (std::getline(in, line)) {
    const std::size_t line_offset = offset;
    offset += line.size() + 1;
    const std::size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '#') continue;
    std::istringstream tokens(line);
    std::vector<double> values;
    double value = 0.0;
    while (tokens >> value) values.push_back(value);
    if (!tokens.eof() || (values.size() != 3 && values.size() != 6)) {
      throw FormatError("points line must hold 3 or 6 numbers", line_offset);
    }
    SamplePoint p;
    p.position = Eigen::Vector3d(values[0], values[1], values[2]);
    if (values.size() == 6) p.normal = Eigen::Vector3d(values[3], values[4], values[5]);
    points.push_back(p);
  }
  return points;
}

std::vector<SamplePoint> LoadPoints(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open points file '" + path.string() + "'");
  return ParsePoints(in);
}

void WritePoints(const std::filesystem::path& path, std::span<const SamplePoint> points) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write points file '" + path.string() + "'");
  out << std::setprecision(17);
  for (const SamplePoint& p : points) {
    out << p.position.x() << ' ' << p.position.y() << ' ' << p.position.z() << ' '
        << p.normal.x() << ' ' << p.normal.y() << ' ' << p.normal.z() << '\n';
  }
  if (!out) throw IoError("failed writing points file '" + path.string() + "'");
}

// ---------------------------------------------------------------------------
// Synthetic sphere scene

namespace {

void AddUvSphere(int segments, int rings, std::vector<Eigen::Vector3d>& vertices,
                 std::vector<Triangle>& triangles) {
  constexpr double kPi = std::numbers::pi;
  const int base = static_cast<int>(vertices.size());
  vertices.emplace_back(0.0, 0.0, 1.0);
  for (int r = 1; r < rings; ++r) {
    const double theta = kPi * r / rings;
    for (int s = 0; s < segments; ++s) {
      const double phi = 2.0 * kPi * s / segments;
      vertices.emplace_back(std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
                            std::cos(theta));
    }
  }
  vertices.emplace_back(0.0, 0.0, -1.0);
  const int north = base;
  const int south = static_cast<int>(vertices.size()) - 1;
  auto ring = [&](int r, int s) { return base + 1 + (r - 1) * segments + (s % segments); };

  for (int s = 0; s < segments; ++s) triangles.push_back({north, ring(1, s), ring(1, s + 1)});
  for (int r = 1; r + 1 < rings; ++r) {
    for (int s = 0; s < segments; ++s) {
      triangles.push_back({ring(r, s), ring(r + 1, s), ring(r + 1, s + 1)});
      triangles.push_back({ring(r, s), ring(r + 1, s + 1), ring(r, s + 1)});
    }
  }
  for (int s = 0; s < segments; ++s) {
    triangles.push_back({south, ring(rings - 1, s + 1), ring(rings - 1, s)});
  }
}

// Closed box with outward (counter-clockwise) faces.
void AddBox(const Eigen::Vector3d& lo, const Eigen::Vector3d& hi,
            std::vector<Eigen::Vector3d>& vertices, std::vector<Triangle>& triangles) {
  const int base = static_cast<int>(vertices.size());
  for (int i = 0; i < 8; ++i) {
    vertices.emplace_back((i & 1) ? hi.x() : lo.x(), (i & 2) ? hi.y() : lo.y(),
                          (i & 4) ? hi.z() : lo.z());
  }
  const Eigen::Vector3d center = 0.5 * (lo + hi);
  const int quads[6][4] = {{0, 2, 6, 4}, {1, 5, 7, 3}, {0, 4, 5, 1},
                           {2, 3, 7, 6}, {0, 1, 3, 2}, {4, 6, 7, 5}};
  for (const auto& q : quads) {
    for (const Triangle& local : {Triangle{q[0], q[1], q[2]}, Triangle{q[0], q[2], q[3]}}) {
      Triangle tri = {base + local[0], base + local[1], base + local[2]};
      const Eigen::Vector3d& a = vertices[static_cast<std::size_t>(tri[0])];
      const Eigen::Vector3d& b = vertices[static_cast<std::size_t>(tri[1])];
      const Eigen::Vector3d& c = vertices[static_cast<std::size_t>(tri[2])];
      if ((b - a).cross(c - a).dot((a + b + c) / 3.0 - center) < 0.0) std::swap(tri[1], tri[2]);
      triangles.push_back(tri);
    }
  }
}

std::vector<std::uint8_t> Erode(const std::vector<std::uint8_t>& mask, int width, int height) {
  std::vector<std::uint8_t> out(mask.size(), 0);
  auto at = [&](int x, int y) -> bool {
    if (x < 0 || y < 0 || x >= width || y >= height) return false;
    return mask[static_cast<std::size_t>(y * width + x)] != 0;
  };
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      out[static_cast<std::size_t>(y * width + x)] =
          at(x, y) && at(x - 1, y) && at(x + 1, y) && at(x, y - 1) && at(x, y + 1);
    }
  }
  return out;
}

}  // namespace

SyntheticScene GenerateSphereScene(const SphereSceneOptions& options) {
  if (options.resolution < 1) throw ArgumentError("resolution must be at least 1");
  if (!(options.fov_degrees > 0.0 && options.fov_degrees < 180.0)) {
    throw ArgumentError("field of view must lie in (0, 180) degrees");
  }
  if (options.sphere_segments < 3 || options.sphere_rings < 2) {
    throw ArgumentError("sphere tessellation too coarse");
  }

  std::vector<Eigen::Vector3d> vertices;
  std::vector<Triangle> triangles;
  AddUvSphere(options.sphere_segments, options.sphere_rings, vertices, triangles);
  const int sphere_triangles = static_cast<int>(triangles.size());
  if (options.blocker) {
    AddBox(Eigen::Vector3d(1.15, -1.6, -1.6), Eigen::Vector3d(1.6, 1.6, 1.2), vertices, triangles);
  }
  const Scene mesh(vertices, triangles);

  const int n = options.resolution;
  SyntheticScene out;
  out.maps = IntrinsicsMap::Create(n, n);
  out.positions.assign(out.maps.size(), Eigen::Vector3d::Zero());
  out.sphere_triangles = sphere_triangles;

  const double tan_half = std::tan(0.5 * options.fov_degrees * std::numbers::pi / 180.0);
  std::vector<SamplePoint> samples;
  for (int row = 0; row < n; ++row) {
    for (int col = 0; col < n; ++col) {
      const std::size_t i = static_cast<std::size_t>(row * n + col);
      const double sx = ((col + 0.5) / n * 2.0 - 1.0) * tan_half;
      const double sy = (1.0 - (row + 0.5) / n * 2.0) * tan_half;
      const Direction dir(sx, sy, -1.0);
      const std::optional<RayHit> hit = mesh.Intersect(kCameraPosition, dir);
      out.maps.albedo[i] = options.albedo;
      if (!hit || hit->triangle >= sphere_triangles) {
        out.maps.mask[i] = 0;
        out.maps.normal[i] = Eigen::Vector3d::Zero();
        continue;
      }
      const Eigen::Vector3d p = kCameraPosition + hit->t * dir.vec();
      out.positions[i] = p;
      out.maps.normal[i] = p.normalized();
      out.maps.mask[i] = 1;
    }
  }
  if (options.erode_mask) out.maps.mask = Erode(out.maps.mask, n, n);
  for (std::size_t i = 0; i < out.maps.size(); ++i) {
    if (out.maps.mask[i] != 0) samples.push_back({out.positions[i], out.maps.normal[i]});
  }
  out.scene = Scene(std::move(vertices), std::move(triangles), std::move(samples));
  return out;
}

void BakeMapVisibility(SyntheticScene& synthetic, std::size_t count, FaceCulling culling) {
  for (std::size_t i = 0; i < synthetic.maps.size(); ++i) {
    if (synthetic.maps.mask[i] == 0) continue;
    synthetic.maps.visibility[i] =
        BakeVisibility(synthetic.scene, synthetic.positions[i], count, culling);
  }
}

}  // namespace shvis
