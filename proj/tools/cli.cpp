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
#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "gradient_check.hpp"
#include "shvis/errors.hpp"
#include "shvis/imaging_io.hpp"
#include "shvis/light_solver.hpp"
#include "shvis/losses.hpp"
#include "shvis/renderer.hpp"
#include "shvis/sh_transform.hpp"
#include "shvis/visibility.hpp"

namespace shvis::tools {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string Dims(int w, int h) { return std::to_string(w) + "x" + std::to_string(h); }

void RequireDims(const FloatImage& image, int w, int h, const std::string& name,
                 const std::string& reference) {
  if (image.width != w || image.height != h) {
    throw ArgumentError("dimension mismatch: " + name + " is " + Dims(image.width, image.height) +
                        ", " + reference + " is " + Dims(w, h));
  }
}

void RequireFile(const std::string& path) {
  if (!fs::is_regular_file(path)) throw IoError("cannot read '" + path + "'");
}

// One line is broadcast to every pixel; otherwise one line per pixel.
std::vector<SHCoeffs9> ReadVisibilityMap(const std::string& path, int w, int h) {
  std::vector<SHCoeffs9> lines = ReadCoefficients(path);
  const std::size_t pixels = static_cast<std::size_t>(w) * static_cast<std::size_t>(h);
  if (lines.size() == 1) return std::vector<SHCoeffs9>(pixels, lines.front());
  if (lines.size() != pixels) {
    throw ArgumentError("dimension mismatch: visibility file '" + path + "' has " +
                        std::to_string(lines.size()) + " lines, expected 1 or " +
                        std::to_string(pixels) + " (" + Dims(w, h) + ")");
  }
  return lines;
}

std::vector<Eigen::Vector3d> ReadNormals(const std::string& path, const std::string& encoding,
                                         std::span<const std::uint8_t> mask, int w, int h) {
  const FloatImage image = ReadPfm(path);
  RequireDims(image, w, h, "normal map", "albedo");
  if (image.channels != 3) throw ArgumentError("normal map needs 3 channels");
  if (encoding == "unit") return DecodeNormalMap(image, mask);
  return ImageToNormals(image);
}

std::vector<std::uint8_t> ReadMaskOrAll(const std::string& path, int w, int h) {
  if (path.empty()) return std::vector<std::uint8_t>(static_cast<std::size_t>(w * h), 1);
  const FloatImage image = ReadPfm(path);
  RequireDims(image, w, h, "mask", "albedo");
  return ToMask(image);
}

struct MapPaths {
  std::string albedo;
  std::string normal;
  std::string vis;
};

// Loads albedo/normal/visibility maps with a shared mask; validates sizes and
// albedo range on masked pixels.
IntrinsicsMap LoadIntrinsics(const MapPaths& paths, const std::string& normal_encoding,
                             const std::vector<std::uint8_t>* mask_override, int* w_out,
                             int* h_out, const std::string& mask_path) {
  RequireFile(paths.albedo);
  RequireFile(paths.normal);
  RequireFile(paths.vis);
  if (!mask_path.empty()) RequireFile(mask_path);
  const FloatImage albedo = ReadPfm(paths.albedo);
  const int w = albedo.width;
  const int h = albedo.height;

  IntrinsicsMap maps = IntrinsicsMap::Create(w, h);
  maps.mask = mask_override != nullptr ? *mask_override : ReadMaskOrAll(mask_path, w, h);
  if (maps.mask.size() != maps.size()) {
    throw ArgumentError("dimension mismatch: mask has " + std::to_string(maps.mask.size()) +
                        " pixels, albedo is " + Dims(w, h));
  }
  const RgbImage rgb = ToRgbImage(albedo);
  maps.albedo = rgb.pixels;
  maps.normal = ReadNormals(paths.normal, normal_encoding, maps.mask, w, h);
  maps.visibility = ReadVisibilityMap(paths.vis, w, h);
  for (std::size_t i = 0; i < maps.size(); ++i) {
    if (maps.mask[i] == 0) continue;
    for (double a : maps.albedo[i]) {
      if (!(a >= 0.0 && a <= 1.0)) {
        throw ArgumentError("albedo outside [0, 1] at pixel " + std::to_string(i));
      }
    }
  }
  if (w_out != nullptr) *w_out = w;
  if (h_out != nullptr) *h_out = h;
  return maps;
}

// ---------------------------------------------------------------------------

struct RenderArgs {
  MapPaths maps;
  std::string light;
  std::string mask;
  std::string out;
  std::string shading_out;
  std::string display_out;
  std::string normal_encoding = "raw";
  double gamma = 2.2;
};

int CmdRender(const RenderArgs& a, std::ostream& out) {
  RequireFile(a.light);
  int w = 0;
  int h = 0;
  const IntrinsicsMap maps = LoadIntrinsics(a.maps, a.normal_encoding, nullptr, &w, &h, a.mask);
  const IlluminationRgb light = ReadIllumination(a.light);

  const RgbImage image = RenderImage(maps, light);
  WritePfm(a.out, ToFloatImage(image));
  if (!a.shading_out.empty()) WritePfm(a.shading_out, ToFloatImage(RenderShadingImage(maps, light)));
  if (!a.display_out.empty()) ExportDisplay(a.display_out, ToFloatImage(image), a.gamma);
  out << "rendered " << Dims(w, h) << " image to " << a.out << "\n";
  return 0;
}

struct BakeArgs {
  std::string mesh;
  std::string points;
  std::string out;
  std::size_t count = kVisibilitySampleCount;
  bool no_cull = false;
};

int CmdBake(const BakeArgs& a, std::ostream& out) {
  RequireFile(a.mesh);
  RequireFile(a.points);
  const Scene mesh = LoadObj(a.mesh);
  std::vector<SamplePoint> points = LoadPoints(a.points);
  const Scene scene(mesh.vertices(), mesh.triangles(), std::move(points));
  const std::vector<SHCoeffs9> coeffs = BakeSamplePoints(
      scene, a.count, a.no_cull ? FaceCulling::kNone : FaceCulling::kBack);
  WriteCoefficients(a.out, coeffs);
  out << "baked " << coeffs.size() << " points with " << a.count << " directions\n";
  return 0;
}

struct RecoverArgs {
  std::string shading;
  std::string out;
  bool clamp = false;
  std::string clamp_order = "recover-then-clamp";
  std::size_t count = kIntegrationSampleCount;
  std::string method = "qr";
};

int CmdRecover(const RecoverArgs& a, std::ostream& out) {
  RequireFile(a.shading);
  const std::vector<SHCoeffs9> shading = ReadCoefficients(a.shading);
  if (shading.size() != 1 && shading.size() != 3) {
    throw ArgumentError("shading file needs 1 or 3 lines, has " + std::to_string(shading.size()));
  }
  const LeastSquaresMethod method =
      a.method == "normal" ? LeastSquaresMethod::kNormalEquations : LeastSquaresMethod::kQr;
  const bool clamp_first = a.clamp && a.clamp_order == "clamp-then-recover";
  const bool clamp_after = a.clamp && !clamp_first;

  std::vector<SHCoeffs9> lights;
  for (std::size_t c = 0; c < shading.size(); ++c) {
    const SHCoeffs9 s = clamp_first ? ClampNonnegative(shading[c], a.count) : shading[c];
    const LightSolution solution = RecoverIllumination(s, a.count, method);
    lights.push_back(clamp_after ? ClampNonnegative(solution.coeffs, a.count) : solution.coeffs);
    out << "channel " << c << ": rms residual " << solution.rms_residual << ", condition "
        << solution.condition_number << "\n";
  }
  WriteCoefficients(a.out, lights);
  return 0;
}

struct ProjectArgs {
  std::string envmap;
  std::string out;
  std::size_t count = kIntegrationSampleCount;
};

int CmdProject(const ProjectArgs& a, std::ostream& out) {
  RequireFile(a.envmap);
  const std::vector<SHCoeffs9> coeffs = ProjectEquirectangular(ReadPfm(a.envmap), a.count);
  WriteCoefficients(a.out, coeffs);
  out << "projected " << coeffs.size() << " channel(s)\n";
  return 0;
}

struct RotateArgs {
  std::string coeffs;
  std::string out;
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  bool degrees = false;
};

int CmdRotate(const RotateArgs& a, std::ostream&) {
  RequireFile(a.coeffs);
  const double k = a.degrees ? std::numbers::pi / 180.0 : 1.0;
  const SHRotation rotation = ZyzRotation(a.alpha * k, a.beta * k, a.gamma * k);
  std::vector<SHCoeffs9> coeffs = ReadCoefficients(a.coeffs);
  for (SHCoeffs9& c : coeffs) c = Rotate(rotation, c);
  WriteCoefficients(a.out, coeffs);
  return 0;
}

struct LossArgs {
  std::string stage = "synthetic";
  std::string image;
  MapPaths est;
  MapPaths gt;
  std::string light_est;
  std::string light_gt;
  std::string mask;
  LossWeights weights;
  std::size_t light_samples = kIntegrationSampleCount;
  bool json = false;
};

int CmdLoss(const LossArgs& a, std::ostream& out) {
  RequireFile(a.image);
  RequireFile(a.light_est);
  RequireFile(a.light_gt);
  LossInputs in;
  int w = 0;
  int h = 0;
  in.ground_truth = LoadIntrinsics(a.gt, "raw", nullptr, &w, &h, a.mask);
  in.mask = in.ground_truth.mask;
  in.estimate = LoadIntrinsics(a.est, "raw", &in.mask, nullptr, nullptr, "");
  if (in.estimate.width != w || in.estimate.height != h) {
    throw ArgumentError("dimension mismatch: estimate is " +
                        Dims(in.estimate.width, in.estimate.height) + ", ground truth is " +
                        Dims(w, h));
  }
  const FloatImage observed = ReadPfm(a.image);
  RequireDims(observed, w, h, "image", "ground truth");
  in.observed = ToRgbImage(observed);
  in.light_estimate = ReadIllumination(a.light_est);
  in.light_ground_truth = ReadIllumination(a.light_gt);

  const TrainingStage stage = a.stage == "real" ? TrainingStage::kReal : TrainingStage::kSynthetic;
  const LossBreakdown b = TotalLoss(stage, in, a.weights, a.light_samples);

  std::map<std::string, double> terms = {
      {"albedo", b.components.albedo},
      {"normal", b.components.normal},
      {"visibility", b.components.visibility},
      {"illumination", b.illumination},
  };
  if (stage == TrainingStage::kSynthetic) {
    terms["recon_albedo"] = b.recon_albedo;
    terms["recon_normal"] = b.recon_normal;
    terms["recon_visibility"] = b.recon_visibility;
    terms["recon_light"] = b.recon_light;
  } else {
    terms["recon_albedo_normal_light"] = b.recon_albedo_normal_light;
  }
  if (a.json) {
    json j;
    j["stage"] = a.stage;
    j["weights"] = {{"lambda_n", a.weights.lambda_n},
                    {"lambda_v", a.weights.lambda_v},
                    {"lambda_l", a.weights.lambda_l}};
    j["terms"] = terms;
    j["visibility_gradient_blocked"] = stage == TrainingStage::kReal;
    j["total"] = b.total;
    out << j.dump(2) << "\n";
  } else {
    out << std::setprecision(10);
    for (const auto& [name, value] : terms) out << name << " " << value << "\n";
    out << "total " << b.total << "\n";
  }
  return 0;
}

int CmdGradcheck(const GradientCheckOptions& options, bool as_json, std::ostream& out) {
  const GradientCheckReport r = RunGradientCheck(options);
  if (as_json) {
    json j = {{"trials", r.trials},
              {"partials_checked", r.partials_checked},
              {"violations", r.violations},
              {"worst_relative_error", r.worst_relative_error},
              {"worst_partial", r.worst_partial},
              {"tolerance", options.tolerance}};
    out << j.dump(2) << "\n";
  } else {
    out << "checked " << r.partials_checked << " partials over " << r.trials << " trials\n"
        << "worst relative error " << r.worst_relative_error << " (" << r.worst_partial << ")\n"
        << "violations " << r.violations << "\n";
  }
  return r.violations == 0 ? 0 : 3;
}

struct SceneArgs {
  SphereSceneOptions options;
  std::string out_dir;
  std::size_t count = kVisibilitySampleCount;
};

int CmdScene(const SceneArgs& a, std::ostream& out) {
  SyntheticScene s = GenerateSphereScene(a.options);
  BakeMapVisibility(s, a.count);
  const fs::path dir(a.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create '" + a.out_dir + "': " + ec.message());

  const int n = s.maps.width;
  RgbImage albedo = RgbImage::Create(n, n);
  albedo.pixels = s.maps.albedo;
  WritePfm(dir / "albedo.pfm", ToFloatImage(albedo));
  WritePfm(dir / "normal.pfm", NormalsToImage(s.maps.normal, n, n));
  WritePfm(dir / "mask.pfm", MaskImage(s.maps.mask, n, n));
  WriteCoefficients(dir / "vis.txt", s.maps.visibility);
  WritePoints(dir / "points.txt", s.scene.sample_points());
  WriteObj(dir / "mesh.obj", s.scene);
  out << "wrote " << Dims(n, n) << " sphere scene to " << a.out_dir << "\n";
  return 0;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"SH lighting with explicit visibility: render, bake, recover, verify"};
  app.name("shvis");
  app.require_subcommand(1);

  RenderArgs render;
  CLI::App* render_cmd = app.add_subcommand("render", "Render radiance from intrinsic maps");
  render_cmd->add_option("--albedo", render.maps.albedo, "Albedo PFM")->required();
  render_cmd->add_option("--normal", render.maps.normal, "Normal PFM")->required();
  render_cmd->add_option("--vis", render.maps.vis, "Visibility coefficient file")->required();
  render_cmd->add_option("--light", render.light, "RGB illumination coefficient file")
      ->required();
  render_cmd->add_option("--mask", render.mask, "Foreground mask PFM");
  render_cmd->add_option("--out", render.out, "Output radiance PFM")->required();
  render_cmd->add_option("--shading-out", render.shading_out, "Output shading PFM");
  render_cmd->add_option("--display-out", render.display_out, "Output 8-bit PPM");
  render_cmd->add_option("--gamma", render.gamma, "Display gamma")->capture_default_str();
  render_cmd->add_option("--normal-encoding", render.normal_encoding, "raw or unit ([0,1])")
      ->check(CLI::IsMember({"raw", "unit"}))
      ->capture_default_str();

  BakeArgs bake;
  CLI::App* bake_cmd = app.add_subcommand("bake", "Bake SH visibility at sample points");
  bake_cmd->add_option("--mesh", bake.mesh, "Triangulated OBJ mesh")->required();
  bake_cmd->add_option("--points", bake.points, "Points file")->required();
  bake_cmd->add_option("--count", bake.count, "Directions per point")
      ->check(CLI::Range(9, 100000000))
      ->capture_default_str();
  bake_cmd->add_option("--out", bake.out, "Output coefficient file")->required();
  bake_cmd->add_flag("--no-cull", bake.no_cull, "Count back-facing hits as occluders");

  RecoverArgs recover;
  CLI::App* recover_cmd =
      app.add_subcommand("recover-light", "Recover illumination from shading coefficients");
  recover_cmd->add_option("--shading", recover.shading, "Shading coefficient file")->required();
  recover_cmd->add_option("--out", recover.out, "Output illumination file")->required();
  recover_cmd->add_flag("--clamp", recover.clamp, "Clamp to non-negative radiance");
  recover_cmd->add_option("--clamp-order", recover.clamp_order)
      ->check(CLI::IsMember({"recover-then-clamp", "clamp-then-recover"}))
      ->capture_default_str();
  recover_cmd->add_option("--count", recover.count, "Sampled normals")
      ->check(CLI::Range(9, 100000000))
      ->capture_default_str();
  recover_cmd->add_option("--method", recover.method, "qr or normal")
      ->check(CLI::IsMember({"qr", "normal"}))
      ->capture_default_str();

  ProjectArgs project;
  CLI::App* project_cmd =
      app.add_subcommand("project", "Project an equirectangular PFM onto SH");
  project_cmd->add_option("--envmap", project.envmap, "Equirectangular PFM")->required();
  project_cmd->add_option("--out", project.out, "Output coefficient file")->required();
  project_cmd->add_option("--count", project.count, "Quadrature directions")
      ->check(CLI::Range(1, 100000000))
      ->capture_default_str();

  RotateArgs rotate;
  CLI::App* rotate_cmd = app.add_subcommand("rotate", "Rotate coefficients by ZYZ Euler angles");
  rotate_cmd->add_option("--coeffs", rotate.coeffs, "Coefficient file")->required();
  rotate_cmd->add_option("--alpha", rotate.alpha)->capture_default_str();
  rotate_cmd->add_option("--beta", rotate.beta)->capture_default_str();
  rotate_cmd->add_option("--gamma", rotate.gamma)->capture_default_str();
  rotate_cmd->add_flag("--degrees", rotate.degrees, "Angles are in degrees");
  rotate_cmd->add_option("--out", rotate.out, "Output coefficient file")->required();

  LossArgs loss;
  CLI::App* loss_cmd = app.add_subcommand("loss", "Evaluate training losses");
  loss_cmd->add_option("--stage", loss.stage, "synthetic or real")
      ->check(CLI::IsMember({"synthetic", "real"}))
      ->capture_default_str();
  loss_cmd->add_option("--image", loss.image, "Observed image PFM")->required();
  loss_cmd->add_option("--albedo-est", loss.est.albedo)->required();
  loss_cmd->add_option("--albedo-gt", loss.gt.albedo)->required();
  loss_cmd->add_option("--normal-est", loss.est.normal)->required();
  loss_cmd->add_option("--normal-gt", loss.gt.normal)->required();
  loss_cmd->add_option("--vis-est", loss.est.vis)->required();
  loss_cmd->add_option("--vis-gt", loss.gt.vis)->required();
  loss_cmd->add_option("--light-est", loss.light_est)->required();
  loss_cmd->add_option("--light-gt", loss.light_gt)->required();
  loss_cmd->add_option("--mask", loss.mask, "Foreground mask PFM");
  loss_cmd->add_option("--lambda-n", loss.weights.lambda_n)->capture_default_str();
  loss_cmd->add_option("--lambda-v", loss.weights.lambda_v)->capture_default_str();
  loss_cmd->add_option("--lambda-l", loss.weights.lambda_l)->capture_default_str();
  loss_cmd->add_option("--light-samples", loss.light_samples)
      ->check(CLI::Range(1, 100000000))
      ->capture_default_str();
  loss_cmd->add_flag("--json", loss.json, "Machine-readable output");

  GradientCheckOptions grad;
  bool grad_json = false;
  CLI::App* grad_cmd =
      app.add_subcommand("gradcheck", "Compare analytic render gradients with finite differences");
  grad_cmd->add_option("--trials", grad.trials)->check(CLI::PositiveNumber)->capture_default_str();
  grad_cmd->add_option("--tol", grad.tolerance)->check(CLI::PositiveNumber)->capture_default_str();
  grad_cmd->add_option("--step", grad.step)->check(CLI::PositiveNumber)->capture_default_str();
  grad_cmd->add_option("--seed", grad.seed)->capture_default_str();
  grad_cmd->add_flag("--json", grad_json, "Machine-readable output");

  SceneArgs scene;
  CLI::App* scene_cmd =
      app.add_subcommand("scene", "Write a synthetic sphere scene (maps, mesh, points, visibility)");
  scene_cmd->add_option("--resolution", scene.options.resolution)
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  scene_cmd->add_flag("--blocker", scene.options.blocker, "Add the box blocker");
  scene_cmd->add_flag("--erode", scene.options.erode_mask, "Erode the mask by one pixel");
  scene_cmd->add_option("--fov", scene.options.fov_degrees, "Horizontal FOV in degrees")
      ->capture_default_str();
  scene_cmd->add_option("--count", scene.count, "Visibility directions")
      ->check(CLI::Range(9, 100000000))
      ->capture_default_str();
  scene_cmd->add_option("--out-dir", scene.out_dir)->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    if (render_cmd->parsed()) return CmdRender(render, out);
    if (bake_cmd->parsed()) return CmdBake(bake, out);
    if (recover_cmd->parsed()) return CmdRecover(recover, out);
    if (project_cmd->parsed()) return CmdProject(project, out);
    if (rotate_cmd->parsed()) return CmdRotate(rotate, out);
    if (loss_cmd->parsed()) return CmdLoss(loss, out);
    if (grad_cmd->parsed()) return CmdGradcheck(grad, grad_json, out);
    if (scene_cmd->parsed()) return CmdScene(scene, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return ExitCodeFor(e);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}

}  // namespace shvis::tools
