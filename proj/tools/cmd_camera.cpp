#include <iostream>
#include <memory>
#include <vector>

#include "commands.hpp"
#include "common.hpp"
#include "evego/fisheye.hpp"

namespace evego::cli {

namespace {

struct ProjectOpts {
  std::string intrinsics;
  std::vector<double> point;
};

void run_project(const ProjectOpts& o) {
  const FisheyeIntrinsics intr = load_intrinsics(o.intrinsics);
  const Eigen::Vector2d px = project(intr, {o.point[0], o.point[1], o.point[2]});
  json out;
  out["pixel"] = {px.x(), px.y()};
  std::cout << out.dump(2) << "\n";
}

struct UnprojectOpts {
  std::string intrinsics;
  std::vector<double> pixel;
};

void run_unproject(const UnprojectOpts& o) {
  const FisheyeIntrinsics intr = load_intrinsics(o.intrinsics);
  const Eigen::Vector3d dir = unproject(intr, {o.pixel[0], o.pixel[1]});
  json out;
  out["direction"] = {dir.x(), dir.y(), dir.z()};
  std::cout << out.dump(2) << "\n";
}

struct FitOpts {
  std::string in, out;
};

void run_fit(const FitOpts& o) {
  // Re-saves intrinsics with the inverse polynomial populated, fitting it
  // when the input file lacks one.
  const FisheyeIntrinsics intr = load_intrinsics(o.in);
  save_intrinsics(o.out, intr);
}

}  // namespace

void register_camera(CLI::App& app) {
  CLI::App* camera = app.add_subcommand("camera", "fisheye projection and unprojection");
  camera->require_subcommand(1);

  auto proj = std::make_shared<ProjectOpts>();
  CLI::App* cmd = camera->add_subcommand("project", "project a camera-frame 3D point (mm)");
  cmd->add_option("--intrinsics", proj->intrinsics, "intrinsics file")->required();
  cmd->add_option("--point", proj->point, "x y z in millimeters")->expected(3)->required();
  cmd->callback([proj] { run_project(*proj); });

  auto unproj = std::make_shared<UnprojectOpts>();
  cmd = camera->add_subcommand("unproject", "lift a pixel to a unit ray direction");
  cmd->add_option("--intrinsics", unproj->intrinsics, "intrinsics file")->required();
  cmd->add_option("--pixel", unproj->pixel, "u v in pixels")->expected(2)->required();
  cmd->callback([unproj] { run_unproject(*unproj); });

  auto fit = std::make_shared<FitOpts>();
  cmd = camera->add_subcommand("fit-inverse",
                               "write intrinsics with the inverse polynomial filled in");
  cmd->add_option("--in", fit->in, "intrinsics file")->required();
  cmd->add_option("--out", fit->out, "output intrinsics file")->required();
  cmd->callback([fit] { run_fit(*fit); });
}

}  // namespace evego::cli
