#include <fstream>
#include <iostream>
#include <memory>

#include "commands.hpp"
#include "common.hpp"
#include "evego/mesh.hpp"
#include "evego/visibility.hpp"

namespace evego::cli {

namespace {

struct VisibilityOpts {
  std::string mesh, pose, intrinsics, out;
};

void run_visibility(const VisibilityOpts& o) {
  StageTimer timer("visibility");
  const LabeledMesh mesh = load_mesh(o.mesh);
  const Pose3D pose = load_pose(o.pose);
  const FisheyeIntrinsics intr = load_intrinsics(o.intrinsics);

  const JointProjection proj = project_joints(pose, intr);
  const VisibilityMask vis = joint_visibility(pose, mesh, intr);

  json out;
  out["joints"] = json::array();
  for (int j = 0; j < kNumJoints; ++j) {
    json row;
    row["name"] = kJointNames[j];
    row["pixel"] = {proj.pixels(j, 0), proj.pixels(j, 1)};
    row["in_image"] = proj.in_image[j];
    row["visible"] = vis[j];
    out["joints"].push_back(row);
  }

  if (!o.out.empty()) {
    std::ofstream os(o.out);
    if (!os) throw data_error("FileNotFound: cannot open " + o.out + " for writing");
    os << out.dump(2) << "\n";
  } else {
    std::cout << out.dump(2) << "\n";
  }
}

}  // namespace

void register_visibility(CLI::App& app) {
  auto opts = std::make_shared<VisibilityOpts>();
  CLI::App* cmd = app.add_subcommand(
      "visibility", "project joints and ray-cast per-joint visibility against a mesh");
  cmd->add_option("--mesh", opts->mesh, "part-labeled mesh file")->required();
  cmd->add_option("--pose", opts->pose, "16-joint pose file, camera frame (mm)")->required();
  cmd->add_option("--intrinsics", opts->intrinsics, "fisheye intrinsics file")->required();
  cmd->add_option("--out", opts->out, "output JSON file; prints to stdout when omitted");
  cmd->callback([opts] { run_visibility(*opts); });
}

}  // namespace evego::cli
