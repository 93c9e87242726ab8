#include <Eigen/Core>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <sstream>
#include <vector>

#include "commands.hpp"
#include "common.hpp"
#include "evego/rigid.hpp"

namespace evego::cli {

namespace {

Eigen::MatrixX3d load_points(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw data_error("FileNotFound: " + path.string());
  std::vector<Eigen::Vector3d> rows;
  std::string line;
  while (std::getline(is, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    for (char& ch : line)
      if (ch == ',') ch = ' ';
    std::istringstream ss(line);
    double x, y, z;
    if (ss >> x >> y >> z) rows.emplace_back(x, y, z);
  }
  Eigen::MatrixX3d pts(rows.size(), 3);
  for (std::size_t i = 0; i < rows.size(); ++i) pts.row(i) = rows[i].transpose();
  return pts;
}

void save_points(const std::filesystem::path& path, const Eigen::MatrixX3d& pts) {
  std::ofstream os(path);
  if (!os) throw data_error("FileNotFound: cannot open " + path.string() + " for writing");
  os.precision(std::numeric_limits<double>::max_digits10);
  for (Eigen::Index i = 0; i < pts.rows(); ++i)
    os << pts(i, 0) << " " << pts(i, 1) << " " << pts(i, 2) << "\n";
}

struct HandEyeOpts {
  std::string me, mf, mh, out;
};

void run_hand_eye(const HandEyeOpts& o) {
  StageTimer timer("calib_hand_eye");
  const RigidTransform m_ce =
      compose_hand_eye(load_transform(o.me), load_transform(o.mf), load_transform(o.mh));
  if (!o.out.empty()) save_transform(o.out, m_ce);
  json out;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) out["m_ce"].push_back(m_ce.matrix()(r, c));
  std::cout << out.dump(2) << "\n";
}

struct ApplyOpts {
  std::string transform, points, out;
  std::string multiply;  // optional second transform (world-to-camera)
};

void run_apply(const ApplyOpts& o) {
  StageTimer timer("calib_apply");
  RigidTransform m = load_transform(o.transform);
  if (!o.multiply.empty()) m = world_to_device(m, load_transform(o.multiply));
  const Eigen::MatrixX3d pts = transform_points(m, load_points(o.points));
  if (!o.out.empty()) {
    save_points(o.out, pts);
    return;
  }
  json out;
  for (Eigen::Index i = 0; i < pts.rows(); ++i)
    out["points"].push_back({pts(i, 0), pts(i, 1), pts(i, 2)});
  std::cout << out.dump(2) << "\n";
}

}  // namespace

void register_calib(CLI::App& app) {
  CLI::App* calib = app.add_subcommand("calib", "rigid-transform calibration chains");
  calib->require_subcommand(1);

  auto he = std::make_shared<HandEyeOpts>();
  CLI::App* cmd = calib->add_subcommand(
      "hand-eye", "compose the device mount transform from three board poses");
  cmd->add_option("--me", he->me, "event-camera board pose (16 numbers, row-major)")->required();
  cmd->add_option("--mf", he->mf, "frame-camera board pose")->required();
  cmd->add_option("--mh", he->mh, "device tracking pose")->required();
  cmd->add_option("--out", he->out, "optional output transform file");
  cmd->callback([he] { run_hand_eye(*he); });

  auto ap = std::make_shared<ApplyOpts>();
  cmd = calib->add_subcommand("apply", "transform a point list (mm)");
  cmd->add_option("--transform", ap->transform, "transform file")->required();
  cmd->add_option("--points", ap->points, "points file, one 'x y z' per line")->required();
  cmd->add_option("--right-multiply", ap->multiply,
                  "optional second transform composed on the right first");
  cmd->add_option("--out", ap->out, "output points file; prints JSON when omitted");
  cmd->callback([ap] { run_apply(*ap); });
}

}  // namespace evego::cli
