#include "evego/pose.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "evego/errors.hpp"

namespace evego {

Eigen::Matrix<double, kNumBones, 3> bone_vectors(const Pose3D& pose) {
  Eigen::Matrix<double, kNumBones, 3> bones;
  for (int i = 0; i < kNumBones; ++i) {
    const auto [parent, child] = kCanonicalBones[i];
    bones.row(i) = pose.row(static_cast<int>(child)) - pose.row(static_cast<int>(parent));
  }
  return bones;
}

Pose3D load_pose(const std::filesystem::path& path) {
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
    if (!(ss >> x >> y >> z)) {
      std::string leftover;
      ss.clear();
      if (ss >> leftover) throw data_error("ParseError: malformed pose line '" + line + "'");
      continue;  // blank or comment-only line
    }
    std::string trailing;
    if (ss >> trailing) throw data_error("ParseError: pose line has trailing tokens");
    if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(z))
      throw data_error("ParseError: non-finite pose coordinate");
    rows.emplace_back(x, y, z);
  }
  if (rows.size() != kNumJoints)
    throw data_error("ParseError: pose file has " + std::to_string(rows.size()) +
                     " joints, expected " + std::to_string(kNumJoints));

  Pose3D pose;
  for (int i = 0; i < kNumJoints; ++i) pose.row(i) = rows[i].transpose();
  return pose;
}

void save_pose(const std::filesystem::path& path, const Pose3D& pose) {
  std::ofstream os(path);
  if (!os) throw data_error("FileNotFound: cannot open " + path.string() + " for writing");
  os.precision(std::numeric_limits<double>::max_digits10);
  for (int i = 0; i < kNumJoints; ++i)
    os << pose(i, 0) << " " << pose(i, 1) << " " << pose(i, 2) << "\n";
  if (!os) throw data_error("FileNotFound: write failed for " + path.string());
}

}  // namespace evego
