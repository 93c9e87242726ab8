#pragma once

#include <Eigen/Core>
#include <array>
#include <cstdint>
#include <filesystem>
#include <vector>

#include "evego/pose.hpp"

namespace evego {

/// Triangle mesh with a 16-way body-part label per vertex, aligned to the
/// canonical joint order. Positions in millimeters.
struct LabeledMesh {
  Eigen::MatrixX3d vertices;             // N x 3
  std::vector<std::array<int, 3>> triangles;
  std::vector<std::uint8_t> labels;      // one per vertex, < kNumJoints

  int vertex_count() const { return static_cast<int>(vertices.rows()); }
  int triangle_count() const { return static_cast<int>(triangles.size()); }
};

/// Checks index ranges and label values; throws ParseError on violation.
void validate_mesh(const LabeledMesh& mesh);

// ASCII format:
//   mesh <nv> <nt>
//   v x y z label        (nv lines)
//   f a b c              (nt lines, 0-based vertex indices)
// '#' starts a comment anywhere on a line.
LabeledMesh load_mesh(const std::filesystem::path& path);
void save_mesh(const std::filesystem::path& path, const LabeledMesh& mesh);

}  // namespace evego
