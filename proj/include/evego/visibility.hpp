#pragma once

#include <Eigen/Core>
#include <optional>
#include <vector>

#include "evego/fisheye.hpp"
#include "evego/mesh.hpp"
#include "evego/pose.hpp"

namespace evego {

struct RayHit {
  double t = 0.0;          // distance along the (unit) ray direction, mm
  int triangle = -1;
  Eigen::Vector3d point{0.0, 0.0, 0.0};
};

/// Ray-triangle intersection (Moller-Trumbore). Boundary hits count (u, v and
/// u+v compared inclusively); near-parallel rays (|det| < 1e-12) and hits
/// closer than t = 1e-9 miss.
std::optional<double> ray_triangle(const Eigen::Vector3d& origin, const Eigen::Vector3d& dir,
                                   const Eigen::Vector3d& v0, const Eigen::Vector3d& v1,
                                   const Eigen::Vector3d& v2);

/// Nearest intersection along the ray over every triangle, ordering hits by
/// (distance, triangle index) so shared-edge ties resolve the same way no
/// matter how triangles are visited.
std::optional<RayHit> ray_mesh_first_hit(const Eigen::Vector3d& origin,
                                         const Eigen::Vector3d& dir, const LabeledMesh& mesh);

/// Bounding-volume hierarchy over mesh triangles (median split on the longest
/// centroid axis, at most 4 triangles per leaf). first_hit returns exactly
/// what the exhaustive scan returns: nodes are only pruned when their entry
/// distance strictly exceeds the best hit so far, with slack for rounding.
class MeshBvh {
 public:
  explicit MeshBvh(const LabeledMesh& mesh);

  std::optional<RayHit> first_hit(const Eigen::Vector3d& origin, const Eigen::Vector3d& dir) const;

 private:
  struct Node {
    Eigen::Vector3d lo, hi;
    int left = -1, right = -1;   // internal node when >= 0
    int first = 0, count = 0;    // leaf triangle range into order_
  };
  int build(std::vector<int>& tris, int begin, int end,
            const std::vector<Eigen::Vector3d>& centroids);

  const LabeledMesh* mesh_;
  std::vector<Node> nodes_;
  std::vector<int> order_;
};

struct JointProjection {
  Eigen::Matrix<double, kNumJoints, 2> pixels;
  std::array<bool, kNumJoints> in_image;  // projected Ok and inside the image
};

/// Projects each joint with the fisheye model. Joints outside the field of
/// view, too close to the origin, or landing outside the image get
/// in_image = false (their pixel row is set to (-1,-1)).
JointProjection project_joints(const Pose3D& pose, const FisheyeIntrinsics& intr);

inline constexpr int kVisibilityNeighbors = 8;

/// Per-joint visibility by ray casting from the camera toward each joint.
/// A joint is visible when the ray misses the mesh entirely, or when the
/// first hit's 8 nearest vertices carry the joint's own part label strictly
/// more often than any other label (ties mean invisible). Throws
/// FrameMismatch when every joint lies far outside the mesh bounds, which
/// almost always means pose and mesh are in different coordinate frames.
VisibilityMask joint_visibility(const Pose3D& pose, const LabeledMesh& mesh,
                                const Eigen::Vector3d& camera_origin);

/// Same, with the camera at the origin of the camera frame; joints that do
/// not project into the image are forced invisible.
VisibilityMask joint_visibility(const Pose3D& pose, const LabeledMesh& mesh,
                                const FisheyeIntrinsics& intr);

}  // namespace evego
