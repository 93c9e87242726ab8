#pragma once

#include <Eigen/Core>
#include <array>
#include <cstdint>
#include <filesystem>
#include <utility>

namespace evego {

inline constexpr int kNumJoints = 16;

/// Canonical joint order used everywhere in the toolkit.
enum class Joint : int {
  Head = 0,
  Neck,
  RightShoulder,
  RightElbow,
  RightWrist,
  LeftShoulder,
  LeftElbow,
  LeftWrist,
  RightHip,
  RightKnee,
  RightAnkle,
  RightFoot,
  LeftHip,
  LeftKnee,
  LeftAnkle,
  LeftFoot,
};

inline constexpr std::array<const char*, kNumJoints> kJointNames = {
    "head",       "neck",       "right_shoulder", "right_elbow",
    "right_wrist", "left_shoulder", "left_elbow",  "left_wrist",
    "right_hip",  "right_knee", "right_ankle",    "right_foot",
    "left_hip",   "left_knee",  "left_ankle",     "left_foot",
};

/// 16 joints x 3 coordinates, millimeters, row per joint in canonical order.
using Pose3D = Eigen::Matrix<double, kNumJoints, 3>;

/// Per-joint visibility, V in {0,1}.
using VisibilityMask = std::array<bool, kNumJoints>;

inline VisibilityMask all_visible() {
  VisibilityMask v;
  v.fill(true);
  return v;
}

/// Skeleton tree as (parent, child) joint pairs; a bone vector is
/// child - parent. Spans all 16 joints: neck to head, neck to each shoulder,
/// shoulder-elbow-wrist chains, neck to each hip, hip-knee-ankle-foot chains.
inline constexpr int kNumBones = 15;
inline constexpr std::array<std::pair<Joint, Joint>, kNumBones> kCanonicalBones = {{
    {Joint::Neck, Joint::Head},
    {Joint::Neck, Joint::RightShoulder},
    {Joint::RightShoulder, Joint::RightElbow},
    {Joint::RightElbow, Joint::RightWrist},
    {Joint::Neck, Joint::LeftShoulder},
    {Joint::LeftShoulder, Joint::LeftElbow},
    {Joint::LeftElbow, Joint::LeftWrist},
    {Joint::Neck, Joint::RightHip},
    {Joint::RightHip, Joint::RightKnee},
    {Joint::RightKnee, Joint::RightAnkle},
    {Joint::RightAnkle, Joint::RightFoot},
    {Joint::Neck, Joint::LeftHip},
    {Joint::LeftHip, Joint::LeftKnee},
    {Joint::LeftKnee, Joint::LeftAnkle},
    {Joint::LeftAnkle, Joint::LeftFoot},
}};

/// Bone vectors (child - parent) for the canonical topology, one row each.
Eigen::Matrix<double, kNumBones, 3> bone_vectors(const Pose3D& pose);

// Pose files: 16 lines of "x y z" (commas tolerated), '#' comments. Throws
// ParseError on wrong count or non-finite values.
Pose3D load_pose(const std::filesystem::path& path);
void save_pose(const std::filesystem::path& path, const Pose3D& pose);

}  // namespace evego
