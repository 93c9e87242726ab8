#pragma once

#include <Eigen/Core>

#include "evego/pose.hpp"

namespace evego {

/// Mean Euclidean joint distance, millimeters.
double mpjpe(const Pose3D& pred, const Pose3D& gt);

struct SimilarityTransform {
  double scale = 1.0;
  Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
  Eigen::Vector3d translation = Eigen::Vector3d::Zero();
};

/// Closed-form least-squares similarity (scale, rotation, translation)
/// mapping src onto dst (Umeyama). Throws DegenerateConfiguration when either
/// point set is all-coincident. Row counts must match.
SimilarityTransform similarity_align(const Eigen::MatrixX3d& src, const Eigen::MatrixX3d& dst);

Pose3D apply_similarity(const SimilarityTransform& s, const Pose3D& pose);

/// MPJPE after aligning pred onto gt with the optimal similarity transform.
double pa_mpjpe(const Pose3D& pred, const Pose3D& gt);

}  // namespace evego
