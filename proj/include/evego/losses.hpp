#pragma once

#include "evego/fisheye.hpp"
#include "evego/heatmaps.hpp"
#include "evego/image.hpp"
#include "evego/pose.hpp"

namespace evego {

/// Training-loss weights. Defaults are the published operating point.
struct LossWeights {
  double joint3d = 0.01;
  double reproj2d = 0.01;
  double bone = 1.0;
  double bone_orientation = 0.001;
  double bone_length = 0.001;
  double joints = 1.0;
  double heatmap = 20.0;
  double segmentation = 0.1;
};

/// (1/16) * sum over joints of V_b * sum over pixels (pred - gt)^2.
double heatmap_loss(const Heatmaps& pred, const Heatmaps& gt, const VisibilityMask& visibility);

/// (1/16) * sum over joints of V_r * |pred_r - gt_r|^2, millimeters squared.
double joint3d_loss(const Pose3D& pred, const Pose3D& gt, const VisibilityMask& visibility);

/// (1/16) * sum over joints of V_r * |proj(pred_r) - proj(gt_r)|^2 in squared
/// pixels. A joint whose prediction or ground truth does not project (outside
/// the field of view, degenerate) contributes 0, as if invisible.
double reproj2d_loss(const Pose3D& pred, const Pose3D& gt, const VisibilityMask& visibility,
                     const FisheyeIntrinsics& intr);

struct BoneLoss {
  double orientation = 0.0;  // mean (1 - cos angle) over bones
  double length = 0.0;       // mean squared bone-vector difference, mm^2
  double combined = 0.0;     // lambda_theta * orientation + lambda_bl * length
};

/// Bone losses over the canonical topology. A zero-length bone on either side
/// has no direction, so its cosine counts as 0 (contribution 1).
BoneLoss bone_loss(const Pose3D& pred, const Pose3D& gt, double lambda_theta = 0.001,
                   double lambda_length = 0.001);

/// lambda_J3D * j3d + lambda_J2D * j2d + lambda_BA * bone_combined.
double joints_total_loss(double j3d, double j2d, double bone_combined,
                         const LossWeights& w = {});

/// Binary cross-entropy, mean over pixels, predictions clamped to
/// [1e-7, 1 - 1e-7] before the logs.
double seg_ce_loss(const DenseMap& pred, const DenseMap& gt);

/// lambda_joints * joints + lambda_H * heatmap + lambda_seg * segmentation.
double total_loss(double joints, double heatmap, double segmentation, const LossWeights& w = {});

}  // namespace evego
