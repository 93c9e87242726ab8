#include "evego/losses.hpp"

#include <algorithm>
#include <cmath>

#include "evego/errors.hpp"

namespace evego {

double heatmap_loss(const Heatmaps& pred, const Heatmaps& gt, const VisibilityMask& visibility) {
  if (!pred.same_shape(gt)) throw usage_error("ShapeMismatch: heatmap sizes differ");
  const std::size_t plane = static_cast<std::size_t>(pred.width) * pred.height;
  double total = 0.0;
  for (int j = 0; j < kNumJoints; ++j) {
    if (!visibility[j]) continue;
    const float* p = pred.data.data() + j * plane;
    const float* g = gt.data.data() + j * plane;
    double sq = 0.0;
    for (std::size_t i = 0; i < plane; ++i) {
      const double d = static_cast<double>(p[i]) - static_cast<double>(g[i]);
      sq += d * d;
    }
    total += sq;
  }
  return total / kNumJoints;
}

double joint3d_loss(const Pose3D& pred, const Pose3D& gt, const VisibilityMask& visibility) {
  double total = 0.0;
  for (int j = 0; j < kNumJoints; ++j)
    if (visibility[j]) total += (pred.row(j) - gt.row(j)).squaredNorm();
  return total / kNumJoints;
}

double reproj2d_loss(const Pose3D& pred, const Pose3D& gt, const VisibilityMask& visibility,
                     const FisheyeIntrinsics& intr) {
  double total = 0.0;
  for (int j = 0; j < kNumJoints; ++j) {
    if (!visibility[j]) continue;
    const ProjectResult pp = try_project(intr, pred.row(j).transpose());
    const ProjectResult pg = try_project(intr, gt.row(j).transpose());
    if (pp.status != ProjectStatus::Ok || pg.status != ProjectStatus::Ok) continue;
    total += (pp.pixel - pg.pixel).squaredNorm();
  }
  return total / kNumJoints;
}

BoneLoss bone_loss(const Pose3D& pred, const Pose3D& gt, double lambda_theta,
                   double lambda_length) {
  const auto pred_bones = bone_vectors(pred);
  const auto gt_bones = bone_vectors(gt);
  BoneLoss loss;
  for (int b = 0; b < kNumBones; ++b) {
    const Eigen::Vector3d pb = pred_bones.row(b).transpose();
    const Eigen::Vector3d gb = gt_bones.row(b).transpose();
    const double np = pb.norm();
    const double ng = gb.norm();
    const double cosine = (np < 1e-12 || ng < 1e-12) ? 0.0 : pb.dot(gb) / (np * ng);
    loss.orientation += 1.0 - cosine;
    loss.length += (pb - gb).squaredNorm();
  }
  loss.orientation /= kNumBones;
  loss.length /= kNumBones;
  loss.combined = lambda_theta * loss.orientation + lambda_length * loss.length;
  return loss;
}

double joints_total_loss(double j3d, double j2d, double bone_combined, const LossWeights& w) {
  return w.joint3d * j3d + w.reproj2d * j2d + w.bone * bone_combined;
}

double seg_ce_loss(const DenseMap& pred, const DenseMap& gt) {
  if (!pred.same_shape(gt)) throw usage_error("ShapeMismatch: segmentation map sizes differ");
  if (pred.values.empty()) throw usage_error("ShapeMismatch: empty segmentation maps");
  constexpr double kEps = 1e-7;
  double total = 0.0;
  for (std::size_t i = 0; i < pred.values.size(); ++i) {
    const double p = std::clamp(static_cast<double>(pred.values[i]), kEps, 1.0 - kEps);
    const double s = gt.values[i];
    total -= s * std::log(p) + (1.0 - s) * std::log(1.0 - p);
  }
  return total / static_cast<double>(pred.values.size());
}

double total_loss(double joints, double heatmap, double segmentation, const LossWeights& w) {
  return w.joints * joints + w.heatmap * heatmap + w.segmentation * segmentation;
}

}  // namespace evego
