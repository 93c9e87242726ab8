#include "evego/metrics.hpp"

#include <Eigen/Dense>

#include "evego/errors.hpp"

namespace evego {

double mpjpe(const Pose3D& pred, const Pose3D& gt) {
  double total = 0.0;
  for (int j = 0; j < kNumJoints; ++j) total += (pred.row(j) - gt.row(j)).norm();
  return total / kNumJoints;
}

SimilarityTransform similarity_align(const Eigen::MatrixX3d& src, const Eigen::MatrixX3d& dst) {
  if (src.rows() != dst.rows() || src.rows() < 2)
    throw usage_error("ShapeMismatch: alignment needs matching point sets of at least 2 points");
  const double n = static_cast<double>(src.rows());

  const Eigen::RowVector3d mean_src = src.colwise().mean();
  const Eigen::RowVector3d mean_dst = dst.colwise().mean();
  const Eigen::MatrixX3d cs = src.rowwise() - mean_src;
  const Eigen::MatrixX3d cd = dst.rowwise() - mean_dst;

  const double var_src = cs.squaredNorm() / n;
  const double var_dst = cd.squaredNorm() / n;
  if (var_src < 1e-12 || var_dst < 1e-12)
    throw numeric_error("DegenerateConfiguration: point set is all-coincident");

  const Eigen::Matrix3d cov = cd.transpose() * cs / n;
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(cov, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::Vector3d sign_fix = Eigen::Vector3d::Ones();
  if (svd.matrixU().determinant() * svd.matrixV().determinant() < 0.0) sign_fix(2) = -1.0;

  SimilarityTransform out;
  out.rotation = svd.matrixU() * sign_fix.asDiagonal() * svd.matrixV().transpose();
  out.scale = svd.singularValues().dot(sign_fix) / var_src;
  out.translation = mean_dst.transpose() - out.scale * out.rotation * mean_src.transpose();
  return out;
}

Pose3D apply_similarity(const SimilarityTransform& s, const Pose3D& pose) {
  Pose3D out;
  for (int j = 0; j < kNumJoints; ++j)
    out.row(j) =
        (s.scale * s.rotation * pose.row(j).transpose() + s.translation).transpose();
  return out;
}

double pa_mpjpe(const Pose3D& pred, const Pose3D& gt) {
  const SimilarityTransform s = similarity_align(pred, gt);
  return mpjpe(apply_similarity(s, pred), gt);
}

}  // namespace evego
