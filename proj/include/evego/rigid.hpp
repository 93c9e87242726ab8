#pragma once

#include <Eigen/Core>
#include <filesystem>

namespace evego {

/// 4x4 homogeneous rigid transform. The rotation block stays orthonormal with
/// determinant +1 (checked to 1e-9 on construction, re-orthonormalized via
/// polar decomposition when composition drift exceeds 1e-12) and the bottom
/// row is exactly (0,0,0,1). Translations are in millimeters.
class RigidTransform {
 public:
  RigidTransform();  // identity

  /// Validates and adopts a full matrix. Throws InvalidTransform when the
  /// rotation block is not orthonormal, the determinant is not +1, the bottom
  /// row is not exactly (0,0,0,1), or any entry is not finite.
  static RigidTransform from_matrix(const Eigen::Matrix4d& m);

  /// Builds from blocks; same validation as from_matrix.
  static RigidTransform from_rotation_translation(const Eigen::Matrix3d& rotation,
                                                  const Eigen::Vector3d& translation);

  const Eigen::Matrix4d& matrix() const noexcept { return m_; }
  Eigen::Matrix3d rotation() const { return m_.topLeftCorner<3, 3>(); }
  Eigen::Vector3d translation() const { return m_.topRightCorner<3, 1>(); }

  RigidTransform inverse() const;
  RigidTransform operator*(const RigidTransform& rhs) const;

  Eigen::Vector3d apply(const Eigen::Vector3d& point) const;

 private:
  explicit RigidTransform(const Eigen::Matrix4d& m) : m_(m) {}
  Eigen::Matrix4d m_;
};

/// Nearest rotation to a drifted matrix (polar factor, proper-rotation SVD).
Eigen::Matrix3d orthonormalize_rotation(const Eigen::Matrix3d& r);

/// Event-camera-from-device mount: M_CE = M_E * M_F^-1 * M_H, from the RGB
/// camera pose M_E, the frame-camera pose M_F against the shared board, and
/// the device tracking pose M_H.
RigidTransform compose_hand_eye(const RigidTransform& m_e, const RigidTransform& m_f,
                                const RigidTransform& m_h);

/// World-to-event-camera: M_WE = M_CE * M_WC.
RigidTransform world_to_device(const RigidTransform& m_ce, const RigidTransform& m_wc);

/// Applies a transform to each row of an N x 3 point matrix.
Eigen::MatrixX3d transform_points(const RigidTransform& m, const Eigen::MatrixX3d& points);

// 16 whitespace-separated numbers, row-major.
RigidTransform load_transform(const std::filesystem::path& path);
void save_transform(const std::filesystem::path& path, const RigidTransform& m);

}  // namespace evego
