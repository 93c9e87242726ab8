#include "evego/rigid.hpp"

#include <Eigen/Dense>
#include <fstream>
#include <limits>
#include <sstream>

#include "evego/errors.hpp"

namespace evego {

namespace {

double orthonormality_drift(const Eigen::Matrix3d& r) {
  return (r.transpose() * r - Eigen::Matrix3d::Identity()).norm();
}

Eigen::Matrix4d assemble(const Eigen::Matrix3d& r, const Eigen::Vector3d& t) {
  Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
  m.topLeftCorner<3, 3>() = r;
  m.topRightCorner<3, 1>() = t;
  return m;
}

}  // namespace

Eigen::Matrix3d orthonormalize_rotation(const Eigen::Matrix3d& r) {
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(r, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::Matrix3d res = svd.matrixU() * svd.matrixV().transpose();
  if (res.determinant() < 0.0) {
    Eigen::Matrix3d flip = Eigen::Matrix3d::Identity();
    flip(2, 2) = -1.0;
    res = svd.matrixU() * flip * svd.matrixV().transpose();
  }
  return res;
}

RigidTransform::RigidTransform() : m_(Eigen::Matrix4d::Identity()) {}

RigidTransform RigidTransform::from_matrix(const Eigen::Matrix4d& m) {
  if (!m.allFinite()) throw data_error("InvalidTransform: non-finite entries");
  if (m(3, 0) != 0.0 || m(3, 1) != 0.0 || m(3, 2) != 0.0 || m(3, 3) != 1.0)
    throw data_error("InvalidTransform: bottom row must be exactly (0,0,0,1)");
  const Eigen::Matrix3d r = m.topLeftCorner<3, 3>();
  if (orthonormality_drift(r) > 1e-9)
    throw data_error("InvalidTransform: rotation block is not orthonormal");
  if (std::abs(r.determinant() - 1.0) > 1e-9)
    throw data_error("InvalidTransform: rotation block determinant is not +1");
  return RigidTransform(m);
}

RigidTransform RigidTransform::from_rotation_translation(const Eigen::Matrix3d& rotation,
                                                         const Eigen::Vector3d& translation) {
  return from_matrix(assemble(rotation, translation));
}

RigidTransform RigidTransform::inverse() const {
  const Eigen::Matrix3d rt = rotation().transpose();
  return RigidTransform(assemble(rt, -(rt * translation())));
}

RigidTransform RigidTransform::operator*(const RigidTransform& rhs) const {
  Eigen::Matrix3d r = rotation() * rhs.rotation();
  if (orthonormality_drift(r) > 1e-12) r = orthonormalize_rotation(r);
  const Eigen::Vector3d t = rotation() * rhs.translation() + translation();
  return RigidTransform(assemble(r, t));
}

Eigen::Vector3d RigidTransform::apply(const Eigen::Vector3d& point) const {
  return rotation() * point + translation();
}

RigidTransform compose_hand_eye(const RigidTransform& m_e, const RigidTransform& m_f,
                                const RigidTransform& m_h) {
  return m_e * m_f.inverse() * m_h;
}

RigidTransform world_to_device(const RigidTransform& m_ce, const RigidTransform& m_wc) {
  return m_ce * m_wc;
}

Eigen::MatrixX3d transform_points(const RigidTransform& m, const Eigen::MatrixX3d& points) {
  Eigen::MatrixX3d out(points.rows(), 3);
  const Eigen::Matrix3d r = m.rotation();
  const Eigen::Vector3d t = m.translation();
  for (Eigen::Index i = 0; i < points.rows(); ++i)
    out.row(i) = (r * points.row(i).transpose() + t).transpose();
  return out;
}

RigidTransform load_transform(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw data_error("FileNotFound: " + path.string());
  Eigen::Matrix4d m;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c)
      if (!(is >> m(r, c)))
        throw data_error("ParseError: transform file needs 16 numbers, row-major");
  double extra;
  if (is >> extra) throw data_error("ParseError: transform file has trailing numbers");
  return RigidTransform::from_matrix(m);
}

void save_transform(const std::filesystem::path& path, const RigidTransform& m) {
  std::ofstream os(path);
  if (!os) throw data_error("FileNotFound: cannot open " + path.string() + " for writing");
  os.precision(std::numeric_limits<double>::max_digits10);
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) os << m.matrix()(r, c) << (c == 3 ? '\n' : ' ');
  }
  if (!os) throw data_error("FileNotFound: write failed for " + path.string());
}

}  // namespace evego
