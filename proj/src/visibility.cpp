#include "evego/visibility.hpp"

#include <Eigen/Geometry>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "evego/errors.hpp"

namespace evego {

std::optional<double> ray_triangle(const Eigen::Vector3d& origin, const Eigen::Vector3d& dir,
                                   const Eigen::Vector3d& v0, const Eigen::Vector3d& v1,
                                   const Eigen::Vector3d& v2) {
  const Eigen::Vector3d e1 = v1 - v0;
  const Eigen::Vector3d e2 = v2 - v0;
  const Eigen::Vector3d pvec = dir.cross(e2);
  const double det = e1.dot(pvec);
  if (std::abs(det) < 1e-12) return std::nullopt;
  const double inv_det = 1.0 / det;
  const Eigen::Vector3d tvec = origin - v0;
  const double u = tvec.dot(pvec) * inv_det;
  if (u < 0.0 || u > 1.0) return std::nullopt;
  const Eigen::Vector3d qvec = tvec.cross(e1);
  const double v = dir.dot(qvec) * inv_det;
  if (v < 0.0 || u + v > 1.0) return std::nullopt;
  const double t = e2.dot(qvec) * inv_det;
  if (t <= 1e-9) return std::nullopt;
  return t;
}

namespace {

bool better_hit(double t, int tri, const std::optional<RayHit>& best) {
  if (!best) return true;
  return t < best->t || (t == best->t && tri < best->triangle);
}

Eigen::Vector3d tri_vertex(const LabeledMesh& mesh, int tri, int corner) {
  return mesh.vertices.row(mesh.triangles[tri][corner]).transpose();
}

}  // namespace

std::optional<RayHit> ray_mesh_first_hit(const Eigen::Vector3d& origin,
                                         const Eigen::Vector3d& dir, const LabeledMesh& mesh) {
  std::optional<RayHit> best;
  for (int i = 0; i < mesh.triangle_count(); ++i) {
    const auto t = ray_triangle(origin, dir, tri_vertex(mesh, i, 0), tri_vertex(mesh, i, 1),
                                tri_vertex(mesh, i, 2));
    if (t && better_hit(*t, i, best)) best = RayHit{*t, i, origin + *t * dir};
  }
  return best;
}

MeshBvh::MeshBvh(const LabeledMesh& mesh) : mesh_(&mesh) {
  const int nt = mesh.triangle_count();
  if (nt == 0) return;
  std::vector<Eigen::Vector3d> centroids(nt);
  for (int i = 0; i < nt; ++i)
    centroids[i] =
        (tri_vertex(mesh, i, 0) + tri_vertex(mesh, i, 1) + tri_vertex(mesh, i, 2)) / 3.0;
  std::vector<int> tris(nt);
  std::iota(tris.begin(), tris.end(), 0);
  nodes_.reserve(2 * nt);
  build(tris, 0, nt, centroids);
}

int MeshBvh::build(std::vector<int>& tris, int begin, int end,
                   const std::vector<Eigen::Vector3d>& centroids) {
  const int node_index = static_cast<int>(nodes_.size());
  nodes_.emplace_back();

  Eigen::Vector3d lo = Eigen::Vector3d::Constant(std::numeric_limits<double>::infinity());
  Eigen::Vector3d hi = -lo;
  Eigen::Vector3d clo = lo, chi = hi;
  for (int i = begin; i < end; ++i) {
    for (int c = 0; c < 3; ++c) {
      const Eigen::Vector3d v = tri_vertex(*mesh_, tris[i], c);
      lo = lo.cwiseMin(v);
      hi = hi.cwiseMax(v);
    }
    clo = clo.cwiseMin(centroids[tris[i]]);
    chi = chi.cwiseMax(centroids[tris[i]]);
  }
  nodes_[node_index].lo = lo;
  nodes_[node_index].hi = hi;

  const int count = end - begin;
  int axis;
  (chi - clo).maxCoeff(&axis);
  if (count <= 4 || chi[axis] - clo[axis] <= 0.0) {
    nodes_[node_index].first = static_cast<int>(order_.size());
    nodes_[node_index].count = count;
    order_.insert(order_.end(), tris.begin() + begin, tris.begin() + end);
    return node_index;
  }

  const int mid = begin + count / 2;
  std::sort(tris.begin() + begin, tris.begin() + end, [&](int a, int b) {
    return centroids[a][axis] != centroids[b][axis] ? centroids[a][axis] < centroids[b][axis]
                                                    : a < b;
  });
  const int left = build(tris, begin, mid, centroids);
  const int right = build(tris, mid, end, centroids);
  nodes_[node_index].left = left;
  nodes_[node_index].right = right;
  return node_index;
}

namespace {

// Entry distance of the ray into a box, or nullopt when it misses entirely.
std::optional<double> box_entry(const Eigen::Vector3d& lo, const Eigen::Vector3d& hi,
                                const Eigen::Vector3d& origin, const Eigen::Vector3d& dir) {
  double tn = 0.0;
  double tf = std::numeric_limits<double>::infinity();
  for (int a = 0; a < 3; ++a) {
    if (dir[a] == 0.0) {
      if (origin[a] < lo[a] || origin[a] > hi[a]) return std::nullopt;
      continue;
    }
    const double inv = 1.0 / dir[a];
    double ta = (lo[a] - origin[a]) * inv;
    double tb = (hi[a] - origin[a]) * inv;
    if (ta > tb) std::swap(ta, tb);
    tn = std::max(tn, ta);
    tf = std::min(tf, tb);
    if (tn > tf) return std::nullopt;
  }
  return tn;
}

}  // namespace

std::optional<RayHit> MeshBvh::first_hit(const Eigen::Vector3d& origin,
                                         const Eigen::Vector3d& dir) const {
  std::optional<RayHit> best;
  if (nodes_.empty()) return best;

  std::vector<int> stack{0};
  while (!stack.empty()) {
    const Node& node = nodes_[stack.back()];
    stack.pop_back();

    const auto entry = box_entry(node.lo, node.hi, origin, dir);
    if (!entry) continue;
    // Strict pruning with rounding slack keeps equal-distance candidates
    // alive so the (distance, index) tie-break matches the exhaustive scan.
    if (best && *entry > best->t * (1.0 + 1e-12) + 1e-9) continue;

    if (node.left < 0) {
      for (int i = node.first; i < node.first + node.count; ++i) {
        const int tri = order_[i];
        const auto t = ray_triangle(origin, dir, tri_vertex(*mesh_, tri, 0),
                                    tri_vertex(*mesh_, tri, 1), tri_vertex(*mesh_, tri, 2));
        if (t && better_hit(*t, tri, best)) best = RayHit{*t, tri, origin + *t * dir};
      }
    } else {
      stack.push_back(node.right);
      stack.push_back(node.left);
    }
  }
  return best;
}

JointProjection project_joints(const Pose3D& pose, const FisheyeIntrinsics& intr) {
  JointProjection out;
  for (int j = 0; j < kNumJoints; ++j) {
    const ProjectResult res = try_project(intr, pose.row(j).transpose());
    const bool inside = res.status == ProjectStatus::Ok && res.pixel.x() >= 0.0 &&
                        res.pixel.x() < intr.width && res.pixel.y() >= 0.0 &&
                        res.pixel.y() < intr.height;
    out.in_image[j] = inside;
    out.pixels.row(j) = inside ? res.pixel.transpose() : Eigen::RowVector2d(-1.0, -1.0);
  }
  return out;
}

namespace {

bool hit_votes_for_joint(const LabeledMesh& mesh, const Eigen::Vector3d& hit_point, int joint) {
  // K nearest vertices to the hit point, ordered by (distance^2, index) so
  // equidistant vertices resolve deterministically.
  const int nv = mesh.vertex_count();
  const int k = std::min(kVisibilityNeighbors, nv);
  std::vector<std::pair<double, int>> dist(nv);
  for (int i = 0; i < nv; ++i)
    dist[i] = {(mesh.vertices.row(i).transpose() - hit_point).squaredNorm(), i};
  std::partial_sort(dist.begin(), dist.begin() + k, dist.end());

  std::array<int, kNumJoints> votes{};
  for (int i = 0; i < k; ++i) ++votes[mesh.labels[dist[i].second]];

  // The joint's own part must strictly out-vote every other part.
  for (int l = 0; l < kNumJoints; ++l)
    if (l != joint && votes[l] >= votes[joint]) return false;
  return votes[joint] > 0;
}

}  // namespace

VisibilityMask joint_visibility(const Pose3D& pose, const LabeledMesh& mesh,
                                const Eigen::Vector3d& camera_origin) {
  VisibilityMask vis = all_visible();
  if (mesh.vertex_count() == 0 || mesh.triangle_count() == 0) return vis;

  // A pose nowhere near the mesh is almost certainly expressed in a different
  // coordinate frame; fail loudly instead of reporting garbage visibility.
  const Eigen::Vector3d lo = mesh.vertices.colwise().minCoeff().transpose();
  const Eigen::Vector3d hi = mesh.vertices.colwise().maxCoeff().transpose();
  const double margin = (hi - lo).norm() + 1000.0;
  bool any_near = false;
  for (int j = 0; j < kNumJoints && !any_near; ++j) {
    const Eigen::Vector3d p = pose.row(j).transpose();
    any_near = (p.array() >= lo.array() - margin).all() && (p.array() <= hi.array() + margin).all();
  }
  if (!any_near)
    throw data_error("FrameMismatch: no joint anywhere near the mesh; check coordinate frames");

  const MeshBvh bvh(mesh);
  for (int j = 0; j < kNumJoints; ++j) {
    const Eigen::Vector3d to_joint = pose.row(j).transpose() - camera_origin;
    const double len = to_joint.norm();
    if (len < 1e-9) continue;  // joint on top of the camera: nothing can occlude it
    const auto hit = bvh.first_hit(camera_origin, to_joint / len);
    if (hit) vis[j] = hit_votes_for_joint(mesh, hit->point, j);
  }
  return vis;
}

VisibilityMask joint_visibility(const Pose3D& pose, const LabeledMesh& mesh,
                                const FisheyeIntrinsics& intr) {
  VisibilityMask vis = joint_visibility(pose, mesh, Eigen::Vector3d::Zero());
  const JointProjection proj = project_joints(pose, intr);
  for (int j = 0; j < kNumJoints; ++j) vis[j] = vis[j] && proj.in_image[j];
  return vis;
}

}  // namespace evego
