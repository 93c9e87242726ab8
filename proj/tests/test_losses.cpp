#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "evego/losses.hpp"
#include "support/synthetic.hpp"

using namespace evego;

TEST_CASE("heatmap loss averages squared error over joints") {
  Heatmaps pred(kHeatmapWidth, kHeatmapHeight), gt(kHeatmapWidth, kHeatmapHeight);
  pred.at(0, 5, 5) = 0.5f;
  CHECK(heatmap_loss(pred, gt, all_visible()) == doctest::Approx(0.25 / 16.0).epsilon(1e-12));

  // two error pixels on different joints
  pred.at(3, 1, 1) = 1.0f;
  CHECK(heatmap_loss(pred, gt, all_visible()) == doctest::Approx(1.25 / 16.0).epsilon(1e-12));
}

TEST_CASE("heatmap loss skips invisible joints but keeps the divisor") {
  Heatmaps pred(kHeatmapWidth, kHeatmapHeight), gt(kHeatmapWidth, kHeatmapHeight);
  pred.at(0, 5, 5) = 0.5f;
  pred.at(1, 5, 5) = 0.5f;
  VisibilityMask vis = all_visible();
  vis[1] = false;
  CHECK(heatmap_loss(pred, gt, vis) == doctest::Approx(0.25 / 16.0).epsilon(1e-12));
}

TEST_CASE("heatmap loss rejects shape mismatches") {
  Heatmaps a(8, 8), b(8, 9);
  CHECK_THROWS_WITH_AS(heatmap_loss(a, b, all_visible()), doctest::Contains("ShapeMismatch"),
                       Error);
}

TEST_CASE("3d joint loss is the mean squared offset over all sixteen joints") {
  Pose3D pred = Pose3D::Zero(), gt = Pose3D::Zero();
  pred.row(2) << 3.0, 4.0, 0.0;  // squared distance 25
  CHECK(joint3d_loss(pred, gt, all_visible()) == doctest::Approx(25.0 / 16.0).epsilon(1e-12));

  VisibilityMask vis = all_visible();
  vis[2] = false;
  CHECK(joint3d_loss(pred, gt, vis) == 0.0);
}

TEST_CASE("2d reprojection loss works in pixel units") {
  const FisheyeIntrinsics& intr = test::lens();
  Pose3D gt;
  for (int j = 0; j < kNumJoints; ++j) gt.row(j) << 0.0, 0.0, 1500.0;
  Pose3D pred = gt;
  // moving along +x shifts the projection by a known pixel distance
  pred.row(0) << 30.0, 0.0, 1500.0;
  Eigen::Vector2d a = project(intr, pred.row(0).transpose());
  Eigen::Vector2d b = project(intr, gt.row(0).transpose());
  const double expected = (a - b).squaredNorm() / 16.0;
  CHECK(reproj2d_loss(pred, gt, all_visible(), intr) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("2d reprojection loss skips joints that do not project") {
  const FisheyeIntrinsics& intr = test::lens();
  Pose3D gt;
  for (int j = 0; j < kNumJoints; ++j) gt.row(j) << 0.0, 0.0, 1500.0;
  Pose3D pred = gt;
  pred.row(5) << 0.0, 0.0, -1500.0;  // prediction behind the camera: term skipped
  CHECK(reproj2d_loss(pred, gt, all_visible(), intr) == 0.0);

  Pose3D gt2 = gt;
  gt2.row(6) << 0.0, 0.0, -1500.0;  // target behind the camera: also skipped
  CHECK(reproj2d_loss(gt, gt2, all_visible(), intr) == 0.0);
}

TEST_CASE("bone orientation loss counts flipped bones as two") {
  std::mt19937_64 g(0xb0e);
  Pose3D gt = test::random_pose(g);
  Pose3D pred = gt;
  // reverse the head bone: neck stays, head goes to the mirror point
  const Eigen::Vector3d neck = gt.row(static_cast<int>(Joint::Neck)).transpose();
  const Eigen::Vector3d head = gt.row(static_cast<int>(Joint::Head)).transpose();
  pred.row(static_cast<int>(Joint::Head)) = (neck - (head - neck)).transpose();

  BoneLoss bl = bone_loss(pred, gt);
  CHECK(bl.orientation == doctest::Approx(2.0 / 15.0).epsilon(1e-12));
}

TEST_CASE("identical poses have zero bone loss") {
  std::mt19937_64 g(0xb0f);
  Pose3D p = test::random_pose(g);
  BoneLoss bl = bone_loss(p, p);
  CHECK(bl.orientation == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(bl.length == 0.0);
  CHECK(bl.combined == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("zero-length bones contribute a neutral cosine") {
  Pose3D gt = Pose3D::Zero();  // every bone degenerate
  Pose3D pred = Pose3D::Zero();
  pred.row(static_cast<int>(Joint::Head)) << 0.0, 10.0, 0.0;
  BoneLoss bl = bone_loss(pred, gt);
  // every bone has cos := 0, so each contributes 1 - 0
  CHECK(bl.orientation == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("bone length loss is the mean squared bone-vector difference") {
  Pose3D gt = Pose3D::Zero();
  Pose3D pred = Pose3D::Zero();
  pred.row(static_cast<int>(Joint::Head)) << 0.0, 2.0, 0.0;  // one bone differs by (0,2,0)
  BoneLoss bl = bone_loss(pred, gt);
  CHECK(bl.length == doctest::Approx(4.0 / 15.0).epsilon(1e-12));
  CHECK(bl.combined == doctest::Approx(0.001 * bl.orientation + 0.001 * bl.length).epsilon(1e-12));
}

TEST_CASE("custom bone weights scale the combination") {
  Pose3D gt = Pose3D::Zero();
  Pose3D pred = Pose3D::Zero();
  pred.row(0) << 1.0, 0.0, 0.0;
  BoneLoss bl = bone_loss(pred, gt, 0.5, 2.0);
  CHECK(bl.combined == doctest::Approx(0.5 * bl.orientation + 2.0 * bl.length).epsilon(1e-12));
}

TEST_CASE("joint total combines with the published weights") {
  CHECK(joints_total_loss(1.0, 1.0, 1.0) == doctest::Approx(1.02).epsilon(1e-12));
  CHECK(joints_total_loss(0.0, 0.0, 0.0) == 0.0);
  LossWeights w;
  w.joint3d = 0.5;
  w.reproj2d = 0.25;
  w.bone = 3.0;
  CHECK(joints_total_loss(2.0, 4.0, 1.0, w) == doctest::Approx(0.5 * 2 + 0.25 * 4 + 3.0).epsilon(1e-12));
}

TEST_CASE("total loss combines with the published weights") {
  CHECK(total_loss(1.0, 1.0, 1.0) == doctest::Approx(21.1).epsilon(1e-12));
  CHECK(total_loss(0.0, 0.0, 0.0) == 0.0);
}

TEST_CASE("total loss is linear in the heatmap term with slope twenty") {
  const double base = total_loss(0.3, 0.5, 0.7);
  const double bumped = total_loss(0.3, 0.5 + 1.0, 0.7);
  CHECK(bumped - base == doctest::Approx(20.0).epsilon(1e-12));
}

TEST_CASE("segmentation cross entropy on a perfect binary mask is tiny") {
  DenseMap gt(16, 16);
  for (int i = 0; i < 16; ++i) gt.at(i, i) = 1.0f;
  const double loss = seg_ce_loss(gt, gt);
  // predictions clamp to [1e-7, 1 - 1e-7], so the floor is -log(1 - 1e-7)
  CHECK(loss > 0.0);
  CHECK(loss < 1.01e-7);
}

TEST_CASE("segmentation cross entropy of an indifferent prediction is log two") {
  DenseMap pred(8, 8, 0.5f), gt(8, 8);
  for (int i = 0; i < 8; ++i) gt.at(i, i) = 1.0f;
  CHECK(seg_ce_loss(pred, gt) == doctest::Approx(std::log(2.0)).epsilon(1e-6));
}

TEST_CASE("segmentation cross entropy punishes confident mistakes hard") {
  DenseMap pred(2, 1), gt(2, 1);
  pred.at(0, 0) = 0.0f;
  gt.at(0, 0) = 1.0f;
  pred.at(0, 1) = 1.0f;
  gt.at(0, 1) = 1.0f;
  // one totally wrong pixel clamped at 1e-7, one perfect pixel
  CHECK(seg_ce_loss(pred, gt) ==
        doctest::Approx(0.5 * (-std::log(1e-7) - std::log(1.0 - 1e-7))).epsilon(1e-9));
}

TEST_CASE("segmentation cross entropy validates shapes") {
  CHECK_THROWS_WITH_AS(seg_ce_loss(DenseMap(2, 2, 0.5f), DenseMap(3, 2, 0.5f)),
                       doctest::Contains("ShapeMismatch"), Error);
  CHECK_THROWS_AS(seg_ce_loss(DenseMap(), DenseMap()), Error);
}

TEST_CASE("losses accumulate in double even for float inputs") {
  // many tiny float contributions that would collapse in float accumulation
  Heatmaps pred(kHeatmapWidth, kHeatmapHeight), gt(kHeatmapWidth, kHeatmapHeight);
  for (auto& v : pred.data) v = 1e-4f;
  const double expected =
      16.0 * (kHeatmapWidth * kHeatmapHeight) * (1e-4 * 1e-4) / 16.0;
  CHECK(heatmap_loss(pred, gt, all_visible()) ==
        doctest::Approx(expected).epsilon(1e-5));
}
