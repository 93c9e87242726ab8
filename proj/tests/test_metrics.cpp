#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "evego/metrics.hpp"
#include "support/synthetic.hpp"

using namespace evego;

TEST_CASE("mpjpe is the mean euclidean joint error") {
  Pose3D gt = Pose3D::Zero();
  Pose3D pred = Pose3D::Zero();
  pred.row(0) << 3.0, 4.0, 0.0;  // distance 5 on one joint
  CHECK(mpjpe(pred, gt) == doctest::Approx(5.0 / 16.0).epsilon(1e-12));

  std::mt19937_64 g(0x3e7);
  Pose3D p = test::random_pose(g);
  CHECK(mpjpe(p, p) == 0.0);
}

TEST_CASE("a pure translation gives the offset as mpjpe and zero pa-mpjpe") {
  std::mt19937_64 g(0x3e8);
  Pose3D gt = test::random_pose(g);
  Pose3D pred = gt;
  const Eigen::Vector3d offset(6.0, 8.0, 0.0);  // length 10
  pred.rowwise() += offset.transpose();

  CHECK(mpjpe(pred, gt) == doctest::Approx(10.0).epsilon(1e-12));
  CHECK(pa_mpjpe(pred, gt) < 1e-9);
}

TEST_CASE("alignment undoes a full similarity transform") {
  std::mt19937_64 g(0x3e9);
  std::uniform_real_distribution<double> us(0.3, 3.0);
  for (int trial = 0; trial < 300; ++trial) {
    Pose3D gt = test::random_pose(g);
    const double s = us(g);
    const Eigen::Matrix3d r = test::random_rotation(g);
    const Eigen::Vector3d t = Eigen::Vector3d(500.0, -200.0, 100.0) * us(g);
    Pose3D pred = (s * (r * gt.transpose())).transpose();
    pred.rowwise() += t.transpose();

    CHECK(pa_mpjpe(pred, gt) < 1e-6);

    SimilarityTransform st = similarity_align(pred, gt);
    CHECK(st.scale == doctest::Approx(1.0 / s).epsilon(1e-9));
    CHECK((st.rotation - r.transpose()).norm() < 1e-9);
  }
}

TEST_CASE("alignment recovers the exact similarity parameters") {
  std::mt19937_64 g(0x3ea);
  Pose3D src = test::random_pose(g);
  const double s = 1.7;
  const Eigen::Matrix3d r = test::random_rotation(g);
  const Eigen::Vector3d t(12.0, -34.0, 56.0);
  Pose3D dst = (s * (r * src.transpose())).transpose();
  dst.rowwise() += t.transpose();

  SimilarityTransform st = similarity_align(src, dst);
  CHECK(st.scale == doctest::Approx(s).epsilon(1e-12));
  CHECK((st.rotation - r).norm() < 1e-10);
  CHECK((st.translation - t).norm() < 1e-8);

  Pose3D mapped = apply_similarity(st, src);
  CHECK((mapped - dst).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("alignment never increases the error") {
  std::mt19937_64 g(0x3eb);
  for (int trial = 0; trial < 500; ++trial) {
    Pose3D gt = test::random_pose(g);
    Pose3D pred = test::random_pose(g);
    const double plain = mpjpe(pred, gt);
    const double aligned = pa_mpjpe(pred, gt);
    CHECK(aligned <= plain + 1e-9);
  }
}

TEST_CASE("the fitted similarity is locally optimal in least squares") {
  std::mt19937_64 g(0x3ec);
  Pose3D gt = test::random_pose(g);
  Pose3D pred = test::random_pose(g);
  SimilarityTransform st = similarity_align(pred, gt);

  auto sse = [&](const SimilarityTransform& s) {
    Pose3D mapped = apply_similarity(s, pred);
    return (mapped - gt).rowwise().squaredNorm().sum();
  };
  const double best = sse(st);

  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    SimilarityTransform tweaked = st;
    tweaked.scale *= 1.0 + 1e-4 * u(g);
    Eigen::Vector3d axis(u(g), u(g), u(g));
    if (axis.norm() < 1e-9) continue;
    tweaked.rotation =
        Eigen::AngleAxisd(1e-4 * u(g), axis.normalized()).toRotationMatrix() * st.rotation;
    tweaked.translation += 1e-3 * Eigen::Vector3d(u(g), u(g), u(g));
    CHECK(sse(tweaked) >= best * (1.0 - 1e-12) - 1e-6);
  }
}

TEST_CASE("alignment requires spread in both clouds") {
  Pose3D flat = Pose3D::Zero();  // all joints coincide: zero variance
  std::mt19937_64 g(0x3ed);
  Pose3D ok = test::random_pose(g);
  CHECK_THROWS_WITH_AS(similarity_align(flat, ok), doctest::Contains("DegenerateConfiguration"),
                       Error);
  CHECK_THROWS_AS(similarity_align(ok, flat), Error);
  CHECK_THROWS_AS(pa_mpjpe(flat, ok), Error);
}

TEST_CASE("alignment handles reflections without mirroring") {
  std::mt19937_64 g(0x3ee);
  Pose3D gt = test::random_pose(g);
  Pose3D pred = gt;
  pred.col(0) *= -1.0;  // mirrored cloud

  SimilarityTransform st = similarity_align(pred, gt);
  // the recovered rotation must be proper, not a reflection
  CHECK(st.rotation.determinant() == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("alignment rejects mismatched row counts") {
  Eigen::MatrixX3d a(4, 3), b(5, 3);
  a.setRandom();
  b.setRandom();
  CHECK_THROWS_WITH_AS(similarity_align(a, b), doctest::Contains("ShapeMismatch"), Error);
  Eigen::MatrixX3d one(1, 3);
  one.setRandom();
  CHECK_THROWS_AS(similarity_align(one, one), Error);
}
