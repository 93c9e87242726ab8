#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "evego/visibility.hpp"
#include "support/synthetic.hpp"

using namespace evego;

TEST_CASE("ray hits a triangle straight ahead") {
  auto t = ray_triangle({0, 0, 0}, {0, 0, 1}, {-1, -1, 5}, {1, -1, 5}, {0, 1, 5});
  REQUIRE(t.has_value());
  CHECK(*t == doctest::Approx(5.0));
}

TEST_CASE("ray misses a triangle off to the side") {
  CHECK_FALSE(ray_triangle({0, 0, 0}, {0, 0, 1}, {2, 2, 5}, {3, 2, 5}, {2, 3, 5}).has_value());
}

TEST_CASE("rays parallel to the triangle plane miss") {
  CHECK_FALSE(ray_triangle({0, 0, 0}, {1, 0, 0}, {-1, -1, 5}, {1, -1, 5}, {0, 1, 5}).has_value());
}

TEST_CASE("triangles behind the origin miss") {
  CHECK_FALSE(ray_triangle({0, 0, 0}, {0, 0, 1}, {-1, -1, -5}, {1, -1, -5}, {0, 1, -5}).has_value());
}

TEST_CASE("edges and vertices count as hits") {
  // ray through the vertex (0, 1, 5)
  auto v = ray_triangle({0, 1, 0}, {0, 0, 1}, {-1, -1, 5}, {1, -1, 5}, {0, 1, 5});
  CHECK(v.has_value());
  // ray through the midpoint of the edge between the first two vertices
  auto e = ray_triangle({0, -1, 0}, {0, 0, 1}, {-1, -1, 5}, {1, -1, 5}, {0, 1, 5});
  CHECK(e.has_value());
}

TEST_CASE("winding does not matter") {
  auto a = ray_triangle({0, 0, 0}, {0, 0, 1}, {-1, -1, 5}, {1, -1, 5}, {0, 1, 5});
  auto b = ray_triangle({0, 0, 0}, {0, 0, 1}, {0, 1, 5}, {1, -1, 5}, {-1, -1, 5});
  REQUIRE(a.has_value());
  REQUIRE(b.has_value());
  CHECK(*a == doctest::Approx(*b));
}

TEST_CASE("first hit picks the nearest triangle and breaks ties by index") {
  LabeledMesh m;
  m.vertices.resize(6, 3);
  m.vertices << -1, -1, 5, 1, -1, 5, 0, 1, 5,  // triangle 0 at z = 5
      -1, -1, 3, 1, -1, 3, 0, 1, 3;            // triangle 1 at z = 3
  m.triangles = {{0, 1, 2}, {3, 4, 5}};
  m.labels.assign(6, 0);

  auto hit = ray_mesh_first_hit({0, 0, 0}, {0, 0, 1}, m);
  REQUIRE(hit.has_value());
  CHECK(hit->triangle == 1);
  CHECK(hit->t == doctest::Approx(3.0));
  CHECK(hit->point.z() == doctest::Approx(3.0));

  // coplanar duplicate: the lower index wins
  LabeledMesh dup = m;
  dup.vertices.row(3) << -1, -1, 5;
  dup.vertices.row(4) << 1, -1, 5;
  dup.vertices.row(5) << 0, 1, 5;
  auto tie = ray_mesh_first_hit({0, 0, 0}, {0, 0, 1}, dup);
  REQUIRE(tie.has_value());
  CHECK(tie->triangle == 0);
}

TEST_CASE("bvh returns exactly what brute force returns") {
  std::mt19937_64 g(0xb44);
  // a scene mixing two spheres and a box, roughly body-sized
  LabeledMesh scene = test::merge_meshes(
      test::merge_meshes(test::sphere_mesh({0, 0, 1500}, 150.0, 12, 16, 0),
                         test::sphere_mesh({120, 80, 1700}, 100.0, 10, 12, 3)),
      test::box_mesh({-100, -50, 1300}, {60, 180, 40}, 9));
  MeshBvh bvh(scene);

  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int hits = 0;
  for (int i = 0; i < 20000; ++i) {
    Eigen::Vector3d origin(u(g) * 200, u(g) * 200, u(g) * 100);
    Eigen::Vector3d dir(u(g), u(g), 0.5 + 0.75 * (u(g) + 1.0));
    dir.normalize();
    auto slow = ray_mesh_first_hit(origin, dir, scene);
    auto fast = bvh.first_hit(origin, dir);
    REQUIRE(slow.has_value() == fast.has_value());
    if (slow) {
      ++hits;
      CHECK(slow->triangle == fast->triangle);
      CHECK(slow->t == fast->t);
    }
  }
  CHECK(hits > 300);  // the scene must actually be in the way
}

TEST_CASE("bvh handles empty and single-triangle meshes") {
  LabeledMesh empty;
  empty.vertices.resize(0, 3);
  MeshBvh none(empty);
  CHECK_FALSE(none.first_hit({0, 0, 0}, {0, 0, 1}).has_value());

  LabeledMesh one;
  one.vertices.resize(3, 3);
  one.vertices << -1, -1, 5, 1, -1, 5, 0, 1, 5;
  one.triangles = {{0, 1, 2}};
  one.labels.assign(3, 0);
  MeshBvh single(one);
  auto hit = single.first_hit({0, 0, 0}, {0, 0, 1});
  REQUIRE(hit.has_value());
  CHECK(hit->t == doctest::Approx(5.0));
}

TEST_CASE("projected joints come with image-bounds flags") {
  const FisheyeIntrinsics& intr = test::lens();
  Pose3D pose;
  for (int j = 0; j < kNumJoints; ++j) pose.row(j) << 0.0, 0.0, 1000.0;
  pose.row(0) << 0.0, 0.0, -1000.0;  // behind the camera
  JointProjection proj = project_joints(pose, intr);
  CHECK_FALSE(proj.in_image[0]);
  CHECK(proj.pixels(0, 0) == -1.0);
  for (int j = 1; j < kNumJoints; ++j) {
    CHECK(proj.in_image[j]);
    CHECK(proj.pixels(j, 0) == doctest::Approx(intr.cx));
  }
}

TEST_CASE("an empty mesh leaves every joint visible") {
  std::mt19937_64 g(0xb45);
  Pose3D pose = test::random_pose(g);
  LabeledMesh empty;
  empty.vertices.resize(0, 3);
  VisibilityMask vis = joint_visibility(pose, empty, Eigen::Vector3d::Zero());
  for (bool v : vis) CHECK(v);
}

TEST_CASE("a joint wrapped in its own labeled sphere is visible") {
  Pose3D pose = Pose3D::Zero();
  for (int j = 0; j < kNumJoints; ++j) pose.row(j) << j * 400.0 - 3000.0, 0.0, 2000.0;
  // enclose joint 5 in a sphere labeled 5
  LabeledMesh shell = test::sphere_mesh({5 * 400.0 - 3000.0, 0.0, 2000.0}, 50.0, 10, 14, 5);
  VisibilityMask vis = joint_visibility(pose, shell, Eigen::Vector3d::Zero());
  CHECK(vis[5]);
}

TEST_CASE("a joint behind a differently labeled wall is hidden") {
  Pose3D pose = Pose3D::Zero();
  for (int j = 0; j < kNumJoints; ++j) pose.row(j) << j * 300.0 - 2000.0, 0.0, 2000.0;

  // wall with label 2 in front of joint 7, plus a marker sphere for joint 7
  const Eigen::Vector3d j7 = pose.row(7).transpose();
  LabeledMesh wall = test::box_mesh(j7 * 0.5, {200.0, 200.0, 10.0}, 2);
  LabeledMesh marker = test::sphere_mesh(j7, 40.0, 8, 10, 7);
  LabeledMesh scene = test::merge_meshes(wall, marker);

  VisibilityMask vis = joint_visibility(pose, scene, Eigen::Vector3d::Zero());
  CHECK_FALSE(vis[7]);
}

TEST_CASE("visibility is invariant under a rigid motion of the whole scene") {
  std::mt19937_64 g(0xb46);
  for (int trial = 0; trial < 10; ++trial) {
    Pose3D pose = test::random_pose(g, {0.0, 0.0, 1800.0}, 350.0);
    LabeledMesh scene = test::merge_meshes(
        test::sphere_mesh(pose.row(3).transpose(), 120.0, 8, 10, 3),
        test::box_mesh({0.0, 0.0, 1500.0}, {150.0, 150.0, 30.0}, 12));
    Eigen::Vector3d cam = Eigen::Vector3d::Zero();
    VisibilityMask before = joint_visibility(pose, scene, cam);

    RigidTransform rt = test::random_rigid(g, 500.0);
    Pose3D moved_pose = transform_points(rt, pose);
    LabeledMesh moved_scene = test::transform_mesh(rt, scene);
    VisibilityMask after = joint_visibility(moved_pose, moved_scene, rt.apply(cam));
    CHECK(before == after);
  }
}

TEST_CASE("a foreign-labeled occluder can only hide joints, never reveal them") {
  std::mt19937_64 g(0xb47);
  const int slab_label = 15;
  for (int trial = 0; trial < 8; ++trial) {
    Pose3D pose = test::random_pose(g, {0.0, 0.0, 2000.0}, 300.0);
    LabeledMesh scene = test::sphere_mesh(pose.row(0).transpose(), 90.0, 8, 10, 0);
    VisibilityMask before = joint_visibility(pose, scene, Eigen::Vector3d::Zero());

    // slide a big slab somewhere between the camera and the cloud; the joint
    // sharing the slab's label would count it as its own body part, so it is
    // the one joint an occluder may legitimately reveal
    std::uniform_real_distribution<double> u(-200.0, 200.0);
    LabeledMesh blocked = test::merge_meshes(
        scene, test::box_mesh({u(g), u(g), 900.0}, {250.0, 250.0, 20.0}, slab_label));
    VisibilityMask after = joint_visibility(pose, blocked, Eigen::Vector3d::Zero());
    for (int j = 0; j < kNumJoints; ++j)
      if (j != slab_label && after[j]) CHECK(before[j]);
  }
}

TEST_CASE("a pose nowhere near the mesh reports a frame mismatch") {
  Pose3D pose = Pose3D::Zero();
  for (int j = 0; j < kNumJoints; ++j) pose.row(j) << 1e6, 1e6, 1e6;
  LabeledMesh mesh = test::box_mesh({0, 0, 2000}, {100, 100, 100}, 0);
  CHECK_THROWS_WITH_AS(joint_visibility(pose, mesh, Eigen::Vector3d::Zero()),
                       doctest::Contains("FrameMismatch"), Error);
}

TEST_CASE("camera-based visibility also demands the joint be on the sensor") {
  const FisheyeIntrinsics& intr = test::lens();
  Pose3D pose;
  for (int j = 0; j < kNumJoints; ++j) pose.row(j) << 0.0, 0.0, 1500.0 + 10.0 * j;
  pose.row(4) << 0.0, 0.0, -2000.0;  // behind the camera

  LabeledMesh empty;
  empty.vertices.resize(0, 3);
  VisibilityMask vis = joint_visibility(pose, empty, intr);
  CHECK_FALSE(vis[4]);
  CHECK(vis[0]);
  CHECK(vis[15]);
}
