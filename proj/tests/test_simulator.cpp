#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <fstream>
#include <random>

#include "evego/image.hpp"
#include "evego/simulator.hpp"
#include "support/oracles.hpp"
#include "support/synthetic.hpp"

using namespace evego;

namespace {

std::vector<IntensityFrame> two_frames(double i0, double i1, std::uint64_t t0 = 0,
                                       std::uint64_t t1 = 1000) {
  IntensityFrame a(1, 1, t0, i0), b(1, 1, t1, i1);
  return {a, b};
}

}  // namespace

TEST_CASE("a brightness step emits the floor of the log ratio over the threshold") {
  const double c = 0.1;
  // log(2) / 0.1 = 6.93...: six full crossings
  auto events = simulate_events(two_frames(1.0, 2.0), {c});
  CHECK(events.size() == 6);
  CHECK(events.size() == test::crossing_count_oracle(1.0, 2.0, c));
  for (const Event& e : events.events()) CHECK(e.p == 1);
}

TEST_CASE("darkening emits negative events") {
  const double c = 0.1;
  auto events = simulate_events(two_frames(2.0, 1.0), {c});
  CHECK(events.size() == test::crossing_count_oracle(2.0, 1.0, c));
  for (const Event& e : events.events()) CHECK(e.p == -1);
}

TEST_CASE("changes below the threshold stay silent") {
  auto events = simulate_events(two_frames(1.0, 1.04), {0.1});
  CHECK(events.empty());
  // just over the threshold fires once (a hair of margin keeps the floor
  // away from the representability edge of log(exp(x)))
  auto fire = simulate_events(two_frames(1.0, std::exp(0.1000001)), {0.1});
  CHECK(fire.size() == 1);
}

TEST_CASE("event timestamps interpolate the crossing times") {
  // 1 -> 16 over [0, 1001] us with threshold log(16)/4 (shrunk by 1e-9 so
  // every crossing clears its level with real margin): crossings sit at
  // quarter points of the log ramp and the odd span keeps the ideal times
  // off integer boundaries
  const double c = std::log(16.0) * (1.0 - 1e-9) / 4.0;
  auto events = simulate_events(two_frames(1.0, 16.0, 0, 1001), {c});
  REQUIRE(events.size() == 4);
  CHECK(events.events()[0].t == 250);   // floor(0.25 * 1001)
  CHECK(events.events()[1].t == 500);   // floor(0.50 * 1001)
  CHECK(events.events()[2].t == 750);   // floor(0.75 * 1001)
  CHECK(events.events()[3].t == 1000);  // floor(1.00 * 1001 - ~1e-6)
}

TEST_CASE("same-pixel collisions bump timestamps to stay ordered") {
  // a huge jump forces many events inside one frame pair; timestamps at the
  // same pixel must be strictly increasing even when quantization collides
  auto events = simulate_events(two_frames(1.0, std::exp(50.5), 0, 10), {1.0});
  REQUIRE(events.size() == 50);
  for (std::size_t i = 1; i < events.size(); ++i)
    CHECK(events.events()[i].t > events.events()[i - 1].t);
}

TEST_CASE("the reference level carries across frame pairs") {
  // 1.0 -> 1.6 -> 2.56 with threshold 0.5: each single step moves log
  // intensity by 0.47, below the threshold, but the two steps together
  // cross it; a simulator that reset per frame pair would stay silent
  const double c = 0.5;
  IntensityFrame a(1, 1, 0, 1.0), b(1, 1, 100, 1.6), d(1, 1, 200, 2.56);
  auto events = simulate_events({a, b, d}, {c});
  CHECK(events.size() == test::pixel_walk_oracle({1.0, 1.6, 2.56}, c));
  CHECK(events.size() == 1);
  CHECK(events.events()[0].t >= 100);  // the crossing happens in the second pair
}

TEST_CASE("total events equal the pixel walk oracle on random sequences") {
  std::mt19937_64 g(0x51a);
  std::uniform_real_distribution<double> ui(0.2, 5.0);
  for (int trial = 0; trial < 10; ++trial) {
    const int w = 6, h = 5, frames = 8;
    std::vector<IntensityFrame> seq;
    for (int f = 0; f < frames; ++f) {
      IntensityFrame fr(w, h, static_cast<std::uint64_t>(f) * 1000);
      for (auto& v : fr.values) v = ui(g);
      seq.push_back(std::move(fr));
    }
    const double c = 0.05 + 0.3 * std::generate_canonical<double, 53>(g);
    auto events = simulate_events(seq, {c});

    std::uint64_t expected = 0;
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x) {
        std::vector<double> trace;
        for (const auto& fr : seq) trace.push_back(fr.at(y, x));
        expected += test::pixel_walk_oracle(trace, c);
      }
    CHECK(events.size() == expected);
  }
}

TEST_CASE("a larger threshold never produces more events") {
  std::mt19937_64 g(0x51b);
  std::uniform_real_distribution<double> ui(0.2, 5.0);
  std::vector<IntensityFrame> seq;
  for (int f = 0; f < 6; ++f) {
    IntensityFrame fr(8, 8, static_cast<std::uint64_t>(f) * 500);
    for (auto& v : fr.values) v = ui(g);
    seq.push_back(std::move(fr));
  }
  std::size_t prev = simulate_events(seq, {0.02}).size();
  for (double c : {0.05, 0.1, 0.2, 0.5, 1.0}) {
    const std::size_t n = simulate_events(seq, {c}).size();
    CHECK(n <= prev);
    prev = n;
  }
}

TEST_CASE("events come out globally time sorted") {
  std::mt19937_64 g(0x51c);
  std::uniform_real_distribution<double> ui(0.2, 5.0);
  std::vector<IntensityFrame> seq;
  for (int f = 0; f < 5; ++f) {
    IntensityFrame fr(16, 16, static_cast<std::uint64_t>(f) * 777);
    for (auto& v : fr.values) v = ui(g);
    seq.push_back(std::move(fr));
  }
  auto events = simulate_events(seq, {0.05});
  REQUIRE(events.size() > 100);
  for (std::size_t i = 1; i < events.size(); ++i)
    CHECK(events.events()[i].t >= events.events()[i - 1].t);
}

TEST_CASE("simulator rejects bad input") {
  CHECK_THROWS_WITH_AS(simulate_events(two_frames(1.0, 2.0), {0.0}),
                       doctest::Contains("InvalidThreshold"), Error);
  CHECK_THROWS_WITH_AS(simulate_events(two_frames(1.0, 2.0), {-0.5}),
                       doctest::Contains("InvalidThreshold"), Error);

  std::vector<IntensityFrame> one = {IntensityFrame(2, 2, 0, 1.0)};
  CHECK_THROWS_WITH_AS(simulate_events(one, {0.1}), doctest::Contains("TooFewFrames"), Error);

  auto shapes = two_frames(1.0, 2.0);
  shapes[1] = IntensityFrame(2, 1, 1000, 2.0);
  CHECK_THROWS_WITH_AS(simulate_events(shapes, {0.1}), doctest::Contains("ShapeMismatch"), Error);

  auto unordered = two_frames(1.0, 2.0, 1000, 500);
  CHECK_THROWS_WITH_AS(simulate_events(unordered, {0.1}), doctest::Contains("UnorderedFrames"),
                       Error);

  auto dark = two_frames(1.0, 0.0);
  CHECK_THROWS_WITH_AS(simulate_events(dark, {0.1}), doctest::Contains("NonPositiveIntensity"),
                       Error);
}

TEST_CASE("pose interpolation hits keyframes exactly and lerps between") {
  std::mt19937_64 g(0x51d);
  Pose3D a = test::random_pose(g), b = test::random_pose(g);
  std::vector<TimedPose> keys = {{0.0, a}, {1000.0, b}};
  auto out = interpolate_poses(keys, 2000.0);  // every 500 us
  REQUIRE(out.size() == 3);
  CHECK((out[0].pose - a).cwiseAbs().maxCoeff() == 0.0);
  CHECK((out[2].pose - b).cwiseAbs().maxCoeff() == 0.0);
  CHECK((out[1].pose - (0.5 * (a + b))).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("a 480 hz grid subsampled by sixteen lands on the 30 hz grid") {
  std::mt19937_64 g(0x51e);
  Pose3D a = test::random_pose(g), b = test::random_pose(g);
  std::vector<TimedPose> keys = {{0.0, a}, {1.0e6, b}};

  auto fast = interpolate_poses(keys, 480.0);
  auto slow = interpolate_poses(keys, 30.0);
  REQUIRE(fast.size() == 481);
  REQUIRE(slow.size() == 31);
  for (std::size_t i = 0; i < slow.size(); ++i) {
    CHECK(slow[i].t_us == fast[16 * i].t_us);  // bit-identical timestamps
    CHECK((slow[i].pose - fast[16 * i].pose).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("grid endpoints land exactly on the boundary keyframes") {
  std::mt19937_64 g(0x51f);
  Pose3D a = test::random_pose(g), b = test::random_pose(g);
  std::vector<TimedPose> keys = {{1000.0, a}, {2000.0, b}};
  auto out = interpolate_poses(keys, 1000.0);  // every 1000 us starting at the first key
  REQUIRE(out.size() == 2);
  CHECK(out[0].t_us == 1000.0);
  CHECK(out[1].t_us == 2000.0);
  CHECK((out[0].pose - a).cwiseAbs().maxCoeff() == 0.0);
  CHECK((out[1].pose - b).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("interpolated grids have uniform second differences") {
  std::mt19937_64 g(0x520);
  Pose3D a = test::random_pose(g), b = test::random_pose(g);
  std::vector<TimedPose> keys = {{0.0, a}, {777777.0, b}};
  auto out = interpolate_poses(keys, 480.0);
  REQUIRE(out.size() > 3);
  for (std::size_t i = 2; i < out.size(); ++i) {
    const double d2 = (out[i].t_us - out[i - 1].t_us) - (out[i - 1].t_us - out[i - 2].t_us);
    CHECK(std::abs(d2) < 1e-6);  // no accumulating drift
  }
}

TEST_CASE("pose interpolation rejects bad input") {
  std::mt19937_64 g(0x521);
  Pose3D a = test::random_pose(g);
  CHECK_THROWS_WITH_AS(interpolate_poses({{0.0, a}}, 30.0), doctest::Contains("TooFewKeyframes"),
                       Error);
  std::vector<TimedPose> keys = {{0.0, a}, {1000.0, a}};
  CHECK_THROWS_WITH_AS(interpolate_poses(keys, 0.0), doctest::Contains("InvalidRate"), Error);
  std::vector<TimedPose> unordered = {{1000.0, a}, {0.0, a}};
  CHECK_THROWS_WITH_AS(interpolate_poses(unordered, 30.0), doctest::Contains("UnorderedFrames"),
                       Error);
}

TEST_CASE("the joint subset picks known rows from the full set") {
  Eigen::MatrixX3d smpl(kSmplJointCount, 3);
  for (int i = 0; i < kSmplJointCount; ++i) smpl.row(i) << double(i), double(10 * i), 0.0;
  Pose3D pose = smpl_joint_map(smpl);
  CHECK(pose(static_cast<int>(Joint::Head), 0) == 15.0);
  CHECK(pose(static_cast<int>(Joint::Neck), 0) == 12.0);
  CHECK(pose(static_cast<int>(Joint::RightShoulder), 0) == 17.0);
  CHECK(pose(static_cast<int>(Joint::LeftShoulder), 0) == 16.0);
  CHECK(pose(static_cast<int>(Joint::RightHip), 0) == 2.0);
  CHECK(pose(static_cast<int>(Joint::LeftFoot), 0) == 10.0);

  Eigen::MatrixX3d wrong(10, 3);
  wrong.setZero();
  CHECK_THROWS_WITH_AS(smpl_joint_map(wrong), doctest::Contains("WrongJointCount"), Error);
}

TEST_CASE("intensity manifests load pgm and dense map frames") {
  test::TempDir dir;
  {
    std::ofstream os(dir / "f0.pgm", std::ios::binary);
    os << "P5\n2 2\n255\n";
    const unsigned char px[4] = {0, 50, 100, 200};
    os.write(reinterpret_cast<const char*>(px), 4);
  }
  DenseMap m(2, 2, 3.5f);
  save_dense_map(dir / "f1.f32", m);
  {
    std::ofstream os(dir / "frames.txt");
    os << "# frame list\nf0.pgm 0\nf1.f32 1000\n";
  }
  auto frames = load_intensity_frames(dir / "frames.txt");
  REQUIRE(frames.size() == 2);
  CHECK(frames[0].t_us == 0);
  CHECK(frames[0].at(0, 0) == 1.0);    // pgm values get a +1 shift
  CHECK(frames[0].at(1, 1) == 201.0);
  CHECK(frames[1].at(0, 1) == 3.5);    // dense maps pass through
  CHECK(frames[1].t_us == 1000);
}

TEST_CASE("intensity manifests reject short lists and bad lines") {
  test::TempDir dir;
  DenseMap m(2, 2, 1.0f);
  save_dense_map(dir / "only.f32", m);
  {
    std::ofstream os(dir / "one.txt");
    os << "only.f32 0\n";
  }
  CHECK_THROWS_WITH_AS(load_intensity_frames(dir / "one.txt"),
                       doctest::Contains("TooFewFrames"), Error);
  {
    std::ofstream os(dir / "bad.txt");
    os << "a.pgm zero\nb.pgm 100\n";
  }
  CHECK_THROWS_WITH_AS(load_intensity_frames(dir / "bad.txt"), doctest::Contains("ParseError"),
                       Error);
  CHECK_THROWS_WITH_AS(load_intensity_frames(dir / "missing.txt"),
                       doctest::Contains("FileNotFound"), Error);
}
