#include <doctest.h>

#include "vortex/vortex_tracking.hpp"

using namespace vortex;

TEST_CASE("stationary detections give constant paths") {
  std::vector<std::vector<DetectedVortex>> frames(10, {{{0.2, 0.3}, 1}, {{0.7, 0.6}, -1}});
  const TrackSet t = track(frames);
  REQUIRE(t.frame_count() == 10);
  for (const auto& p : t.paths)
    for (const auto& x : p) CHECK((x - p.front()).norm() == 0.0);
  CHECK(!t.unreliable_from);
}

TEST_CASE("paths are lifted across the boundary") {
  std::vector<std::vector<DetectedVortex>> frames;
  for (int f = 0; f < 20; ++f) {
    const Vec2 a(0.9 + 0.02 * f, 0.5 - 0.03 * f);
    frames.push_back({{torus_image(a), 1}, {{0.4, 0.2}, -1}});
  }
  const TrackSet t = track(frames);
  for (int f = 0; f < 20; ++f) CHECK((t.paths[0][f] - Vec2(0.9 + 0.02 * f, 0.5 - 0.03 * f)).norm() < 1e-12);
}

TEST_CASE("matching follows identities, not list order") {
  std::vector<std::vector<DetectedVortex>> frames = {
      {{{0.1, 0.1}, 1}, {{0.5, 0.5}, 1}, {{0.3, 0.8}, -1}, {{0.8, 0.3}, -1}},
      {{{0.51, 0.5}, 1}, {{0.81, 0.3}, -1}, {{0.11, 0.1}, 1}, {{0.31, 0.8}, -1}},
  };
  const TrackSet t = track(frames);
  CHECK((t.paths[0][1] - Vec2(0.11, 0.1)).norm() < 1e-12);
  CHECK((t.paths[1][1] - Vec2(0.51, 0.5)).norm() < 1e-12);
  CHECK((t.paths[2][1] - Vec2(0.31, 0.8)).norm() < 1e-12);
  CHECK((t.paths[3][1] - Vec2(0.81, 0.3)).norm() < 1e-12);
}

TEST_CASE("count changes raise with the frame index") {
  std::vector<std::vector<DetectedVortex>> frames = {
      {{{0.1, 0.1}, 1}, {{0.5, 0.5}, -1}},
      {{{0.1, 0.1}, 1}, {{0.5, 0.5}, -1}},
      {},
  };
  try {
    track(frames);
    FAIL("expected TrackingError");
  } catch (const TrackingError& e) {
    CHECK(e.frame() == 2);
  }
  frames[2] = {{{0.1, 0.1}, 1}, {{0.5, 0.5}, 1}};
  CHECK_THROWS_AS(track(frames), TrackingError);
}

TEST_CASE("ambiguous matches are flagged") {
  std::vector<std::vector<DetectedVortex>> frames = {
      {{{0.10, 0.5}, 1}, {{0.22, 0.5}, 1}, {{0.7, 0.5}, -1}, {{0.9, 0.5}, -1}},
      {{{0.10, 0.5}, 1}, {{0.22, 0.5}, 1}, {{0.7, 0.5}, -1}, {{0.9, 0.5}, -1}},
      {{{0.16, 0.5}, 1}, {{0.18, 0.5}, 1}, {{0.7, 0.5}, -1}, {{0.9, 0.5}, -1}},
  };
  const TrackSet t = track(frames, 0.1);
  REQUIRE(t.unreliable_from);
  CHECK(*t.unreliable_from == 2);
}
