#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wlansim/engine.hpp"
#include "wlansim/mobility.hpp"

using namespace wlansim;

namespace {

WaypointPath straight_path() {
  // 100 m east at 10 m/s, starting at t = 0.
  WaypointPath p;
  p.start_position = {0, 0};
  p.waypoints = {{{100, 0}, 10.0}};
  return p;
}

}  // namespace

TEST_CASE("position before start and at t=0 is the start position") {
  auto p = straight_path();
  p.start_time = 2 * kSecond;
  CHECK(position_at(p, 0) == Position{0, 0});
  CHECK(position_at(p, 2 * kSecond) == Position{0, 0});
}

TEST_CASE("midpoint of a 100 m segment at 10 m/s after 5 s") {
  const auto p = straight_path();
  const Position mid = position_at(p, 5 * kSecond);
  CHECK(mid.x == doctest::Approx(50.0));
  CHECK(mid.y == doctest::Approx(0.0));
}

TEST_CASE("stationary after the final waypoint") {
  const auto p = straight_path();
  CHECK(p.end_time() == 10 * kSecond);
  CHECK(position_at(p, 11 * kSecond) == Position{100, 0});
  CHECK(position_at(p, 134 * kSecond) == Position{100, 0});
}

TEST_CASE("continuity: no teleports between adjacent samples") {
  WaypointPath p;
  p.start_position = {-60, 40};
  p.waypoints = {{{-60, 10}, 1.0}, {{-90, 10}, 1.0}, {{-90, -26}, 1.0}, {{-30, -26}, 10.0}};
  const double max_speed = 10.0;
  Position prev = position_at(p, 0);
  for (SimTime t = 0; t <= 120 * kSecond; t += kSecond / 4) {
    const Position cur = position_at(p, t);
    CHECK(distance_m(prev, cur) <= max_speed * 0.25 + 1e-9);
    prev = cur;
  }
}

TEST_CASE("the reference scenario's host 1 finishes at waypoint 4") {
  // Segments: 30 m @1, 30 m @1, 36 m @1, 60 m @10 -> motion ends at 102 s.
  WaypointPath p;
  p.start_position = {-60, 40};
  p.waypoints = {{{-60, 10}, 1.0}, {{-90, 10}, 1.0}, {{-90, -26}, 1.0}, {{-30, -26}, 10.0}};
  CHECK(p.end_time() == 102 * kSecond);
  CHECK(position_at(p, 134 * kSecond) == Position{-30, -26});
}

TEST_CASE("next_move_event: stationary path never re-evaluates") {
  WaypointPath p;
  p.start_position = {5, 5};
  CHECK(next_move_event(p, 0, kSecond) == kNever);
  CHECK_FALSE(is_moving(p, 3 * kSecond));
}

TEST_CASE("next_move_event takes the earlier of boundary and interval") {
  const auto p = straight_path();  // boundary at 10 s
  const SimTime t = from_seconds(10.2) - 9 * kSecond;  // 1.2 s into motion
  CHECK(next_move_event(p, t, kSecond) == t + kSecond);
  // Near the end of the segment, the boundary wins.
  CHECK(next_move_event(p, from_seconds(9.5), kSecond) == 10 * kSecond);
  CHECK(next_move_event(p, 10 * kSecond, kSecond) == kNever);
}

TEST_CASE("non-positive waypoint speed is rejected") {
  WaypointPath p;
  p.start_position = {0, 0};
  p.waypoints = {{{10, 0}, 0.0}};
  CHECK_THROWS_AS(position_at(p, kSecond), std::logic_error);
}
