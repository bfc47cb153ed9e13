#include "wlansim/mobility.hpp"

#include <cmath>
#include <stdexcept>

namespace wlansim {

double distance_m(const Position& a, const Position& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return std::sqrt(dx * dx + dy * dy);
}

namespace {

// Duration of one segment in integer microseconds (rounded to nearest).
SimTime segment_duration(const Position& from, const Waypoint& to) {
  if (to.speed_mps <= 0) throw std::logic_error("waypoint speed must be positive");
  return from_seconds(distance_m(from, to.pos) / to.speed_mps);
}

}  // namespace

SimTime WaypointPath::end_time() const {
  SimTime t = start_time;
  Position at = start_position;
  for (const auto& wp : waypoints) {
    t += segment_duration(at, wp);
    at = wp.pos;
  }
  return t;
}

Position position_at(const WaypointPath& path, SimTime t) {
  if (t <= path.start_time || path.waypoints.empty()) return path.start_position;
  SimTime seg_start = path.start_time;
  Position from = path.start_position;
  for (const auto& wp : path.waypoints) {
    const SimTime dur = segment_duration(from, wp);
    if (t < seg_start + dur) {
      const double frac = static_cast<double>(t - seg_start) / static_cast<double>(dur);
      return Position{from.x + (wp.pos.x - from.x) * frac, from.y + (wp.pos.y - from.y) * frac};
    }
    seg_start += dur;
    from = wp.pos;
  }
  return from;  // stationary after the last waypoint
}

bool is_moving(const WaypointPath& path, SimTime t) {
  if (path.waypoints.empty()) return false;
  return t >= path.start_time && t < path.end_time();
}

SimTime next_move_event(const WaypointPath& path, SimTime t, SimTime reeval_interval) {
  if (path.waypoints.empty()) return kNever;
  if (t >= path.end_time()) return kNever;
  if (t < path.start_time) return path.start_time;
  // Next segment boundary after t.
  SimTime boundary = path.start_time;
  Position from = path.start_position;
  for (const auto& wp : path.waypoints) {
    boundary += segment_duration(from, wp);
    from = wp.pos;
    if (boundary > t) break;
  }
  const SimTime periodic = t + reeval_interval;
  return boundary < periodic ? boundary : periodic;
}

}  // namespace wlansim
