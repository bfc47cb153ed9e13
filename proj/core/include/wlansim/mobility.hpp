#pragma once

#include <vector>

#include "wlansim/engine.hpp"

namespace wlansim {

struct Position {
  double x = 0;
  double y = 0;

  bool operator==(const Position&) const = default;
};

double distance_m(const Position& a, const Position& b);

struct Waypoint {
  Position pos;
  double speed_mps = 0;  // speed on the segment that ends at this waypoint

  bool operator==(const Waypoint&) const = default;
};

/// Piecewise-linear waypoint trajectory. The node sits at start_position
/// until start_time, traverses each segment at the waypoint's arrival
/// speed, and is stationary after the final waypoint.
struct WaypointPath {
  Position start_position;
  SimTime start_time = 0;
  std::vector<Waypoint> waypoints;

  bool is_mobile() const { return !waypoints.empty(); }
  /// Virtual time at which the final waypoint is reached (start_time for a
  /// stationary path).
  SimTime end_time() const;
};

Position position_at(const WaypointPath& path, SimTime t);

/// True while the node is strictly between start_time and end_time of a
/// non-degenerate path.
bool is_moving(const WaypointPath& path, SimTime t);

/// Earliest future instant at which link rates should be re-evaluated:
/// the next segment boundary or t + reeval_interval, whichever comes
/// first; kNever once the node has stopped.
SimTime next_move_event(const WaypointPath& path, SimTime t, SimTime reeval_interval);

}  // namespace wlansim
