#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <string>
#include <string_view>

namespace wlansim {

/// Virtual time in integer microseconds since simulation start.
using SimTime = std::int64_t;

inline constexpr SimTime kMillisecond = 1'000;
inline constexpr SimTime kSecond = 1'000'000;
inline constexpr SimTime kNever = std::numeric_limits<SimTime>::max();

inline SimTime from_seconds(double s) {
  return static_cast<SimTime>(s * 1e6 + (s >= 0 ? 0.5 : -0.5));
}
inline double to_seconds(SimTime t) { return static_cast<double>(t) / 1e6; }

/// Named pseudo-random stream. Identical (global_seed, stream_id) pairs
/// produce identical draw sequences on every platform (mt19937_64 plus our
/// own bounded-draw algorithm, no libstdc++ distribution objects).
class RngStream {
 public:
  RngStream(std::uint64_t global_seed, std::string_view stream_id);

  /// Uniform integer in [lo, hi]. lo > hi is a programming error.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

  /// Uniform double in [0, 1).
  double uniform_real();

  const std::string& id() const { return id_; }

 private:
  std::string id_;
  std::mt19937_64 gen_;
};

struct EventId {
  SimTime at = 0;
  std::uint64_t seq = 0;
  auto operator<=>(const EventId&) const = default;
};

struct RunSummary {
  std::uint64_t events_fired = 0;
  SimTime final_clock = 0;
};

/// Single-threaded discrete-event core: virtual clock, cancellable event
/// queue ordered by (fire_at, insertion seq), and the RNG stream registry.
class Simulator {
 public:
  explicit Simulator(std::uint64_t global_seed = 0);

  SimTime now() const { return now_; }
  std::uint64_t global_seed() const { return global_seed_; }

  /// Schedules fn at fire_at. `what` must point at a static string; it is
  /// used to identify the event if its handler throws.
  EventId schedule(SimTime fire_at, const char* what, std::function<void()> fn);
  EventId schedule_in(SimTime delay, const char* what, std::function<void()> fn) {
    return schedule(now_ + delay, what, std::move(fn));
  }

  /// Removes a pending event. Returns false if it already fired or was
  /// cancelled before.
  bool cancel(const EventId& id);

  std::size_t pending() const { return queue_.size(); }

  /// Executes every event with fire_at <= t_end in (fire_at, seq) order and
  /// leaves the clock at t_end.
  RunSummary run_until(SimTime t_end);

  /// Returns the stream named stream_id, creating it (seeded from the
  /// global seed and the name) on first use.
  RngStream& stream(std::string_view stream_id);

 private:
  struct Entry {
    const char* what;
    std::function<void()> fn;
  };

  SimTime now_ = 0;
  std::uint64_t next_seq_ = 0;
  std::uint64_t fired_ = 0;
  std::uint64_t global_seed_;
  std::map<EventId, Entry> queue_;
  std::map<std::string, RngStream, std::less<>> streams_;
};

}  // namespace wlansim
