#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "wlansim/engine.hpp"
#include "wlansim/packet.hpp"
#include "wlansim/sip.hpp"

namespace wlansim {

inline constexpr std::int64_t kG711FrameBytes = 160;   // 64 kb/s over 20 ms
inline constexpr SimTime kG711FrameInterval = 20 * kMillisecond;

/// Talk-spurt list as (start, stop) half-open intervals of virtual time.
struct SpurtSchedule {
  std::vector<std::pair<SimTime, SimTime>> spurts;

  bool in_spurt(SimTime t) const;
  SimTime total_talk_time() const;
  /// First frame-grid instant >= from that falls inside a spurt (frames at
  /// spurt_start + k*20ms), or kNever.
  SimTime next_emission(SimTime from) const;
};

struct DelayStats {
  std::int64_t count = 0;
  std::int64_t sum_us = 0;
  SimTime max_us = 0;

  void add(SimTime delay_us);
  /// Absent (not zero) when nothing was delivered.
  std::optional<double> mean_ms() const;
  std::optional<double> max_ms() const;
};

struct JitterCounters {
  std::int64_t received = 0;
  std::int64_t played = 0;
  std::int64_t dropped_late = 0;
  std::int64_t dropped_overflow = 0;
  std::int64_t duplicates = 0;
};

/// Fixed-playout jitter buffer. A packet generated at g plays at
/// g + playout_delay; arrivals strictly later than that are late drops,
/// and arrivals that would stretch the buffered span beyond the capacity
/// are overflow drops.
class JitterBuffer {
 public:
  enum class Action { Scheduled, DroppedLate, DroppedOverflow, Duplicate };
  struct Decision {
    Action action;
    SimTime play_at = 0;
  };

  JitterBuffer(SimTime playout_delay, SimTime capacity)
      : playout_delay_(playout_delay), capacity_(capacity) {}

  Decision insert(std::int64_t rtp_seq, SimTime generated_at, SimTime arrival);
  void mark_played(std::int64_t rtp_seq);

  const JitterCounters& counters() const { return counters_; }
  std::size_t pending() const { return pending_.size(); }
  SimTime playout_delay() const { return playout_delay_; }

 private:
  SimTime playout_delay_;
  SimTime capacity_;
  JitterCounters counters_;
  std::map<std::int64_t, SimTime> pending_;  // seq -> generated_at
  std::set<std::int64_t> seen_;
};

struct QualityVerdict {
  double loss_fraction = 0;
  bool good = false;
  const char* label() const { return good ? "Good" : "Poor"; }
};

/// Good strictly below 5% loss, Poor at or above it.
QualityVerdict classify_quality(double loss_fraction);

/// One direction of a call's media: emits 160-byte frames every 20 ms on
/// the spurt grid while the dialog is established and the side has not
/// hung up.
class G711Source {
 public:
  using EmitFn = std::function<void(Packet&&)>;

  G711Source(Simulator& sim, const SipSystem& sip, std::int32_t call_id, bool from_initiator,
             SpurtSchedule spurts, EmitFn emit);

  /// Call when the dialog establishes; begins the emission chain.
  void start();

  std::int64_t packets_generated() const { return rtp_seq_; }
  SimTime rtp_start_at() const { return rtp_start_at_; }  // -1 until first frame

 private:
  void step();
  void schedule_step(SimTime at);
  SimTime media_stop() const;

  Simulator& sim_;
  const SipSystem& sip_;
  std::int32_t call_id_;
  bool from_initiator_;
  SpurtSchedule spurts_;
  EmitFn emit_;
  std::int64_t rtp_seq_ = 0;
  SimTime rtp_start_at_ = -1;
};

}  // namespace wlansim
