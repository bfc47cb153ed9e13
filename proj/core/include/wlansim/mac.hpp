#pragma once

#include <functional>
#include <map>
#include <optional>

#include "wlansim/fifo.hpp"
#include "wlansim/medium.hpp"

namespace wlansim {

struct MacConfig {
  int retry_limit = 7;  // short retry limit; retry_limit+1 attempts total
};

struct DcfCounters {
  std::int64_t retx_ack_timeout = 0;
  std::int64_t frames_sent = 0;      // data transmission attempts
  std::int64_t frames_received = 0;  // data frames addressed here (incl. duplicates)
  std::int64_t frames_dropped_retry = 0;
  std::int64_t duplicates_rx = 0;
  std::int64_t acks_sent = 0;
};

/// 802.11 DCF for one WLAN interface: carrier sense + NAV, DIFS wait,
/// binary exponential backoff with slot-granular pause/resume, unicast
/// ACKs at SIFS, ACK-timeout retransmission and retry-limit drops.
/// Every transmission (including the first) is preceded by a backoff draw
/// in [0, cw]; two stations whose countdowns end in the same slot both
/// transmit and collide.
class DcfMac : public WlanPhyPort {
 public:
  using DeliverFn = std::function<void(Packet&&)>;
  using DropFn = std::function<void(Packet&&)>;
  using RetxObserver = std::function<void(SimTime)>;

  DcfMac(Simulator& sim, Medium& medium, NodeId node, FifoQueue& queue, MacConfig cfg,
         DeliverFn deliver, DropFn drop);

  /// Starts serving the queue head if idle. Call after every enqueue.
  void pump();

  void on_medium_busy() override;
  void on_medium_idle() override;
  void on_frame_received(const MacFrame& frame, std::int64_t rate_bps) override;

  const DcfCounters& counters() const { return counters_; }
  int contention_window() const { return cw_; }
  SimTime nav_until() const { return nav_until_; }
  const std::optional<MacFrame>& frame_in_service() const { return current_; }
  void set_retx_observer(RetxObserver obs) { retx_observer_ = std::move(obs); }

 private:
  bool effectively_busy() const;
  void begin_access();
  void try_arm();
  void on_difs_done();
  void transmit_now();
  void on_tx_end(std::int64_t rate_bps);
  void on_ack_timeout();
  void finish_frame();
  void cancel_event(std::optional<EventId>& ev);

  Simulator& sim_;
  Medium& medium_;
  NodeId node_;
  FifoQueue& queue_;
  MacConfig cfg_;
  DeliverFn deliver_;
  DropFn drop_;
  RetxObserver retx_observer_;
  RngStream& backoff_rng_;

  DcfCounters counters_;
  std::optional<MacFrame> current_;
  int cw_;
  int backoff_remaining_ = -1;  // -1: fresh draw needed
  SimTime backoff_started_ = 0;
  SimTime nav_until_ = 0;
  bool transmitting_ = false;
  bool wait_ack_ = false;
  std::optional<EventId> difs_ev_;
  std::optional<EventId> backoff_ev_;
  std::optional<EventId> ack_timeout_ev_;
  std::optional<EventId> nav_wake_ev_;
  std::uint64_t next_frame_seq_ = 1;
  std::map<NodeId, std::uint64_t> last_rx_seq_;
};

}  // namespace wlansim
