#pragma once

#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "wlansim/engine.hpp"
#include "wlansim/packet.hpp"
#include "wlansim/voip.hpp"

namespace wlansim {

/// Payload bits accumulated into fixed buckets; the source of every
/// throughput-over-time series.
class BucketSeries {
 public:
  explicit BucketSeries(SimTime bucket = kSecond) : bucket_(bucket) {}

  void add(SimTime t, std::int64_t bits) { bits_[t / bucket_] += bits; }

  /// (bucket start seconds, bits per second), zero-filled through horizon.
  std::vector<std::pair<double, double>> rate_series(SimTime horizon) const;
  double peak_bps() const;
  std::int64_t total_bits() const;
  SimTime bucket() const { return bucket_; }

 private:
  SimTime bucket_;
  std::map<std::int64_t, std::int64_t> bits_;
};

struct CbrParams {
  NodeId src = kNoNode;
  NodeId dst = kNoNode;
  std::int64_t payload_bytes = 512;
  SimTime interval = 20 * kMillisecond;
  SimTime start_at = 0;
  SimTime stop_at = 0;
};

/// Constant-bit-rate source and its receive-side accounting. Departures
/// are exactly start_at + k*interval for k while start_at + k*interval
/// < stop_at.
class CbrApp {
 public:
  using SendFn = std::function<void(Packet&&)>;

  CbrApp(Simulator& sim, CbrParams params, SendFn send);

  void on_delivered(const Packet& p);

  std::int64_t sent() const { return sent_; }
  std::int64_t received() const { return received_; }
  const DelayStats& delay() const { return delay_; }
  const BucketSeries& throughput() const { return throughput_; }
  const CbrParams& params() const { return params_; }
  /// Mean delivered payload rate over the active window, bits/s.
  double mean_throughput_bps() const;

 private:
  void emit(std::int64_t k);

  Simulator& sim_;
  CbrParams params_;
  SendFn send_;
  std::int64_t sent_ = 0;
  std::int64_t received_ = 0;
  DelayStats delay_;
  BucketSeries throughput_;
};

struct FtpParams {
  NodeId client = kNoNode;  // requests, receives data, acks
  NodeId server = kNoNode;  // streams chunks
  std::int64_t item_bytes = 25 * 1024 * 1024;
  int window = 4;
  std::int64_t chunk_bytes = 1460;
  SimTime retransmit_timeout = 200 * kMillisecond;
  SimTime gap_ack_delay = 100 * kMillisecond;  // client ack of a torn window
  SimTime start_at = 0;
};

/// Windowed reliable bulk transfer standing in for FTP: the client sends a
/// request, the server streams chunks one window at a time and stops until
/// the window is acknowledged, the client acks a finished window at once
/// (or reports the holes it sees), and per-chunk timers at the server
/// retransmit whatever stays unacknowledged.
class FtpTransfer {
 public:
  using SendFn = std::function<void(Packet&&, NodeId from)>;

  FtpTransfer(Simulator& sim, FtpParams params, SendFn send);

  void on_delivered(const Packet& p, NodeId at_node);

  std::int64_t bytes_acked() const { return bytes_acked_; }
  std::int64_t unique_bytes_received() const { return unique_bytes_received_; }
  std::optional<SimTime> completed_at() const { return completed_at_; }
  std::int64_t chunk_retransmissions() const { return chunk_retransmissions_; }
  const BucketSeries& server_throughput() const { return server_throughput_; }
  const BucketSeries& client_throughput() const { return client_throughput_; }
  const FtpParams& params() const { return params_; }
  std::int64_t total_chunks() const { return total_chunks_; }

 private:
  std::int64_t chunk_payload(std::int64_t chunk_id) const;
  void send_chunk(std::int64_t chunk_id, bool is_retransmit);
  void open_window();
  void server_on_ack(const FtpAckInfo& ack);
  void client_on_chunk(const FtpDataInfo& chunk);
  void client_send_ack();
  void arm_chunk_timer(std::int64_t chunk_id);

  Simulator& sim_;
  FtpParams params_;
  SendFn send_;

  std::int64_t total_chunks_ = 0;
  // Server state.
  std::int64_t window_base_ = 0;
  std::map<std::int64_t, std::optional<EventId>> chunk_timers_;  // outstanding
  std::int64_t bytes_acked_ = 0;
  std::int64_t chunk_retransmissions_ = 0;
  bool server_started_ = false;
  // Client state.
  std::int64_t client_window_base_ = 0;
  std::uint32_t client_mask_ = 0;
  std::optional<EventId> gap_ack_timer_;
  std::int64_t unique_bytes_received_ = 0;
  std::map<std::int64_t, bool> chunks_got_;

  std::optional<SimTime> completed_at_;
  BucketSeries server_throughput_;
  BucketSeries client_throughput_;
};

}  // namespace wlansim
