#include "wlansim/apps.hpp"

#include <algorithm>
#include <stdexcept>

namespace wlansim {

std::vector<std::pair<double, double>> BucketSeries::rate_series(SimTime horizon) const {
  std::vector<std::pair<double, double>> out;
  const std::int64_t n_buckets = (horizon + bucket_ - 1) / bucket_;
  const double bucket_s = to_seconds(bucket_);
  for (std::int64_t b = 0; b < n_buckets; ++b) {
    auto it = bits_.find(b);
    const double bits = it == bits_.end() ? 0.0 : static_cast<double>(it->second);
    out.emplace_back(static_cast<double>(b) * bucket_s, bits / bucket_s);
  }
  return out;
}

double BucketSeries::peak_bps() const {
  std::int64_t peak = 0;
  for (const auto& [b, bits] : bits_) peak = std::max(peak, bits);
  return static_cast<double>(peak) / to_seconds(bucket_);
}

std::int64_t BucketSeries::total_bits() const {
  std::int64_t total = 0;
  for (const auto& [b, bits] : bits_) total += bits;
  return total;
}

CbrApp::CbrApp(Simulator& sim, CbrParams params, SendFn send)
    : sim_(sim), params_(params), send_(std::move(send)) {
  if (params_.start_at >= params_.stop_at) throw std::logic_error("CbrApp: start_at >= stop_at");
  sim_.schedule(params_.start_at, "cbr.emit", [this] { emit(0); });
}

void CbrApp::emit(std::int64_t k) {
  Packet p = encapsulate(params_.payload_bytes, /*with_rtp=*/false);
  p.kind = PacketKind::Cbr;
  p.info = CbrInfo{k};
  send_(std::move(p));
  ++sent_;
  const SimTime next = params_.start_at + (k + 1) * params_.interval;
  if (next < params_.stop_at) {
    sim_.schedule(next, "cbr.emit", [this, k] { emit(k + 1); });
  }
}

void CbrApp::on_delivered(const Packet& p) {
  ++received_;
  delay_.add(p.delivered_at - p.created_at);
  throughput_.add(p.delivered_at, p.payload_bytes * 8);
}

double CbrApp::mean_throughput_bps() const {
  return static_cast<double>(throughput_.total_bits()) /
         to_seconds(params_.stop_at - params_.start_at);
}

FtpTransfer::FtpTransfer(Simulator& sim, FtpParams params, SendFn send)
    : sim_(sim), params_(params), send_(std::move(send)) {
  if (params_.item_bytes <= 0) throw std::logic_error("FtpTransfer: item_bytes <= 0");
  if (params_.window < 1 || params_.window > 32)
    throw std::logic_error("FtpTransfer: window outside [1,32]");
  total_chunks_ = (params_.item_bytes + params_.chunk_bytes - 1) / params_.chunk_bytes;
  sim_.schedule(params_.start_at, "ftp.request", [this] {
    Packet p = encapsulate(40, /*with_rtp=*/false);
    p.kind = PacketKind::FtpAck;
    p.info = FtpAckInfo{0, 0, /*is_request=*/true};
    send_(std::move(p), params_.client);
  });
}

std::int64_t FtpTransfer::chunk_payload(std::int64_t chunk_id) const {
  if (chunk_id == total_chunks_ - 1) {
    const std::int64_t rem = params_.item_bytes - (total_chunks_ - 1) * params_.chunk_bytes;
    return rem;
  }
  return params_.chunk_bytes;
}

void FtpTransfer::send_chunk(std::int64_t chunk_id, bool is_retransmit) {
  if (is_retransmit) ++chunk_retransmissions_;
  const std::int64_t payload = chunk_payload(chunk_id);
  Packet p = encapsulate(payload, /*with_rtp=*/false);
  p.kind = PacketKind::FtpData;
  p.info = FtpDataInfo{chunk_id, payload};
  server_throughput_.add(sim_.now(), payload * 8);
  send_(std::move(p), params_.server);
}

void FtpTransfer::arm_chunk_timer(std::int64_t chunk_id) {
  chunk_timers_[chunk_id] = sim_.schedule_in(params_.retransmit_timeout, "ftp.rto",
                                             [this, chunk_id] {
                                               send_chunk(chunk_id, /*is_retransmit=*/true);
                                               arm_chunk_timer(chunk_id);
                                             });
}

void FtpTransfer::open_window() {
  const std::int64_t end = std::min(window_base_ + params_.window, total_chunks_);
  for (std::int64_t id = window_base_; id < end; ++id) {
    send_chunk(id, /*is_retransmit=*/false);
    arm_chunk_timer(id);
  }
}

void FtpTransfer::server_on_ack(const FtpAckInfo& ack) {
  if (ack.is_request) {
    if (!server_started_) {
      server_started_ = true;
      open_window();
    }
    return;
  }
  if (ack.window_base != window_base_) return;  // stale window
  const std::int64_t end = std::min(window_base_ + params_.window, total_chunks_);
  for (std::int64_t id = window_base_; id < end; ++id) {
    if ((ack.received_mask & (1u << (id - window_base_))) == 0) continue;
    auto it = chunk_timers_.find(id);
    if (it == chunk_timers_.end()) continue;  // already credited
    if (it->second) sim_.cancel(*it->second);
    chunk_timers_.erase(it);
    bytes_acked_ += chunk_payload(id);
  }
  if (!chunk_timers_.empty()) return;
  window_base_ = end;
  if (window_base_ >= total_chunks_) {
    if (!completed_at_) completed_at_ = sim_.now();
    return;
  }
  open_window();
}

void FtpTransfer::client_send_ack() {
  if (gap_ack_timer_) {
    sim_.cancel(*gap_ack_timer_);
    gap_ack_timer_.reset();
  }
  Packet p = encapsulate(40, /*with_rtp=*/false);
  p.kind = PacketKind::FtpAck;
  p.info = FtpAckInfo{client_window_base_, client_mask_, false};
  send_(std::move(p), params_.client);
}

void FtpTransfer::client_on_chunk(const FtpDataInfo& chunk) {
  if (chunks_got_.emplace(chunk.chunk_id, true).second) {
    unique_bytes_received_ += chunk.chunk_bytes;
    client_throughput_.add(sim_.now(), chunk.chunk_bytes * 8);
  }

  if (chunk.chunk_id < client_window_base_) {
    // The ack for that window was lost; repeat it in full.
    const std::int64_t stale_base = (chunk.chunk_id / params_.window) * params_.window;
    const std::int64_t width = std::min<std::int64_t>(params_.window, total_chunks_ - stale_base);
    Packet p = encapsulate(40, /*with_rtp=*/false);
    p.kind = PacketKind::FtpAck;
    p.info = FtpAckInfo{stale_base, static_cast<std::uint32_t>((1u << width) - 1), false};
    send_(std::move(p), params_.client);
    return;
  }

  const std::int64_t base = client_window_base_;
  const std::int64_t end = std::min(base + params_.window, total_chunks_);
  if (chunk.chunk_id >= end) return;  // cannot happen with a well-behaved server

  client_mask_ |= 1u << (chunk.chunk_id - base);
  const std::uint32_t full = (1u << (end - base)) - 1;
  if (client_mask_ == full) {
    client_send_ack();
    client_window_base_ = end;
    client_mask_ = 0;
    return;
  }
  if (chunk.chunk_id == end - 1) {
    client_send_ack();  // window tail seen with holes: report them now
    return;
  }
  if (gap_ack_timer_) sim_.cancel(*gap_ack_timer_);
  gap_ack_timer_ = sim_.schedule_in(params_.gap_ack_delay, "ftp.gap_ack", [this] {
    gap_ack_timer_.reset();
    client_send_ack();
  });
}

void FtpTransfer::on_delivered(const Packet& p, NodeId at_node) {
  if (p.kind == PacketKind::FtpData && at_node == params_.client) {
    client_on_chunk(std::get<FtpDataInfo>(p.info));
  } else if (p.kind == PacketKind::FtpAck && at_node == params_.server) {
    server_on_ack(std::get<FtpAckInfo>(p.info));
  }
}

}  // namespace wlansim
