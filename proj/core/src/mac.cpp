#include "wlansim/mac.hpp"

#include <algorithm>

namespace wlansim {

namespace {
std::string backoff_stream_name(NodeId node) {
  return "mac.backoff.node" + std::to_string(node);
}
}  // namespace

DcfMac::DcfMac(Simulator& sim, Medium& medium, NodeId node, FifoQueue& queue, MacConfig cfg,
               DeliverFn deliver, DropFn drop)
    : sim_(sim),
      medium_(medium),
      node_(node),
      queue_(queue),
      cfg_(cfg),
      deliver_(std::move(deliver)),
      drop_(std::move(drop)),
      backoff_rng_(sim.stream(backoff_stream_name(node))),
      cw_(medium.phy().cw_min) {}

void DcfMac::cancel_event(std::optional<EventId>& ev) {
  if (ev) {
    sim_.cancel(*ev);
    ev.reset();
  }
}

bool DcfMac::effectively_busy() const {
  return medium_.carrier_busy(node_) || sim_.now() < nav_until_;
}

void DcfMac::pump() {
  if (current_ || queue_.empty()) return;
  Packet p = queue_.dequeue(sim_.now());
  MacFrame f;
  f.type = MacFrame::Type::Data;
  f.src = node_;
  f.dst = p.next_hop;
  f.body_bytes = p.wire_bytes();
  f.frame_seq = next_frame_seq_++;
  f.enqueued_at = p.enqueued_at;
  f.packet = std::move(p);
  current_ = std::move(f);
  begin_access();
}

void DcfMac::begin_access() {
  backoff_remaining_ = -1;
  try_arm();
}

void DcfMac::try_arm() {
  if (!current_ || transmitting_ || wait_ack_) return;
  if (difs_ev_ || backoff_ev_) return;
  if (medium_.carrier_busy(node_)) return;  // idle edge will re-arm
  if (sim_.now() < nav_until_) {
    if (!nav_wake_ev_ || nav_wake_ev_->at < nav_until_) {
      cancel_event(nav_wake_ev_);
      nav_wake_ev_ = sim_.schedule(nav_until_, "mac.nav_wake", [this] {
        nav_wake_ev_.reset();
        try_arm();
      });
    }
    return;
  }
  difs_ev_ = sim_.schedule_in(medium_.phy().difs_us(), "mac.difs", [this] { on_difs_done(); });
}

void DcfMac::on_difs_done() {
  difs_ev_.reset();
  if (backoff_remaining_ < 0) {
    backoff_remaining_ = static_cast<int>(backoff_rng_.uniform_int(0, cw_));
  }
  if (backoff_remaining_ == 0) {
    transmit_now();
    return;
  }
  if (effectively_busy()) return;  // pause immediately; resumed via idle edge
  backoff_started_ = sim_.now();
  backoff_ev_ = sim_.schedule_in(backoff_remaining_ * medium_.phy().slot_us, "mac.backoff",
                                 [this] {
                                   backoff_ev_.reset();
                                   backoff_remaining_ = 0;
                                   transmit_now();
                                 });
}

void DcfMac::on_medium_busy() {
  // Timers that expire exactly now stay committed to their slot boundary;
  // two stations ending backoff in the same slot must both transmit.
  if (difs_ev_ && difs_ev_->at > sim_.now()) cancel_event(difs_ev_);
  if (backoff_ev_ && backoff_ev_->at > sim_.now()) {
    const int consumed =
        static_cast<int>((sim_.now() - backoff_started_) / medium_.phy().slot_us);
    backoff_remaining_ = std::max(0, backoff_remaining_ - consumed);
    cancel_event(backoff_ev_);
  }
}

void DcfMac::on_medium_idle() { try_arm(); }

void DcfMac::transmit_now() {
  transmitting_ = true;
  ++counters_.frames_sent;
  const std::int64_t rate =
      current_->is_broadcast() ? medium_.phy().basic_rates_bps.front()
                               : medium_.data_rate_for(node_, current_->dst);
  MacFrame copy = *current_;
  const SimTime duration = medium_.begin_transmission(node_, std::move(copy), rate);
  sim_.schedule_in(duration, "mac.tx_end", [this, rate] { on_tx_end(rate); });
}

void DcfMac::on_tx_end(std::int64_t rate_bps) {
  transmitting_ = false;
  if (current_->is_broadcast()) {
    finish_frame();
    return;
  }
  wait_ack_ = true;
  const PhyProfile& phy = medium_.phy();
  const SimTime timeout = phy.sifs_us + ack_duration_us(phy, rate_bps) + phy.slot_us;
  ack_timeout_ev_ = sim_.schedule_in(timeout, "mac.ack_timeout", [this] { on_ack_timeout(); });
}

void DcfMac::on_ack_timeout() {
  ack_timeout_ev_.reset();
  wait_ack_ = false;
  current_->retry_count += 1;
  if (current_->retry_count > cfg_.retry_limit) {
    ++counters_.frames_dropped_retry;
    cw_ = medium_.phy().cw_min;
    if (current_->packet) drop_(std::move(*current_->packet));
    current_.reset();
    pump();
    return;
  }
  ++counters_.retx_ack_timeout;
  if (retx_observer_) retx_observer_(sim_.now());
  cw_ = std::min(2 * (cw_ + 1) - 1, medium_.phy().cw_max);
  begin_access();
}

void DcfMac::finish_frame() {
  cw_ = medium_.phy().cw_min;
  current_.reset();
  pump();
}

void DcfMac::on_frame_received(const MacFrame& frame, std::int64_t rate_bps) {
  const PhyProfile& phy = medium_.phy();

  if (frame.type == MacFrame::Type::Ack) {
    if (wait_ack_ && frame.dst == node_ && current_ && frame.acked_seq == current_->frame_seq) {
      cancel_event(ack_timeout_ev_);
      wait_ack_ = false;
      finish_frame();
    }
    return;
  }

  if (frame.dst == node_) {
    ++counters_.frames_received;
    // ACK at SIFS, without carrier sense. The rare case where our own
    // transmission started in the same microsecond skips the ACK; the
    // sender times out as it would on a collision.
    const std::int64_t ack_rate = ack_rate_bps(phy, rate_bps);
    MacFrame ack;
    ack.type = MacFrame::Type::Ack;
    ack.src = node_;
    ack.dst = frame.src;
    ack.acked_seq = frame.frame_seq;
    sim_.schedule_in(phy.sifs_us, "mac.ack_tx", [this, ack, ack_rate] {
      if (transmitting_) return;
      ++counters_.acks_sent;
      medium_.begin_transmission(node_, ack, ack_rate);
    });
    auto [it, first_time] = last_rx_seq_.emplace(frame.src, 0);
    if (!first_time && it->second == frame.frame_seq) {
      ++counters_.duplicates_rx;
      return;
    }
    it->second = frame.frame_seq;
    if (frame.packet) deliver_(Packet(*frame.packet));
    return;
  }

  if (frame.is_broadcast()) {
    ++counters_.frames_received;
    if (frame.packet) deliver_(Packet(*frame.packet));
    return;
  }

  // Overheard unicast data addressed elsewhere: virtual carrier sense
  // through the end of its ACK.
  nav_until_ = std::max(nav_until_, sim_.now() + phy.sifs_us + ack_duration_us(phy, rate_bps));
}

}  // namespace wlansim
