#include "wlansim/voip.hpp"

#include <stdexcept>

namespace wlansim {

bool SpurtSchedule::in_spurt(SimTime t) const {
  for (auto [s, e] : spurts) {
    if (t >= s && t < e) return true;
  }
  return false;
}

SimTime SpurtSchedule::total_talk_time() const {
  SimTime total = 0;
  for (auto [s, e] : spurts) total += e - s;
  return total;
}

SimTime SpurtSchedule::next_emission(SimTime from) const {
  SimTime best = kNever;
  for (auto [s, e] : spurts) {
    SimTime t;
    if (from <= s) {
      t = s;
    } else {
      const SimTime k = (from - s + kG711FrameInterval - 1) / kG711FrameInterval;
      t = s + k * kG711FrameInterval;
    }
    if (t < e && t < best) best = t;
  }
  return best;
}

void DelayStats::add(SimTime delay_us) {
  ++count;
  sum_us += delay_us;
  if (delay_us > max_us) max_us = delay_us;
}

std::optional<double> DelayStats::mean_ms() const {
  if (count == 0) return std::nullopt;
  return static_cast<double>(sum_us) / static_cast<double>(count) / 1000.0;
}

std::optional<double> DelayStats::max_ms() const {
  if (count == 0) return std::nullopt;
  return static_cast<double>(max_us) / 1000.0;
}

JitterBuffer::Decision JitterBuffer::insert(std::int64_t rtp_seq, SimTime generated_at,
                                            SimTime arrival) {
  ++counters_.received;
  if (seen_.contains(rtp_seq)) {
    ++counters_.duplicates;
    return {Action::Duplicate};
  }
  seen_.insert(rtp_seq);
  if (arrival > generated_at + playout_delay_) {
    ++counters_.dropped_late;
    return {Action::DroppedLate};
  }
  if (!pending_.empty()) {
    const SimTime oldest = pending_.begin()->second;
    if (generated_at - oldest > capacity_) {
      ++counters_.dropped_overflow;
      return {Action::DroppedOverflow};
    }
  }
  pending_[rtp_seq] = generated_at;
  return {Action::Scheduled, generated_at + playout_delay_};
}

void JitterBuffer::mark_played(std::int64_t rtp_seq) {
  if (pending_.erase(rtp_seq) > 0) ++counters_.played;
}

QualityVerdict classify_quality(double loss_fraction) {
  if (!(loss_fraction >= 0.0 && loss_fraction <= 1.0))
    throw std::logic_error("classify_quality: loss fraction outside [0,1]");
  return QualityVerdict{loss_fraction, loss_fraction < 0.05};
}

G711Source::G711Source(Simulator& sim, const SipSystem& sip, std::int32_t call_id,
                       bool from_initiator, SpurtSchedule spurts, EmitFn emit)
    : sim_(sim),
      sip_(sip),
      call_id_(call_id),
      from_initiator_(from_initiator),
      spurts_(std::move(spurts)),
      emit_(std::move(emit)) {}

SimTime G711Source::media_stop() const {
  const SipDialog& d = sip_.dialog(call_id_);
  return from_initiator_ ? d.media_stop_initiator : d.media_stop_receiver;
}

void G711Source::start() {
  const SimTime first = spurts_.next_emission(sim_.now());
  if (first != kNever) schedule_step(first);
}

void G711Source::schedule_step(SimTime at) {
  sim_.schedule(at, "voip.frame", [this] { step(); });
}

void G711Source::step() {
  const SimTime t = sim_.now();
  const SipDialog& d = sip_.dialog(call_id_);
  if (!d.media_active(t) || t >= media_stop()) return;
  if (spurts_.in_spurt(t)) {
    if (rtp_start_at_ < 0) rtp_start_at_ = t;
    Packet p = encapsulate(kG711FrameBytes, /*with_rtp=*/true);
    p.kind = PacketKind::Media;
    p.info = MediaInfo{rtp_seq_++, t};
    emit_(std::move(p));
  }
  const SimTime next = spurts_.next_emission(t + 1);
  if (next != kNever) schedule_step(next);
}

}  // namespace wlansim
