#pragma once

#include <deque>
#include <functional>
#include <optional>

#include "wlansim/packet.hpp"

namespace wlansim {

struct QueueStats {
  std::int64_t sum_wait_us = 0;
  std::int64_t dequeues = 0;
  std::int64_t drops_full = 0;

  double avg_wait_us() const {
    return dequeues == 0 ? 0.0 : static_cast<double>(sum_wait_us) / static_cast<double>(dequeues);
  }
};

/// Bounded drop-tail FIFO with time-in-queue accounting. On overflow the
/// rejected packet comes back to the caller for drop attribution.
class FifoQueue {
 public:
  using WaitObserver = std::function<void(SimTime now, SimTime wait_us)>;

  explicit FifoQueue(std::size_t capacity_packets) : capacity_(capacity_packets) {}

  /// nullopt = accepted; otherwise the packet is returned and counted as a
  /// full-queue drop.
  std::optional<Packet> enqueue(Packet&& p, SimTime now) {
    if (q_.size() >= capacity_) {
      ++stats_.drops_full;
      return std::move(p);
    }
    p.enqueued_at = now;
    q_.push_back(std::move(p));
    return std::nullopt;
  }

  Packet dequeue(SimTime now) {
    Packet p = std::move(q_.front());
    q_.pop_front();
    p.dequeued_at = now;
    const SimTime wait = now - p.enqueued_at;
    stats_.sum_wait_us += wait;
    ++stats_.dequeues;
    if (wait_observer_) wait_observer_(now, wait);
    return p;
  }

  void set_wait_observer(WaitObserver obs) { wait_observer_ = std::move(obs); }

  bool empty() const { return q_.empty(); }
  std::size_t size() const { return q_.size(); }
  std::size_t capacity() const { return capacity_; }
  const QueueStats& stats() const { return stats_; }
  const std::deque<Packet>& contents() const { return q_; }

 private:
  std::size_t capacity_;
  std::deque<Packet> q_;
  QueueStats stats_;
  WaitObserver wait_observer_;
};

}  // namespace wlansim
