#include "wlansim/engine.hpp"

#include <sstream>
#include <stdexcept>

namespace wlansim {
namespace {

std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

}  // namespace

RngStream::RngStream(std::uint64_t global_seed, std::string_view stream_id)
    : id_(stream_id), gen_(splitmix64(fnv1a64(stream_id) ^ splitmix64(global_seed))) {}

std::int64_t RngStream::uniform_int(std::int64_t lo, std::int64_t hi) {
  if (lo > hi) throw std::logic_error("RngStream::uniform_int: lo > hi on stream " + id_);
  const std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(gen_());  // full 64-bit range
  const std::uint64_t reject_below = (0 - span) % span;     // 2^64 mod span
  std::uint64_t x;
  do {
    x = gen_();
  } while (x < reject_below);
  return lo + static_cast<std::int64_t>(x % span);
}

double RngStream::uniform_real() {
  return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
}

Simulator::Simulator(std::uint64_t global_seed) : global_seed_(global_seed) {}

EventId Simulator::schedule(SimTime fire_at, const char* what, std::function<void()> fn) {
  if (fire_at < now_) {
    std::ostringstream oss;
    oss << "schedule in the past: " << (what ? what : "?") << " at " << fire_at
        << "us, clock is " << now_ << "us";
    throw std::logic_error(oss.str());
  }
  EventId id{fire_at, next_seq_++};
  queue_.emplace(id, Entry{what, std::move(fn)});
  return id;
}

bool Simulator::cancel(const EventId& id) { return queue_.erase(id) > 0; }

RunSummary Simulator::run_until(SimTime t_end) {
  if (t_end < now_) throw std::logic_error("run_until: t_end before current clock");
  while (!queue_.empty()) {
    auto it = queue_.begin();
    if (it->first.at > t_end) break;
    now_ = it->first.at;
    auto node = queue_.extract(it);
    ++fired_;
    try {
      node.mapped().fn();
    } catch (const std::exception& e) {
      std::ostringstream oss;
      oss << "event fault at t=" << now_ << "us in '"
          << (node.mapped().what ? node.mapped().what : "?") << "': " << e.what();
      throw std::runtime_error(oss.str());
    }
  }
  now_ = t_end;
  return RunSummary{fired_, now_};
}

RngStream& Simulator::stream(std::string_view stream_id) {
  auto it = streams_.find(stream_id);
  if (it == streams_.end()) {
    it = streams_.emplace(std::string(stream_id), RngStream(global_seed_, stream_id)).first;
  }
  return it->second;
}

}  // namespace wlansim
