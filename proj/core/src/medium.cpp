#include "wlansim/medium.hpp"

#include <stdexcept>

namespace wlansim {

Medium::Medium(Simulator& sim, RadioConfig radio, PhyProfile phy, std::vector<Channel> channels)
    : sim_(sim), radio_(radio), phy_(std::move(phy)), channels_(std::move(channels)) {
  cs_floor_dbm_ = phy_.rx_sensitivity_dbm.at(phy_.rates_bps.front());
}

void Medium::attach(NodeId node, int channel_index, unsigned listening_mask, PositionFn position,
                    WlanPhyPort* port) {
  channel_at(channel_index);
  attached_[node] = Attachment{channel_index, listening_mask, std::move(position), port};
}

const Channel& Medium::channel_at(int index) const {
  for (const auto& c : channels_) {
    if (c.index == index) return c;
  }
  throw std::logic_error("Medium: unknown channel index");
}

bool Medium::carrier_busy(NodeId node) const {
  const auto& a = attached_.at(node);
  return a.transmitting || a.heard > 0;
}

void Medium::refresh_busy(NodeId node) {
  auto& a = attached_.at(node);
  const bool busy = a.transmitting || a.heard > 0;
  if (busy == a.busy_reported) return;
  a.busy_reported = busy;
  if (a.port == nullptr) return;
  if (busy) {
    a.port->on_medium_busy();
  } else {
    a.port->on_medium_idle();
  }
}

double Medium::loss_db_between(NodeId a, NodeId b) const {
  const auto& ta = attached_.at(a);
  const auto& tb = attached_.at(b);
  const Channel& ch = channel_at(ta.channel);
  double d = distance_m(ta.position(), tb.position());
  if (d < 1.0) d = 1.0;  // co-located nodes: clamp to 1 m reference
  return path_loss_db(d, ch.frequency_hz, radio_.antenna_height_m, radio_.antenna_height_m);
}

std::int64_t Medium::data_rate_for(NodeId from, NodeId to) const {
  const std::int64_t best = best_rate_bps(radio_, loss_db_between(from, to), phy_);
  return best > 0 ? best : phy_.rates_bps.front();
}

SimTime Medium::begin_transmission(NodeId node, MacFrame frame, std::int64_t rate_bps) {
  auto& tx = attached_.at(node);
  const SimTime duration = transmit_duration_us(frame.on_air_bytes(), rate_bps, phy_);

  const std::uint64_t id = next_flight_id_++;
  Flight flight;
  flight.id = id;
  flight.tx_node = node;
  flight.channel = tx.channel;
  flight.rate_bps = rate_bps;
  flight.end = sim_.now() + duration;

  // Half duplex: starting to transmit corrupts anything we were receiving.
  for (auto& [fid, f] : flights_) {
    auto it = f.heard_by.find(node);
    if (it != f.heard_by.end()) it->second = true;
  }

  const Position tx_pos = tx.position();
  for (auto& [rx_id, rx] : attached_) {
    if (rx_id == node) continue;
    if ((rx.listening_mask & (1u << tx.channel)) == 0) continue;
    double d = distance_m(tx_pos, rx.position());
    if (d < 1.0) d = 1.0;
    const double loss = path_loss_db(d, channel_at(tx.channel).frequency_hz,
                                     radio_.antenna_height_m, radio_.antenna_height_m);
    const double rx_dbm = radio_.tx_power_dbm + 2.0 * radio_.antenna_gain_db - loss;
    if (rx_dbm < cs_floor_dbm_) continue;  // below carrier-sense floor: inaudible

    bool corrupted = rx.transmitting;
    for (auto& [fid, f] : flights_) {
      auto it = f.heard_by.find(rx_id);
      if (it != f.heard_by.end()) {
        it->second = true;  // overlap corrupts the frame already in the air
        corrupted = true;
      }
    }
    // Decodability at the chosen rate; power below the rate threshold but
    // above the carrier-sense floor still occupies the medium.
    if (rx_dbm < phy_.rx_sensitivity_dbm.at(rate_bps)) corrupted = true;

    flight.heard_by.emplace(rx_id, corrupted);
    ++rx.heard;
    refresh_busy(rx_id);
  }

  flight.frame = std::move(frame);
  flights_.emplace(id, std::move(flight));

  tx.transmitting = true;
  refresh_busy(node);

  sim_.schedule(sim_.now() + duration, "medium.tx_end", [this, id] { end_transmission(id); });
  return duration;
}

void Medium::end_transmission(std::uint64_t flight_id) {
  auto node = flights_.extract(flight_id);
  Flight& f = node.mapped();

  auto& tx = attached_.at(f.tx_node);
  tx.transmitting = false;
  refresh_busy(f.tx_node);

  // Deliver before the idle edge so a receiver's NAV is in place when its
  // MAC re-evaluates the medium.
  for (auto& [rx_id, corrupted] : f.heard_by) {
    auto& rx = attached_.at(rx_id);
    if (!corrupted && rx.port != nullptr) {
      rx.port->on_frame_received(f.frame, f.rate_bps);
    }
    --rx.heard;
    refresh_busy(rx_id);
  }
}

std::vector<const Packet*> Medium::packets_in_flight() const {
  std::vector<const Packet*> out;
  for (const auto& [id, f] : flights_) {
    if (f.frame.packet.has_value()) out.push_back(&*f.frame.packet);
  }
  return out;
}

}  // namespace wlansim
