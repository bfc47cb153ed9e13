#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "wlansim/engine.hpp"
#include "wlansim/mobility.hpp"
#include "wlansim/packet.hpp"
#include "wlansim/radio.hpp"

namespace wlansim {

inline constexpr std::int64_t kMacOverheadBytes = 28;  // 24 header + 4 FCS
inline constexpr NodeId kBroadcastNode = 0;

struct Channel {
  int index = 0;
  double frequency_hz = 0;
};

/// One MAC frame: either a data frame wrapping a network packet or an ACK.
struct MacFrame {
  enum class Type { Data, Ack };
  Type type = Type::Data;
  NodeId src = kNoNode;
  NodeId dst = kNoNode;  // kBroadcastNode = no ACK expected
  std::int64_t body_bytes = 0;
  int retry_count = 0;
  std::uint64_t frame_seq = 0;
  SimTime enqueued_at = 0;
  std::optional<Packet> packet;   // Data frames
  std::uint64_t acked_seq = 0;    // Ack frames

  std::int64_t on_air_bytes() const {
    return type == Type::Ack ? kMacAckBytes : body_bytes + kMacOverheadBytes;
  }
  bool is_broadcast() const { return dst == kBroadcastNode; }
};

/// Receiver-side PHY callbacks a MAC registers with the medium. Busy/idle
/// edges track physical carrier sense only; NAV lives in the MAC.
class WlanPhyPort {
 public:
  virtual ~WlanPhyPort() = default;
  virtual void on_medium_busy() = 0;
  virtual void on_medium_idle() = 0;
  virtual void on_frame_received(const MacFrame& frame, std::int64_t rate_bps) = 0;
};

/// Shared radio medium: per-channel broadcast with the threshold reception
/// model and overlap-corrupts-both collision rule. A node hears a frame iff
/// its listening mask covers the channel and the received power clears the
/// carrier-sense floor; it decodes iff the power also meets the rate's
/// sensitivity and no other frame overlapped at this receiver.
class Medium {
 public:
  using PositionFn = std::function<Position()>;

  Medium(Simulator& sim, RadioConfig radio, PhyProfile phy, std::vector<Channel> channels);

  void attach(NodeId node, int channel_index, unsigned listening_mask, PositionFn position,
              WlanPhyPort* port);

  /// Physical carrier state (own transmission or any heard frame).
  bool carrier_busy(NodeId node) const;

  /// Puts a frame on the node's channel. Returns its airtime.
  SimTime begin_transmission(NodeId node, MacFrame frame, std::int64_t rate_bps);

  double loss_db_between(NodeId a, NodeId b) const;
  /// Highest decodable rate toward dst at current positions; the lowest
  /// profile rate when even that is undecodable (the sender cannot know).
  std::int64_t data_rate_for(NodeId from, NodeId to) const;

  const PhyProfile& phy() const { return phy_; }
  const RadioConfig& radio() const { return radio_; }

  /// Packets currently on the air (for the conservation audit).
  std::vector<const Packet*> packets_in_flight() const;

 private:
  struct Attachment {
    int channel = 0;
    unsigned listening_mask = 0;
    PositionFn position;
    WlanPhyPort* port = nullptr;
    int heard = 0;
    bool transmitting = false;
    bool busy_reported = false;
  };

  struct Flight {
    std::uint64_t id = 0;
    NodeId tx_node = kNoNode;
    int channel = 0;
    MacFrame frame;
    std::int64_t rate_bps = 0;
    SimTime end = 0;
    std::map<NodeId, bool> heard_by;  // node -> corrupted
  };

  void refresh_busy(NodeId node);
  void end_transmission(std::uint64_t flight_id);
  const Channel& channel_at(int index) const;

  Simulator& sim_;
  RadioConfig radio_;
  PhyProfile phy_;
  std::vector<Channel> channels_;
  std::map<NodeId, Attachment> attached_;
  std::map<std::uint64_t, Flight> flights_;
  std::uint64_t next_flight_id_ = 0;
  double cs_floor_dbm_;
};

}  // namespace wlansim
