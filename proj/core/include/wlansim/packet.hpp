#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "wlansim/engine.hpp"

namespace wlansim {

using NodeId = int;
inline constexpr NodeId kNoNode = -1;

/// Interned flow identifier; names live in the run context.
using FlowId = std::int32_t;
inline constexpr FlowId kNoFlow = -1;

enum class HeaderKind { Rtp, Udp, Ip };

inline constexpr std::int64_t kRtpHeaderBytes = 12;
inline constexpr std::int64_t kUdpHeaderBytes = 8;
inline constexpr std::int64_t kIpHeaderBytes = 20;
inline constexpr std::int64_t kMtuBytes = 1500;

std::int64_t header_cost_bytes(HeaderKind k);

enum class PacketKind { Media, Signaling, Cbr, FtpData, FtpAck };

struct MediaInfo {
  std::int64_t rtp_seq = 0;
  SimTime generated_at = 0;
};

struct CbrInfo {
  std::int64_t seq = 0;
};

struct FtpDataInfo {
  std::int64_t chunk_id = 0;
  std::int64_t chunk_bytes = 0;
};

struct FtpAckInfo {
  std::int64_t window_base = 0;
  std::uint32_t received_mask = 0;  // bit i = chunk window_base+i received
  bool is_request = false;          // initial transfer request from the client
};

// Signaling payload is declared in sip.hpp; packets carry it via this index.
struct SignalingRef {
  std::int32_t message_index = -1;  // into the run's signaling message table
};

using AppInfo = std::variant<std::monostate, MediaInfo, CbrInfo, FtpDataInfo, FtpAckInfo, SignalingRef>;

/// Layered network packet: application payload plus the paper-exact header
/// costs (RTP 12, UDP 8, IP 20). MAC framing is added by the MAC, not here.
struct Packet {
  FlowId flow = kNoFlow;
  PacketKind kind = PacketKind::Cbr;
  std::int64_t payload_bytes = 0;
  std::vector<HeaderKind> headers;
  NodeId src_node = kNoNode;
  NodeId dst_node = kNoNode;
  NodeId next_hop = kNoNode;  // link-layer destination for the current hop
  std::int64_t sequence_number = 0;  // per-flow, assigned at send
  SimTime created_at = 0;
  SimTime enqueued_at = 0;
  SimTime dequeued_at = 0;
  SimTime delivered_at = 0;
  AppInfo info;

  std::int64_t wire_bytes() const;
};

/// Builds a packet with UDP+IP headers, and RTP when with_rtp. Rejects
/// payloads that would exceed the 1500-byte MTU at the IP layer.
Packet encapsulate(std::int64_t payload_bytes, bool with_rtp);

}  // namespace wlansim
