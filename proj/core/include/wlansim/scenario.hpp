#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "wlansim/engine.hpp"
#include "wlansim/mobility.hpp"
#include "wlansim/packet.hpp"
#include "wlansim/radio.hpp"

namespace wlansim {

struct NodeDecl {
  NodeId id = kNoNode;
  double x = 0;
  double y = 0;
  double antenna_height_m = 1.5;

  bool operator==(const NodeDecl&) const = default;
};

struct SubnetDecl {
  int id = 0;
  bool wired = false;
  int channel = 0;
  std::string listening;   // e.g. "0100", left-to-right = channels 0..3
  std::string listenable;
  std::vector<NodeId> members;
  std::vector<std::pair<NodeId, NodeId>> links;  // wired subnets

  bool operator==(const SubnetDecl&) const = default;
};

struct ChannelDecl {
  int index = 0;
  double frequency_ghz = 0;

  bool operator==(const ChannelDecl&) const = default;
};

struct MobilityDecl {
  NodeId node = kNoNode;
  SimTime start_time = 0;
  std::vector<Waypoint> waypoints;

  bool operator==(const MobilityDecl&) const = default;
};

struct VoipFlowDecl {
  std::string id;
  NodeId caller = kNoNode;
  NodeId callee = kNoNode;
  SimTime invite_at = 0;
  SimTime bye_at = 0;
  std::vector<std::pair<SimTime, SimTime>> caller_spurts;
  std::vector<std::pair<SimTime, SimTime>> callee_spurts;

  bool operator==(const VoipFlowDecl&) const = default;
};

struct FtpFlowDecl {
  std::string id;
  NodeId client = kNoNode;
  NodeId server = kNoNode;
  SimTime start_at = 0;
  std::int64_t item_bytes = 25 * 1024 * 1024;
  int window = 4;
  std::int64_t chunk_bytes = 1460;
  SimTime retransmit_timeout = 200 * kMillisecond;

  bool operator==(const FtpFlowDecl&) const = default;
};

struct CbrFlowDecl {
  std::string id;
  NodeId src = kNoNode;
  NodeId dst = kNoNode;
  std::int64_t payload_bytes = 512;
  SimTime interval = 20 * kMillisecond;
  SimTime start_at = 0;
  SimTime stop_at = 0;

  bool operator==(const CbrFlowDecl&) const = default;
};

struct PhyOverrides {
  std::optional<SimTime> slot_us, sifs_us, preamble_us;
  std::optional<int> cw_min, cw_max;

  bool operator==(const PhyOverrides&) const = default;
};

struct ScenarioConfig {
  SimTime duration = 134 * kSecond;
  std::uint64_t seed = 42;
  PhyStandard phy_standard = PhyStandard::B;
  PhyOverrides phy_a, phy_b;
  RadioConfig radio;
  std::size_t queue_capacity = 50;
  int mac_retry_limit = 7;
  SimTime wired_latency = 10;
  std::int64_t wired_rate_bps = 100'000'000;
  double wired_loss_probability = 0;  // test fixtures only
  // SIP parameters
  NodeId proxy_node = 10;
  std::int64_t sip_request_bytes = 500;
  std::int64_t sip_response_bytes = 300;
  SimTime sip_rtx_interval = 500 * kMillisecond;
  int sip_max_attempts = 7;
  SimTime ring_delay = 2 * kSecond;
  // Jitter buffer
  SimTime playout_delay = 60 * kMillisecond;
  SimTime jitter_capacity = 120 * kMillisecond;
  SimTime mobility_reeval = kSecond;

  std::vector<ChannelDecl> channels;
  std::vector<NodeDecl> nodes;
  std::vector<SubnetDecl> subnets;
  std::vector<MobilityDecl> mobility;
  std::vector<VoipFlowDecl> voip_flows;
  std::vector<FtpFlowDecl> ftp_flows;
  std::vector<CbrFlowDecl> cbr_flows;

  bool operator==(const ScenarioConfig&) const = default;

  const NodeDecl* find_node(NodeId id) const;
  PhyProfile phy_profile(PhyStandard s) const;
  std::vector<std::pair<NodeId, NodeId>> all_links() const;
  std::size_t flow_count() const {
    return voip_flows.size() + ftp_flows.size() + cbr_flows.size();
  }
};

struct ValidationError {
  int line = 0;  // 0 = whole-file problem
  std::string message;
};

struct LoadResult {
  std::optional<ScenarioConfig> config;
  std::vector<ValidationError> errors;  // all problems, not just the first
  bool ok() const { return config.has_value() && errors.empty(); }
};

LoadResult load_scenario_text(const std::string& text);
LoadResult load_scenario_file(const std::string& path);

/// Canonical serialization; load(emit(c)) == c.
std::string emit_scenario(const ScenarioConfig& config);

/// The built-in scenario encoding the comparative study: 9 WLAN nodes plus
/// the SIP agent node 10, three channels, mobile hosts 1/7/8, five VoIP
/// calls, two FTP transfers and one CBR flow over 134 s.
const std::string& paper_scenario_text();
ScenarioConfig paper_scenario();

}  // namespace wlansim
