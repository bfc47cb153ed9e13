#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wlansim/mac.hpp"
#include "wlansim/metrics.hpp"
#include "wlansim/scenario.hpp"
#include "wlansim/sip.hpp"
#include "wlansim/voip.hpp"

namespace wlansim {

enum class DropReason { QueueFull, MacRetry, Routing, WiredLoss };

struct FlowStats {
  std::int64_t sent = 0;
  std::int64_t delivered = 0;
  std::int64_t drop_queue = 0;
  std::int64_t drop_retry = 0;
  std::int64_t drop_route = 0;
  std::int64_t drop_link = 0;
  std::int64_t in_flight_end = 0;   // per-packet ledger residual at the horizon
  std::int64_t resident_end = 0;    // packets physically found in queues/air
  std::int64_t drops_after_delivery = 0;  // sender-side drop of an already-delivered packet

  std::int64_t drops() const { return drop_queue + drop_retry + drop_route + drop_link; }
  bool conserved() const {
    return sent == delivered + drops() + in_flight_end && in_flight_end == resident_end;
  }
};

struct VoipStreamReport {
  std::string name;  // "<flow>.fwd" (caller->callee) or "<flow>.rev"
  std::int32_t call_id = 0;
  bool from_initiator = true;
  std::int64_t generated = 0;
  std::int64_t arrived = 0;  // reached the jitter buffer
  JitterCounters jitter;
  DelayStats delay;
  SimTime rtp_start_at = -1;
  std::int64_t pending_at_end = 0;
  double loss_fraction = 0;  // 1 - played/generated
  bool good = true;
};

struct DialogReport {
  std::string flow;
  std::int32_t call_id = 0;
  NodeId caller = kNoNode;
  NodeId callee = kNoNode;
  DialogTimeline timeline;
  std::string final_state;
  double caller_talk_s = 0;
  double callee_talk_s = 0;
  std::int64_t caller_sent = 0;
  std::int64_t caller_received = 0;
  std::int64_t callee_sent = 0;
  std::int64_t callee_received = 0;
  SimTime configured_bye_at = 0;
};

struct FtpFlowReport {
  std::string flow;
  double server_peak_bps = 0;
  double client_peak_bps = 0;
  std::int64_t bytes_acked = 0;
  bool completed = false;
  double completed_at_s = -1;
  std::int64_t chunk_retransmissions = 0;
};

struct CbrFlowReport {
  std::string flow;
  std::int64_t sent = 0;
  std::int64_t received = 0;
  DelayStats delay;
  double mean_throughput_bps = 0;
};

struct RunReport {
  PhyStandard arm = PhyStandard::B;
  std::uint64_t seed = 0;
  SimTime duration = 0;
  std::uint64_t events_fired = 0;

  MetricsRegistry metrics;
  std::vector<std::pair<std::string, FlowStats>> flows;
  std::vector<DialogReport> timeline;
  std::vector<VoipStreamReport> voip_streams;
  std::vector<FtpFlowReport> ftp;
  std::vector<CbrFlowReport> cbr;
  std::map<NodeId, DcfCounters> mac_counters;
  std::map<NodeId, std::int64_t> mobility_reevals;

  double ftp_server_peak_bps = 0;
  double ftp_client_peak_bps = 0;
  std::optional<double> cbr_mean_delay_ms;
  double cbr_mean_throughput_bps = 0;
  std::int64_t jitter_drops_total = 0;
  std::int64_t mac_retx_total = 0;
  double fifo_avg_wait_ms = 0;
  std::int64_t fifo_drops_total = 0;
  std::int64_t sip_dialog_failures = 0;
  std::int64_t sip_registration_failures = 0;

  bool conservation_ok = true;
  bool jitter_closure_ok = true;
  std::vector<std::string> audit_failures;
};

RunReport run_scenario(const ScenarioConfig& cfg, PhyStandard arm, std::uint64_t seed);

struct OrderingCheck {
  std::string name;
  bool holds = false;
  std::string detail;
};

struct ComparisonReport {
  RunReport a;
  RunReport b;
  std::vector<OrderingCheck> orderings;

  bool all_hold() const {
    for (const auto& o : orderings) {
      if (!o.holds) return false;
    }
    return true;
  }
};

/// The §6 reproduction checks between the two arms.
std::vector<OrderingCheck> expected_orderings(const RunReport& a, const RunReport& b);

/// Two full runs with the same seed and scenario (arm_a, then arm_b) plus
/// the ordering table.
ComparisonReport run_comparison(const ScenarioConfig& cfg, std::uint64_t seed,
                                PhyStandard arm_a = PhyStandard::A,
                                PhyStandard arm_b = PhyStandard::B);

}  // namespace wlansim
