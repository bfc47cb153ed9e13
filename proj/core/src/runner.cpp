#include "wlansim/runner.hpp"

#include <algorithm>
#include <memory>
#include <set>
#include <sstream>
#include <stdexcept>

#include "wlansim/apps.hpp"
#include "wlansim/medium.hpp"
#include "wlansim/routing.hpp"

namespace wlansim {
namespace {

enum PacketState : std::uint8_t {
  kInFlight = 0,
  kDelivered = 1,
  kDropQueue = 2,
  kDropRetry = 3,
  kDropRoute = 4,
  kDropLink = 5,
};

class RunContext;

/// Ideal point-to-point link: per-direction FIFO, serialization at the
/// configured rate, fixed propagation latency, optional loss (fixtures).
class WiredLink {
 public:
  WiredLink(RunContext& ctx, NodeId a, NodeId b);

  void send(NodeId from, Packet&& p);
  NodeId a() const { return a_; }
  NodeId b() const { return b_; }
  bool connects(NodeId x, NodeId y) const {
    return (a_ == x && b_ == y) || (a_ == y && b_ == x);
  }

  struct Dir {
    FifoQueue queue{50};
    std::optional<Packet> in_service;
    std::deque<Packet> in_flight;
  };
  Dir dirs[2];  // 0: a->b, 1: b->a

 private:
  void start_service(int d);
  void finish_service(int d);
  void deliver_front(int d);

  RunContext& ctx_;
  NodeId a_, b_;
};

struct WlanIf {
  explicit WlanIf(std::size_t cap) : queue(cap) {}
  FifoQueue queue;
  std::unique_ptr<DcfMac> mac;
};

struct VoipStreamRt {
  FlowId flow = kNoFlow;
  std::string name;
  std::int32_t call_id = 0;
  bool from_initiator = true;
  NodeId from = kNoNode;
  NodeId to = kNoNode;
  std::unique_ptr<G711Source> source;
  std::unique_ptr<JitterBuffer> jb;
  DelayStats delay;
  std::int64_t arrived = 0;
  std::vector<SimTime> drop_times;
};

struct CbrRt {
  CbrFlowDecl decl;
  FlowId flow = kNoFlow;
  std::unique_ptr<CbrApp> app;
};

struct FtpRt {
  FtpFlowDecl decl;
  FlowId data_flow = kNoFlow;
  FlowId ack_flow = kNoFlow;
  std::unique_ptr<FtpTransfer> transfer;
};

class RunContext {
 public:
  RunContext(const ScenarioConfig& cfg, PhyStandard arm, std::uint64_t seed);
  RunReport run();

  // WiredLink plumbing.
  Simulator& sim() { return sim_; }
  const ScenarioConfig& cfg() const { return cfg_; }
  void wired_deliver(NodeId at, Packet&& p);
  void drop_packet(const Packet& p, DropReason r);

 private:
  friend class WiredLink;

  FlowId new_flow(const std::string& name);
  void send_from(NodeId src, Packet&& p, FlowId flow);
  void route_and_send(NodeId at, Packet&& p);
  void deliver_up(NodeId at, Packet&& p);
  void on_media(VoipStreamRt& s, const Packet& p);
  WiredLink* wired_between(NodeId a, NodeId b);
  void build();
  void assemble(RunReport& report);
  void audit(RunReport& report);

  const ScenarioConfig& cfg_;
  PhyStandard arm_;
  Simulator sim_;
  PhyProfile phy_;
  RadioConfig radio_;
  std::unique_ptr<Medium> medium_;
  RoutingTable routing_;
  std::map<NodeId, WaypointPath> paths_;

  std::map<NodeId, std::unique_ptr<WlanIf>> wlan_;
  std::vector<std::unique_ptr<WiredLink>> wired_;

  std::vector<std::string> flow_names_;
  std::vector<FlowStats> flow_stats_;
  std::vector<std::vector<std::uint8_t>> packet_states_;

  std::vector<SipMessage> sip_messages_;
  std::unique_ptr<SipSystem> sip_;
  FlowId sip_flow_ = kNoFlow;

  std::vector<std::unique_ptr<VoipStreamRt>> voip_streams_;
  std::map<FlowId, VoipStreamRt*> voip_by_flow_;
  std::map<std::int32_t, std::pair<VoipStreamRt*, VoipStreamRt*>> voip_by_call_;
  std::map<std::int32_t, const VoipFlowDecl*> voip_decl_by_call_;

  std::vector<CbrRt> cbrs_;
  std::map<FlowId, CbrRt*> cbr_by_flow_;
  std::vector<FtpRt> ftps_;
  std::map<FlowId, FtpRt*> ftp_by_flow_;

  std::vector<SimTime> retx_times_;
  std::vector<std::pair<SimTime, double>> fifo_wait_samples_;  // (t, wait ms)
  std::vector<std::pair<SimTime, double>> cbr_delay_samples_;  // (t, delay ms)
  std::map<NodeId, std::int64_t> mobility_reevals_;
  std::vector<std::string> audit_failures_;
};

// ---- WiredLink ------------------------------------------------------------

WiredLink::WiredLink(RunContext& ctx, NodeId a, NodeId b) : ctx_(ctx), a_(a), b_(b) {
  dirs[0].queue = FifoQueue(ctx.cfg().queue_capacity);
  dirs[1].queue = FifoQueue(ctx.cfg().queue_capacity);
}

void WiredLink::send(NodeId from, Packet&& p) {
  const int d = from == a_ ? 0 : 1;
  auto rejected = dirs[d].queue.enqueue(std::move(p), ctx_.sim().now());
  if (rejected) {
    ctx_.drop_packet(*rejected, DropReason::QueueFull);
    return;
  }
  if (!dirs[d].in_service) start_service(d);
}

void WiredLink::start_service(int d) {
  if (dirs[d].queue.empty()) return;
  dirs[d].in_service = dirs[d].queue.dequeue(ctx_.sim().now());
  const std::int64_t bits = dirs[d].in_service->wire_bytes() * 8;
  const SimTime tx =
      (bits * 1'000'000 + ctx_.cfg().wired_rate_bps - 1) / ctx_.cfg().wired_rate_bps;
  ctx_.sim().schedule_in(tx, "wired.tx_done", [this, d] { finish_service(d); });
}

void WiredLink::finish_service(int d) {
  dirs[d].in_flight.push_back(std::move(*dirs[d].in_service));
  dirs[d].in_service.reset();
  ctx_.sim().schedule_in(ctx_.cfg().wired_latency, "wired.deliver",
                         [this, d] { deliver_front(d); });
  start_service(d);
}

void WiredLink::deliver_front(int d) {
  Packet p = std::move(dirs[d].in_flight.front());
  dirs[d].in_flight.pop_front();
  const NodeId to = d == 0 ? b_ : a_;
  if (ctx_.cfg().wired_loss_probability > 0) {
    auto& rng = ctx_.sim().stream("wired.loss." + std::to_string(a_) + "-" + std::to_string(b_));
    if (rng.uniform_real() < ctx_.cfg().wired_loss_probability) {
      ctx_.drop_packet(p, DropReason::WiredLoss);
      return;
    }
  }
  ctx_.wired_deliver(to, std::move(p));
}

// ---- RunContext -----------------------------------------------------------

RunContext::RunContext(const ScenarioConfig& cfg, PhyStandard arm, std::uint64_t seed)
    : cfg_(cfg), arm_(arm), sim_(seed), phy_(cfg.phy_profile(arm)), radio_(cfg.radio) {
  build();
}

FlowId RunContext::new_flow(const std::string& name) {
  const FlowId id = static_cast<FlowId>(flow_names_.size());
  flow_names_.push_back(name);
  flow_stats_.emplace_back();
  packet_states_.emplace_back();
  return id;
}

WiredLink* RunContext::wired_between(NodeId a, NodeId b) {
  for (auto& w : wired_) {
    if (w->connects(a, b)) return w.get();
  }
  return nullptr;
}

void RunContext::build() {
  // Channels and medium.
  std::vector<Channel> channels;
  for (const auto& c : cfg_.channels)
    channels.push_back(Channel{c.index, c.frequency_ghz * 1e9});
  medium_ = std::make_unique<Medium>(sim_, radio_, phy_, channels);

  // Trajectories: stationary at the declared position unless mobile.
  for (const auto& n : cfg_.nodes) {
    paths_[n.id] = WaypointPath{Position{n.x, n.y}, 0, {}};
  }
  for (const auto& m : cfg_.mobility) {
    paths_[m.node].start_time = m.start_time;
    paths_[m.node].waypoints = m.waypoints;
  }

  routing_ = RoutingTable::compute(
      [&] {
        std::vector<NodeId> ids;
        for (const auto& n : cfg_.nodes) ids.push_back(n.id);
        return ids;
      }(),
      cfg_.all_links());

  // Interfaces.
  for (const auto& s : cfg_.subnets) {
    if (s.wired) {
      for (auto [a, b] : s.links) wired_.push_back(std::make_unique<WiredLink>(*this, a, b));
      continue;
    }
    unsigned mask = 0;
    for (int c = 0; c < static_cast<int>(s.listening.size()); ++c) {
      if (s.listening[c] == '1') mask |= 1u << c;
    }
    for (NodeId node : s.members) {
      if (wlan_.contains(node))
        throw std::logic_error("node in more than one WLAN subnet unsupported");
      auto wif = std::make_unique<WlanIf>(cfg_.queue_capacity);
      wif->mac = std::make_unique<DcfMac>(
          sim_, *medium_, node, wif->queue, MacConfig{cfg_.mac_retry_limit},
          [this, node](Packet&& p) { route_and_send(node, std::move(p)); },
          [this](Packet&& p) { drop_packet(p, DropReason::MacRetry); });
      wif->mac->set_retx_observer([this](SimTime t) { retx_times_.push_back(t); });
      medium_->attach(
          node, s.channel, mask,
          [this, node] { return position_at(paths_.at(node), sim_.now()); }, wif->mac.get());
      wlan_[node] = std::move(wif);
    }
  }
  for (auto& [node, wif] : wlan_) {
    wif->queue.set_wait_observer([this](SimTime now, SimTime wait) {
      fifo_wait_samples_.emplace_back(now, static_cast<double>(wait) / 1000.0);
    });
  }
  for (auto& w : wired_) {
    for (auto& d : w->dirs) {
      d.queue.set_wait_observer([this](SimTime now, SimTime wait) {
        fifo_wait_samples_.emplace_back(now, static_cast<double>(wait) / 1000.0);
      });
    }
  }

  // Mobility re-evaluation chains (rates are computed per transmission from
  // exact positions; these events exist to track and count re-evaluations).
  for (const auto& m : cfg_.mobility) {
    mobility_reevals_[m.node] = 0;
    const WaypointPath& path = paths_.at(m.node);
    const SimTime first = next_move_event(path, 0, cfg_.mobility_reeval);
    if (first == kNever) continue;
    struct Chain {
      RunContext* ctx;
      NodeId node;
      const WaypointPath* path;
      void operator()() const {
        ++ctx->mobility_reevals_[node];
        const SimTime next = next_move_event(*path, ctx->sim_.now(), ctx->cfg_.mobility_reeval);
        if (next != kNever) ctx->sim_.schedule(next, "mobility.reeval", Chain{*this});
      }
    };
    sim_.schedule(first, "mobility.reeval", Chain{this, m.node, &path});
  }

  // SIP system and flows.
  sip_flow_ = new_flow("sip");
  sip_ = std::make_unique<SipSystem>(
      sim_,
      SipSystem::Config{cfg_.proxy_node, cfg_.sip_request_bytes, cfg_.sip_response_bytes,
                        cfg_.sip_rtx_interval, cfg_.sip_max_attempts, cfg_.ring_delay, false},
      [this](NodeId from, NodeId to, const SipMessage& msg) {
        const std::int32_t idx = static_cast<std::int32_t>(sip_messages_.size());
        sip_messages_.push_back(msg);
        Packet p = encapsulate(msg.body_bytes, /*with_rtp=*/false);
        p.kind = PacketKind::Signaling;
        p.info = SignalingRef{idx};
        p.dst_node = to;
        p.src_node = from;
        send_from(from, std::move(p), sip_flow_);
      });
  sip_->set_established_hook([this](std::int32_t call_id) {
    auto it = voip_by_call_.find(call_id);
    if (it == voip_by_call_.end()) return;
    it->second.first->source->start();
    it->second.second->source->start();
  });

  // Register every VoIP endpoint well before the first INVITE.
  std::set<NodeId> endpoints;
  for (const auto& f : cfg_.voip_flows) {
    endpoints.insert(f.caller);
    endpoints.insert(f.callee);
  }
  for (NodeId n : endpoints) sip_->schedule_register(n, kSecond + n * 50 * kMillisecond);

  for (const auto& f : cfg_.voip_flows) {
    const std::int32_t call = sip_->create_dialog(f.caller, f.callee);
    voip_decl_by_call_[call] = &f;
    auto make_stream = [&](bool fwd) {
      auto s = std::make_unique<VoipStreamRt>();
      s->flow = new_flow(f.id + (fwd ? ".fwd" : ".rev"));
      s->name = flow_names_[s->flow];
      s->call_id = call;
      s->from_initiator = fwd;
      s->from = fwd ? f.caller : f.callee;
      s->to = fwd ? f.callee : f.caller;
      s->jb = std::make_unique<JitterBuffer>(cfg_.playout_delay, cfg_.jitter_capacity);
      SpurtSchedule spurts;
      for (auto [a, b] : fwd ? f.caller_spurts : f.callee_spurts)
        spurts.spurts.emplace_back(a, b);
      VoipStreamRt* raw = s.get();
      s->source = std::make_unique<G711Source>(
          sim_, *sip_, call, fwd, spurts, [this, raw](Packet&& p) {
            p.dst_node = raw->to;
            p.src_node = raw->from;
            send_from(raw->from, std::move(p), raw->flow);
          });
      voip_by_flow_[s->flow] = raw;
      voip_streams_.push_back(std::move(s));
      return raw;
    };
    VoipStreamRt* fwd = make_stream(true);
    VoipStreamRt* rev = make_stream(false);
    voip_by_call_[call] = {fwd, rev};
    sip_->schedule_invite(call, f.invite_at);
    sip_->schedule_bye(call, f.bye_at);
  }

  for (const auto& f : cfg_.cbr_flows) {
    CbrRt rt;
    rt.decl = f;
    rt.flow = new_flow(f.id);
    cbrs_.push_back(std::move(rt));
  }
  for (auto& rt : cbrs_) {
    rt.app = std::make_unique<CbrApp>(
        sim_, CbrParams{rt.decl.src, rt.decl.dst, rt.decl.payload_bytes, rt.decl.interval,
                        rt.decl.start_at, rt.decl.stop_at},
        [this, &rt](Packet&& p) {
          p.dst_node = rt.decl.dst;
          p.src_node = rt.decl.src;
          send_from(rt.decl.src, std::move(p), rt.flow);
        });
    cbr_by_flow_[rt.flow] = &rt;
  }

  for (const auto& f : cfg_.ftp_flows) {
    FtpRt rt;
    rt.decl = f;
    rt.data_flow = new_flow(f.id + ".data");
    rt.ack_flow = new_flow(f.id + ".ack");
    ftps_.push_back(std::move(rt));
  }
  for (auto& rt : ftps_) {
    rt.transfer = std::make_unique<FtpTransfer>(
        sim_,
        FtpParams{rt.decl.client, rt.decl.server, rt.decl.item_bytes, rt.decl.window,
                  rt.decl.chunk_bytes, rt.decl.retransmit_timeout,
                  rt.decl.retransmit_timeout / 2, rt.decl.start_at},
        [this, &rt](Packet&& p, NodeId from) {
          const bool data = p.kind == PacketKind::FtpData;
          p.dst_node = from == rt.decl.server ? rt.decl.client : rt.decl.server;
          p.src_node = from;
          send_from(from, std::move(p), data ? rt.data_flow : rt.ack_flow);
        });
    ftp_by_flow_[rt.data_flow] = &rt;
    ftp_by_flow_[rt.ack_flow] = &rt;
  }
}

void RunContext::send_from(NodeId src, Packet&& p, FlowId flow) {
  p.flow = flow;
  p.sequence_number = static_cast<std::int64_t>(packet_states_[flow].size());
  packet_states_[flow].push_back(kInFlight);
  ++flow_stats_[flow].sent;
  p.created_at = sim_.now();
  route_and_send(src, std::move(p));
}

void RunContext::drop_packet(const Packet& p, DropReason r) {
  auto& state = packet_states_[p.flow][p.sequence_number];
  auto& fs = flow_stats_[p.flow];
  if (state == kDelivered) {
    ++fs.drops_after_delivery;  // e.g. every ACK of a delivered frame was lost
    return;
  }
  if (state != kInFlight) return;
  switch (r) {
    case DropReason::QueueFull:
      state = kDropQueue;
      ++fs.drop_queue;
      break;
    case DropReason::MacRetry:
      state = kDropRetry;
      ++fs.drop_retry;
      break;
    case DropReason::Routing:
      state = kDropRoute;
      ++fs.drop_route;
      break;
    case DropReason::WiredLoss:
      state = kDropLink;
      ++fs.drop_link;
      break;
  }
}

void RunContext::route_and_send(NodeId at, Packet&& p) {
  if (p.dst_node == at) {
    deliver_up(at, std::move(p));
    return;
  }
  const NodeId next = routing_.next_hop(at, p.dst_node);
  if (next == kNoNode) {
    drop_packet(p, DropReason::Routing);
    return;
  }
  p.next_hop = next;
  if (WiredLink* w = wired_between(at, next)) {
    w->send(at, std::move(p));
    return;
  }
  auto wit = wlan_.find(at);
  if (wit == wlan_.end()) {
    drop_packet(p, DropReason::Routing);
    return;
  }
  auto rejected = wit->second->queue.enqueue(std::move(p), sim_.now());
  if (rejected) {
    drop_packet(*rejected, DropReason::QueueFull);
    return;
  }
  wit->second->mac->pump();
}

void RunContext::wired_deliver(NodeId at, Packet&& p) { route_and_send(at, std::move(p)); }

void RunContext::deliver_up(NodeId at, Packet&& p) {
  p.delivered_at = sim_.now();
  auto& state = packet_states_[p.flow][p.sequence_number];
  if (state != kInFlight) {
    audit_failures_.push_back("packet delivered twice or after a drop: flow " +
                              flow_names_[p.flow] + " seq " +
                              std::to_string(p.sequence_number));
    return;
  }
  state = kDelivered;
  ++flow_stats_[p.flow].delivered;

  switch (p.kind) {
    case PacketKind::Media: {
      auto it = voip_by_flow_.find(p.flow);
      if (it != voip_by_flow_.end()) on_media(*it->second, p);
      return;
    }
    case PacketKind::Signaling: {
      const auto& ref = std::get<SignalingRef>(p.info);
      sip_->on_message_delivered(at, sip_messages_[ref.message_index]);
      return;
    }
    case PacketKind::Cbr: {
      auto it = cbr_by_flow_.find(p.flow);
      if (it != cbr_by_flow_.end()) {
        cbr_delay_samples_.emplace_back(sim_.now(),
                                        static_cast<double>(p.delivered_at - p.created_at) /
                                            1000.0);
        it->second->app->on_delivered(p);
      }
      return;
    }
    case PacketKind::FtpData:
    case PacketKind::FtpAck: {
      auto it = ftp_by_flow_.find(p.flow);
      if (it != ftp_by_flow_.end()) it->second->transfer->on_delivered(p, at);
      return;
    }
  }
}

void RunContext::on_media(VoipStreamRt& s, const Packet& p) {
  ++s.arrived;
  s.delay.add(p.delivered_at - p.created_at);
  const auto& info = std::get<MediaInfo>(p.info);
  const auto decision = s.jb->insert(info.rtp_seq, info.generated_at, sim_.now());
  switch (decision.action) {
    case JitterBuffer::Action::Scheduled:
      sim_.schedule(decision.play_at, "voip.play",
                    [&s, seq = info.rtp_seq] { s.jb->mark_played(seq); });
      return;
    case JitterBuffer::Action::DroppedLate:
    case JitterBuffer::Action::DroppedOverflow:
      s.drop_times.push_back(sim_.now());
      return;
    case JitterBuffer::Action::Duplicate:
      return;
  }
}

RunReport RunContext::run() {
  RunReport report;
  report.arm = arm_;
  report.seed = sim_.global_seed();
  report.duration = cfg_.duration;
  const RunSummary rs = sim_.run_until(cfg_.duration);
  report.events_fired = rs.events_fired;
  assemble(report);
  return report;
}

void RunContext::audit(RunReport& report) {
  // Ledger residuals.
  for (std::size_t f = 0; f < flow_names_.size(); ++f) {
    std::int64_t in_flight = 0;
    for (auto st : packet_states_[f]) {
      if (st == kInFlight) ++in_flight;
    }
    flow_stats_[f].in_flight_end = in_flight;
  }
  // Physical walk: every live packet must sit in exactly one container.
  std::set<std::pair<FlowId, std::int64_t>> seen;
  auto visit = [&](const Packet& p) {
    if (p.flow == kNoFlow) return;
    if (!seen.insert({p.flow, p.sequence_number}).second) return;
    if (packet_states_[p.flow][p.sequence_number] == kInFlight)
      ++flow_stats_[p.flow].resident_end;
  };
  for (const auto& [node, wif] : wlan_) {
    for (const auto& p : wif->queue.contents()) visit(p);
    if (wif->mac->frame_in_service() && wif->mac->frame_in_service()->packet)
      visit(*wif->mac->frame_in_service()->packet);
  }
  for (const auto& w : wired_) {
    for (const auto& d : w->dirs) {
      for (const auto& p : d.queue.contents()) visit(p);
      if (d.in_service) visit(*d.in_service);
      for (const auto& p : d.in_flight) visit(p);
    }
  }
  for (const Packet* p : medium_->packets_in_flight()) visit(*p);

  report.conservation_ok = true;
  for (std::size_t f = 0; f < flow_names_.size(); ++f) {
    const FlowStats& fs = flow_stats_[f];
    if (!fs.conserved()) {
      report.conservation_ok = false;
      std::ostringstream oss;
      oss << "flow " << flow_names_[f] << ": sent=" << fs.sent << " delivered=" << fs.delivered
          << " drops=" << fs.drops() << " in_flight=" << fs.in_flight_end
          << " resident=" << fs.resident_end;
      report.audit_failures.push_back(oss.str());
    }
  }

  report.jitter_closure_ok = true;
  for (const auto& s : voip_streams_) {
    const auto& c = s->jb->counters();
    const std::int64_t pending = static_cast<std::int64_t>(s->jb->pending());
    if (c.received != c.played + c.dropped_late + c.dropped_overflow + c.duplicates + pending ||
        c.received != s->arrived) {
      report.jitter_closure_ok = false;
      report.audit_failures.push_back("jitter closure violated on stream " + s->name);
    }
  }
}

void RunContext::assemble(RunReport& report) {
  for (const auto& err : audit_failures_) report.audit_failures.push_back(err);
  audit(report);

  for (std::size_t f = 0; f < flow_names_.size(); ++f)
    report.flows.emplace_back(flow_names_[f], flow_stats_[f]);

  MetricsRegistry& m = report.metrics;

  // MAC counters.
  std::int64_t retx_total = 0, sent_total = 0, recv_total = 0, mac_drop_total = 0;
  for (const auto& [node, wif] : wlan_) {
    const DcfCounters& c = wif->mac->counters();
    report.mac_counters[node] = c;
    retx_total += c.retx_ack_timeout;
    sent_total += c.frames_sent;
    recv_total += c.frames_received;
    mac_drop_total += c.frames_dropped_retry;
    const std::string scope = "node" + std::to_string(node);
    m.add_scalar("mac.retx_ack_timeout", scope, static_cast<double>(c.retx_ack_timeout), "count");
    m.add_scalar("mac.frames_sent", scope, static_cast<double>(c.frames_sent), "count");
    m.add_scalar("mac.frames_received", scope, static_cast<double>(c.frames_received), "count");
  }
  report.mac_retx_total = retx_total;
  m.add_scalar("mac.retx_ack_timeout", "total", static_cast<double>(retx_total), "count");
  m.add_scalar("mac.frames_sent", "total", static_cast<double>(sent_total), "count");
  m.add_scalar("mac.frames_received", "total", static_cast<double>(recv_total), "count");
  m.add_scalar("mac.frames_dropped_retry", "total", static_cast<double>(mac_drop_total), "count");
  m.add_series(cumulative_series("mac.retx_ack_timeout", "count", retx_times_, cfg_.duration));

  // FIFO stats over every interface.
  std::int64_t wait_sum = 0, dequeues = 0, fifo_drops = 0;
  auto fold_queue = [&](const std::string& scope, const QueueStats& qs) {
    wait_sum += qs.sum_wait_us;
    dequeues += qs.dequeues;
    fifo_drops += qs.drops_full;
    m.add_scalar("stack.fifo_avg_wait", scope, qs.avg_wait_us() / 1000.0, "ms");
    m.add_scalar("stack.fifo_drops", scope, static_cast<double>(qs.drops_full), "count");
  };
  for (const auto& [node, wif] : wlan_)
    fold_queue("node" + std::to_string(node) + ".wlan", wif->queue.stats());
  for (const auto& w : wired_) {
    for (int d = 0; d < 2; ++d) {
      const std::string scope = "wired" + std::to_string(w->a()) + "-" +
                                std::to_string(w->b()) + "." + (d == 0 ? "fwd" : "rev");
      fold_queue(scope, w->dirs[d].queue.stats());
    }
  }
  report.fifo_avg_wait_ms =
      dequeues == 0 ? 0.0
                    : static_cast<double>(wait_sum) / static_cast<double>(dequeues) / 1000.0;
  report.fifo_drops_total = fifo_drops;
  m.add_scalar("stack.fifo_avg_wait", "total", report.fifo_avg_wait_ms, "ms");
  m.add_scalar("stack.fifo_drops", "total", static_cast<double>(fifo_drops), "count");
  m.add_series(bucket_mean_series("stack.fifo_wait_ms", "ms", fifo_wait_samples_, cfg_.duration));

  // VoIP streams and dialog timeline.
  std::int64_t jitter_drops = 0;
  std::vector<SimTime> jitter_drop_times;
  for (const auto& s : voip_streams_) {
    VoipStreamReport r;
    r.name = s->name;
    r.call_id = s->call_id;
    r.from_initiator = s->from_initiator;
    r.generated = s->source->packets_generated();
    r.arrived = s->arrived;
    r.jitter = s->jb->counters();
    r.delay = s->delay;
    r.rtp_start_at = s->source->rtp_start_at();
    r.pending_at_end = static_cast<std::int64_t>(s->jb->pending());
    if (r.generated > 0) {
      const double played = static_cast<double>(r.jitter.played + r.pending_at_end);
      r.loss_fraction = std::clamp(1.0 - played / static_cast<double>(r.generated), 0.0, 1.0);
    }
    r.good = classify_quality(r.loss_fraction).good;
    jitter_drops += r.jitter.dropped_late + r.jitter.dropped_overflow;
    for (SimTime t : s->drop_times) jitter_drop_times.push_back(t);
    m.add_scalar("voip.packets_sent", r.name, static_cast<double>(r.generated), "count");
    m.add_scalar("voip.packets_received", r.name, static_cast<double>(r.arrived), "count");
    m.add_scalar("voip.jitter_drops", r.name,
                 static_cast<double>(r.jitter.dropped_late + r.jitter.dropped_overflow), "count");
    if (auto d = r.delay.mean_ms()) m.add_scalar("voip.e2e_delay_ms", r.name, *d, "ms");
    m.add_scalar_text("voip.quality_verdict", r.name, r.good ? "Good" : "Poor", "verdict");
    report.voip_streams.push_back(std::move(r));
  }
  report.jitter_drops_total = jitter_drops;
  m.add_scalar("voip.jitter_drops", "total", static_cast<double>(jitter_drops), "count");
  m.add_series(cumulative_series("voip.jitter_drops", "count", jitter_drop_times, cfg_.duration));

  for (const auto& [call, streams] : voip_by_call_) {
    const VoipFlowDecl* decl = voip_decl_by_call_.at(call);
    const SipDialog& d = sip_->dialog(call);
    DialogReport dr;
    dr.flow = decl->id;
    dr.call_id = call;
    dr.caller = d.initiator;
    dr.callee = d.receiver;
    dr.timeline = d.timeline;
    dr.final_state = to_string(d.state);
    dr.configured_bye_at = decl->bye_at;
    dr.caller_sent = streams.first->source->packets_generated();
    dr.callee_sent = streams.second->source->packets_generated();
    dr.caller_received = streams.second->arrived;   // reverse stream lands at the caller
    dr.callee_received = streams.first->arrived;
    dr.caller_talk_s = to_seconds(dr.caller_sent * kG711FrameInterval);
    dr.callee_talk_s = to_seconds(dr.callee_sent * kG711FrameInterval);
    report.timeline.push_back(std::move(dr));
  }

  // CBR.
  for (const auto& rt : cbrs_) {
    CbrFlowReport r;
    r.flow = rt.decl.id;
    r.sent = rt.app->sent();
    r.received = rt.app->received();
    r.delay = rt.app->delay();
    r.mean_throughput_bps = rt.app->mean_throughput_bps();
    m.add_scalar("app.cbr_throughput", r.flow, r.mean_throughput_bps, "bps");
    if (auto d = r.delay.mean_ms()) m.add_scalar("app.cbr_delay_ms", r.flow, *d, "ms");
    MetricSeries thpt{"app.cbr_throughput." + r.flow, "bps", {}};
    for (auto [t, v] : rt.app->throughput().rate_series(cfg_.duration))
      thpt.points.push_back({t, v});
    m.add_series(std::move(thpt));
    report.cbr.push_back(std::move(r));
  }
  if (!report.cbr.empty()) {
    report.cbr_mean_delay_ms = report.cbr.front().delay.mean_ms();
    report.cbr_mean_throughput_bps = report.cbr.front().mean_throughput_bps;
  }
  m.add_series(bucket_mean_series("app.cbr_delay_ms", "ms", cbr_delay_samples_, cfg_.duration));

  // FTP.
  double server_peak = 0, client_peak = 0;
  for (const auto& rt : ftps_) {
    FtpFlowReport r;
    r.flow = rt.decl.id;
    r.server_peak_bps = rt.transfer->server_throughput().peak_bps();
    r.client_peak_bps = rt.transfer->client_throughput().peak_bps();
    r.bytes_acked = rt.transfer->bytes_acked();
    r.completed = rt.transfer->completed_at().has_value();
    if (r.completed) r.completed_at_s = to_seconds(*rt.transfer->completed_at());
    r.chunk_retransmissions = rt.transfer->chunk_retransmissions();
    server_peak = std::max(server_peak, r.server_peak_bps);
    client_peak = std::max(client_peak, r.client_peak_bps);
    m.add_scalar("app.ftp_server_throughput_peak", r.flow, r.server_peak_bps, "bps");
    m.add_scalar("app.ftp_client_throughput_peak", r.flow, r.client_peak_bps, "bps");
    m.add_scalar("app.ftp_bytes_acked", r.flow, static_cast<double>(r.bytes_acked), "bytes");
    MetricSeries sseries{"app.ftp_server_throughput." + r.flow, "bps", {}};
    for (auto [t, v] : rt.transfer->server_throughput().rate_series(cfg_.duration))
      sseries.points.push_back({t, v});
    m.add_series(std::move(sseries));
    MetricSeries cseries{"app.ftp_client_throughput." + r.flow, "bps", {}};
    for (auto [t, v] : rt.transfer->client_throughput().rate_series(cfg_.duration))
      cseries.points.push_back({t, v});
    m.add_series(std::move(cseries));
    report.ftp.push_back(std::move(r));
  }
  report.ftp_server_peak_bps = server_peak;
  report.ftp_client_peak_bps = client_peak;

  report.sip_dialog_failures = sip_->counters().dialog_failures;
  report.sip_registration_failures = sip_->counters().registration_failures;
  m.add_scalar("sip.dialog_failures", "total",
               static_cast<double>(report.sip_dialog_failures), "count");
  m.add_scalar("sip.registration_failures", "total",
               static_cast<double>(report.sip_registration_failures), "count");
  m.add_scalar("run.events_fired", "total", static_cast<double>(report.events_fired), "count");

  report.mobility_reevals = mobility_reevals_;
  for (const auto& [node, count] : mobility_reevals_)
    m.add_scalar("mobility.reevals", "node" + std::to_string(node), static_cast<double>(count),
                 "count");
}

}  // namespace

RunReport run_scenario(const ScenarioConfig& cfg, PhyStandard arm, std::uint64_t seed) {
  RunContext ctx(cfg, arm, seed);
  return ctx.run();
}

std::vector<OrderingCheck> expected_orderings(const RunReport& a, const RunReport& b) {
  std::vector<OrderingCheck> checks;
  auto add = [&](std::string name, bool holds, std::string detail) {
    checks.push_back({std::move(name), holds, std::move(detail)});
  };
  std::ostringstream d;

  d.str("");
  d << "peak(a)=" << format_number(a.ftp_server_peak_bps / 1e6)
    << " Mb/s, peak(b)=" << format_number(b.ftp_server_peak_bps / 1e6) << " Mb/s";
  add("ftp_server_peak: a >= 2x b, both > 0",
      a.ftp_server_peak_bps >= 2.0 * b.ftp_server_peak_bps && a.ftp_server_peak_bps > 0 &&
          b.ftp_server_peak_bps > 0,
      d.str());

  d.str("");
  d << "peak(a)=" << format_number(a.ftp_client_peak_bps / 1e6)
    << " Mb/s, peak(b)=" << format_number(b.ftp_client_peak_bps / 1e6) << " Mb/s";
  add("ftp_client_peak: a >= 2x b, both > 0",
      a.ftp_client_peak_bps >= 2.0 * b.ftp_client_peak_bps && a.ftp_client_peak_bps > 0 &&
          b.ftp_client_peak_bps > 0,
      d.str());

  const double da = a.cbr_mean_delay_ms.value_or(-1);
  const double db = b.cbr_mean_delay_ms.value_or(-1);
  d.str("");
  d << "delay(a)=" << format_number(da) << " ms, delay(b)=" << format_number(db) << " ms";
  add("cbr_delay: b >= 1.5x a", da > 0 && db >= 1.5 * da, d.str());

  d.str("");
  d << "thpt(a)=" << format_number(a.cbr_mean_throughput_bps)
    << " bps, thpt(b)=" << format_number(b.cbr_mean_throughput_bps) << " bps";
  const double tmax = std::max(a.cbr_mean_throughput_bps, b.cbr_mean_throughput_bps);
  add("cbr_throughput: equal within 1%",
      tmax > 0 &&
          std::abs(a.cbr_mean_throughput_bps - b.cbr_mean_throughput_bps) <= 0.01 * tmax,
      d.str());

  d.str("");
  d << "drops(a)=" << a.jitter_drops_total << ", drops(b)=" << b.jitter_drops_total;
  add("jitter_drops: b >= 10 and b >= 5x max(a,1)",
      b.jitter_drops_total >= 10 &&
          b.jitter_drops_total >= 5 * std::max<std::int64_t>(a.jitter_drops_total, 1),
      d.str());

  bool all_a_good = true;
  bool some_degraded = false;
  for (std::size_t i = 0; i < a.voip_streams.size() && i < b.voip_streams.size(); ++i) {
    all_a_good = all_a_good && a.voip_streams[i].good;
    if (a.voip_streams[i].good && !b.voip_streams[i].good) some_degraded = true;
  }
  d.str("");
  d << "a: all Good = " << (all_a_good ? "yes" : "no")
    << "; degraded streams in b = " << (some_degraded ? "yes" : "no");
  add("voip_quality: every a-arm stream Good, some b-arm stream degraded",
      all_a_good && some_degraded, d.str());

  d.str("");
  d << "retx(a)=" << a.mac_retx_total << ", retx(b)=" << b.mac_retx_total;
  add("mac_retx: b > a and b >= 10",
      b.mac_retx_total > a.mac_retx_total && b.mac_retx_total >= 10, d.str());

  d.str("");
  d << "wait(a)=" << format_number(a.fifo_avg_wait_ms)
    << " ms, wait(b)=" << format_number(b.fifo_avg_wait_ms) << " ms";
  add("fifo_wait: b >= 2x a", b.fifo_avg_wait_ms >= 2.0 * a.fifo_avg_wait_ms, d.str());

  return checks;
}

ComparisonReport run_comparison(const ScenarioConfig& cfg, std::uint64_t seed, PhyStandard arm_a,
                                PhyStandard arm_b) {
  ComparisonReport cmp;
  cmp.a = run_scenario(cfg, arm_a, seed);
  cmp.b = run_scenario(cfg, arm_b, seed);
  cmp.orderings = expected_orderings(cmp.a, cmp.b);
  return cmp;
}

}  // namespace wlansim
