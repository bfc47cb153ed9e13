#pragma once

// Small single-channel WLAN harness for MAC-level tests: N nodes at fixed
// positions, one DcfMac per node wired straight to counters (no routing,
// no upper stack).

#include <map>
#include <memory>
#include <vector>

#include "wlansim/mac.hpp"
#include "wlansim/medium.hpp"

namespace wlansim::testing {

struct WlanFixture {
  struct NodeRt {
    Position pos;
    std::unique_ptr<FifoQueue> queue;
    std::unique_ptr<DcfMac> mac;
    std::int64_t delivered = 0;
    std::int64_t dropped = 0;
  };

  Simulator sim;
  RadioConfig radio;
  PhyProfile phy;
  std::unique_ptr<Medium> medium;
  std::map<NodeId, NodeRt> nodes;
  std::vector<SimTime> busy_edges;  // node 1000 observer, when attached

  explicit WlanFixture(PhyStandard standard = PhyStandard::B, std::uint64_t seed = 42,
                       MacConfig mac_cfg = {})
      : sim(seed), phy(PhyProfile::make(standard)) {
    medium = std::make_unique<Medium>(sim, radio, phy,
                                      std::vector<Channel>{{1, 2.401e9}});
    mac_cfg_ = mac_cfg;
  }

  void add_node(NodeId id, Position pos) {
    auto& n = nodes[id];
    n.pos = pos;
    n.queue = std::make_unique<FifoQueue>(500);
    n.mac = std::make_unique<DcfMac>(
        sim, *medium, id, *n.queue, mac_cfg_,
        [this, id](Packet&&) { ++nodes.at(id).delivered; },
        [this, id](Packet&&) { ++nodes.at(id).dropped; });
    medium->attach(id, 1, 0b0010, [this, id] { return nodes.at(id).pos; }, n.mac.get());
  }

  // Passive listener recording busy edges.
  struct Observer : WlanPhyPort {
    WlanFixture* fx;
    void on_medium_busy() override { fx->busy_edges.push_back(fx->sim.now()); }
    void on_medium_idle() override {}
    void on_frame_received(const MacFrame&, std::int64_t) override {}
  };
  std::unique_ptr<Observer> observer;
  void add_observer(NodeId id, Position pos) {
    observer = std::make_unique<Observer>();
    observer->fx = this;
    observer_pos_ = pos;
    medium->attach(id, 1, 0b0010, [this] { return observer_pos_; }, observer.get());
  }

  void inject(NodeId from, NodeId to, std::int64_t wire_payload_bytes) {
    Packet p = encapsulate(wire_payload_bytes - kUdpHeaderBytes - kIpHeaderBytes, false);
    p.src_node = from;
    p.dst_node = to;
    p.next_hop = to;
    auto& n = nodes.at(from);
    auto rejected = n.queue->enqueue(std::move(p), sim.now());
    REQUIRE_FALSE(rejected.has_value());
    n.mac->pump();
  }

 private:
  MacConfig mac_cfg_;
  Position observer_pos_;
};

}  // namespace wlansim::testing
