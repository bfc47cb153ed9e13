#pragma once

#include <map>
#include <vector>

#include "wlansim/packet.hpp"

namespace wlansim {

/// Static shortest-path routing over the scenario topology (hop-count
/// metric, BFS, lowest node id wins ties). Computed once at scenario load.
class RoutingTable {
 public:
  static RoutingTable compute(const std::vector<NodeId>& nodes,
                              const std::vector<std::pair<NodeId, NodeId>>& links);

  /// Next hop from at toward dst; dst itself when at == dst; kNoNode when
  /// unreachable.
  NodeId next_hop(NodeId at, NodeId dst) const;

  /// Full node sequence from -> ... -> to (empty when unreachable).
  std::vector<NodeId> path(NodeId from, NodeId to) const;

 private:
  std::map<NodeId, std::map<NodeId, NodeId>> next_;  // next_[at][dst]
};

}  // namespace wlansim
