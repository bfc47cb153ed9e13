#include "wlansim/routing.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace wlansim {

RoutingTable RoutingTable::compute(const std::vector<NodeId>& nodes,
                                   const std::vector<std::pair<NodeId, NodeId>>& links) {
  std::map<NodeId, std::set<NodeId>> adj;
  for (NodeId n : nodes) adj[n];
  for (auto [a, b] : links) {
    adj[a].insert(b);
    adj[b].insert(a);
  }

  RoutingTable table;
  // BFS from every source; ascending neighbor order keeps tie-breaks stable.
  for (NodeId src : nodes) {
    std::map<NodeId, NodeId> prev;
    std::deque<NodeId> frontier{src};
    prev[src] = src;
    while (!frontier.empty()) {
      NodeId u = frontier.front();
      frontier.pop_front();
      for (NodeId v : adj[u]) {
        if (!prev.contains(v)) {
          prev[v] = u;
          frontier.push_back(v);
        }
      }
    }
    auto& row = table.next_[src];
    for (auto& [dst, p] : prev) {
      if (dst == src) {
        row[dst] = src;
        continue;
      }
      NodeId hop = dst;
      while (prev[hop] != src) hop = prev[hop];
      row[dst] = hop;
    }
  }
  return table;
}

NodeId RoutingTable::next_hop(NodeId at, NodeId dst) const {
  auto row = next_.find(at);
  if (row == next_.end()) return kNoNode;
  auto it = row->second.find(dst);
  return it == row->second.end() ? kNoNode : it->second;
}

std::vector<NodeId> RoutingTable::path(NodeId from, NodeId to) const {
  std::vector<NodeId> out{from};
  NodeId at = from;
  while (at != to) {
    NodeId hop = next_hop(at, to);
    if (hop == kNoNode) return {};
    out.push_back(hop);
    at = hop;
    if (out.size() > next_.size() + 1) return {};  // a loop-free path visits each node once
  }
  return out;
}

}  // namespace wlansim
