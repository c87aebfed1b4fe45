#pragma once

#include <algorithm>
#include <limits>
#include <queue>
#include <vector>

#include "pdp/plane_graph.hpp"

namespace pdp {

/// Unit-ish capacity max flow (Dinic). Arcs are stored in pairs, arc i and
/// its residual twin i ^ 1.
class MaxFlow {
 public:
  explicit MaxFlow(int nodes) : head_(static_cast<std::size_t>(nodes)), level_(static_cast<std::size_t>(nodes)), iter_(static_cast<std::size_t>(nodes)) {}

  int add_arc(int from, int to, int capacity) {
    const int id = static_cast<int>(arcs_.size());
    arcs_.push_back({to, capacity, 0});
    arcs_.push_back({from, 0, 0});
    head_[static_cast<std::size_t>(from)].push_back(id);
    head_[static_cast<std::size_t>(to)].push_back(id + 1);
    return id;
  }

  int run(int source, int sink) {
    int total = 0;
    while (bfs(source, sink)) {
      std::fill(iter_.begin(), iter_.end(), 0);
      while (int pushed = dfs(source, sink, std::numeric_limits<int>::max())) total += pushed;
    }
    return total;
  }

  /// Nodes reachable from `source` in the residual network.
  std::vector<bool> residual_reach(int source) const {
    std::vector<bool> seen(head_.size(), false);
    std::vector<int> stack{source};
    seen[static_cast<std::size_t>(source)] = true;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (int id : head_[static_cast<std::size_t>(x)]) {
        const Arc& a = arcs_[static_cast<std::size_t>(id)];
        if (a.capacity - a.flow > 0 && !seen[static_cast<std::size_t>(a.to)]) {
          seen[static_cast<std::size_t>(a.to)] = true;
          stack.push_back(a.to);
        }
      }
    }
    return seen;
  }

  int flow_on(int arc) const { return arcs_[static_cast<std::size_t>(arc)].flow; }
  int target(int arc) const { return arcs_[static_cast<std::size_t>(arc)].to; }
  const std::vector<int>& out_arcs(int node) const { return head_[static_cast<std::size_t>(node)]; }
  bool is_forward(int arc) const { return (arc & 1) == 0; }
  /// Removes one unit of flow from a forward arc (used when decomposing).
  void consume(int arc) {
    arcs_[static_cast<std::size_t>(arc)].flow -= 1;
    arcs_[static_cast<std::size_t>(arc ^ 1)].flow += 1;
  }

 private:
  struct Arc {
    int to;
    int capacity;
    int flow;
  };

  bool bfs(int source, int sink) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<int> q;
    level_[static_cast<std::size_t>(source)] = 0;
    q.push(source);
    while (!q.empty()) {
      int x = q.front();
      q.pop();
      for (int id : head_[static_cast<std::size_t>(x)]) {
        const Arc& a = arcs_[static_cast<std::size_t>(id)];
        if (a.capacity - a.flow > 0 && level_[static_cast<std::size_t>(a.to)] < 0) {
          level_[static_cast<std::size_t>(a.to)] = level_[static_cast<std::size_t>(x)] + 1;
          q.push(a.to);
        }
      }
    }
    return level_[static_cast<std::size_t>(sink)] >= 0;
  }

  int dfs(int x, int sink, int limit) {
    if (x == sink) return limit;
    auto& it = iter_[static_cast<std::size_t>(x)];
    for (; it < static_cast<int>(head_[static_cast<std::size_t>(x)].size()); ++it) {
      const int id = head_[static_cast<std::size_t>(x)][static_cast<std::size_t>(it)];
      Arc& a = arcs_[static_cast<std::size_t>(id)];
      if (a.capacity - a.flow <= 0 || level_[static_cast<std::size_t>(a.to)] != level_[static_cast<std::size_t>(x)] + 1) continue;
      if (int pushed = dfs(a.to, sink, std::min(limit, a.capacity - a.flow))) {
        a.flow += pushed;
        arcs_[static_cast<std::size_t>(id ^ 1)].flow -= pushed;
        return pushed;
      }
    }
    return 0;
  }

  std::vector<Arc> arcs_;
  std::vector<std::vector<int>> head_;
  std::vector<int> level_;
  std::vector<int> iter_;
};

struct VertexSeparator {
  std::vector<VertexId> cut;                        // sorted
  std::vector<std::vector<VertexId>> disjoint_paths;  // Menger certificate, |paths| = |cut|
};

/// Minimum vertex set meeting every path between vertex sets `a` and `b`
/// (disjoint). Vertices of a and b may belong to the cut.
inline VertexSeparator min_vertex_separator(const PlaneGraph& g, const std::vector<VertexId>& a, const std::vector<VertexId>& b) {
  const int n = g.vertex_count();
  const int source = 2 * n, sink = 2 * n + 1;
  const int big = n + 1;
  MaxFlow net(2 * n + 2);
  auto in = [](VertexId v) { return 2 * v; };
  auto out = [](VertexId v) { return 2 * v + 1; };
  for (VertexId v = 0; v < n; ++v) net.add_arc(in(v), out(v), 1);
  for (const Edge& e : g.edges()) {
    if (e.u == e.v) continue;
    net.add_arc(out(e.u), in(e.v), big);
    net.add_arc(out(e.v), in(e.u), big);
  }
  for (VertexId v : a) net.add_arc(source, in(v), big);
  for (VertexId v : b) net.add_arc(out(v), sink, big);
  const int value = net.run(source, sink);

  VertexSeparator sep;
  const auto reach = net.residual_reach(source);
  for (VertexId v = 0; v < n; ++v)
    if (reach[static_cast<std::size_t>(in(v))] && !reach[static_cast<std::size_t>(out(v))]) sep.cut.push_back(v);

  // Peel the integral flow into vertex-disjoint paths, one unit at a time.
  for (int p = 0; p < value; ++p) {
    std::vector<VertexId> path;
    int x = source;
    while (x != sink) {
      int next = -1;
      for (int id : net.out_arcs(x)) {
        if (net.is_forward(id) && net.flow_on(id) > 0) {
          next = id;
          break;
        }
      }
      net.consume(next);
      x = net.target(next);
      if (x < 2 * n && (x & 1) == 0) path.push_back(x / 2);
    }
    sep.disjoint_paths.push_back(std::move(path));
  }
  return sep;
}

}  // namespace pdp
