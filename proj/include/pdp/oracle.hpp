#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "pdp/error.hpp"
#include "pdp/instance.hpp"

namespace pdp {

struct OracleLimits {
  std::uint64_t node_budget = 50'000'000;
};

namespace detail {

// Exhaustive backtracking over vertex-disjoint path systems. Requests are
// routed in index order; neighbours are tried in edge-id order. A branch is
// cut as soon as some unfinished request can no longer be connected around
// the used vertices, which never removes a completion.
class PathSystemSearch {
 public:
  PathSystemSearch(const Instance& inst, OracleLimits limits) : inst_(inst), limits_(limits) {
    const PlaneGraph& g = inst.graph;
    adj_.resize(static_cast<std::size_t>(g.vertex_count()));
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      std::vector<std::pair<EdgeId, VertexId>> by_edge;
      for (DartId d : g.rotation(v)) by_edge.push_back({edge_of(d), g.head(d)});
      std::sort(by_edge.begin(), by_edge.end());
      auto& out = adj_[static_cast<std::size_t>(v)];
      for (const auto& [e, u] : by_edge)
        if (u != v && std::find(out.begin(), out.end(), u) == out.end()) out.push_back(u);
    }
    blocked_.assign(static_cast<std::size_t>(g.vertex_count()), false);
    for (VertexId s : inst.sources) blocked_[static_cast<std::size_t>(s)] = true;
    for (VertexId t : inst.targets) blocked_[static_cast<std::size_t>(t)] = true;
    mark_.assign(static_cast<std::size_t>(g.vertex_count()), 0);
  }

  // visit returns false to stop the enumeration.
  void run(const std::function<bool(const Solution&)>& visit) {
    visit_ = &visit;
    stop_ = false;
    paths_.assign(static_cast<std::size_t>(inst_.k()), {});
    route(0);
  }

 private:
  void route(int i) {
    if (stop_) return;
    if (i == inst_.k()) {
      Solution sol{paths_};
      if (!(*visit_)(sol)) stop_ = true;
      return;
    }
    const VertexId s = inst_.sources[static_cast<std::size_t>(i)];
    paths_[static_cast<std::size_t>(i)] = {s};
    extend(i, s);
    paths_[static_cast<std::size_t>(i)].clear();
  }

  void extend(int i, VertexId v) {
    if (stop_) return;
    if (++nodes_ > limits_.node_budget) throw BudgetExceededError("oracle node budget exhausted");
    const VertexId t = inst_.targets[static_cast<std::size_t>(i)];
    if (v == t) {
      route(i + 1);
      return;
    }
    if (!feasible(i, v)) return;
    for (VertexId u : adj_[static_cast<std::size_t>(v)]) {
      if (blocked_[static_cast<std::size_t>(u)] && u != t) continue;
      blocked_[static_cast<std::size_t>(u)] = true;
      paths_[static_cast<std::size_t>(i)].push_back(u);
      extend(i, u);
      paths_[static_cast<std::size_t>(i)].pop_back();
      if (u != t) blocked_[static_cast<std::size_t>(u)] = false;
      if (stop_) return;
    }
    // Keep the target marked as reserved after backtracking.
    blocked_[static_cast<std::size_t>(t)] = true;
  }

  bool reachable(VertexId from, VertexId to) {
    ++stamp_;
    std::vector<VertexId> stack{from};
    mark_[static_cast<std::size_t>(from)] = stamp_;
    while (!stack.empty()) {
      VertexId x = stack.back();
      stack.pop_back();
      for (VertexId y : adj_[static_cast<std::size_t>(x)]) {
        if (y == to) return true;
        if (blocked_[static_cast<std::size_t>(y)] || mark_[static_cast<std::size_t>(y)] == stamp_) continue;
        mark_[static_cast<std::size_t>(y)] = stamp_;
        stack.push_back(y);
      }
    }
    return false;
  }

  bool feasible(int i, VertexId head) {
    if (!reachable(head, inst_.targets[static_cast<std::size_t>(i)])) return false;
    for (int j = i + 1; j < inst_.k(); ++j)
      if (!reachable(inst_.sources[static_cast<std::size_t>(j)], inst_.targets[static_cast<std::size_t>(j)])) return false;
    return true;
  }

  const Instance& inst_;
  OracleLimits limits_;
  std::vector<std::vector<VertexId>> adj_;
  std::vector<bool> blocked_;
  std::vector<unsigned> mark_;
  unsigned stamp_ = 0;
  std::uint64_t nodes_ = 0;
  std::vector<std::vector<VertexId>> paths_;
  const std::function<bool(const Solution&)>* visit_ = nullptr;
  bool stop_ = false;
};

}  // namespace detail

/// First solution in canonical search order, or nullopt when none exists.
inline std::optional<Solution> solve_bruteforce(const Instance& inst, OracleLimits limits = {}) {
  std::optional<Solution> found;
  detail::PathSystemSearch search(inst, limits);
  search.run([&](const Solution& s) {
    found = s;
    return false;
  });
  return found;
}

/// Number of distinct solutions (one path per request, paths as vertex
/// sequences).
inline std::uint64_t count_solutions(const Instance& inst, OracleLimits limits = {}) {
  std::uint64_t count = 0;
  detail::PathSystemSearch search(inst, limits);
  search.run([&](const Solution&) {
    ++count;
    return true;
  });
  return count;
}

/// Visits every solution in canonical order until `visit` returns false.
inline void enumerate_solutions(const Instance& inst, const std::function<bool(const Solution&)>& visit,
                                OracleLimits limits = {}) {
  detail::PathSystemSearch search(inst, limits);
  search.run(visit);
}

}  // namespace pdp
