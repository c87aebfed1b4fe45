#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <vector>

#include "pdp/error.hpp"
#include "pdp/instance.hpp"
#include "pdp/plane_graph.hpp"

namespace pdp {

/// ceil(82 * k^(3/2) * 2^k), computed exactly as ceil(sqrt(82^2 * 4^k * k^3)).
inline std::uint64_t safe_bound(int k) {
  if (k < 1 || k > 40) throw ValidationError("safe_bound is defined here for 1 <= k <= 40");
  using u128 = unsigned __int128;
  const u128 kk = static_cast<u128>(k);
  const u128 square = static_cast<u128>(82 * 82) * (static_cast<u128>(1) << (2 * k)) * kk * kk * kk;
  u128 lo = 0, hi = static_cast<u128>(1) << 64;
  while (lo < hi) {  // smallest r with r*r >= square
    const u128 mid = lo + (hi - lo) / 2;
    if (mid * mid >= square) hi = mid;
    else lo = mid + 1;
  }
  return static_cast<std::uint64_t>(lo);
}

enum class ReduceMode { Off, Safe, Unsafe };

struct ReduceOptions {
  ReduceMode mode = ReduceMode::Safe;
  int unsafe_bound = 0;  // cycle count used in unsafe mode
};

namespace detail {

inline std::vector<bool> reach_avoiding(const PlaneGraph& g, VertexId start, const std::vector<bool>& blocked) {
  std::vector<bool> seen(static_cast<std::size_t>(g.vertex_count()), false);
  std::vector<VertexId> stack{start};
  seen[static_cast<std::size_t>(start)] = true;
  while (!stack.empty()) {
    const VertexId x = stack.back();
    stack.pop_back();
    for (DartId d : g.rotation(x)) {
      const VertexId y = g.head(d);
      if (seen[static_cast<std::size_t>(y)] || blocked[static_cast<std::size_t>(y)]) continue;
      seen[static_cast<std::size_t>(y)] = true;
      stack.push_back(y);
    }
  }
  return seen;
}

// Vertices of the face of G - B that contains B, found through the corner
// left behind by one removed dart. Empty when no edge leaves B.
inline std::optional<std::pair<std::vector<VertexId>, bool>> enclosing_boundary(const PlaneGraph& g, const std::vector<bool>& in_b) {
  DartId probe = -1;
  for (DartId d = 0; d < g.dart_count() && probe == -1; ++d)
    if (!in_b[static_cast<std::size_t>(g.tail(d))] && in_b[static_cast<std::size_t>(g.head(d))]) probe = d;
  if (probe == -1) return std::nullopt;

  std::vector<bool> keep(in_b.size());
  for (std::size_t v = 0; v < in_b.size(); ++v) keep[v] = !in_b[v];
  const Subgraph sub = induced_subgraph(g, keep);
  std::vector<EdgeId> new_edge(static_cast<std::size_t>(g.edge_count()), -1);
  for (std::size_t e = 0; e < sub.edge_origin.size(); ++e) new_edge[static_cast<std::size_t>(sub.edge_origin[e])] = static_cast<EdgeId>(e);

  const VertexId x = g.tail(probe);
  DartId next = g.next_cw(probe);
  while (new_edge[static_cast<std::size_t>(edge_of(next))] == -1 && next != probe) next = g.next_cw(next);
  if (next == probe) return std::make_pair(std::vector<VertexId>{x}, false);  // x only touches B

  const PlaneGraph& h = sub.graph;
  const DartId b = dart_of(new_edge[static_cast<std::size_t>(edge_of(next))], end_of(next));
  const Face& face = h.face(h.left_face(b));
  std::vector<VertexId> vertices;
  std::vector<EdgeId> edges;
  for (DartId d : face.boundary) {
    vertices.push_back(sub.vertex_origin[static_cast<std::size_t>(h.tail(d))]);
    edges.push_back(edge_of(d));
  }
  auto distinct = [](auto items) {
    std::sort(items.begin(), items.end());
    return std::adjacent_find(items.begin(), items.end()) == items.end();
  };
  const bool simple = vertices.size() >= 2 && distinct(vertices) && distinct(edges);
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  return std::make_pair(std::move(vertices), simple);
}

}  // namespace detail

/// Number of nested vertex-disjoint cycles around v that avoid and separate
/// v from every terminal, counted outward layer by layer; stops at `cap`.
inline int separating_cycle_depth(const Instance& inst, VertexId v, int cap) {
  const PlaneGraph& g = inst.graph;
  const auto terminal = inst.terminal_mask();
  if (terminal[static_cast<std::size_t>(v)]) return 0;
  std::vector<bool> in_b(static_cast<std::size_t>(g.vertex_count()), false);
  in_b[static_cast<std::size_t>(v)] = true;
  int count = 0;
  while (count < cap) {
    auto boundary = detail::enclosing_boundary(g, in_b);
    if (!boundary) break;
    const auto& [layer, simple] = *boundary;
    std::vector<bool> wall(static_cast<std::size_t>(g.vertex_count()), false);
    for (VertexId w : layer) {
      if (terminal[static_cast<std::size_t>(w)]) return count;
      wall[static_cast<std::size_t>(w)] = true;
    }
    const auto inside = detail::reach_avoiding(g, v, wall);
    for (VertexId u = 0; u < g.vertex_count(); ++u)
      if (inside[static_cast<std::size_t>(u)] && terminal[static_cast<std::size_t>(u)]) return count;
    if (simple) ++count;
    for (VertexId u = 0; u < g.vertex_count(); ++u)
      if (inside[static_cast<std::size_t>(u)] || wall[static_cast<std::size_t>(u)]) in_b[static_cast<std::size_t>(u)] = true;
  }
  return count;
}

/// Smallest non-terminal vertex enclosed by at least `depth_bound` nested
/// vertex-disjoint cycles that separate it from all terminals.
inline std::optional<VertexId> find_irrelevant_vertex(const Instance& inst, int depth_bound) {
  if (depth_bound < 1) throw ValidationError("depth bound must be at least 1");
  // Each cycle needs two vertices of its own, plus v.
  if (inst.graph.vertex_count() < 2 * static_cast<long long>(depth_bound) + 1) return std::nullopt;
  const auto terminal = inst.terminal_mask();
  for (VertexId v = 0; v < inst.graph.vertex_count(); ++v) {
    if (terminal[static_cast<std::size_t>(v)]) continue;
    if (separating_cycle_depth(inst, v, depth_bound) >= depth_bound) return v;
  }
  return std::nullopt;
}

struct ReducedInstance {
  Instance instance;
  std::vector<VertexId> vertex_origin;  // reduced id -> input id
  std::vector<VertexId> removed;        // input ids, in deletion order
};

inline int reduction_bound(const Instance& inst, const ReduceOptions& opt) {
  if (opt.mode == ReduceMode::Unsafe) {
    if (opt.unsafe_bound < 1) throw ValidationError("unsafe reduction bound must be at least 1");
    return opt.unsafe_bound;
  }
  const std::uint64_t b = safe_bound(std::max(inst.k(), 1));
  return b > static_cast<std::uint64_t>(std::numeric_limits<int>::max()) ? std::numeric_limits<int>::max() : static_cast<int>(b);
}

/// Deletes irrelevant vertices one at a time until none is found.
inline ReducedInstance reduce_instance(const Instance& inst, const ReduceOptions& opt = {}) {
  ReducedInstance out{inst, {}, {}};
  out.vertex_origin.resize(static_cast<std::size_t>(inst.graph.vertex_count()));
  std::iota(out.vertex_origin.begin(), out.vertex_origin.end(), 0);
  if (opt.mode == ReduceMode::Off) return out;
  const int bound = reduction_bound(inst, opt);

  while (auto v = find_irrelevant_vertex(out.instance, bound)) {
    const Instance& cur = out.instance;
    std::vector<bool> keep(static_cast<std::size_t>(cur.graph.vertex_count()), true);
    keep[static_cast<std::size_t>(*v)] = false;
    Subgraph sub = induced_subgraph(cur.graph, keep);
    std::vector<VertexId> new_id(keep.size(), -1);
    for (std::size_t i = 0; i < sub.vertex_origin.size(); ++i) new_id[static_cast<std::size_t>(sub.vertex_origin[i])] = static_cast<VertexId>(i);

    Instance next;
    next.graph = std::move(sub.graph);
    for (VertexId s : cur.sources) next.sources.push_back(new_id[static_cast<std::size_t>(s)]);
    for (VertexId t : cur.targets) next.targets.push_back(new_id[static_cast<std::size_t>(t)]);
    out.removed.push_back(out.vertex_origin[static_cast<std::size_t>(*v)]);
    std::vector<VertexId> origin;
    for (VertexId old : sub.vertex_origin) origin.push_back(out.vertex_origin[static_cast<std::size_t>(old)]);
    out.vertex_origin = std::move(origin);
    out.instance = std::move(next);
  }
  return out;
}

}  // namespace pdp
