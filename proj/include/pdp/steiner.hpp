#pragma once

#include <algorithm>
#include <deque>
#include <limits>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "pdp/error.hpp"
#include "pdp/plane_graph.hpp"
#include "pdp/vertex_cut.hpp"

namespace pdp {

/// Tree inside a host plane graph (normally a radial completion), given by
/// its edge ids; its leaves are exactly `leaves`.
struct SteinerTree {
  std::vector<EdgeId> edges;    // sorted
  std::vector<VertexId> leaves;  // sorted

  int length() const noexcept { return static_cast<int>(edges.size()); }
  friend bool operator==(const SteinerTree&, const SteinerTree&) = default;
};

/// Maximal path of a tree whose inner vertices have tree degree 2 and whose
/// ends do not. vertices.size() == edges.size() + 1.
struct TreePath {
  std::vector<VertexId> vertices;
  std::vector<EdgeId> edges;

  int length() const noexcept { return static_cast<int>(edges.size()); }
  VertexId front() const { return vertices.front(); }
  VertexId back() const { return vertices.back(); }
};

struct Detour {
  VertexId u = -1;
  VertexId v = -1;
  TreePath path;      // the maximal degree-2 path L between u and v
  TreePath shortcut;  // P, strictly shorter than L
};

namespace detail {

struct TreeView {
  std::vector<std::vector<std::pair<EdgeId, VertexId>>> adj;
  std::vector<bool> present;

  TreeView(const PlaneGraph& host, const std::vector<EdgeId>& edges)
      : adj(static_cast<std::size_t>(host.vertex_count())), present(static_cast<std::size_t>(host.vertex_count()), false) {
    for (EdgeId e : edges) {
      const Edge& ed = host.edge(e);
      adj[static_cast<std::size_t>(ed.u)].push_back({e, ed.v});
      adj[static_cast<std::size_t>(ed.v)].push_back({e, ed.u});
      present[static_cast<std::size_t>(ed.u)] = present[static_cast<std::size_t>(ed.v)] = true;
    }
    for (auto& a : adj) std::sort(a.begin(), a.end());
  }
  int degree(VertexId v) const { return static_cast<int>(adj[static_cast<std::size_t>(v)].size()); }

  // Tree vertices reachable from `start` without entering `blocked`.
  std::vector<bool> component(VertexId start, const std::vector<bool>& blocked) const {
    std::vector<bool> seen(adj.size(), false);
    std::vector<VertexId> stack{start};
    seen[static_cast<std::size_t>(start)] = true;
    while (!stack.empty()) {
      VertexId x = stack.back();
      stack.pop_back();
      for (const auto& [e, y] : adj[static_cast<std::size_t>(x)]) {
        if (seen[static_cast<std::size_t>(y)] || blocked[static_cast<std::size_t>(y)]) continue;
        seen[static_cast<std::size_t>(y)] = true;
        stack.push_back(y);
      }
    }
    return seen;
  }
};

// Host adjacency sorted by edge id.
inline std::vector<std::vector<std::pair<EdgeId, VertexId>>> host_adjacency(const PlaneGraph& host) {
  std::vector<std::vector<std::pair<EdgeId, VertexId>>> adj(static_cast<std::size_t>(host.vertex_count()));
  for (EdgeId e = 0; e < host.edge_count(); ++e) {
    const Edge& ed = host.edge(e);
    if (ed.u == ed.v) continue;
    adj[static_cast<std::size_t>(ed.u)].push_back({e, ed.v});
    adj[static_cast<std::size_t>(ed.v)].push_back({e, ed.u});
  }
  return adj;
}

}  // namespace detail

/// Connected, acyclic, and its leaf set equals `terminals`.
inline bool is_steiner_tree(const PlaneGraph& host, const SteinerTree& tree, std::vector<VertexId> terminals) {
  std::sort(terminals.begin(), terminals.end());
  if (tree.leaves != terminals) return false;
  std::set<EdgeId> distinct(tree.edges.begin(), tree.edges.end());
  if (distinct.size() != tree.edges.size()) return false;
  for (EdgeId e : tree.edges)
    if (e < 0 || e >= host.edge_count() || host.is_loop(e)) return false;
  detail::TreeView view(host, tree.edges);
  int vertices = 0;
  VertexId any = -1;
  std::vector<VertexId> leaves;
  for (VertexId v = 0; v < host.vertex_count(); ++v) {
    if (!view.present[static_cast<std::size_t>(v)]) continue;
    ++vertices;
    any = v;
    if (view.degree(v) == 1) leaves.push_back(v);
  }
  if (tree.edges.empty()) return false;
  if (vertices != tree.length() + 1) return false;
  const auto reach = view.component(any, std::vector<bool>(static_cast<std::size_t>(host.vertex_count()), false));
  for (VertexId v = 0; v < host.vertex_count(); ++v)
    if (view.present[static_cast<std::size_t>(v)] && !reach[static_cast<std::size_t>(v)]) return false;
  return leaves == terminals;
}

/// Grows a tree from the smallest terminal, each round attaching the nearest
/// unattached terminal (smallest id on ties) by a BFS path through
/// non-terminal vertices to a non-terminal tree vertex, then trims
/// non-terminal leaves. With three or more terminals the interior is kept
/// inside the first component of host - terminals that touches every
/// terminal. Edges between two terminals are only usable when there are
/// exactly two terminals.
inline SteinerTree initial_steiner_tree(const PlaneGraph& host, std::vector<VertexId> terminals) {
  std::sort(terminals.begin(), terminals.end());
  terminals.erase(std::unique(terminals.begin(), terminals.end()), terminals.end());
  if (terminals.size() < 2) throw ValidationError("a Steiner tree needs at least two terminals");
  const int n = host.vertex_count();
  for (VertexId t : terminals)
    if (t < 0 || t >= n) throw ValidationError("terminal out of range");

  std::vector<bool> is_terminal(static_cast<std::size_t>(n), false), in_tree(static_cast<std::size_t>(n), false),
      attached(static_cast<std::size_t>(n), false);
  for (VertexId t : terminals) is_terminal[static_cast<std::size_t>(t)] = true;
  const bool allow_terminal_edges = terminals.size() == 2;
  const auto adj = detail::host_adjacency(host);

  // Interior vertices allowed on tree paths.
  std::vector<bool> usable(static_cast<std::size_t>(n), true);
  if (!allow_terminal_edges) {
    std::vector<int> comp(static_cast<std::size_t>(n), -1);
    int found = -1;
    for (VertexId s = 0; s < n && found < 0; ++s) {
      if (is_terminal[static_cast<std::size_t>(s)] || comp[static_cast<std::size_t>(s)] >= 0) continue;
      std::vector<VertexId> stack{s};
      comp[static_cast<std::size_t>(s)] = s;
      std::vector<bool> touched(static_cast<std::size_t>(n), false);
      while (!stack.empty()) {
        const VertexId x = stack.back();
        stack.pop_back();
        for (const auto& [e, y] : adj[static_cast<std::size_t>(x)]) {
          if (is_terminal[static_cast<std::size_t>(y)]) touched[static_cast<std::size_t>(y)] = true;
          else if (comp[static_cast<std::size_t>(y)] < 0) {
            comp[static_cast<std::size_t>(y)] = s;
            stack.push_back(y);
          }
        }
      }
      if (std::all_of(terminals.begin(), terminals.end(), [&](VertexId t) { return touched[static_cast<std::size_t>(t)]; })) found = s;
    }
    if (found < 0) throw DisconnectedError("terminals cannot all be joined by a Steiner tree");
    for (VertexId v = 0; v < n; ++v) usable[static_cast<std::size_t>(v)] = is_terminal[static_cast<std::size_t>(v)] || comp[static_cast<std::size_t>(v)] == found;
  }
  std::set<EdgeId> edges;
  in_tree[static_cast<std::size_t>(terminals[0])] = attached[static_cast<std::size_t>(terminals[0])] = true;
  std::size_t remaining = terminals.size() - 1;
  while (remaining > 0) {
    std::vector<int> dist(static_cast<std::size_t>(n), -1);
    std::vector<EdgeId> via(static_cast<std::size_t>(n), -1);
    std::deque<VertexId> queue;
    for (VertexId v = 0; v < n; ++v) {
      if (!in_tree[static_cast<std::size_t>(v)]) continue;
      if (is_terminal[static_cast<std::size_t>(v)] && !edges.empty()) continue;
      dist[static_cast<std::size_t>(v)] = 0;
      queue.push_back(v);
    }
    while (!queue.empty()) {
      const VertexId x = queue.front();
      queue.pop_front();
      if (is_terminal[static_cast<std::size_t>(x)] && dist[static_cast<std::size_t>(x)] > 0) continue;  // never pass through
      for (const auto& [e, y] : adj[static_cast<std::size_t>(x)]) {
        if (dist[static_cast<std::size_t>(y)] != -1 || in_tree[static_cast<std::size_t>(y)] || !usable[static_cast<std::size_t>(y)]) continue;
        if (!allow_terminal_edges && is_terminal[static_cast<std::size_t>(x)] && is_terminal[static_cast<std::size_t>(y)]) continue;
        dist[static_cast<std::size_t>(y)] = dist[static_cast<std::size_t>(x)] + 1;
        via[static_cast<std::size_t>(y)] = e;
        queue.push_back(y);
      }
    }
    VertexId best = -1;
    for (VertexId t : terminals) {
      if (attached[static_cast<std::size_t>(t)] || dist[static_cast<std::size_t>(t)] < 0) continue;
      if (best == -1 || dist[static_cast<std::size_t>(t)] < dist[static_cast<std::size_t>(best)]) best = t;
    }
    if (best == -1) throw DisconnectedError("terminals cannot all be joined by a Steiner tree");
    for (VertexId x = best; !in_tree[static_cast<std::size_t>(x)];) {
      const EdgeId e = via[static_cast<std::size_t>(x)];
      edges.insert(e);
      in_tree[static_cast<std::size_t>(x)] = true;
      const Edge& ed = host.edge(e);
      x = ed.u == x ? ed.v : ed.u;
    }
    attached[static_cast<std::size_t>(best)] = true;
    --remaining;
  }

  // Drop non-terminal leaves until none are left.
  std::vector<EdgeId> list(edges.begin(), edges.end());
  for (bool changed = true; changed;) {
    changed = false;
    detail::TreeView view(host, list);
    std::vector<EdgeId> kept;
    for (EdgeId e : list) {
      const Edge& ed = host.edge(e);
      const bool trim = (view.degree(ed.u) == 1 && !is_terminal[static_cast<std::size_t>(ed.u)]) ||
                        (view.degree(ed.v) == 1 && !is_terminal[static_cast<std::size_t>(ed.v)]);
      if (trim) changed = true;
      else kept.push_back(e);
    }
    list = std::move(kept);
  }
  return SteinerTree{list, terminals};
}

/// Splits the tree's edges into maximal degree-2 paths. Paths are found from
/// their smaller end vertex, in vertex then edge id order.
inline std::vector<TreePath> degree2_paths(const PlaneGraph& host, const SteinerTree& tree) {
  detail::TreeView view(host, tree.edges);
  std::set<EdgeId> used;
  std::vector<TreePath> out;
  for (VertexId s = 0; s < host.vertex_count(); ++s) {
    if (!view.present[static_cast<std::size_t>(s)] || view.degree(s) == 2) continue;
    for (const auto& [e0, y0] : view.adj[static_cast<std::size_t>(s)]) {
      if (used.count(e0)) continue;
      TreePath p;
      p.vertices.push_back(s);
      EdgeId e = e0;
      VertexId y = y0;
      for (;;) {
        used.insert(e);
        p.edges.push_back(e);
        p.vertices.push_back(y);
        if (view.degree(y) != 2) break;
        const auto& nb = view.adj[static_cast<std::size_t>(y)];
        const auto& nxt = nb[0].first == e ? nb[1] : nb[0];
        e = nxt.first;
        y = nxt.second;
      }
      out.push_back(std::move(p));
    }
  }
  return out;
}

namespace detail {

// Shortest host path from the u-side to the v-side of `path`, with ends
// restricted so that short-cutting keeps every leaf a leaf.
inline std::optional<TreePath> shortest_shortcut(const PlaneGraph& host, const SteinerTree& tree, const TreeView& view,
                                                 const TreePath& path) {
  const int n = host.vertex_count();
  std::vector<bool> inner(static_cast<std::size_t>(n), false);
  for (std::size_t i = 1; i + 1 < path.vertices.size(); ++i) inner[static_cast<std::size_t>(path.vertices[i])] = true;
  const auto side_u = view.component(path.front(), inner);
  const auto side_v = view.component(path.back(), inner);
  auto is_leaf = [&](VertexId x) { return std::binary_search(tree.leaves.begin(), tree.leaves.end(), x); };
  auto usable_end = [&](VertexId x, VertexId own_end) { return !is_leaf(x) || x == own_end; };

  std::vector<int> dist(static_cast<std::size_t>(n), -1);
  std::vector<EdgeId> via(static_cast<std::size_t>(n), -1);
  std::deque<VertexId> queue;
  for (VertexId x = 0; x < n; ++x) {
    if (side_u[static_cast<std::size_t>(x)] && usable_end(x, path.front())) {
      dist[static_cast<std::size_t>(x)] = 0;
      queue.push_back(x);
    }
  }
  const auto adj = host_adjacency(host);
  while (!queue.empty()) {
    const VertexId x = queue.front();
    queue.pop_front();
    for (const auto& [e, y] : adj[static_cast<std::size_t>(x)]) {
      if (dist[static_cast<std::size_t>(y)] != -1) continue;
      if (side_u[static_cast<std::size_t>(y)]) continue;
      const bool on_v = side_v[static_cast<std::size_t>(y)];
      if (on_v && !usable_end(y, path.back())) continue;
      dist[static_cast<std::size_t>(y)] = dist[static_cast<std::size_t>(x)] + 1;
      via[static_cast<std::size_t>(y)] = e;
      if (on_v) {
        TreePath p;
        for (VertexId z = y;;) {
          p.vertices.push_back(z);
          if (dist[static_cast<std::size_t>(z)] == 0) break;
          const EdgeId ez = via[static_cast<std::size_t>(z)];
          p.edges.push_back(ez);
          const Edge& ed = host.edge(ez);
          z = ed.u == z ? ed.v : ed.u;
        }
        std::reverse(p.vertices.begin(), p.vertices.end());
        std::reverse(p.edges.begin(), p.edges.end());
        return p;
      }
      queue.push_back(y);
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// First maximal degree-2 path (in degree2_paths order) admitting a strictly
/// shorter host path between the two tree components it joins, together
/// with the shortest such path.
inline std::optional<Detour> find_detour(const PlaneGraph& host, const SteinerTree& tree) {
  detail::TreeView view(host, tree.edges);
  for (const TreePath& path : degree2_paths(host, tree)) {
    if (path.length() < 2) continue;
    auto shortcut = detail::shortest_shortcut(host, tree, view, path);
    if (shortcut && shortcut->length() < path.length()) return Detour{path.front(), path.back(), path, *shortcut};
  }
  return std::nullopt;
}

/// Replaces the detour's path by its shortcut.
inline SteinerTree apply_shortcut(const SteinerTree& tree, const Detour& detour) {
  std::set<EdgeId> edges(tree.edges.begin(), tree.edges.end());
  for (EdgeId e : detour.path.edges) edges.erase(e);
  edges.insert(detour.shortcut.edges.begin(), detour.shortcut.edges.end());
  return SteinerTree{{edges.begin(), edges.end()}, tree.leaves};
}

struct DetourRemoval {
  SteinerTree tree;
  int iterations = 0;
};

/// Short-cuts detours until none remain. Each step removes at least one
/// edge, so the loop runs at most `tree.length()` times.
inline DetourRemoval remove_detours(const PlaneGraph& host, SteinerTree tree) {
  DetourRemoval out;
  const int bound = tree.length();
  while (auto detour = find_detour(host, tree)) {
    tree = apply_shortcut(tree, *detour);
    if (++out.iterations > bound) throw std::logic_error("detour removal failed to shrink the tree");
  }
  out.tree = std::move(tree);
  return out;
}

enum class PathEnd { U, V };

inline constexpr int kDefaultNear = 2;
inline constexpr int kDefaultFar = 8;

/// Minimum vertex set separating, in the host, the tree component holding
/// the chosen end of `path` once the path vertex `near` steps away is
/// removed, from the component holding the other end once the path vertex
/// `far` steps away is removed.
inline VertexSeparator separator(const PlaneGraph& host, const SteinerTree& tree, const TreePath& path, PathEnd end,
                                 int near = kDefaultNear, int far = kDefaultFar) {
  if (near < 1 || far <= near || path.length() <= far)
    throw PathTooShortError("path of length " + std::to_string(path.length()) + " cannot host cut points at " +
                            std::to_string(near) + " and " + std::to_string(far));
  std::vector<VertexId> walk = path.vertices;
  if (end == PathEnd::V) std::reverse(walk.begin(), walk.end());
  detail::TreeView view(host, tree.edges);
  const int n = host.vertex_count();

  std::vector<bool> cut_near(static_cast<std::size_t>(n), false), cut_far(static_cast<std::size_t>(n), false);
  cut_near[static_cast<std::size_t>(walk[static_cast<std::size_t>(near)])] = true;
  cut_far[static_cast<std::size_t>(walk[static_cast<std::size_t>(far)])] = true;
  const auto near_side = view.component(walk.front(), cut_near);
  const auto far_side = view.component(walk.back(), cut_far);
  std::vector<VertexId> a, b;
  for (VertexId x = 0; x < n; ++x) {
    if (near_side[static_cast<std::size_t>(x)]) a.push_back(x);
    if (far_side[static_cast<std::size_t>(x)]) b.push_back(x);
  }
  return min_vertex_separator(host, a, b);
}

inline std::string serialize_tree(const SteinerTree& tree) {
  std::ostringstream out;
  out << "stree";
  for (EdgeId e : tree.edges) out << ' ' << e + 1;
  out << '\n';
  return out.str();
}

}  // namespace pdp
