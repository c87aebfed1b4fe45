#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "pdp/error.hpp"
#include "pdp/plane_graph.hpp"

namespace pdp {

/// Underlying simple graph: sorted neighbour lists, loops and parallel edges
/// dropped.
inline std::vector<std::vector<VertexId>> simple_adjacency(const PlaneGraph& g) {
  std::vector<std::vector<VertexId>> adj(static_cast<std::size_t>(g.vertex_count()));
  for (const Edge& e : g.edges()) {
    if (e.u == e.v) continue;
    adj[static_cast<std::size_t>(e.u)].push_back(e.v);
    adj[static_cast<std::size_t>(e.v)].push_back(e.u);
  }
  for (auto& nb : adj) {
    std::sort(nb.begin(), nb.end());
    nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
  }
  return adj;
}

struct TreeDecomposition {
  std::vector<std::vector<VertexId>> bags;  // sorted
  std::vector<int> parent;                  // -1 marks the root

  int node_count() const noexcept { return static_cast<int>(bags.size()); }
  int width() const {
    std::size_t w = 0;
    for (const auto& b : bags) w = std::max(w, b.size());
    return static_cast<int>(w) - 1;
  }
};

enum class NiceKind { Leaf, Introduce, Forget, Join };

struct NiceNode {
  NiceKind kind = NiceKind::Leaf;
  VertexId vertex = -1;  // introduced / forgotten vertex
  std::vector<int> children;
  std::vector<VertexId> bag;  // sorted
};

/// Nodes are stored children-first, so a forward sweep visits every child
/// before its parent. The root has an empty bag.
struct NiceTreeDecomposition {
  std::vector<NiceNode> nodes;
  int root = -1;

  int node_count() const noexcept { return static_cast<int>(nodes.size()); }
  int width() const {
    std::size_t w = 0;
    for (const auto& n : nodes) w = std::max(w, n.bag.size());
    return static_cast<int>(w) - 1;
  }
  TreeDecomposition as_tree_decomposition() const {
    TreeDecomposition td;
    td.parent.assign(nodes.size(), -1);
    for (const auto& n : nodes) td.bags.push_back(n.bag);
    for (std::size_t i = 0; i < nodes.size(); ++i)
      for (int c : nodes[i].children) td.parent[static_cast<std::size_t>(c)] = static_cast<int>(i);
    return td;
  }
};

enum class DecompositionStrategy { MinFill, MinDegree, ExactSmall };

inline constexpr int kExactSmallCap = 15;

/// Elimination ordering -> tree decomposition. Bag of v is v plus its later
/// neighbours in the filled graph; its parent is the earliest of those.
/// Several roots (one per component) hang below an extra empty bag.
inline TreeDecomposition decomposition_from_ordering(const std::vector<std::vector<VertexId>>& adj,
                                                     const std::vector<VertexId>& order) {
  const std::size_t n = adj.size();
  std::vector<int> pos(n);
  for (std::size_t i = 0; i < order.size(); ++i) pos[static_cast<std::size_t>(order[i])] = static_cast<int>(i);
  std::vector<std::set<VertexId>> nb(n);
  for (std::size_t v = 0; v < n; ++v) nb[v].insert(adj[v].begin(), adj[v].end());

  TreeDecomposition td;
  td.bags.resize(n);
  td.parent.assign(n, -1);
  std::vector<int> roots;
  for (VertexId v : order) {
    std::vector<VertexId> later;
    for (VertexId u : nb[static_cast<std::size_t>(v)])
      if (pos[static_cast<std::size_t>(u)] > pos[static_cast<std::size_t>(v)]) later.push_back(u);
    for (std::size_t a = 0; a < later.size(); ++a)
      for (std::size_t b = a + 1; b < later.size(); ++b) {
        nb[static_cast<std::size_t>(later[a])].insert(later[b]);
        nb[static_cast<std::size_t>(later[b])].insert(later[a]);
      }
    auto& bag = td.bags[static_cast<std::size_t>(v)];
    bag = later;
    bag.push_back(v);
    std::sort(bag.begin(), bag.end());
    if (later.empty()) {
      roots.push_back(v);
    } else {
      td.parent[static_cast<std::size_t>(v)] = *std::min_element(
          later.begin(), later.end(), [&](VertexId a, VertexId b) { return pos[static_cast<std::size_t>(a)] < pos[static_cast<std::size_t>(b)]; });
    }
  }
  if (roots.size() != 1) {
    const int top = static_cast<int>(td.bags.size());
    td.bags.emplace_back();
    td.parent.push_back(-1);
    for (int r : roots) td.parent[static_cast<std::size_t>(r)] = top;
  }
  return td;
}

namespace detail {

inline std::vector<VertexId> greedy_ordering(const std::vector<std::vector<VertexId>>& adj, bool min_fill) {
  const std::size_t n = adj.size();
  std::vector<std::set<VertexId>> nb(n);
  for (std::size_t v = 0; v < n; ++v) nb[v].insert(adj[v].begin(), adj[v].end());
  std::vector<bool> gone(n, false);
  std::vector<VertexId> order;
  auto fill = [&](VertexId v) {
    long long missing = 0;
    const auto& s = nb[static_cast<std::size_t>(v)];
    for (auto a = s.begin(); a != s.end(); ++a)
      for (auto b = std::next(a); b != s.end(); ++b)
        if (!nb[static_cast<std::size_t>(*a)].count(*b)) ++missing;
    return missing;
  };
  for (std::size_t step = 0; step < n; ++step) {
    VertexId best = -1;
    long long best_score = 0;
    for (VertexId v = 0; v < static_cast<VertexId>(n); ++v) {
      if (gone[static_cast<std::size_t>(v)]) continue;
      const long long score = min_fill ? fill(v) : static_cast<long long>(nb[static_cast<std::size_t>(v)].size());
      if (best == -1 || score < best_score) {
        best = v;
        best_score = score;
      }
    }
    const auto& s = nb[static_cast<std::size_t>(best)];
    for (auto a = s.begin(); a != s.end(); ++a)
      for (auto b = std::next(a); b != s.end(); ++b) {
        nb[static_cast<std::size_t>(*a)].insert(*b);
        nb[static_cast<std::size_t>(*b)].insert(*a);
      }
    for (VertexId u : s) nb[static_cast<std::size_t>(u)].erase(best);
    nb[static_cast<std::size_t>(best)].clear();
    gone[static_cast<std::size_t>(best)] = true;
    order.push_back(best);
  }
  return order;
}

// Exact treewidth by dynamic programming over eliminated-vertex subsets:
// tw(S) = min over v in S of max(tw(S - v), |Q(S - v, v)|) where Q(S, v) are
// the vertices outside S + v reachable from v through S.
inline std::vector<VertexId> exact_ordering(const std::vector<std::vector<VertexId>>& adj) {
  const int n = static_cast<int>(adj.size());
  if (n > kExactSmallCap)
    throw SizeLimitExceeded("exact treewidth limited to " + std::to_string(kExactSmallCap) + " vertices, got " + std::to_string(n));
  if (n == 0) return {};
  std::vector<std::uint32_t> nbmask(static_cast<std::size_t>(n), 0);
  for (int v = 0; v < n; ++v)
    for (VertexId u : adj[static_cast<std::size_t>(v)]) nbmask[static_cast<std::size_t>(v)] |= 1u << u;

  auto q_size = [&](std::uint32_t s, int v) {
    std::uint32_t comp = 1u << v, frontier = comp, seen_nb = 0;
    while (frontier) {
      std::uint32_t next = 0;
      for (std::uint32_t f = frontier; f; f &= f - 1) next |= nbmask[static_cast<std::size_t>(__builtin_ctz(f))];
      seen_nb |= next;
      frontier = next & s & ~comp;
      comp |= frontier;
    }
    return __builtin_popcount(seen_nb & ~s & ~(1u << v));
  };

  const std::uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1);
  std::vector<std::int8_t> tw(static_cast<std::size_t>(full) + 1, 0);
  std::vector<std::int8_t> choice(static_cast<std::size_t>(full) + 1, -1);
  tw[0] = -1;
  for (std::uint32_t s = 1; s <= full; ++s) {
    int best = 127;
    int arg = -1;
    for (std::uint32_t bits = s; bits; bits &= bits - 1) {
      const int v = __builtin_ctz(bits);
      const std::uint32_t rest = s & ~(1u << v);
      const int cost = std::max<int>(tw[rest], q_size(rest, v));
      if (cost < best) {
        best = cost;
        arg = v;
      }
    }
    tw[s] = static_cast<std::int8_t>(best);
    choice[s] = static_cast<std::int8_t>(arg);
  }
  std::vector<VertexId> order(static_cast<std::size_t>(n));
  std::uint32_t s = full;
  for (int i = n - 1; i >= 0; --i) {
    const int v = choice[s];
    order[static_cast<std::size_t>(i)] = v;
    s &= ~(1u << v);
  }
  return order;
}

}  // namespace detail

inline TreeDecomposition decompose(const PlaneGraph& g, DecompositionStrategy strategy = DecompositionStrategy::MinFill) {
  const auto adj = simple_adjacency(g);
  if (adj.empty()) return TreeDecomposition{{{}}, {-1}};
  std::vector<VertexId> order;
  switch (strategy) {
    case DecompositionStrategy::MinFill: order = detail::greedy_ordering(adj, true); break;
    case DecompositionStrategy::MinDegree: order = detail::greedy_ordering(adj, false); break;
    case DecompositionStrategy::ExactSmall: order = detail::exact_ordering(adj); break;
  }
  return decomposition_from_ordering(adj, order);
}

/// Checks tree shape (single root, no cycles), vertex coverage, edge coverage
/// and connectivity of every vertex's occurrence set.
inline bool validate_decomposition(const PlaneGraph& g, const TreeDecomposition& td) {
  const int nodes = td.node_count();
  if (nodes == 0 || static_cast<int>(td.parent.size()) != nodes) return false;
  int roots = 0;
  for (int i = 0; i < nodes; ++i) {
    const int p = td.parent[static_cast<std::size_t>(i)];
    if (p == -1) ++roots;
    else if (p < 0 || p >= nodes || p == i) return false;
  }
  if (roots != 1) return false;
  for (int i = 0; i < nodes; ++i) {
    int steps = 0;
    for (int x = i; x != -1; x = td.parent[static_cast<std::size_t>(x)])
      if (++steps > nodes) return false;
  }
  const int n = g.vertex_count();
  std::vector<std::vector<bool>> in(static_cast<std::size_t>(nodes), std::vector<bool>(static_cast<std::size_t>(n), false));
  for (int i = 0; i < nodes; ++i) {
    for (VertexId v : td.bags[static_cast<std::size_t>(i)]) {
      if (v < 0 || v >= n) return false;
      in[static_cast<std::size_t>(i)][static_cast<std::size_t>(v)] = true;
    }
  }
  for (VertexId v = 0; v < n; ++v) {
    // Occurrences form a subtree iff exactly one occurrence has a parent
    // that misses v.
    int tops = 0;
    for (int i = 0; i < nodes; ++i) {
      if (!in[static_cast<std::size_t>(i)][static_cast<std::size_t>(v)]) continue;
      const int p = td.parent[static_cast<std::size_t>(i)];
      if (p == -1 || !in[static_cast<std::size_t>(p)][static_cast<std::size_t>(v)]) ++tops;
    }
    if (tops != 1) return false;
  }
  for (const Edge& e : g.edges()) {
    bool covered = false;
    for (int i = 0; i < nodes && !covered; ++i)
      covered = in[static_cast<std::size_t>(i)][static_cast<std::size_t>(e.u)] && in[static_cast<std::size_t>(i)][static_cast<std::size_t>(e.v)];
    if (!covered) return false;
  }
  return true;
}

inline NiceTreeDecomposition make_nice(const TreeDecomposition& td) {
  NiceTreeDecomposition nice;
  const int nodes = td.node_count();
  std::vector<std::vector<int>> children(static_cast<std::size_t>(nodes));
  int root = -1;
  for (int i = 0; i < nodes; ++i) {
    const int p = td.parent[static_cast<std::size_t>(i)];
    if (p == -1) root = i;
    else children[static_cast<std::size_t>(p)].push_back(i);
  }

  auto add = [&](NiceKind kind, VertexId v, std::vector<int> kids, std::vector<VertexId> bag) {
    nice.nodes.push_back({kind, v, std::move(kids), std::move(bag)});
    return static_cast<int>(nice.nodes.size()) - 1;
  };
  // Walks from node `from` (bag `have`) to bag `want`: forgets first, then
  // introductions, one vertex per node.
  auto morph = [&](int from, std::vector<VertexId> have, const std::vector<VertexId>& want) {
    for (VertexId v : std::vector<VertexId>(have)) {
      if (std::binary_search(want.begin(), want.end(), v)) continue;
      have.erase(std::find(have.begin(), have.end(), v));
      from = add(NiceKind::Forget, v, {from}, have);
    }
    for (VertexId v : want) {
      if (std::binary_search(have.begin(), have.end(), v)) continue;
      have.insert(std::upper_bound(have.begin(), have.end(), v), v);
      from = add(NiceKind::Introduce, v, {from}, have);
    }
    return from;
  };

  // Post-order over the source tree without recursion.
  std::vector<int> result(static_cast<std::size_t>(nodes), -1);
  std::vector<std::pair<int, bool>> stack{{root, false}};
  while (!stack.empty()) {
    auto [t, expanded] = stack.back();
    stack.pop_back();
    const auto& bag = td.bags[static_cast<std::size_t>(t)];
    if (!expanded) {
      stack.push_back({t, true});
      for (auto it = children[static_cast<std::size_t>(t)].rbegin(); it != children[static_cast<std::size_t>(t)].rend(); ++it)
        stack.push_back({*it, false});
      continue;
    }
    std::vector<int> branches;
    for (int c : children[static_cast<std::size_t>(t)])
      branches.push_back(morph(result[static_cast<std::size_t>(c)], td.bags[static_cast<std::size_t>(c)], bag));
    if (branches.empty()) branches.push_back(morph(add(NiceKind::Leaf, -1, {}, {}), {}, bag));
    int acc = branches.front();
    for (std::size_t i = 1; i < branches.size(); ++i) acc = add(NiceKind::Join, -1, {acc, branches[i]}, bag);
    result[static_cast<std::size_t>(t)] = acc;
  }
  nice.root = morph(result[static_cast<std::size_t>(root)], td.bags[static_cast<std::size_t>(root)], {});
  return nice;
}

/// Nice-form rules on top of the tree-decomposition axioms.
inline bool validate_nice(const PlaneGraph& g, const NiceTreeDecomposition& nice) {
  if (nice.root < 0 || nice.root >= nice.node_count()) return false;
  if (!nice.nodes[static_cast<std::size_t>(nice.root)].bag.empty()) return false;
  for (int i = 0; i < nice.node_count(); ++i) {
    const NiceNode& n = nice.nodes[static_cast<std::size_t>(i)];
    for (int c : n.children)
      if (c >= i) return false;
    switch (n.kind) {
      case NiceKind::Leaf:
        if (!n.children.empty() || !n.bag.empty()) return false;
        break;
      case NiceKind::Introduce:
      case NiceKind::Forget: {
        if (n.children.size() != 1) return false;
        auto child = nice.nodes[static_cast<std::size_t>(n.children[0])].bag;
        auto bag = n.bag;
        auto& bigger = n.kind == NiceKind::Introduce ? bag : child;
        auto& smaller = n.kind == NiceKind::Introduce ? child : bag;
        auto it = std::find(bigger.begin(), bigger.end(), n.vertex);
        if (it == bigger.end()) return false;
        bigger.erase(it);
        if (bigger != smaller) return false;
        break;
      }
      case NiceKind::Join:
        if (n.children.size() != 2) return false;
        for (int c : n.children)
          if (nice.nodes[static_cast<std::size_t>(c)].bag != n.bag) return false;
        break;
    }
  }
  return validate_decomposition(g, nice.as_tree_decomposition());
}

/// PACE-style `.td` text: `s td <nodes> <width+1> <n>`, `b <node> <v>...`,
/// then one `<a> <b>` line per tree edge. Ids are 1-based.
inline std::string to_td_format(const TreeDecomposition& td, int vertex_count) {
  std::ostringstream out;
  out << "s td " << td.node_count() << ' ' << td.width() + 1 << ' ' << vertex_count << '\n';
  for (int i = 0; i < td.node_count(); ++i) {
    out << "b " << i + 1;
    for (VertexId v : td.bags[static_cast<std::size_t>(i)]) out << ' ' << v + 1;
    out << '\n';
  }
  for (int i = 0; i < td.node_count(); ++i)
    if (td.parent[static_cast<std::size_t>(i)] != -1) out << td.parent[static_cast<std::size_t>(i)] + 1 << ' ' << i + 1 << '\n';
  return out.str();
}

}  // namespace pdp
