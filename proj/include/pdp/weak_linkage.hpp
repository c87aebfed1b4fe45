#pragma once

#include <algorithm>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "pdp/error.hpp"
#include "pdp/instance.hpp"
#include "pdp/plane_graph.hpp"
#include "pdp/steiner.hpp"

namespace pdp {

/// Walk as a dart sequence; head of each dart is the tail of the next. A
/// closed walk also returns from its last dart to its first.
struct Walk {
  std::vector<DartId> darts;
  bool closed = false;

  friend bool operator==(const Walk&, const Walk&) = default;
};

using WeakLinkage = std::vector<Walk>;

/// Arrive/depart dart pair at the vertex a walk passes through.
struct TransitPair {
  DartId arrive = -1;  // sits at the vertex, belongs to the incoming edge
  DartId depart = -1;
};

inline bool is_consecutive(const PlaneGraph& g, const Walk& w) {
  for (DartId d : w.darts)
    if (d < 0 || d >= g.dart_count()) return false;
  for (std::size_t i = 0; i + 1 < w.darts.size(); ++i)
    if (g.head(w.darts[i]) != g.tail(w.darts[i + 1])) return false;
  if (w.closed && !w.darts.empty() && g.head(w.darts.back()) != g.tail(w.darts.front())) return false;
  return true;
}

/// Transit pairs grouped by vertex.
inline std::vector<std::vector<TransitPair>> transit_pairs(const PlaneGraph& g, const WeakLinkage& walks) {
  std::vector<std::vector<TransitPair>> at(static_cast<std::size_t>(g.vertex_count()));
  for (const Walk& w : walks) {
    const std::size_t len = w.darts.size();
    const std::size_t steps = w.closed ? len : (len == 0 ? 0 : len - 1);
    for (std::size_t i = 0; i < steps; ++i) {
      const DartId in = w.darts[i], out = w.darts[(i + 1) % len];
      at[static_cast<std::size_t>(g.tail(out))].push_back({twin(in), out});
    }
  }
  return at;
}

/// Chords of one vertex are laminar when walking once around the rotation
/// closes them in last-opened-first-closed order.
inline bool laminar_at(const PlaneGraph& g, VertexId v, const std::vector<TransitPair>& pairs) {
  std::vector<int> owner(static_cast<std::size_t>(g.degree(v)), -1);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    for (DartId d : {pairs[i].arrive, pairs[i].depart}) {
      auto& slot = owner[static_cast<std::size_t>(g.position(d))];
      if (slot != -1) return false;
      slot = static_cast<int>(i);
    }
  }
  std::vector<int> stack;
  for (int id : owner) {
    if (id == -1) continue;
    if (!stack.empty() && stack.back() == id) stack.pop_back();
    else stack.push_back(id);
  }
  return stack.empty();
}

/// Edge-disjoint (within and across walks) and non-crossing at every vertex.
inline bool validate_weak_linkage(const WeakLinkage& walks, const PlaneGraph& g) {
  std::vector<bool> used(static_cast<std::size_t>(g.edge_count()), false);
  for (const Walk& w : walks) {
    if (!is_consecutive(g, w)) return false;
    for (DartId d : w.darts) {
      const auto e = static_cast<std::size_t>(edge_of(d));
      if (used[e]) return false;
      used[e] = true;
    }
  }
  const auto pairs = transit_pairs(g, walks);
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (!laminar_at(g, v, pairs[static_cast<std::size_t>(v)])) return false;
  return true;
}

/// Every walk edge of `multiplied` (built with `copies` copies per edge) is
/// a copy of a tree edge, and no copy is used twice.
inline bool is_pushed_onto(const WeakLinkage& walks, const SteinerTree& tree, const PlaneGraph& multiplied, int copies) {
  const std::set<EdgeId> tree_edges(tree.edges.begin(), tree.edges.end());
  std::set<EdgeId> seen;
  for (const Walk& w : walks) {
    for (DartId d : w.darts) {
      if (d < 0 || d >= multiplied.dart_count()) return false;
      const EdgeId e = edge_of(d);
      if (!tree_edges.count(copy_parent(e, copies))) return false;
      if (!seen.insert(e).second) return false;
    }
  }
  return true;
}

/// One open walk per path, using the smallest dart between consecutive
/// vertices.
inline WeakLinkage walks_from_solution(const Instance& inst, const Solution& sol) {
  if (auto verdict = verify_solution(inst, sol); !verdict) throw InvalidSolutionError(verdict.reason);
  const PlaneGraph& g = inst.graph;
  WeakLinkage out;
  for (const auto& p : sol.paths) {
    Walk w;
    for (std::size_t j = 0; j + 1 < p.size(); ++j) {
      DartId best = -1;
      for (DartId d : g.rotation(p[j]))
        if (g.head(d) == p[j + 1] && (best == -1 || d < best)) best = d;
      w.darts.push_back(best);
    }
    out.push_back(std::move(w));
  }
  return out;
}

inline Walk reversed(const Walk& w) {
  Walk r{{}, w.closed};
  for (auto it = w.darts.rbegin(); it != w.darts.rend(); ++it) r.darts.push_back(twin(*it));
  return r;
}

/// `walk <i> <signed edge id>...`; +e travels edge e from its first endpoint,
/// -e from its second. A closed walk ends with the token `closed`.
inline std::string serialize_linkage(const WeakLinkage& walks) {
  std::ostringstream out;
  for (std::size_t i = 0; i < walks.size(); ++i) {
    out << "walk " << i + 1;
    for (DartId d : walks[i].darts) out << ' ' << (end_of(d) == 0 ? "" : "-") << edge_of(d) + 1;
    if (walks[i].closed) out << " closed";
    out << '\n';
  }
  return out.str();
}

inline WeakLinkage parse_linkage(const std::string& text) {
  WeakLinkage walks;
  detail::for_each_line(text, [&](const std::vector<std::string_view>& tok, int ln) {
    const std::string where = "line " + std::to_string(ln) + ": ";
    if (tok[0] != "walk" || tok.size() < 2) throw ParseError(where + "expected 'walk <i> <signed edge ids...>'");
    const long long i = detail::to_int(tok[1], ln);
    if (i != static_cast<long long>(walks.size()) + 1) throw ValidationError(where + "walks must be numbered 1, 2, ... in order");
    Walk w;
    for (std::size_t j = 2; j < tok.size(); ++j) {
      if (tok[j] == "closed" && j + 1 == tok.size()) {
        w.closed = true;
        break;
      }
      const long long e = detail::to_int(tok[j], ln);
      if (e == 0) throw ValidationError(where + "edge id 0 is invalid");
      w.darts.push_back(dart_of(static_cast<EdgeId>((e < 0 ? -e : e) - 1), e < 0 ? 1 : 0));
    }
    walks.push_back(std::move(w));
  });
  return walks;
}

}  // namespace pdp
