#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "pdp/error.hpp"
#include "pdp/instance.hpp"
#include "pdp/plane_graph.hpp"

namespace pdp {

/// 1-based grid coordinate.
struct GridCell {
  int row = 1;
  int col = 1;
};

constexpr VertexId grid_vertex(int cols, GridCell c) noexcept { return (c.row - 1) * cols + (c.col - 1); }

/// rows x cols grid; rotations list neighbours N, E, S, W (clockwise).
inline Instance gen_grid(int rows, int cols, const std::vector<std::pair<GridCell, GridCell>>& pairs) {
  if (rows < 2 || cols < 2) throw ValidationError("grid needs at least 2 rows and 2 columns");
  const int n = rows * cols;
  std::vector<Edge> edges;
  std::vector<EdgeId> east(static_cast<std::size_t>(n), -1), south(static_cast<std::size_t>(n), -1);
  for (int r = 1; r <= rows; ++r) {
    for (int c = 1; c <= cols; ++c) {
      const VertexId v = grid_vertex(cols, {r, c});
      if (c < cols) {
        east[static_cast<std::size_t>(v)] = static_cast<EdgeId>(edges.size());
        edges.push_back({v, grid_vertex(cols, {r, c + 1})});
      }
      if (r < rows) {
        south[static_cast<std::size_t>(v)] = static_cast<EdgeId>(edges.size());
        edges.push_back({v, grid_vertex(cols, {r + 1, c})});
      }
    }
  }
  std::vector<std::vector<DartId>> rot(static_cast<std::size_t>(n));
  for (int r = 1; r <= rows; ++r) {
    for (int c = 1; c <= cols; ++c) {
      const VertexId v = grid_vertex(cols, {r, c});
      auto& out = rot[static_cast<std::size_t>(v)];
      if (r > 1) out.push_back(dart_of(south[static_cast<std::size_t>(grid_vertex(cols, {r - 1, c}))], 1));
      if (c < cols) out.push_back(dart_of(east[static_cast<std::size_t>(v)], 0));
      if (r < rows) out.push_back(dart_of(south[static_cast<std::size_t>(v)], 0));
      if (c > 1) out.push_back(dart_of(east[static_cast<std::size_t>(grid_vertex(cols, {r, c - 1}))], 1));
    }
  }
  Instance inst;
  inst.graph = PlaneGraph::build(n, std::move(edges), std::move(rot));
  std::set<VertexId> used;
  auto take = [&](GridCell c) {
    if (c.row < 1 || c.row > rows || c.col < 1 || c.col > cols)
      throw InvalidTerminalError("grid cell (" + std::to_string(c.row) + "," + std::to_string(c.col) + ") outside the grid");
    const VertexId v = grid_vertex(cols, c);
    if (!used.insert(v).second)
      throw InvalidTerminalError("grid cell (" + std::to_string(c.row) + "," + std::to_string(c.col) + ") used twice");
    return v;
  };
  for (const auto& [s, t] : pairs) {
    inst.sources.push_back(take(s));
    inst.targets.push_back(take(t));
  }
  return inst;
}

namespace detail {

// Seeded draws built directly on the engine output so generated instances do
// not depend on the standard library's distribution implementations.
class Draw {
 public:
  explicit Draw(std::uint64_t seed) : engine_(seed) {}
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }
  template <typename T>
  void shuffle(std::vector<T>& xs) {
    for (std::size_t i = xs.size(); i > 1; --i) std::swap(xs[i - 1], xs[below(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

struct Point {
  double x = 0;
  double y = 0;
};

// Edges of the Delaunay triangulation, by testing every triple's
// circumcircle. Quartic, meant for generator-sized point sets.
inline std::set<std::pair<int, int>> delaunay_edges(const std::vector<Point>& pts) {
  const int n = static_cast<int>(pts.size());
  std::set<std::pair<int, int>> out;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      for (int c = b + 1; c < n; ++c) {
        const Point &p = pts[static_cast<std::size_t>(a)], &q = pts[static_cast<std::size_t>(b)],
                    &r = pts[static_cast<std::size_t>(c)];
        const double orient = (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x);
        if (std::abs(orient) < 1e-12) continue;
        bool empty = true;
        for (int d = 0; d < n && empty; ++d) {
          if (d == a || d == b || d == c) continue;
          const Point& s = pts[static_cast<std::size_t>(d)];
          const double ax = p.x - s.x, ay = p.y - s.y, bx = q.x - s.x, by = q.y - s.y, cx = r.x - s.x, cy = r.y - s.y;
          const double det = (ax * ax + ay * ay) * (bx * cy - cx * by) - (bx * bx + by * by) * (ax * cy - cx * ay) +
                             (cx * cx + cy * cy) * (ax * by - bx * ay);
          if ((orient > 0 ? det : -det) > 0) empty = false;
        }
        if (empty) {
          out.insert({a, b});
          out.insert({a, c});
          out.insert({b, c});
        }
      }
    }
  }
  return out;
}

inline bool connected_without(int n, const std::vector<std::pair<int, int>>& edges, std::size_t skip) {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (i == skip) continue;
    adj[static_cast<std::size_t>(edges[i].first)].push_back(edges[i].second);
    adj[static_cast<std::size_t>(edges[i].second)].push_back(edges[i].first);
  }
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  std::vector<int> stack{0};
  seen[0] = true;
  int count = 1;
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    for (int y : adj[static_cast<std::size_t>(x)]) {
      if (!seen[static_cast<std::size_t>(y)]) {
        seen[static_cast<std::size_t>(y)] = true;
        ++count;
        stack.push_back(y);
      }
    }
  }
  return count == n;
}

}  // namespace detail

/// Random connected plane graph: Delaunay triangulation of a seeded point
/// set, thinned by deleting random non-bridge edges, with k random disjoint
/// terminal pairs. A pure function of (n, k, seed).
inline Instance gen_random_planar(int n, int k, std::uint64_t seed) {
  if (k < 0 || n < 2 * k + 2) throw ValidationError("random instance needs n >= 2k + 2");
  detail::Draw draw(seed);
  for (;;) {
    std::vector<detail::Point> pts(static_cast<std::size_t>(n));
    for (auto& p : pts) p = {draw.unit(), draw.unit()};

    std::vector<std::pair<int, int>> edges;
    if (n == 2) {
      edges.push_back({0, 1});
    } else {
      auto tri = detail::delaunay_edges(pts);
      edges.assign(tri.begin(), tri.end());
    }
    const double drop = 0.15 + 0.45 * draw.unit();
    std::vector<std::size_t> order(edges.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    draw.shuffle(order);
    std::vector<bool> removed(edges.size(), false);
    for (std::size_t idx : order) {
      if (draw.unit() >= drop) continue;
      std::vector<std::pair<int, int>> rest;
      std::size_t skip = 0;
      for (std::size_t i = 0; i < edges.size(); ++i) {
        if (removed[i]) continue;
        if (i == idx) skip = rest.size();
        rest.push_back(edges[i]);
      }
      if (detail::connected_without(n, rest, skip)) removed[idx] = true;
    }
    std::vector<Edge> kept;
    for (std::size_t i = 0; i < edges.size(); ++i)
      if (!removed[i]) kept.push_back({edges[i].first, edges[i].second});

    // Clockwise = decreasing polar angle.
    std::vector<std::vector<std::pair<double, DartId>>> around(static_cast<std::size_t>(n));
    for (EdgeId e = 0; e < static_cast<EdgeId>(kept.size()); ++e) {
      const auto& p = pts[static_cast<std::size_t>(kept[static_cast<std::size_t>(e)].u)];
      const auto& q = pts[static_cast<std::size_t>(kept[static_cast<std::size_t>(e)].v)];
      around[static_cast<std::size_t>(kept[static_cast<std::size_t>(e)].u)].push_back({std::atan2(q.y - p.y, q.x - p.x), dart_of(e, 0)});
      around[static_cast<std::size_t>(kept[static_cast<std::size_t>(e)].v)].push_back({std::atan2(p.y - q.y, p.x - q.x), dart_of(e, 1)});
    }
    std::vector<std::vector<DartId>> rot(static_cast<std::size_t>(n));
    for (std::size_t v = 0; v < around.size(); ++v) {
      std::sort(around[v].begin(), around[v].end(), [](const auto& a, const auto& b) { return a.first > b.first; });
      for (const auto& [angle, d] : around[v]) rot[v].push_back(d);
    }

    Instance inst;
    try {
      inst.graph = PlaneGraph::build(n, std::move(kept), std::move(rot));
    } catch (const NonPlanarError&) {
      continue;  // degenerate point set; draw again
    }
    std::vector<VertexId> ids(static_cast<std::size_t>(n));
    for (VertexId v = 0; v < n; ++v) ids[static_cast<std::size_t>(v)] = v;
    for (std::size_t i = 0; i < static_cast<std::size_t>(2 * k); ++i) std::swap(ids[i], ids[i + draw.below(ids.size() - i)]);
    for (int i = 0; i < k; ++i) {
      inst.sources.push_back(ids[static_cast<std::size_t>(2 * i)]);
      inst.targets.push_back(ids[static_cast<std::size_t>(2 * i + 1)]);
    }
    return inst;
  }
}

/// Onion gadget: a centre vertex (id 0) inside `depth + 1` concentric cycles
/// of `ring_size` vertices joined by radial spokes. Ring r in 1..depth+1,
/// position p in 0..ring_size-1 (clockwise) is vertex 1 + (r-1)*ring_size + p.
/// Terminal pairs are positions on the outermost ring, so the centre sits
/// inside `depth` disjoint cycles that avoid every terminal.
inline Instance gen_onion(int depth, int ring_size, const std::vector<std::pair<int, int>>& outer_pairs) {
  if (depth < 1 || ring_size < 3) throw ValidationError("onion needs depth >= 1 and ring size >= 3");
  const int rings = depth + 1;
  const int n = 1 + rings * ring_size;
  auto id = [ring_size](int r, int p) { return 1 + (r - 1) * ring_size + ((p % ring_size) + ring_size) % ring_size; };

  std::vector<Edge> edges;
  std::map<std::pair<int, int>, EdgeId> lookup;
  auto add = [&](int a, int b) {
    lookup[{a, b}] = static_cast<EdgeId>(edges.size());
    edges.push_back({a, b});
  };
  for (int p = 0; p < ring_size; ++p) add(0, id(1, p));
  for (int r = 1; r <= rings; ++r) {
    for (int p = 0; p < ring_size; ++p) {
      add(id(r, p), id(r, p + 1));
      if (r < rings) add(id(r, p), id(r + 1, p));
    }
  }
  auto dart_to = [&](int from, int to) {
    if (auto it = lookup.find({from, to}); it != lookup.end()) return dart_of(it->second, 0);
    return dart_of(lookup.at({to, from}), 1);
  };
  std::vector<std::vector<DartId>> rot(static_cast<std::size_t>(n));
  for (int p = 0; p < ring_size; ++p) rot[0].push_back(dart_to(0, id(1, p)));
  for (int r = 1; r <= rings; ++r) {
    for (int p = 0; p < ring_size; ++p) {
      const int v = id(r, p);
      auto& out = rot[static_cast<std::size_t>(v)];
      if (r < rings) out.push_back(dart_to(v, id(r + 1, p)));
      out.push_back(dart_to(v, id(r, p + 1)));
      out.push_back(dart_to(v, r == 1 ? 0 : id(r - 1, p)));
      out.push_back(dart_to(v, id(r, p - 1)));
    }
  }
  Instance inst;
  inst.graph = PlaneGraph::build(n, std::move(edges), std::move(rot));
  for (const auto& [s, t] : outer_pairs) {
    inst.sources.push_back(id(rings, s));
    inst.targets.push_back(id(rings, t));
  }
  validate_instance(inst);
  return inst;
}

}  // namespace pdp
