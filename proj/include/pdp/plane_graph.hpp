#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>

#include "pdp/error.hpp"

namespace pdp {

using VertexId = int;
using EdgeId = int;
using DartId = int;
using FaceId = int;

// Edge e owns darts 2e (sitting at its first endpoint) and 2e+1 (sitting at
// its second endpoint). Read as an arc, a dart points away from the vertex it
// sits at.
constexpr DartId dart_of(EdgeId e, int end) noexcept { return 2 * e + end; }
constexpr EdgeId edge_of(DartId d) noexcept { return d >> 1; }
constexpr int end_of(DartId d) noexcept { return d & 1; }
constexpr DartId twin(DartId d) noexcept { return d ^ 1; }

struct Edge {
  VertexId u = 0;
  VertexId v = 0;
};

/// A face walk. `boundary` lists darts in traversal order with the face on
/// the left of every dart; an isolated vertex owns a single face with an
/// empty boundary, recorded through `anchor`.
struct Face {
  FaceId id = 0;
  std::vector<DartId> boundary;
  VertexId anchor = 0;

  int length() const noexcept { return static_cast<int>(boundary.size()); }
};

/// Embedded multigraph described by a rotation system (clockwise dart order
/// per vertex). Immutable once built; faces and components are computed
/// eagerly at construction.
///
/// Faces are traced per connected component, so a graph with C components
/// has C outer walks. `face_count()` returns the number of walks and
/// `plane_face_count()` the number of regions of the plane, which identifies
/// those outer walks.
class PlaneGraph {
 public:
  PlaneGraph() = default;

  /// Builds an embedded graph. With `rotations` present every dart must be
  /// listed exactly once at its own vertex and the result must satisfy
  /// Euler's formula; without, a planar embedding is computed. `outer_dart`
  /// picks the outer face as the face on the left of that dart.
  static PlaneGraph build(int vertex_count, std::vector<Edge> edges,
                          std::optional<std::vector<std::vector<DartId>>> rotations = std::nullopt,
                          std::optional<DartId> outer_dart = std::nullopt);

  int vertex_count() const noexcept { return vertex_count_; }
  int edge_count() const noexcept { return static_cast<int>(edges_.size()); }
  int dart_count() const noexcept { return 2 * edge_count(); }
  int face_count() const noexcept { return static_cast<int>(faces_.size()); }
  int plane_face_count() const noexcept { return face_count() - (component_count_ - 1); }
  int component_count() const noexcept { return component_count_; }

  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_.at(static_cast<std::size_t>(e)); }
  bool is_loop(EdgeId e) const { return edge(e).u == edge(e).v; }

  /// Vertex the dart sits at (the tail of the dart read as an arc).
  VertexId tail(DartId d) const {
    const Edge& e = edge(edge_of(d));
    return end_of(d) == 0 ? e.u : e.v;
  }
  VertexId head(DartId d) const { return tail(twin(d)); }

  const std::vector<DartId>& rotation(VertexId v) const { return rotations_.at(static_cast<std::size_t>(v)); }
  int degree(VertexId v) const { return static_cast<int>(rotation(v).size()); }
  int position(DartId d) const { return position_[static_cast<std::size_t>(d)]; }

  DartId next_cw(DartId d) const {
    const auto& rot = rotation(tail(d));
    return rot[(static_cast<std::size_t>(position(d)) + 1) % rot.size()];
  }
  DartId prev_cw(DartId d) const {
    const auto& rot = rotation(tail(d));
    return rot[(static_cast<std::size_t>(position(d)) + rot.size() - 1) % rot.size()];
  }
  /// Successor of `d` along its face walk.
  DartId face_successor(DartId d) const { return next_cw(twin(d)); }

  const std::vector<Face>& faces() const noexcept { return faces_; }
  const Face& face(FaceId f) const { return faces_.at(static_cast<std::size_t>(f)); }
  /// Face on the left of the dart read as an arc.
  FaceId left_face(DartId d) const { return face_of_dart_[static_cast<std::size_t>(d)]; }
  FaceId right_face(DartId d) const { return left_face(twin(d)); }
  FaceId outer_face() const noexcept { return outer_face_; }

  int component(VertexId v) const { return component_of_[static_cast<std::size_t>(v)]; }

  /// V - E + F = 1 + C with F counted as regions of the plane.
  bool satisfies_euler() const noexcept {
    return vertex_count_ - edge_count() + plane_face_count() == 1 + component_count_;
  }

  /// Every dart lies on exactly one face walk and face lengths add to 2|E|.
  bool darts_partitioned() const;

  std::vector<VertexId> neighbors(VertexId v) const {
    std::vector<VertexId> out;
    for (DartId d : rotation(v)) out.push_back(head(d));
    return out;
  }

  /// Rotation system as stored; feeding it back to build() reproduces the graph.
  const std::vector<std::vector<DartId>>& rotations() const noexcept { return rotations_; }

  friend bool operator==(const PlaneGraph& a, const PlaneGraph& b) {
    if (a.vertex_count_ != b.vertex_count_ || a.outer_face_ != b.outer_face_) return false;
    if (a.edges_.size() != b.edges_.size()) return false;
    for (std::size_t i = 0; i < a.edges_.size(); ++i)
      if (a.edges_[i].u != b.edges_[i].u || a.edges_[i].v != b.edges_[i].v) return false;
    return a.rotations_ == b.rotations_;
  }

 private:
  void validate_rotations() const;
  void compute_structure(std::optional<DartId> outer_dart);

  int vertex_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<DartId>> rotations_;
  std::vector<int> position_;
  std::vector<Face> faces_;
  std::vector<FaceId> face_of_dart_;
  std::vector<int> component_of_;
  int component_count_ = 0;
  FaceId outer_face_ = 0;
};

namespace detail {

// Planar embedding of the underlying simple graph via Boyer-Myrvold, with
// parallel copies and loops spliced back in next to their representative.
inline std::vector<std::vector<DartId>> compute_embedding(int n, const std::vector<Edge>& edges) {
  using BGraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS,
                                       boost::property<boost::vertex_index_t, int>,
                                       boost::property<boost::edge_index_t, int>>;
  std::map<std::pair<int, int>, std::vector<EdgeId>> groups;
  std::vector<std::vector<EdgeId>> loops(static_cast<std::size_t>(n));
  for (EdgeId e = 0; e < static_cast<EdgeId>(edges.size()); ++e) {
    const auto [u, v] = edges[static_cast<std::size_t>(e)];
    if (u == v) {
      loops[static_cast<std::size_t>(u)].push_back(e);
    } else {
      groups[{std::min(u, v), std::max(u, v)}].push_back(e);
    }
  }

  BGraph g(static_cast<std::size_t>(n));
  std::vector<std::pair<int, int>> rep_key;
  int idx = 0;
  for (const auto& [key, ids] : groups) {
    boost::add_edge(static_cast<std::size_t>(key.first), static_cast<std::size_t>(key.second), idx++, g);
    rep_key.push_back(key);
  }

  using EdgeDesc = boost::graph_traits<BGraph>::edge_descriptor;
  std::vector<std::vector<EdgeDesc>> embedding(static_cast<std::size_t>(n));
  const bool planar = boost::boyer_myrvold_planarity_test(
      boost::boyer_myrvold_params::graph = g,
      boost::boyer_myrvold_params::embedding =
          boost::make_iterator_property_map(embedding.begin(), boost::get(boost::vertex_index, g)));
  if (!planar) throw NonPlanarError("graph is not planar");

  auto dart_at = [&](EdgeId e, VertexId v) {
    return dart_of(e, edges[static_cast<std::size_t>(e)].u == v ? 0 : 1);
  };
  auto edge_index = boost::get(boost::edge_index, g);
  std::vector<std::vector<DartId>> rotations(static_cast<std::size_t>(n));
  for (VertexId v = 0; v < n; ++v) {
    auto& rot = rotations[static_cast<std::size_t>(v)];
    for (const EdgeDesc& ed : embedding[static_cast<std::size_t>(v)]) {
      const auto& key = rep_key[static_cast<std::size_t>(edge_index[ed])];
      const auto& ids = groups.at(key);
      // Parallel copies run in opposite orders at the two ends.
      if (v == key.first) {
        for (EdgeId e : ids) rot.push_back(dart_at(e, v));
      } else {
        for (auto it = ids.rbegin(); it != ids.rend(); ++it) rot.push_back(dart_at(*it, v));
      }
    }
    for (EdgeId e : loops[static_cast<std::size_t>(v)]) {
      rot.push_back(dart_of(e, 0));
      rot.push_back(dart_of(e, 1));
    }
  }
  return rotations;
}

}  // namespace detail

inline PlaneGraph PlaneGraph::build(int vertex_count, std::vector<Edge> edges,
                                    std::optional<std::vector<std::vector<DartId>>> rotations,
                                    std::optional<DartId> outer_dart) {
  if (vertex_count < 0) throw ValidationError("negative vertex count");
  for (const Edge& e : edges) {
    if (e.u < 0 || e.u >= vertex_count || e.v < 0 || e.v >= vertex_count)
      throw ValidationError("edge endpoint out of range");
  }
  PlaneGraph g;
  g.vertex_count_ = vertex_count;
  g.edges_ = std::move(edges);
  const bool given = rotations.has_value();
  g.rotations_ = given ? std::move(*rotations) : detail::compute_embedding(vertex_count, g.edges_);
  g.validate_rotations();
  if (outer_dart && (*outer_dart < 0 || *outer_dart >= g.dart_count()))
    throw ValidationError("outer dart out of range");
  g.compute_structure(outer_dart);
  if (!g.satisfies_euler()) {
    throw NonPlanarError(given ? "rotation system violates Euler's formula"
                               : "computed embedding violates Euler's formula");
  }
  return g;
}

inline void PlaneGraph::validate_rotations() const {
  if (static_cast<int>(rotations_.size()) != vertex_count_)
    throw MalformedRotationError("rotation count does not match vertex count");
  std::vector<int> seen(static_cast<std::size_t>(dart_count()), 0);
  for (VertexId v = 0; v < vertex_count_; ++v) {
    for (DartId d : rotations_[static_cast<std::size_t>(v)]) {
      if (d < 0 || d >= dart_count())
        throw MalformedRotationError("dart out of range at vertex " + std::to_string(v + 1));
      if (tail(d) != v)
        throw MalformedRotationError("dart of edge " + std::to_string(edge_of(d) + 1) +
                                     " listed at foreign vertex " + std::to_string(v + 1));
      if (++seen[static_cast<std::size_t>(d)] > 1)
        throw MalformedRotationError("dart of edge " + std::to_string(edge_of(d) + 1) + " duplicated");
    }
  }
  for (DartId d = 0; d < dart_count(); ++d) {
    if (seen[static_cast<std::size_t>(d)] == 0)
      throw MalformedRotationError("dart of edge " + std::to_string(edge_of(d) + 1) + " missing");
  }
}

inline void PlaneGraph::compute_structure(std::optional<DartId> outer_dart) {
  position_.assign(static_cast<std::size_t>(dart_count()), -1);
  for (const auto& rot : rotations_)
    for (std::size_t i = 0; i < rot.size(); ++i) position_[static_cast<std::size_t>(rot[i])] = static_cast<int>(i);

  faces_.clear();
  face_of_dart_.assign(static_cast<std::size_t>(dart_count()), -1);
  for (DartId start = 0; start < dart_count(); ++start) {
    if (face_of_dart_[static_cast<std::size_t>(start)] != -1) continue;
    Face f;
    f.id = static_cast<FaceId>(faces_.size());
    f.anchor = tail(start);
    DartId d = start;
    do {
      face_of_dart_[static_cast<std::size_t>(d)] = f.id;
      f.boundary.push_back(d);
      d = face_successor(d);
    } while (d != start);
    faces_.push_back(std::move(f));
  }
  for (VertexId v = 0; v < vertex_count_; ++v) {
    if (!rotations_[static_cast<std::size_t>(v)].empty()) continue;
    Face f;
    f.id = static_cast<FaceId>(faces_.size());
    f.anchor = v;
    faces_.push_back(std::move(f));
  }

  component_of_.assign(static_cast<std::size_t>(vertex_count_), -1);
  component_count_ = 0;
  std::vector<VertexId> stack;
  for (VertexId s = 0; s < vertex_count_; ++s) {
    if (component_of_[static_cast<std::size_t>(s)] != -1) continue;
    component_of_[static_cast<std::size_t>(s)] = component_count_;
    stack.push_back(s);
    while (!stack.empty()) {
      VertexId x = stack.back();
      stack.pop_back();
      for (DartId d : rotations_[static_cast<std::size_t>(x)]) {
        VertexId y = head(d);
        if (component_of_[static_cast<std::size_t>(y)] == -1) {
          component_of_[static_cast<std::size_t>(y)] = component_count_;
          stack.push_back(y);
        }
      }
    }
    ++component_count_;
  }

  if (outer_dart) {
    outer_face_ = face_of_dart_[static_cast<std::size_t>(*outer_dart)];
  } else {
    // Longest walk; walks are numbered by their smallest dart, so the first
    // maximum also has the smallest dart among ties.
    outer_face_ = 0;
    for (const Face& f : faces_)
      if (f.length() > faces_[static_cast<std::size_t>(outer_face_)].length()) outer_face_ = f.id;
  }
}

inline bool PlaneGraph::darts_partitioned() const {
  std::vector<int> hits(static_cast<std::size_t>(dart_count()), 0);
  std::size_t total = 0;
  for (const Face& f : faces_) {
    total += f.boundary.size();
    for (DartId d : f.boundary) {
      if (face_of_dart_[static_cast<std::size_t>(d)] != f.id) return false;
      ++hits[static_cast<std::size_t>(d)];
    }
  }
  if (total != static_cast<std::size_t>(2 * edge_count())) return false;
  return std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; });
}

// ---------------------------------------------------------------------------
// Derived embeddings

/// Dual graph: dual vertex f per face walk, dual edge e* joining the faces on
/// either side of e. Dual dart ids coincide with primal dart ids.
inline PlaneGraph dual(const PlaneGraph& g) {
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(g.edge_count()));
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    edges.push_back({g.left_face(dart_of(e, 0)), g.left_face(dart_of(e, 1))});
  std::vector<std::vector<DartId>> rot(static_cast<std::size_t>(g.face_count()));
  for (const Face& f : g.faces())
    rot[static_cast<std::size_t>(f.id)].assign(f.boundary.rbegin(), f.boundary.rend());
  return PlaneGraph::build(g.face_count(), std::move(edges), std::move(rot));
}

struct RadialOrigin {
  bool is_face = false;
  int id = 0;  // vertex id or face id in the source graph
};

struct RadialCompletion {
  PlaneGraph graph;
  std::vector<RadialOrigin> origin;  // per vertex of `graph`
  int original_edges = 0;            // edges [0, original_edges) are the source edges

  bool is_radial_edge(EdgeId e) const noexcept { return e >= original_edges; }
};

/// Adds one vertex per face walk and joins it to every vertex incidence along
/// that walk. Source vertices and edges keep their ids; face f becomes vertex
/// `vertex_count() + f`.
inline RadialCompletion radial_completion(const PlaneGraph& g) {
  const int n = g.vertex_count();
  const int m = g.edge_count();
  std::vector<Edge> edges = g.edges();
  std::vector<EdgeId> corner_edge(static_cast<std::size_t>(g.dart_count()), -1);
  std::vector<std::vector<DartId>> face_rot(static_cast<std::size_t>(g.face_count()));
  std::vector<EdgeId> isolated_edge(static_cast<std::size_t>(n), -1);

  for (const Face& f : g.faces()) {
    const VertexId fv = n + f.id;
    if (f.boundary.empty()) {
      const EdgeId r = static_cast<EdgeId>(edges.size());
      edges.push_back({f.anchor, fv});
      isolated_edge[static_cast<std::size_t>(f.anchor)] = r;
      face_rot[static_cast<std::size_t>(f.id)].push_back(dart_of(r, 1));
      continue;
    }
    std::vector<DartId> around;
    for (DartId d : f.boundary) {
      const EdgeId r = static_cast<EdgeId>(edges.size());
      edges.push_back({g.tail(d), fv});
      corner_edge[static_cast<std::size_t>(d)] = r;
      around.push_back(dart_of(r, 1));
    }
    // The walk keeps the face on its left, so it circles the face vertex
    // counter-clockwise.
    face_rot[static_cast<std::size_t>(f.id)].assign(around.rbegin(), around.rend());
  }

  std::vector<std::vector<DartId>> rot(static_cast<std::size_t>(n + g.face_count()));
  for (VertexId v = 0; v < n; ++v) {
    auto& out = rot[static_cast<std::size_t>(v)];
    if (g.rotation(v).empty()) {
      out.push_back(dart_of(isolated_edge[static_cast<std::size_t>(v)], 0));
      continue;
    }
    for (DartId d : g.rotation(v)) {
      out.push_back(dart_of(corner_edge[static_cast<std::size_t>(d)], 0));
      out.push_back(d);
    }
  }
  for (FaceId f = 0; f < g.face_count(); ++f) rot[static_cast<std::size_t>(n + f)] = std::move(face_rot[static_cast<std::size_t>(f)]);

  RadialCompletion out;
  out.original_edges = m;
  out.origin.reserve(static_cast<std::size_t>(n + g.face_count()));
  for (VertexId v = 0; v < n; ++v) out.origin.push_back({false, v});
  for (FaceId f = 0; f < g.face_count(); ++f) out.origin.push_back({true, f});
  out.graph = PlaneGraph::build(n + g.face_count(), std::move(edges), std::move(rot));
  return out;
}

/// Copy j of edge e gets id e*copies + j.
constexpr EdgeId parallel_copy(EdgeId e, int copies, int j) noexcept { return e * copies + j; }
constexpr EdgeId copy_parent(EdgeId copy, int copies) noexcept { return copy / copies; }

/// Replaces every edge by `copies` parallel edges in consecutive rotation
/// positions; each consecutive pair of copies bounds a new digon face.
inline PlaneGraph multiply_edges(const PlaneGraph& g, int copies) {
  if (copies < 1) throw ValidationError("edge multiplicity must be positive");
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(g.edge_count() * copies));
  for (const Edge& e : g.edges())
    for (int j = 0; j < copies; ++j) edges.push_back(e);

  auto expand = [copies](DartId d, std::vector<DartId>& out) {
    const EdgeId e = edge_of(d);
    if (end_of(d) == 0) {
      for (int j = 0; j < copies; ++j) out.push_back(dart_of(parallel_copy(e, copies, j), 0));
    } else {
      for (int j = copies - 1; j >= 0; --j) out.push_back(dart_of(parallel_copy(e, copies, j), 1));
    }
  };
  std::vector<std::vector<DartId>> rot(static_cast<std::size_t>(g.vertex_count()));
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    for (DartId d : g.rotation(v)) expand(d, rot[static_cast<std::size_t>(v)]);

  std::optional<DartId> outer;
  const Face& of = g.face(g.outer_face());
  if (!of.boundary.empty()) {
    const DartId d = of.boundary.front();
    const int j = end_of(d) == 0 ? 0 : copies - 1;
    outer = dart_of(parallel_copy(edge_of(d), copies, j), end_of(d));
  }
  return PlaneGraph::build(g.vertex_count(), std::move(edges), std::move(rot), outer);
}

struct Subgraph {
  PlaneGraph graph;
  std::vector<VertexId> vertex_origin;  // new id -> old id
  std::vector<EdgeId> edge_origin;      // new id -> old id
};

/// Subgraph induced by the vertices with keep[v] set; the embedding is
/// inherited. The outer face follows the first surviving dart of the old one.
inline Subgraph induced_subgraph(const PlaneGraph& g, const std::vector<bool>& keep) {
  Subgraph out;
  std::vector<VertexId> new_vertex(static_cast<std::size_t>(g.vertex_count()), -1);
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (keep[static_cast<std::size_t>(v)]) {
      new_vertex[static_cast<std::size_t>(v)] = static_cast<VertexId>(out.vertex_origin.size());
      out.vertex_origin.push_back(v);
    }
  }
  std::vector<EdgeId> new_edge(static_cast<std::size_t>(g.edge_count()), -1);
  std::vector<Edge> edges;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    if (!keep[static_cast<std::size_t>(ed.u)] || !keep[static_cast<std::size_t>(ed.v)]) continue;
    new_edge[static_cast<std::size_t>(e)] = static_cast<EdgeId>(edges.size());
    edges.push_back({new_vertex[static_cast<std::size_t>(ed.u)], new_vertex[static_cast<std::size_t>(ed.v)]});
    out.edge_origin.push_back(e);
  }
  auto map_dart = [&](DartId d) { return dart_of(new_edge[static_cast<std::size_t>(edge_of(d))], end_of(d)); };
  std::vector<std::vector<DartId>> rot(out.vertex_origin.size());
  for (std::size_t i = 0; i < out.vertex_origin.size(); ++i)
    for (DartId d : g.rotation(out.vertex_origin[i]))
      if (new_edge[static_cast<std::size_t>(edge_of(d))] != -1) rot[i].push_back(map_dart(d));

  std::optional<DartId> outer;
  for (DartId d : g.face(g.outer_face()).boundary) {
    if (new_edge[static_cast<std::size_t>(edge_of(d))] != -1) {
      outer = map_dart(d);
      break;
    }
  }
  out.graph = PlaneGraph::build(static_cast<int>(out.vertex_origin.size()), std::move(edges), std::move(rot), outer);
  return out;
}

}  // namespace pdp
