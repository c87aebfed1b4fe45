#include <gtest/gtest.h>

#include <numeric>

#include "oracles.hpp"
#include "pdp/generators.hpp"
#include "pdp/plane_graph.hpp"

using namespace pdp;

namespace {

PlaneGraph cycle(int n) {
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n});
  return PlaneGraph::build(n, edges);
}

PlaneGraph k4() { return PlaneGraph::build(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {2, 3}, {3, 1}}); }

int face_length_sum(const PlaneGraph& g) {
  int s = 0;
  for (const auto& f : g.faces()) s += f.length();
  return s;
}

void expect_structural(const PlaneGraph& g) {
  EXPECT_TRUE(g.darts_partitioned());
  EXPECT_TRUE(g.satisfies_euler());
  EXPECT_EQ(face_length_sum(g), 2 * g.edge_count());
  const auto traced = oracle::trace_faces(g);
  int nonempty = 0;
  for (const auto& f : g.faces()) nonempty += f.boundary.empty() ? 0 : 1;
  EXPECT_EQ(static_cast<int>(traced.size()), nonempty);
  const int c = oracle::components(g.vertex_count(), oracle::edge_pairs(g));
  EXPECT_EQ(g.component_count(), c);
  EXPECT_EQ(g.vertex_count() - g.edge_count() + g.plane_face_count(), 1 + c);
}

}  // namespace

TEST(PlaneGraph, FourCycleHasTwoFacesOfLengthFour) {
  const PlaneGraph g = cycle(4);
  ASSERT_EQ(g.face_count(), 2);
  EXPECT_EQ(g.face(0).length(), 4);
  EXPECT_EQ(g.face(1).length(), 4);
  expect_structural(g);
}

TEST(PlaneGraph, K4HasFourFaces) {
  const PlaneGraph g = k4();
  EXPECT_EQ(g.face_count(), 4);
  for (const auto& f : g.faces()) EXPECT_EQ(f.length(), 3);
  expect_structural(g);
}

TEST(PlaneGraph, K5IsRejected) {
  std::vector<Edge> edges;
  for (int a = 0; a < 5; ++a)
    for (int b = a + 1; b < 5; ++b) edges.push_back({a, b});
  EXPECT_THROW(PlaneGraph::build(5, edges), NonPlanarError);
}

TEST(PlaneGraph, K33IsRejected) {
  std::vector<Edge> edges;
  for (int a = 0; a < 3; ++a)
    for (int b = 3; b < 6; ++b) edges.push_back({a, b});
  EXPECT_THROW(PlaneGraph::build(6, edges), NonPlanarError);
}

TEST(PlaneGraph, NonPlanarRotationFailsEuler) {
  // K4 with one rotation flipped is a torus embedding.
  const std::vector<Edge> edges{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {2, 3}, {3, 1}};
  const PlaneGraph good = PlaneGraph::build(4, edges);
  auto rot = good.rotations();
  std::reverse(rot[0].begin(), rot[0].end());
  EXPECT_THROW(PlaneGraph::build(4, edges, rot), NonPlanarError);
}

TEST(PlaneGraph, MalformedRotationIsRejected) {
  const std::vector<Edge> edges{{0, 1}, {1, 2}, {2, 0}};
  std::vector<std::vector<DartId>> rot{{0, 5}, {1, 2}, {3}};  // dart 4 missing
  EXPECT_THROW(PlaneGraph::build(3, edges, rot), MalformedRotationError);
  rot = {{0, 5, 0}, {1, 2}, {3, 4}};
  EXPECT_THROW(PlaneGraph::build(3, edges, rot), MalformedRotationError);
  rot = {{0, 4}, {1, 2}, {3, 5}};  // dart 4 sits at vertex 2, not 0
  EXPECT_THROW(PlaneGraph::build(3, edges, rot), MalformedRotationError);
}

TEST(PlaneGraph, SingleEdgeHasOneFaceOfLengthTwo) {
  const PlaneGraph g = PlaneGraph::build(2, {{0, 1}});
  ASSERT_EQ(g.face_count(), 1);
  EXPECT_EQ(g.face(0).length(), 2);
  expect_structural(g);
}

TEST(PlaneGraph, GridThreeByThreeHasFiveFaces) {
  const Instance inst = gen_grid(3, 3, {});
  EXPECT_EQ(inst.graph.face_count(), 5);
  EXPECT_EQ(static_cast<int>(oracle::trace_faces(inst.graph).size()), 5);
  EXPECT_EQ(inst.graph.face(inst.graph.outer_face()).length(), 8);
  expect_structural(inst.graph);
}

TEST(PlaneGraph, OuterFaceDefaultsToLongestWalk) {
  // Triangle with a pendant edge: the outer walk has length 5.
  const PlaneGraph g = PlaneGraph::build(4, {{0, 1}, {1, 2}, {2, 0}, {0, 3}});
  EXPECT_EQ(g.face(g.outer_face()).length(), 5);
}

TEST(PlaneGraph, OuterFaceCanBeChosen) {
  const PlaneGraph a = cycle(4);
  const PlaneGraph b = PlaneGraph::build(4, a.edges(), a.rotations(), DartId{1});
  EXPECT_EQ(b.outer_face(), b.left_face(1));
  EXPECT_NE(b.left_face(0), b.left_face(1));
}

TEST(PlaneGraph, IsolatedVertexOwnsAnEmptyFace) {
  const PlaneGraph g = PlaneGraph::build(1, {});
  ASSERT_EQ(g.face_count(), 1);
  EXPECT_TRUE(g.face(0).boundary.empty());
  EXPECT_EQ(g.face(0).anchor, 0);
  expect_structural(g);
}

TEST(PlaneGraph, DisconnectedGraphSatisfiesEuler) {
  const PlaneGraph g = PlaneGraph::build(7, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}});
  EXPECT_EQ(g.component_count(), 3);
  expect_structural(g);
}

TEST(PlaneGraph, ParallelEdgesAndLoops) {
  const PlaneGraph g = PlaneGraph::build(2, {{0, 1}, {0, 1}, {0, 1}, {0, 0}});
  expect_structural(g);
  EXPECT_EQ(g.degree(0), 5);
}

TEST(PlaneGraph, FacesAreDeterministic) {
  const Instance a = gen_random_planar(12, 2, 5);
  const PlaneGraph b = PlaneGraph::build(a.graph.vertex_count(), a.graph.edges(), a.graph.rotations());
  EXPECT_TRUE(a.graph == b);
  ASSERT_EQ(a.graph.face_count(), b.face_count());
  for (int f = 0; f < b.face_count(); ++f) EXPECT_EQ(a.graph.face(f).boundary, b.face(f).boundary);
}

TEST(Dual, FourCycleDualIsFourParallelEdges) {
  const PlaneGraph d = dual(cycle(4));
  EXPECT_EQ(d.vertex_count(), 2);
  EXPECT_EQ(d.edge_count(), 4);
  for (const auto& e : d.edges()) EXPECT_NE(e.u, e.v);
  expect_structural(d);
}

TEST(Dual, K4DualIsK4) {
  const PlaneGraph d = dual(k4());
  EXPECT_EQ(d.vertex_count(), 4);
  EXPECT_EQ(d.edge_count(), 6);
  EXPECT_EQ(d.face_count(), 4);
}

TEST(Dual, DoubleDualHasPrimalVertexCount) {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const Instance inst = gen_random_planar(6 + static_cast<int>(seed % 9), 1, seed);
    const PlaneGraph d = dual(inst.graph);
    expect_structural(d);
    EXPECT_EQ(d.edge_count(), inst.graph.edge_count());
    EXPECT_EQ(d.component_count(), 1);
    EXPECT_EQ(dual(d).vertex_count(), inst.graph.vertex_count());
  }
}

TEST(RadialCompletion, FourCycle) {
  const RadialCompletion rc = radial_completion(cycle(4));
  EXPECT_EQ(rc.graph.vertex_count(), 6);
  EXPECT_EQ(rc.graph.edge_count(), 12);
  EXPECT_EQ(rc.original_edges, 4);
  expect_structural(rc.graph);
}

TEST(RadialCompletion, SingleVertex) {
  const RadialCompletion rc = radial_completion(PlaneGraph::build(1, {}));
  EXPECT_EQ(rc.graph.vertex_count(), 2);
  EXPECT_EQ(rc.graph.edge_count(), 1);
  EXPECT_TRUE(rc.origin[1].is_face);
}

TEST(RadialCompletion, K4) {
  const RadialCompletion rc = radial_completion(k4());
  EXPECT_EQ(rc.graph.vertex_count(), 8);
  EXPECT_EQ(rc.graph.edge_count(), 18);
  expect_structural(rc.graph);
}

TEST(RadialCompletion, NewEdgesJoinOriginalToFaceVertices) {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const Instance inst = gen_random_planar(5 + static_cast<int>(seed % 10), 1, seed + 100);
    const RadialCompletion rc = radial_completion(inst.graph);
    const int n = inst.graph.vertex_count();
    EXPECT_EQ(rc.graph.vertex_count(), n + inst.graph.face_count());
    EXPECT_EQ(rc.graph.edge_count(), inst.graph.edge_count() + 2 * inst.graph.edge_count());
    for (EdgeId e = rc.original_edges; e < rc.graph.edge_count(); ++e) {
      const Edge& ed = rc.graph.edge(e);
      EXPECT_LT(ed.u, n);
      EXPECT_GE(ed.v, n);
      EXPECT_TRUE(rc.origin[static_cast<std::size_t>(ed.v)].is_face);
    }
    expect_structural(rc.graph);
    // Every face of the completion is a triangle.
    for (const auto& f : rc.graph.faces()) EXPECT_EQ(f.length(), 3);
  }
}

TEST(MultiplyEdges, OneCopyIsIdentity) {
  const PlaneGraph g = k4();
  EXPECT_TRUE(multiply_edges(g, 1) == g);
}

TEST(MultiplyEdges, SingleEdgeThreeCopies) {
  const PlaneGraph m = multiply_edges(PlaneGraph::build(2, {{0, 1}}), 3);
  EXPECT_EQ(m.edge_count(), 3);
  EXPECT_EQ(m.face_count(), 3);
  expect_structural(m);
}

TEST(MultiplyEdges, FourCycleTwoCopies) {
  const PlaneGraph m = multiply_edges(cycle(4), 2);
  EXPECT_EQ(m.edge_count(), 8);
  EXPECT_EQ(m.face_count(), 6);
  expect_structural(m);
}

TEST(MultiplyEdges, CopiesKeepParents) {
  const PlaneGraph g = k4();
  const PlaneGraph m = multiply_edges(g, 3);
  for (EdgeId e = 0; e < m.edge_count(); ++e) {
    const Edge& a = m.edge(e);
    const Edge& b = g.edge(copy_parent(e, 3));
    EXPECT_EQ(a.u, b.u);
    EXPECT_EQ(a.v, b.v);
  }
  EXPECT_EQ(m.face_count(), g.face_count() + 2 * g.edge_count());
  expect_structural(m);
}

TEST(InducedSubgraph, DropsIncidentEdgesAndKeepsEmbedding) {
  const Instance inst = gen_grid(3, 3, {});
  std::vector<bool> keep(9, true);
  keep[4] = false;  // centre
  const Subgraph sub = induced_subgraph(inst.graph, keep);
  EXPECT_EQ(sub.graph.vertex_count(), 8);
  EXPECT_EQ(sub.graph.edge_count(), 8);
  EXPECT_EQ(sub.graph.face_count(), 2);
  expect_structural(sub.graph);
}
