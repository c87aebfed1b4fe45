#include <gtest/gtest.h>

#include "oracles.hpp"
#include "pdp/corpus.hpp"
#include "pdp/flow.hpp"
#include "pdp/generators.hpp"
#include "pdp/oracle.hpp"

using namespace pdp;

namespace {

Instance four_cycle(std::vector<std::pair<VertexId, VertexId>> pairs) {
  Instance inst;
  inst.graph = PlaneGraph::build(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  for (auto [s, t] : pairs) {
    inst.sources.push_back(s);
    inst.targets.push_back(t);
  }
  return inst;
}

FaceLabeling random_labeling(const PlaneGraph& g, oracle::Gen& gen, int alphabet) {
  FaceLabeling h = FaceLabeling::identity(g);
  for (std::size_t f = 0; f < h.h.size(); ++f)
    if (static_cast<FaceId>(f) != g.outer_face()) h.h[f] = gen.reduced_word(alphabet, 4);
  return h;
}

Flow random_flow(const PlaneGraph& g, oracle::Gen& gen, int alphabet) {
  Flow f;
  for (DartId a = 0; a < g.dart_count(); ++a)
    if (gen.coin()) f.set(a, gen.reduced_word(alphabet, 3));
  return f;
}

}  // namespace

TEST(Word, Reduce) {
  EXPECT_EQ(reduce_word({1, 2, -2, 1}).letters(), (std::vector<Letter>{1, 1}));
  EXPECT_TRUE(reduce_word({1, -1}).empty());
  EXPECT_TRUE(reduce_word({1, 2, -2, -1}).empty());
  EXPECT_THROW(reduce_word({0}), ValidationError);
}

TEST(Word, ConcatAndInvert) {
  EXPECT_TRUE(concat(Word::letter(1), Word::letter(-1)).empty());
  EXPECT_EQ(invert(reduce_word({1, 2})).letters(), (std::vector<Letter>{-2, -1}));
}

TEST(Word, ReductionIsConfluent) {
  oracle::Gen gen(11);
  for (int trial = 0; trial < 2000; ++trial) {
    std::vector<int> w = gen.word(3, 10);
    for (int i = gen.uniform(0, 5); i > 0; --i) {
      const int x = gen.uniform(1, 3) * (gen.coin() ? 1 : -1);
      const auto at = static_cast<std::ptrdiff_t>(gen.uniform(0, static_cast<int>(w.size())));
      w.insert(w.begin() + at, {x, -x});
    }
    EXPECT_EQ(reduce_word(w).letters(), oracle::naive_reduce(w));
  }
}

TEST(Word, GroupLaws) {
  oracle::Gen gen(12);
  for (int trial = 0; trial < 1000; ++trial) {
    const Word a = gen.reduced_word(3, 8), b = gen.reduced_word(3, 8), c = gen.reduced_word(3, 8);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * Word{}, a);
    EXPECT_EQ(Word{} * a, a);
    EXPECT_TRUE((a * a.inverse()).empty());
    EXPECT_TRUE((a.inverse() * a).empty());
    EXPECT_EQ(invert(invert(a)), a);
  }
}

TEST(Word, CyclicReduction) {
  EXPECT_EQ(reduce_word({1, 2, -1}).cyclic_reduction().letters(), (std::vector<Letter>{2}));
  EXPECT_EQ(reduce_word({2, 1, 3}).cyclic_reduction().letters(), (std::vector<Letter>{2, 1, 3}));
}

TEST(VertexTrace, EmptyFlowAndPathThrough) {
  const Instance inst = four_cycle({{0, 2}});
  EXPECT_TRUE(vertex_trace(inst.graph, Flow{}, 1).empty());
  Flow f;
  f.set(dart_of(0, 0), Word::letter(1));  // 1 -> 2
  f.set(dart_of(1, 0), Word::letter(1));  // 2 -> 3
  EXPECT_TRUE(vertex_trace(inst.graph, f, 1).empty());
}

TEST(IsFlow, EmptyAssignments) {
  EXPECT_TRUE(is_flow(Flow{}, four_cycle({})));
  EXPECT_FALSE(is_flow(Flow{}, four_cycle({{0, 2}})));
}

TEST(FlowFromSolution, FourCycle) {
  const Instance inst = four_cycle({{0, 2}});
  const Flow f = flow_from_solution(inst, {{{0, 1, 2}}});
  EXPECT_EQ(f.nonempty().size(), 2u);
  EXPECT_EQ(f.at(dart_of(0, 0)), Word::letter(1));
  EXPECT_EQ(f.at(dart_of(1, 0)), Word::letter(1));
  EXPECT_TRUE(f.at(dart_of(0, 1)).empty());
  EXPECT_TRUE(is_flow(f, inst));
  EXPECT_EQ(vertex_trace(inst.graph, f, 0), Word::letter(1));
  EXPECT_EQ(vertex_trace(inst.graph, f, 2), Word::letter(-1));
  EXPECT_THROW(flow_from_solution(inst, {{{0, 2}}}), InvalidSolutionError);
}

TEST(FlowFromSolution, CorpusSolutionsAreFlows) {
  for (const auto& entry : standard_corpus()) {
    const auto sol = solve_bruteforce(entry.instance);
    if (!sol) continue;
    const Flow f = flow_from_solution(entry.instance, *sol);
    EXPECT_TRUE(is_flow(f, entry.instance)) << entry.name;
    std::map<EdgeId, Letter> owner;
    for (const auto& [arc, w] : f.nonempty()) {
      ASSERT_EQ(w.size(), 1u);
      EXPECT_TRUE(owner.emplace(edge_of(arc), w.letters()[0]).second) << entry.name;
    }
  }
}

TEST(ApplyFaceLabeling, IdentityLeavesFlowUnchanged) {
  const Instance inst = gen_grid(3, 3, {{{1, 1}, {3, 3}}});
  const Flow f = flow_from_solution(inst, *solve_bruteforce(inst));
  EXPECT_EQ(apply_face_labeling(inst.graph, f, FaceLabeling::identity(inst.graph)), f);
}

TEST(ApplyFaceLabeling, InnerFaceOfFourCycle) {
  const Instance inst = four_cycle({{0, 2}});
  const PlaneGraph& g = inst.graph;
  const FaceId inner = g.outer_face() == 0 ? 1 : 0;
  FaceLabeling h = FaceLabeling::identity(g);
  h.h[static_cast<std::size_t>(inner)] = Word::letter(1);
  const Flow f = flow_from_solution(inst, {{{0, 1, 2}}});
  const Flow psi = apply_face_labeling(g, f, h);
  // Hand check on arc 1->2 (dart 0): if the inner face is on its left,
  // psi = [1]^-1 . [1] . 1 = 1; otherwise the outer face is on the left and
  // the digon on the right, both unlabelled, so psi = [1].
  const Word expected = g.left_face(0) == inner ? Word{} : Word::letter(1);
  EXPECT_EQ(psi.at(0), expected);
  for (DartId a = 0; a < g.dart_count(); ++a) {
    const Word want = h.h[static_cast<std::size_t>(arc_left_face(g, a))].inverse() * f.at(a) *
                      h.h[static_cast<std::size_t>(arc_right_face(g, a))];
    EXPECT_EQ(psi.at(a), want);
  }
  EXPECT_TRUE(is_flow(psi, inst));
}

TEST(ApplyFaceLabeling, RejectsLabelledOuterFace) {
  const PlaneGraph g = four_cycle({}).graph;
  FaceLabeling h = FaceLabeling::identity(g);
  h.h[static_cast<std::size_t>(g.outer_face())] = Word::letter(1);
  EXPECT_THROW(apply_face_labeling(g, Flow{}, h), ValidationError);
  EXPECT_THROW(apply_face_labeling(g, Flow{}, FaceLabeling{}), ValidationError);
}

TEST(ApplyFaceLabeling, PreservesFlows) {
  oracle::Gen gen(21);
  for (const auto& entry : standard_corpus()) {
    const auto sol = solve_bruteforce(entry.instance);
    if (!sol) continue;
    const Flow f = flow_from_solution(entry.instance, *sol);
    const int k = std::max(entry.instance.k(), 1);
    EXPECT_TRUE(is_flow(apply_face_labeling(entry.instance.graph, f, random_labeling(entry.instance.graph, gen, k)), entry.instance))
        << entry.name;
  }
}

TEST(Homology, Reflexive) {
  const Instance inst = gen_grid(3, 3, {{{1, 1}, {3, 3}}});
  const Flow f = flow_from_solution(inst, *solve_bruteforce(inst));
  const auto h = are_homologous(inst.graph, f, f);
  ASSERT_TRUE(h.has_value());
  EXPECT_EQ(*h, FaceLabeling::identity(inst.graph));
}

TEST(Homology, RecoversLabeling) {
  oracle::Gen gen(31);
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Instance inst = gen_random_planar(6 + static_cast<int>(seed % 8), 1, seed);
    const Flow f = random_flow(inst.graph, gen, 3);
    const FaceLabeling h = random_labeling(inst.graph, gen, 3);
    const auto got = are_homologous(inst.graph, f, apply_face_labeling(inst.graph, f, h));
    ASSERT_TRUE(got.has_value()) << seed;
    EXPECT_EQ(*got, h) << seed;
  }
}

TEST(Homology, EquivalenceRelation) {
  oracle::Gen gen(41);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const PlaneGraph g = gen_random_planar(8, 1, 900 + seed).graph;
    const Flow a = random_flow(g, gen, 2);
    const FaceLabeling h1 = random_labeling(g, gen, 2), h2 = random_labeling(g, gen, 2);
    const Flow b = apply_face_labeling(g, a, h1);
    const Flow c = apply_face_labeling(g, b, h2);
    // symmetric: inverse labels
    FaceLabeling inv = h1;
    for (auto& w : inv.h) w = w.inverse();
    const auto back = are_homologous(g, b, a);
    ASSERT_TRUE(back.has_value());
    EXPECT_EQ(*back, inv);
    // transitive: facewise product
    FaceLabeling prod = h1;
    for (std::size_t f = 0; f < prod.h.size(); ++f) prod.h[f] = h1.h[f] * h2.h[f];
    const auto across = are_homologous(g, a, c);
    ASSERT_TRUE(across.has_value());
    EXPECT_EQ(*across, prod);
  }
}

TEST(Homology, SingleArcPerturbationOnTwoFaceGraph) {
  const Instance inst = four_cycle({{0, 2}});
  const Flow f = flow_from_solution(inst, {{{0, 1, 2}}});
  Flow g = f;
  g.set(dart_of(2, 0), Word::letter(2));  // fresh letter on an unused arc
  EXPECT_FALSE(are_homologous(inst.graph, f, g).has_value());
}

TEST(Homology, RequiresConnectedGraph) {
  const PlaneGraph g = PlaneGraph::build(4, {{0, 1}, {2, 3}});
  EXPECT_THROW(are_homologous(g, Flow{}, Flow{}), ValidationError);
}

TEST(FlowFormat, RoundTrip) {
  const Instance inst = gen_grid(3, 3, {{{1, 1}, {3, 1}}, {{1, 3}, {3, 3}}});
  const auto sol = solve_bruteforce(inst);
  ASSERT_TRUE(sol.has_value());
  const Flow f = flow_from_solution(inst, *sol);
  EXPECT_EQ(parse_flow(serialize_flow(f), inst.graph), f);
  EXPECT_EQ(parse_flow("arcflow 1 + 1 2 -2\n", inst.graph).at(0), Word::letter(1));
  EXPECT_THROW(parse_flow("arcflow 1 * 1\n", inst.graph), ParseError);
  EXPECT_THROW(parse_flow("arcflow 99 + 1\n", inst.graph), ValidationError);
  EXPECT_THROW(parse_flow("arcflow 1 + 1\narcflow 1 + 2\n", inst.graph), ValidationError);
  EXPECT_THROW(parse_flow("arcflow 1 + 0\n", inst.graph), ValidationError);
}

TEST(FlowFormat, Labeling) {
  FaceLabeling h{{Word{}, Word::letter(2), reduce_word({1, -3})}};
  EXPECT_EQ(serialize_labeling(h), "h 2 2\nh 3 1 -3\n");
}
