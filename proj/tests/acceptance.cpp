// Runs the nine acceptance checks and prints one PASS/FAIL line for each.
// Exit status is non-zero when any check fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "pdp/pdp.hpp"
#include "steiner_gen.hpp"

using namespace pdp;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Tally {
  long checks = 0;
  long failures = 0;
  std::string first_failure;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (ok) return;
    if (failures++ == 0) first_failure = what;
  }
};

std::vector<VertexId> terminals_of(const Instance& inst) {
  std::vector<VertexId> t = inst.sources;
  t.insert(t.end(), inst.targets.begin(), inst.targets.end());
  return t;
}

const std::vector<CorpusEntry>& corpus() {
  static const std::vector<CorpusEntry> c = standard_corpus();
  return c;
}

// ---- 1. oracle equivalence --------------------------------------------------

std::string oracle_equivalence(Tally& t) {
  const auto t0 = Clock::now();
  int yes = 0;
  for (const auto& e : corpus()) {
    const DpResult dp = solve_dp(e.instance, make_nice(decompose(e.instance.graph)));
    const auto truth = solve_bruteforce(e.instance);
    t.expect(dp.solution.has_value() == truth.has_value(), e.name + ": dp and oracle disagree");
    if (dp.solution) t.expect(verify_solution(e.instance, *dp.solution).ok, e.name + ": dp solution fails verification");
    if (truth) t.expect(verify_solution(e.instance, *truth).ok, e.name + ": oracle solution fails verification");
    yes += truth.has_value();
  }
  const double secs = seconds_since(t0);
  t.expect(corpus().size() >= 200, "corpus has fewer than 200 instances");
  t.expect(secs < 60.0, "corpus run took " + std::to_string(secs) + " s");
  char buf[128];
  std::snprintf(buf, sizeof buf, "%zu instances, %d solvable, %.2f s", corpus().size(), yes, secs);
  return buf;
}

// ---- 2. flow laws -----------------------------------------------------------

std::string flow_laws(Tally& t) {
  int flows = 0;
  for (const auto& e : corpus()) {
    int here = 0;
    enumerate_solutions(e.instance, [&](const Solution& s) {
      ++flows;
      t.expect(is_flow(flow_from_solution(e.instance, s), e.instance), e.name + ": solution flow violates the trace law");
      return ++here < 50;
    });
  }
  return std::to_string(flows) + " solution flows";
}

// ---- 3. homology round trip -------------------------------------------------

FaceLabeling random_labeling(const PlaneGraph& g, oracle::Gen& gen, int alphabet) {
  FaceLabeling h = FaceLabeling::identity(g);
  for (std::size_t f = 0; f < h.h.size(); ++f)
    if (static_cast<FaceId>(f) != g.outer_face()) h.h[f] = gen.reduced_word(alphabet, 4);
  return h;
}

std::string homology_round_trip(Tally& t) {
  oracle::Gen gen(2024);
  int pairs = 0, perturbed = 0;
  for (const auto& e : corpus()) {
    const auto sol = solve_bruteforce(e.instance);
    if (!sol) continue;
    const PlaneGraph& g = e.instance.graph;
    const Flow f = flow_from_solution(e.instance, *sol);
    const int k = e.instance.k();
    for (int rep = 0; rep < 4; ++rep) {
      const FaceLabeling h = random_labeling(g, gen, k);
      const Flow psi = apply_face_labeling(g, f, h);
      const auto got = are_homologous(g, f, psi);
      t.expect(got.has_value() && *got == h, e.name + ": labeling not recovered");
      ++pairs;

      Flow bent = psi;
      const DartId arc = gen.uniform(0, g.dart_count() - 1);
      const Letter x = static_cast<Letter>(gen.uniform(1, k) * (gen.coin() ? 1 : -1));
      bent.set(arc, bent.at(arc) * Word::letter(x));
      const bool rejected = !are_homologous(g, f, bent).has_value() || !is_flow(bent, e.instance);
      t.expect(rejected, e.name + ": single-arc perturbation accepted");
      ++perturbed;
    }
  }
  t.expect(pairs >= 500, "fewer than 500 round trips");
  t.expect(perturbed >= 100, "fewer than 100 perturbations");
  return std::to_string(pairs) + " round trips, " + std::to_string(perturbed) + " perturbations";
}

// ---- 4. word algebra --------------------------------------------------------

std::string word_algebra(Tally& t) {
  oracle::Gen gen(7);
  for (int trial = 0; trial < 10000; ++trial) {
    std::vector<int> w = gen.word(3, 24);
    const Word normal = Word::reduce(w);
    // Cancel a random adjacent inverse pair until none is left.
    for (;;) {
      std::vector<std::size_t> spots;
      for (std::size_t i = 0; i + 1 < w.size(); ++i)
        if (w[i] == -w[i + 1]) spots.push_back(i);
      if (spots.empty()) break;
      const std::size_t i = spots[static_cast<std::size_t>(gen.uniform(0, static_cast<int>(spots.size()) - 1))];
      w.erase(w.begin() + static_cast<std::ptrdiff_t>(i), w.begin() + static_cast<std::ptrdiff_t>(i) + 2);
    }
    t.expect(normal.letters() == w, "confluence trial " + std::to_string(trial));
  }
  for (int trial = 0; trial < 2000; ++trial) {
    const Word a = gen.reduced_word(3, 10), b = gen.reduced_word(3, 10), c = gen.reduced_word(3, 10);
    t.expect(a * Word{} == a && Word{} * a == a, "identity law");
    t.expect((a * a.inverse()).empty() && (a.inverse() * a).empty(), "inverse law");
    t.expect((a * b) * c == a * (b * c), "associativity");
    t.expect((a * b).inverse() == b.inverse() * a.inverse(), "inverse of a product");
  }
  return "10000 confluence trials, 2000 group-law rounds";
}

// ---- 5. detour removal ------------------------------------------------------

std::string detour_removal(Tally& t) {
  oracle::Gen gen(55);
  int planted = 0, iterations = 0;
  for (std::uint64_t seed = 0; planted < 120 && seed < 2000; ++seed) {
    const Instance inst = gen_random_planar(8 + static_cast<int>(seed % 7), 1 + static_cast<int>(seed % 3), 40000 + seed);
    const RadialCompletion rc = radial_completion(inst.graph);
    const auto terms = terminals_of(inst);
    const auto tree = plant::wasteful_tree(rc.graph, terms, gen);
    if (!tree || !find_detour(rc.graph, *tree)) continue;
    ++planted;
    const std::string tag = "seed " + std::to_string(seed);
    const DetourRemoval r = remove_detours(rc.graph, *tree);
    iterations += r.iterations;
    t.expect(r.iterations <= tree->length(), tag + ": too many iterations");
    t.expect(r.tree.leaves == tree->leaves, tag + ": leaf set changed");
    t.expect(is_steiner_tree(rc.graph, r.tree, terms), tag + ": result is not a Steiner tree");
    t.expect(!find_detour(rc.graph, r.tree).has_value(), tag + ": detour left over");
    t.expect(r.tree.length() < tree->length(), tag + ": tree did not shrink");
  }
  t.expect(planted >= 100, "fewer than 100 planted trees");
  return std::to_string(planted) + " trees, " + std::to_string(iterations) + " short-cuts";
}

// ---- 6. separators ----------------------------------------------------------

bool menger_paths_ok(const PlaneGraph& g, const VertexSeparator& s, const std::vector<VertexId>& a,
                     const std::vector<VertexId>& b) {
  std::vector<bool> in_a(static_cast<std::size_t>(g.vertex_count()), false), in_b = in_a, used = in_a;
  for (VertexId v : a) in_a[static_cast<std::size_t>(v)] = true;
  for (VertexId v : b) in_b[static_cast<std::size_t>(v)] = true;
  for (const auto& p : s.disjoint_paths) {
    if (p.empty() || !in_a[static_cast<std::size_t>(p.front())] || !in_b[static_cast<std::size_t>(p.back())]) return false;
    for (std::size_t i = 0; i + 1 < p.size(); ++i)
      if (!adjacent(g, p[i], p[i + 1])) return false;
    for (VertexId v : p) {
      if (used[static_cast<std::size_t>(v)]) return false;
      used[static_cast<std::size_t>(v)] = true;
    }
  }
  return true;
}

std::string separator_correctness(Tally& t) {
  oracle::Gen gen(66);
  int gadgets = 0;
  for (std::uint64_t seed = 0; gadgets < 80 && seed < 3000; ++seed) {
    const int n = 7 + static_cast<int>(seed % 6);
    const Instance inst = gen_random_planar(n, 1, 50000 + seed);
    const auto tree = plant::wasteful_tree(inst.graph, terminals_of(inst), gen);
    if (!tree || tree->length() < 3) continue;
    const TreePath p = degree2_paths(inst.graph, *tree).at(0);
    const int near = gen.uniform(1, p.length() - 2);
    const int far = gen.uniform(near + 1, p.length() - 1);
    const PathEnd end = gen.coin() ? PathEnd::U : PathEnd::V;
    const VertexSeparator s = separator(inst.graph, *tree, p, end, near, far);
    std::vector<VertexId> walk = p.vertices;
    if (end == PathEnd::V) std::reverse(walk.begin(), walk.end());
    const std::vector<VertexId> a(walk.begin(), walk.begin() + near), b(walk.begin() + far + 1, walk.end());
    const std::string tag = "seed " + std::to_string(seed);
    ++gadgets;
    t.expect(static_cast<int>(s.cut.size()) == oracle::brute_min_vertex_cut(inst.graph, a, b), tag + ": cut not minimum");
    t.expect(s.disjoint_paths.size() == s.cut.size(), tag + ": Menger equality fails");
    t.expect(menger_paths_ok(inst.graph, s, a, b), tag + ": certificate paths invalid");
  }
  t.expect(gadgets >= 50, "fewer than 50 gadgets");
  return std::to_string(gadgets) + " gadgets";
}

// ---- 7. reduction safety ----------------------------------------------------

std::string reduction_safety(Tally& t) {
  int gadgets = 0, shrunk = 0;
  for (int depth = 2; depth <= 4; ++depth) {
    for (int ring = 3; ring <= 5; ++ring) {
      for (int bound = 2; bound <= 4; ++bound) {
        for (int variant = 0; variant < 2; ++variant) {
          std::vector<std::pair<int, int>> pairs;
          if (ring == 3) pairs = {{0, 1 + variant}};
          else if (variant == 0) pairs = {{0, 1}, {2, 3}};
          else pairs = {{0, 2}, {1, 3}};
          const Instance inst = gen_onion(depth, ring, pairs);
          const ReduceOptions opt{ReduceMode::Unsafe, bound};
          const ReducedInstance r = reduce_instance(inst, opt);
          const std::string tag = "onion " + std::to_string(depth) + "/" + std::to_string(ring) + "/" + std::to_string(bound);
          ++gadgets;
          shrunk += !r.removed.empty();
          t.expect(solve_bruteforce(r.instance).has_value() == solve_bruteforce(inst).has_value(), tag + ": answer changed");
          t.expect(reduce_instance(r.instance, opt).instance == r.instance, tag + ": not idempotent");
          for (VertexId v : r.removed) t.expect(inst.request_of(v) < 0, tag + ": terminal removed");
        }
      }
    }
  }
  t.expect(gadgets >= 30, "fewer than 30 onion gadgets");
  t.expect(safe_bound(1) == 164, "safe_bound(1) != 164");
  for (int k = 1; k <= 10; ++k) {
    const long double value = 82.0L * std::pow(static_cast<long double>(k), 1.5L) * std::ldexp(1.0L, k);
    t.expect(safe_bound(k) == static_cast<std::uint64_t>(std::ceil(value)), "safe_bound(" + std::to_string(k) + ")");
  }
  return std::to_string(gadgets) + " onions (" + std::to_string(shrunk) + " reduced), safe_bound k<=10";
}

// ---- 8. structural invariants -----------------------------------------------

std::string structural_invariants(Tally& t) {
  long objects = 0;
  for (const auto& e : corpus()) {
    const PlaneGraph& g = e.instance.graph;
    int length_sum = 0;
    for (const Face& f : g.faces()) length_sum += f.length();
    t.expect(g.satisfies_euler(), e.name + ": Euler");
    t.expect(g.darts_partitioned(), e.name + ": dart partition");
    t.expect(length_sum == 2 * g.edge_count(), e.name + ": face lengths");
    const RadialCompletion rc = radial_completion(g);
    t.expect(rc.graph.vertex_count() == g.vertex_count() + g.face_count(), e.name + ": radial vertex count");
    t.expect(rc.graph.edge_count() == g.edge_count() + length_sum, e.name + ": radial edge count");
    t.expect(rc.graph.satisfies_euler() && rc.graph.darts_partitioned(), e.name + ": radial embedding");
    const PlaneGraph d = dual(g);
    t.expect(d.vertex_count() == g.face_count() && d.edge_count() == g.edge_count(), e.name + ": dual counts");
    for (auto s : {DecompositionStrategy::MinFill, DecompositionStrategy::MinDegree}) {
      const TreeDecomposition td = decompose(g, s);
      t.expect(validate_decomposition(g, td), e.name + ": decomposition axioms");
      const NiceTreeDecomposition nice = make_nice(td);
      t.expect(validate_nice(g, nice) && nice.width() == td.width(), e.name + ": nice decomposition");
      objects += 2;
    }
    objects += 3;
  }
  return std::to_string(objects) + " objects";
}

// ---- 9. performance ---------------------------------------------------------

std::string performance(Tally& t) {
  double worst = 0;
  for (const auto& pairs : {std::vector<std::pair<GridCell, GridCell>>{{{1, 1}, {6, 6}}, {{1, 6}, {6, 1}}},
                            std::vector<std::pair<GridCell, GridCell>>{{{1, 1}, {6, 6}}, {{1, 6}, {2, 5}}}}) {
    const Instance inst = gen_grid(6, 6, pairs);
    const auto t0 = Clock::now();
    const SolveReport r = solve(inst);
    const double secs = seconds_since(t0);
    worst = std::max(worst, secs);
    t.expect(secs < 5.0, "6x6 grid took " + std::to_string(secs) + " s");
    t.expect(r.method == "dp" && r.dp_stats.has_value(), "6x6 grid not solved by the DP");
    if (r.dp_stats)
      t.expect(static_cast<long double>(r.dp_stats->max_profiles_per_bag) <= r.dp_stats->profile_cap, "6x6 profile cap");
  }
  for (const auto& e : corpus()) {
    const DpResult dp = solve_dp(e.instance, make_nice(decompose(e.instance.graph)));
    t.expect(static_cast<long double>(dp.stats.max_profiles_per_bag) <= dp.stats.profile_cap, e.name + ": profile cap");
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "6x6 k=2 worst %.3f s, profile cap respected", worst);
  return buf;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<std::string(Tally&)>>> criteria{
      {"oracle equivalence", oracle_equivalence},   {"flow laws", flow_laws},
      {"homology round trip", homology_round_trip}, {"word algebra", word_algebra},
      {"detour removal", detour_removal},           {"separator correctness", separator_correctness},
      {"reduction safety", reduction_safety},       {"structural invariants", structural_invariants},
      {"performance", performance},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Tally t;
    std::string detail;
    try {
      detail = criteria[i].second(t);
    } catch (const std::exception& e) {
      t.expect(false, std::string("exception: ") + e.what());
    }
    const bool ok = t.failures == 0;
    failed += !ok;
    std::printf("%s %d %-22s %ld checks  %s", ok ? "PASS" : "FAIL", static_cast<int>(i + 1), criteria[i].first.c_str(),
                t.checks, detail.c_str());
    if (!ok) std::printf("  [%ld failures, first: %s]", t.failures, t.first_failure.c_str());
    std::printf("\n");
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
