#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pdp/error.hpp"
#include "pdp/instance.hpp"
#include "pdp/treewidth.hpp"

namespace pdp {

// Profile of one bag: a code per bag position (bag order) plus the set of
// requests already completed below the node.
//
//   kFree        non-terminal, no chosen edge yet
//   kSaturated   non-terminal with two chosen edges, or terminal with one
//   kFreshTerm   terminal without its edge yet
//   kPartner + p open end (non-terminal, one edge) whose fragment ends at
//                the open end in position p
//   kAnchor + a  open end whose fragment ends at terminal anchor a
//                (a = 2 * request + side, side 0 = source, 1 = target)
//
// Edges are charged at the forget node of whichever endpoint leaves first,
// so every edge is decided exactly once.
struct BagProfile {
  std::vector<std::uint16_t> codes;
  std::uint64_t completed = 0;

  static constexpr std::uint16_t kFree = 0;
  static constexpr std::uint16_t kSaturated = 1;
  static constexpr std::uint16_t kFreshTerm = 2;
  static constexpr std::uint16_t kPartner = 3;
  static constexpr std::uint16_t kAnchor = 1024;

  friend bool operator==(const BagProfile&, const BagProfile&) = default;
};

struct BagProfileHash {
  std::size_t operator()(const BagProfile& p) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ p.completed;
    for (std::uint16_t c : p.codes) h = (h ^ c) * 0x100000001b3ULL;
    return static_cast<std::size_t>(h ^ (h >> 29));
  }
};

struct DpLimits {
  std::size_t max_profiles = 6'000'000;  // across all tables
};

struct DpStats {
  int width = 0;
  std::size_t max_profiles_per_bag = 0;
  std::size_t total_profiles = 0;
  long double profile_cap = 0;  // (w+1)^(w+1) * 4^k
};

struct DpResult {
  std::optional<Solution> solution;
  DpStats stats;
};

namespace detail {

class DisjointPathsDp {
 public:
  DisjointPathsDp(const Instance& inst, const NiceTreeDecomposition& nice, DpLimits limits)
      : inst_(inst), nice_(nice), limits_(limits), adj_(simple_adjacency(inst.graph)) {
    anchor_of_.assign(static_cast<std::size_t>(inst.graph.vertex_count()), -1);
    for (int i = 0; i < inst.k(); ++i) {
      anchor_of_[static_cast<std::size_t>(inst.sources[static_cast<std::size_t>(i)])] = 2 * i;
      anchor_of_[static_cast<std::size_t>(inst.targets[static_cast<std::size_t>(i)])] = 2 * i + 1;
    }
    if (inst.k() > 64) throw ResourceLimitError("dynamic programme supports at most 64 requests");
    stats_.width = nice.width();
    const long double w1 = static_cast<long double>(stats_.width + 1);
    stats_.profile_cap = std::pow(w1, w1) * std::pow(4.0L, static_cast<long double>(inst.k()));
  }

  DpResult run() {
    const int count = nice_.node_count();
    tables_.resize(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
      const NiceNode& node = nice_.nodes[static_cast<std::size_t>(i)];
      if (node.bag.size() > 64) throw ResourceLimitError("bag larger than 64 vertices");
      switch (node.kind) {
        case NiceKind::Leaf: insert(i, BagProfile{}, {}); break;
        case NiceKind::Introduce: introduce(i, node); break;
        case NiceKind::Forget: forget(i, node); break;
        case NiceKind::Join: join(i, node); break;
      }
      const std::size_t size = tables_[static_cast<std::size_t>(i)].entries.size();
      stats_.max_profiles_per_bag = std::max(stats_.max_profiles_per_bag, size);
      if (static_cast<long double>(size) > stats_.profile_cap)
        throw ResourceLimitError("bag profile count exceeds (w+1)^(w+1) * 4^k");
      // Child profiles are no longer needed once the parent table exists.
      for (int c : node.children) tables_[static_cast<std::size_t>(c)].release_keys();
    }

    DpResult result;
    result.stats = stats_;
    const std::uint64_t all = inst_.k() == 64 ? ~0ULL : ((1ULL << inst_.k()) - 1);
    const Table& root = tables_[static_cast<std::size_t>(nice_.root)];
    for (std::size_t e = 0; e < root.entries.size(); ++e) {
      if (root.entries[e].profile.completed == all) {
        result.solution = reconstruct(nice_.root, static_cast<int>(e));
        break;
      }
    }
    return result;
  }

 private:
  struct Entry {
    BagProfile profile;
    int child_a = -1;
    int child_b = -1;
    std::array<std::pair<VertexId, VertexId>, 2> edges{};
    int edge_count = 0;
  };
  struct Table {
    std::vector<Entry> entries;
    std::unordered_map<BagProfile, int, BagProfileHash> index;
    void release_keys() {
      index = {};
      for (auto& e : entries) e.profile.codes = {};
    }
  };

  // End of a fragment: a bag position or a terminal anchor.
  struct End {
    int pos = -1;
    int anchor = -1;
  };

  void insert(int node, BagProfile p, Entry back) {
    Table& t = tables_[static_cast<std::size_t>(node)];
    if (t.index.count(p)) return;  // first derivation wins
    if (++stats_.total_profiles > limits_.max_profiles) throw ResourceLimitError("dynamic programme state limit exceeded");
    back.profile = p;
    t.index.emplace(std::move(p), static_cast<int>(t.entries.size()));
    t.entries.push_back(std::move(back));
  }

  int anchor_at(const NiceNode& node, int pos) const {
    return anchor_of_[static_cast<std::size_t>(node.bag[static_cast<std::size_t>(pos)])];
  }

  // Joins the fragments behind ends x and y by one (possibly virtual) edge.
  bool connect(const NiceNode& node, BagProfile& p, End x, End y) const {
    auto far = [&](End e, End& out) {
      if (e.pos < 0) {
        out = e;
        return true;
      }
      const std::uint16_t c = p.codes[static_cast<std::size_t>(e.pos)];
      if (c == BagProfile::kFree) out = {e.pos, -1};
      else if (c == BagProfile::kFreshTerm) out = {-1, anchor_at(node, e.pos)};
      else if (c >= BagProfile::kAnchor) out = {-1, c - BagProfile::kAnchor};
      else if (c >= BagProfile::kPartner) out = {c - BagProfile::kPartner, -1};
      else return false;  // saturated
      return true;
    };
    End fx, fy;
    if (!far(x, fx) || !far(y, fy)) return false;
    if (x.pos >= 0 && y.pos >= 0 && fx.pos == y.pos) return false;  // would close a cycle
    for (End e : {x, y}) {
      if (e.pos < 0) continue;
      auto& c = p.codes[static_cast<std::size_t>(e.pos)];
      if (c != BagProfile::kFree) c = BagProfile::kSaturated;
    }
    if (fx.pos < 0 && fy.pos < 0) {
      if (fx.anchor / 2 != fy.anchor / 2 || fx.anchor == fy.anchor) return false;
      p.completed |= 1ULL << (fx.anchor / 2);
    } else if (fx.pos < 0 || fy.pos < 0) {
      const End open = fx.pos >= 0 ? fx : fy;
      const int anchor = fx.pos >= 0 ? fy.anchor : fx.anchor;
      p.codes[static_cast<std::size_t>(open.pos)] = static_cast<std::uint16_t>(BagProfile::kAnchor + anchor);
    } else {
      p.codes[static_cast<std::size_t>(fx.pos)] = static_cast<std::uint16_t>(BagProfile::kPartner + fy.pos);
      p.codes[static_cast<std::size_t>(fy.pos)] = static_cast<std::uint16_t>(BagProfile::kPartner + fx.pos);
    }
    return true;
  }

  static int position_of(const NiceNode& node, VertexId v) {
    return static_cast<int>(std::lower_bound(node.bag.begin(), node.bag.end(), v) - node.bag.begin());
  }

  void introduce(int i, const NiceNode& node) {
    const int pos = position_of(node, node.vertex);
    const bool terminal = anchor_of_[static_cast<std::size_t>(node.vertex)] >= 0;
    const Table& child = tables_[static_cast<std::size_t>(node.children[0])];
    for (std::size_t e = 0; e < child.entries.size(); ++e) {
      BagProfile p = child.entries[e].profile;
      for (auto& c : p.codes)
        if (c >= BagProfile::kPartner && c < BagProfile::kAnchor && c - BagProfile::kPartner >= pos) ++c;
      p.codes.insert(p.codes.begin() + pos, terminal ? BagProfile::kFreshTerm : BagProfile::kFree);
      Entry back;
      back.child_a = static_cast<int>(e);
      insert(i, std::move(p), back);
    }
  }

  void forget(int i, const NiceNode& node) {
    const NiceNode& child_node = nice_.nodes[static_cast<std::size_t>(node.children[0])];
    const VertexId v = node.vertex;
    const int pos = position_of(child_node, v);
    const bool terminal = anchor_of_[static_cast<std::size_t>(v)] >= 0;

    std::vector<int> candidates;  // bag positions adjacent to v
    for (VertexId u : adj_[static_cast<std::size_t>(v)]) {
      if (u == v || !std::binary_search(child_node.bag.begin(), child_node.bag.end(), u)) continue;
      candidates.push_back(position_of(child_node, u));
    }
    std::sort(candidates.begin(), candidates.end());
    std::vector<std::vector<int>> choices{{}};
    for (int a : candidates) choices.push_back({a});
    for (std::size_t a = 0; a < candidates.size(); ++a)
      for (std::size_t b = a + 1; b < candidates.size(); ++b) choices.push_back({candidates[a], candidates[b]});

    const Table& child = tables_[static_cast<std::size_t>(node.children[0])];
    for (std::size_t e = 0; e < child.entries.size(); ++e) {
      for (const auto& choice : choices) {
        BagProfile p = child.entries[e].profile;
        bool ok = true;
        for (int u : choice) {
          if (!connect(child_node, p, End{pos, -1}, End{u, -1})) {
            ok = false;
            break;
          }
        }
        if (!ok) continue;
        const std::uint16_t final_code = p.codes[static_cast<std::size_t>(pos)];
        if (terminal ? final_code != BagProfile::kSaturated
                     : (final_code != BagProfile::kFree && final_code != BagProfile::kSaturated))
          continue;
        p.codes.erase(p.codes.begin() + pos);
        for (auto& c : p.codes)
          if (c >= BagProfile::kPartner && c < BagProfile::kAnchor && c - BagProfile::kPartner > pos) --c;
        Entry back;
        back.child_a = static_cast<int>(e);
        for (int u : choice) back.edges[static_cast<std::size_t>(back.edge_count++)] = {v, child_node.bag[static_cast<std::size_t>(u)]};
        insert(i, std::move(p), back);
      }
    }
  }

  // Degree masks used to discard incompatible pairs before merging.
  struct Degrees {
    std::uint64_t touched = 0;  // at least one chosen edge
    std::uint64_t full = 0;     // no further edge allowed
  };
  static Degrees degrees(const BagProfile& p) {
    Degrees d;
    for (std::size_t j = 0; j < p.codes.size(); ++j) {
      const std::uint16_t c = p.codes[j];
      if (c == BagProfile::kSaturated) {
        d.touched |= 1ULL << j;
        d.full |= 1ULL << j;
      } else if (c >= BagProfile::kPartner) {
        d.touched |= 1ULL << j;
      }
    }
    return d;
  }

  void join(int i, const NiceNode& node) {
    const Table& left = tables_[static_cast<std::size_t>(node.children[0])];
    const Table& right = tables_[static_cast<std::size_t>(node.children[1])];
    std::map<std::pair<std::uint64_t, std::uint64_t>, std::vector<int>> buckets;
    for (std::size_t r = 0; r < right.entries.size(); ++r) {
      const Degrees d = degrees(right.entries[r].profile);
      buckets[{d.touched, d.full}].push_back(static_cast<int>(r));
    }
    for (std::size_t l = 0; l < left.entries.size(); ++l) {
      const BagProfile& lp = left.entries[l].profile;
      const Degrees ld = degrees(lp);
      for (const auto& [key, members] : buckets) {
        if ((key.first & ld.full) != 0 || (key.second & ld.touched) != 0) continue;
        for (int r : members) {
          BagProfile merged = lp;
          if (merge(node, merged, right.entries[static_cast<std::size_t>(r)].profile)) {
            Entry back;
            back.child_a = static_cast<int>(l);
            back.child_b = r;
            insert(i, std::move(merged), back);
          }
        }
      }
    }
  }

  // Overlays the right child's fragments onto `p` (a copy of the left
  // profile) as virtual edges between fragment ends.
  bool merge(const NiceNode& node, BagProfile& p, const BagProfile& right) const {
    if (p.completed & right.completed) return false;
    p.completed |= right.completed;
    const std::size_t b = right.codes.size();
    for (std::size_t j = 0; j < b; ++j) {
      if (right.codes[j] != BagProfile::kSaturated) continue;
      auto& c = p.codes[j];
      if (c != BagProfile::kFree && c != BagProfile::kFreshTerm) return false;
      c = BagProfile::kSaturated;
    }
    for (std::size_t j = 0; j < b; ++j) {
      const std::uint16_t c = right.codes[j];
      if (c >= BagProfile::kAnchor) {
        if (!connect(node, p, End{static_cast<int>(j), -1}, End{-1, c - BagProfile::kAnchor})) return false;
      } else if (c >= BagProfile::kPartner) {
        const int q = c - BagProfile::kPartner;
        if (q > static_cast<int>(j) && !connect(node, p, End{static_cast<int>(j), -1}, End{q, -1})) return false;
      }
    }
    return true;
  }

  Solution reconstruct(int root, int entry) const {
    std::vector<std::vector<VertexId>> chosen(static_cast<std::size_t>(inst_.graph.vertex_count()));
    std::vector<std::pair<int, int>> stack{{root, entry}};
    while (!stack.empty()) {
      auto [node, e] = stack.back();
      stack.pop_back();
      const Entry& en = tables_[static_cast<std::size_t>(node)].entries[static_cast<std::size_t>(e)];
      for (int j = 0; j < en.edge_count; ++j) {
        const auto [a, b] = en.edges[static_cast<std::size_t>(j)];
        chosen[static_cast<std::size_t>(a)].push_back(b);
        chosen[static_cast<std::size_t>(b)].push_back(a);
      }
      const NiceNode& nn = nice_.nodes[static_cast<std::size_t>(node)];
      if (en.child_a >= 0) stack.push_back({nn.children[0], en.child_a});
      if (en.child_b >= 0) stack.push_back({nn.children[1], en.child_b});
    }
    Solution sol;
    for (int i = 0; i < inst_.k(); ++i) {
      std::vector<VertexId> path{inst_.sources[static_cast<std::size_t>(i)]};
      VertexId prev = -1;
      while (path.back() != inst_.targets[static_cast<std::size_t>(i)]) {
        const auto& nb = chosen[static_cast<std::size_t>(path.back())];
        VertexId next = -1;
        for (VertexId u : nb)
          if (u != prev) next = u;
        if (next == -1 || path.size() > chosen.size()) throw std::logic_error("dynamic programme traceback is broken");
        prev = path.back();
        path.push_back(next);
      }
      sol.paths.push_back(std::move(path));
    }
    if (auto verdict = verify_solution(inst_, sol); !verdict)
      throw std::logic_error("dynamic programme produced an invalid solution: " + verdict.reason);
    return sol;
  }

  const Instance& inst_;
  const NiceTreeDecomposition& nice_;
  DpLimits limits_;
  std::vector<std::vector<VertexId>> adj_;
  std::vector<int> anchor_of_;
  std::vector<Table> tables_;
  DpStats stats_;
};

}  // namespace detail

/// Exact decision and construction for Disjoint Paths by dynamic programming
/// over a nice tree decomposition of the instance graph. Any returned
/// solution has passed verify_solution.
inline DpResult solve_dp(const Instance& inst, const NiceTreeDecomposition& nice, DpLimits limits = {}) {
  detail::DisjointPathsDp dp(inst, nice, limits);
  return dp.run();
}

}  // namespace pdp
