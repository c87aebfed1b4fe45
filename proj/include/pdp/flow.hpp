#pragma once

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "pdp/error.hpp"
#include "pdp/instance.hpp"
#include "pdp/plane_graph.hpp"

namespace pdp {

/// Letter +i stands for the i-th target t_i (1-based), -i for its inverse.
using Letter = int;

/// Element of the free group on the targets, always stored reduced.
class Word {
 public:
  Word() = default;

  /// Reduces an arbitrary letter sequence with a single stack pass.
  static Word reduce(const std::vector<Letter>& letters) {
    Word w;
    for (Letter x : letters) w.push(x);
    return w;
  }
  static Word letter(Letter x) { return reduce({x}); }

  const std::vector<Letter>& letters() const noexcept { return letters_; }
  bool empty() const noexcept { return letters_.empty(); }
  std::size_t size() const noexcept { return letters_.size(); }

  Word inverse() const {
    Word w;
    w.letters_.reserve(letters_.size());
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) w.letters_.push_back(-*it);
    return w;
  }

  Word& operator*=(const Word& rhs) {
    for (Letter x : rhs.letters_) push(x);
    return *this;
  }
  friend Word operator*(Word lhs, const Word& rhs) { return lhs *= rhs; }

  /// Strips matching first/last letters, leaving the cyclically reduced
  /// representative of the conjugacy class.
  Word cyclic_reduction() const {
    std::size_t lo = 0, hi = letters_.size();
    while (hi - lo >= 2 && letters_[lo] == -letters_[hi - 1]) {
      ++lo;
      --hi;
    }
    Word w;
    w.letters_.assign(letters_.begin() + static_cast<std::ptrdiff_t>(lo), letters_.begin() + static_cast<std::ptrdiff_t>(hi));
    return w;
  }

  std::string str() const {
    if (letters_.empty()) return "1";
    std::string out;
    for (std::size_t i = 0; i < letters_.size(); ++i) {
      if (i) out += ' ';
      out += std::to_string(letters_[i]);
    }
    return out;
  }

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word&, const Word&) = default;

 private:
  void push(Letter x) {
    if (x == 0) throw ValidationError("letter 0 is not part of the alphabet");
    if (!letters_.empty() && letters_.back() == -x) letters_.pop_back();
    else letters_.push_back(x);
  }
  std::vector<Letter> letters_;
};

inline Word reduce_word(const std::vector<Letter>& letters) { return Word::reduce(letters); }
inline Word concat(const Word& a, const Word& b) { return a * b; }
inline Word invert(const Word& w) { return w.inverse(); }

/// Words on the arcs of the directed version of a plane graph: edge e gives
/// arc 2e (first endpoint to second) and arc 2e+1 (reverse), i.e. arc ids are
/// dart ids. Arcs missing from the map carry the empty word.
class Flow {
 public:
  const Word& at(DartId arc) const {
    static const Word kEmpty;
    auto it = words_.find(arc);
    return it == words_.end() ? kEmpty : it->second;
  }
  void set(DartId arc, Word w) {
    if (w.empty()) words_.erase(arc);
    else words_[arc] = std::move(w);
  }
  const std::map<DartId, Word>& nonempty() const noexcept { return words_; }

  friend bool operator==(const Flow&, const Flow&) = default;

 private:
  std::map<DartId, Word> words_;
};

// Faces of the directed graph: the plane graph's face walks (same ids)
// followed by one digon per edge, squeezed between its two opposite arcs.
inline int directed_face_count(const PlaneGraph& g) { return g.face_count() + g.edge_count(); }
inline FaceId digon_face(const PlaneGraph& g, EdgeId e) { return g.face_count() + e; }
inline FaceId arc_left_face(const PlaneGraph& g, DartId arc) { return g.left_face(arc); }
inline FaceId arc_right_face(const PlaneGraph& g, DartId arc) { return digon_face(g, edge_of(arc)); }

/// h over the directed faces; h at the outer face must be empty.
struct FaceLabeling {
  std::vector<Word> h;

  static FaceLabeling identity(const PlaneGraph& g) { return {std::vector<Word>(static_cast<std::size_t>(directed_face_count(g)))}; }
  friend bool operator==(const FaceLabeling&, const FaceLabeling&) = default;
};

/// Clockwise product of arc words around v from the rotation's first dart:
/// for each dart, the outgoing arc's word then the inverse of the incoming
/// arc's word.
inline Word vertex_trace(const PlaneGraph& g, const Flow& f, VertexId v) {
  Word w;
  for (DartId d : g.rotation(v)) {
    w *= f.at(d);
    w *= f.at(twin(d)).inverse();
  }
  return w;
}

/// Expected trace at v: empty for non-terminals, +i at the source of request
/// i and -i at its target. Terminal traces are compared after cyclic
/// reduction, which makes the check independent of the trace's start dart.
inline Word expected_trace(const Instance& inst, VertexId v) {
  for (int i = 0; i < inst.k(); ++i) {
    if (inst.sources[static_cast<std::size_t>(i)] == v) return Word::letter(i + 1);
    if (inst.targets[static_cast<std::size_t>(i)] == v) return Word::letter(-(i + 1));
  }
  return {};
}

inline bool is_flow(const Flow& f, const Instance& inst) {
  const PlaneGraph& g = inst.graph;
  for (const auto& [arc, w] : f.nonempty()) {
    if (arc < 0 || arc >= g.dart_count()) return false;
    for (Letter x : w.letters())
      if (std::abs(x) > inst.k()) return false;
  }
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (vertex_trace(g, f, v).cyclic_reduction() != expected_trace(inst, v)) return false;
  return true;
}

/// Letter i+1 on every arc travelled by path i; all other arcs empty.
inline Flow flow_from_solution(const Instance& inst, const Solution& sol) {
  if (auto verdict = verify_solution(inst, sol); !verdict) throw InvalidSolutionError(verdict.reason);
  const PlaneGraph& g = inst.graph;
  Flow f;
  for (std::size_t i = 0; i < sol.paths.size(); ++i) {
    const auto& p = sol.paths[i];
    for (std::size_t j = 0; j + 1 < p.size(); ++j) {
      DartId best = -1;
      for (DartId d : g.rotation(p[j]))
        if (g.head(d) == p[j + 1] && (best == -1 || d < best)) best = d;
      f.set(best, Word::letter(static_cast<Letter>(i + 1)));
    }
  }
  return f;
}

/// psi(a) = h(left(a))^-1 * phi(a) * h(right(a)) on every arc.
inline Flow apply_face_labeling(const PlaneGraph& g, const Flow& phi, const FaceLabeling& lab) {
  if (static_cast<int>(lab.h.size()) != directed_face_count(g)) throw ValidationError("face labeling has the wrong size");
  if (!lab.h[static_cast<std::size_t>(g.outer_face())].empty()) throw ValidationError("face labeling must be empty on the outer face");
  Flow psi;
  for (DartId a = 0; a < g.dart_count(); ++a) {
    const Word& hl = lab.h[static_cast<std::size_t>(arc_left_face(g, a))];
    const Word& hr = lab.h[static_cast<std::size_t>(arc_right_face(g, a))];
    psi.set(a, hl.inverse() * phi.at(a) * hr);
  }
  return psi;
}

/// Witness h with h(outer) = 1 and h(l)^-1 phi(a) h(r) = psi(a) on every
/// arc, if one exists. h is propagated across arcs breadth-first from the
/// outer face, which fixes it uniquely; the remaining arcs are then checked.
/// Requires a connected graph.
inline std::optional<FaceLabeling> are_homologous(const PlaneGraph& g, const Flow& phi, const Flow& psi) {
  if (g.component_count() != 1) throw ValidationError("homology test requires a connected graph");
  const int faces = directed_face_count(g);
  std::vector<std::vector<DartId>> arcs_at(static_cast<std::size_t>(faces));
  for (DartId a = 0; a < g.dart_count(); ++a) {
    arcs_at[static_cast<std::size_t>(arc_left_face(g, a))].push_back(a);
    arcs_at[static_cast<std::size_t>(arc_right_face(g, a))].push_back(a);
  }
  std::vector<std::optional<Word>> h(static_cast<std::size_t>(faces));
  std::deque<FaceId> queue{g.outer_face()};
  h[static_cast<std::size_t>(g.outer_face())] = Word{};
  while (!queue.empty()) {
    const FaceId f = queue.front();
    queue.pop_front();
    for (DartId a : arcs_at[static_cast<std::size_t>(f)]) {
      const FaceId l = arc_left_face(g, a), r = arc_right_face(g, a);
      if (l == f && !h[static_cast<std::size_t>(r)]) {
        h[static_cast<std::size_t>(r)] = phi.at(a).inverse() * *h[static_cast<std::size_t>(l)] * psi.at(a);
        queue.push_back(r);
      } else if (r == f && !h[static_cast<std::size_t>(l)]) {
        h[static_cast<std::size_t>(l)] = phi.at(a) * *h[static_cast<std::size_t>(r)] * psi.at(a).inverse();
        queue.push_back(l);
      }
    }
  }
  FaceLabeling lab;
  for (auto& w : h) {
    if (!w) return std::nullopt;
    lab.h.push_back(std::move(*w));
  }
  for (DartId a = 0; a < g.dart_count(); ++a) {
    const Word& hl = lab.h[static_cast<std::size_t>(arc_left_face(g, a))];
    const Word& hr = lab.h[static_cast<std::size_t>(arc_right_face(g, a))];
    if (hl.inverse() * phi.at(a) * hr != psi.at(a)) return std::nullopt;
  }
  return lab;
}

// ---------------------------------------------------------------------------
// Text formats: `arcflow <edge-id> <+|-> <letter>...` per nonempty arc and
// `h <face> <letter>...` per nonempty face label (faces 1-based, walk faces
// first, then the digon of edge e at face_count + e).

inline Flow parse_flow(const std::string& text, const PlaneGraph& g) {
  Flow f;
  std::vector<bool> seen(static_cast<std::size_t>(g.dart_count()), false);
  detail::for_each_line(text, [&](const std::vector<std::string_view>& tok, int ln) {
    const std::string where = "line " + std::to_string(ln) + ": ";
    if (tok[0] != "arcflow" || tok.size() < 3 || (tok[2] != "+" && tok[2] != "-"))
      throw ParseError(where + "expected 'arcflow <edge-id> <+|-> <letters...>'");
    const long long e = detail::to_int(tok[1], ln);
    if (e < 1 || e > g.edge_count()) throw ValidationError(where + "edge id out of range");
    const DartId arc = dart_of(static_cast<EdgeId>(e - 1), tok[2] == "+" ? 0 : 1);
    if (seen[static_cast<std::size_t>(arc)]) throw ValidationError(where + "arc given twice");
    seen[static_cast<std::size_t>(arc)] = true;
    std::vector<Letter> letters;
    for (std::size_t i = 3; i < tok.size(); ++i) {
      const long long x = detail::to_int(tok[i], ln);
      if (x == 0) throw ValidationError(where + "letter 0 is not part of the alphabet");
      letters.push_back(static_cast<Letter>(x));
    }
    f.set(arc, Word::reduce(letters));
  });
  return f;
}

inline std::string serialize_flow(const Flow& f) {
  std::ostringstream out;
  for (const auto& [arc, w] : f.nonempty()) {
    out << "arcflow " << edge_of(arc) + 1 << ' ' << (end_of(arc) == 0 ? '+' : '-');
    for (Letter x : w.letters()) out << ' ' << x;
    out << '\n';
  }
  return out.str();
}

inline std::string serialize_labeling(const FaceLabeling& lab) {
  std::ostringstream out;
  for (std::size_t f = 0; f < lab.h.size(); ++f) {
    if (lab.h[f].empty()) continue;
    out << "h " << f + 1;
    for (Letter x : lab.h[f].letters()) out << ' ' << x;
    out << '\n';
  }
  return out.str();
}

}  // namespace pdp
