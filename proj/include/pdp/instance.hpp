#pragma once

#include <algorithm>
#include <charconv>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "pdp/error.hpp"
#include "pdp/plane_graph.hpp"

namespace pdp {

/// Disjoint Paths instance: request i asks for a path from sources[i] to
/// targets[i]. Vertex ids are 0-based in memory and 1-based in files.
struct Instance {
  PlaneGraph graph;
  std::vector<VertexId> sources;
  std::vector<VertexId> targets;

  int k() const noexcept { return static_cast<int>(sources.size()); }

  /// Request index of a terminal, or -1.
  int request_of(VertexId v) const {
    for (int i = 0; i < k(); ++i)
      if (sources[static_cast<std::size_t>(i)] == v || targets[static_cast<std::size_t>(i)] == v) return i;
    return -1;
  }
  std::vector<bool> terminal_mask() const {
    std::vector<bool> mask(static_cast<std::size_t>(graph.vertex_count()), false);
    for (VertexId s : sources) mask[static_cast<std::size_t>(s)] = true;
    for (VertexId t : targets) mask[static_cast<std::size_t>(t)] = true;
    return mask;
  }

  friend bool operator==(const Instance& a, const Instance& b) {
    return a.graph == b.graph && a.sources == b.sources && a.targets == b.targets;
  }
};

struct Solution {
  std::vector<std::vector<VertexId>> paths;

  friend bool operator==(const Solution&, const Solution&) = default;
};

/// Throws ValidationError unless |S| = |T|, all terminals are distinct
/// vertices and the graph has no loops.
inline void validate_instance(const Instance& inst) {
  if (inst.sources.size() != inst.targets.size()) throw ValidationError("source and target counts differ");
  const int n = inst.graph.vertex_count();
  std::set<VertexId> seen;
  auto check = [&](VertexId v) {
    if (v < 0 || v >= n) throw ValidationError("terminal " + std::to_string(v + 1) + " out of range");
    if (!seen.insert(v).second) throw ValidationError("terminal " + std::to_string(v + 1) + " used twice");
  };
  for (int i = 0; i < inst.k(); ++i) {
    check(inst.sources[static_cast<std::size_t>(i)]);
    check(inst.targets[static_cast<std::size_t>(i)]);
  }
  for (EdgeId e = 0; e < inst.graph.edge_count(); ++e)
    if (inst.graph.is_loop(e)) throw ValidationError("instance graph contains loop edge " + std::to_string(e + 1));
}

struct Verdict {
  bool ok = true;
  std::string reason;

  explicit operator bool() const noexcept { return ok; }
  static Verdict fail(std::string why) { return {false, std::move(why)}; }
};

inline bool adjacent(const PlaneGraph& g, VertexId a, VertexId b) {
  const auto& rot = g.rotation(a);
  return std::any_of(rot.begin(), rot.end(), [&](DartId d) { return g.head(d) == b; });
}

/// Checks a path system against an instance; the reason names the first
/// violated condition.
inline Verdict verify_solution(const Instance& inst, const Solution& sol) {
  const int n = inst.graph.vertex_count();
  if (static_cast<int>(sol.paths.size()) != inst.k())
    return Verdict::fail("expected " + std::to_string(inst.k()) + " paths, got " + std::to_string(sol.paths.size()));
  std::vector<int> owner(static_cast<std::size_t>(n), -1);
  for (int i = 0; i < inst.k(); ++i) {
    const auto& p = sol.paths[static_cast<std::size_t>(i)];
    const std::string tag = "path " + std::to_string(i + 1) + ": ";
    if (p.empty()) return Verdict::fail(tag + "empty");
    if (p.front() != inst.sources[static_cast<std::size_t>(i)]) return Verdict::fail(tag + "does not start at its source");
    if (p.back() != inst.targets[static_cast<std::size_t>(i)]) return Verdict::fail(tag + "does not end at its target");
    for (std::size_t j = 0; j < p.size(); ++j) {
      const VertexId v = p[j];
      if (v < 0 || v >= n) return Verdict::fail(tag + "vertex out of range");
      if (owner[static_cast<std::size_t>(v)] == i) return Verdict::fail(tag + "revisits vertex " + std::to_string(v + 1));
      if (owner[static_cast<std::size_t>(v)] != -1)
        return Verdict::fail(tag + "shares vertex " + std::to_string(v + 1) + " with path " +
                             std::to_string(owner[static_cast<std::size_t>(v)] + 1));
      owner[static_cast<std::size_t>(v)] = i;
      if (j > 0 && !adjacent(inst.graph, p[j - 1], v))
        return Verdict::fail(tag + std::to_string(p[j - 1] + 1) + "-" + std::to_string(v + 1) + " is not an edge");
    }
  }
  return {};
}

// ---------------------------------------------------------------------------
// Text formats

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

inline long long to_int(std::string_view tok, int line_no) {
  long long value = 0;
  const auto* first = tok.data();
  const auto* last = tok.data() + tok.size();
  if (!tok.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || first == last)
    throw ParseError("line " + std::to_string(line_no) + ": expected integer, got '" + std::string(tok) + "'");
  return value;
}

// Calls fn(tokens, line_no) for every non-blank line with comments stripped.
template <typename Fn>
void for_each_line(const std::string& text, Fn&& fn) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    auto tokens = split_ws(line);
    if (!tokens.empty()) fn(tokens, line_no);
  }
}

}  // namespace detail

/// Parses the line-based `p pdp` format. Syntax problems raise ParseError;
/// structurally invalid content (bad ids, overlapping terminals, broken or
/// non-planar rotations) raises ValidationError.
inline Instance parse_instance(const std::string& text) {
  using detail::to_int;
  bool have_header = false;
  long long n = 0, m = 0, k = 0;
  std::vector<std::optional<Edge>> edges;
  std::vector<std::optional<std::vector<EdgeId>>> rot_lines;
  int rot_count = 0;
  std::vector<std::optional<std::pair<VertexId, VertexId>>> pairs;
  std::optional<std::pair<EdgeId, char>> outer;

  auto vertex = [&](std::string_view tok, int ln) {
    long long v = to_int(tok, ln);
    if (v < 1 || v > n) throw ValidationError("line " + std::to_string(ln) + ": vertex " + std::string(tok) + " out of range");
    return static_cast<VertexId>(v - 1);
  };
  auto edge_id = [&](std::string_view tok, int ln) {
    long long e = to_int(tok, ln);
    if (e < 1 || e > m) throw ValidationError("line " + std::to_string(ln) + ": edge id " + std::string(tok) + " out of range");
    return static_cast<EdgeId>(e - 1);
  };

  detail::for_each_line(text, [&](const std::vector<std::string_view>& tok, int ln) {
    const std::string where = "line " + std::to_string(ln) + ": ";
    if (!have_header) {
      if (tok.size() != 5 || tok[0] != "p" || tok[1] != "pdp") throw ParseError(where + "expected 'p pdp <n> <m> <k>' header");
      n = to_int(tok[2], ln);
      m = to_int(tok[3], ln);
      k = to_int(tok[4], ln);
      if (n < 0 || m < 0 || k < 0) throw ParseError(where + "negative count in header");
      edges.assign(static_cast<std::size_t>(m), std::nullopt);
      rot_lines.assign(static_cast<std::size_t>(n), std::nullopt);
      pairs.assign(static_cast<std::size_t>(k), std::nullopt);
      have_header = true;
      return;
    }
    const auto kind = tok[0];
    if (kind == "e") {
      if (tok.size() != 4) throw ParseError(where + "expected 'e <id> <u> <v>'");
      const EdgeId e = edge_id(tok[1], ln);
      if (edges[static_cast<std::size_t>(e)]) throw ValidationError(where + "edge id defined twice");
      edges[static_cast<std::size_t>(e)] = Edge{vertex(tok[2], ln), vertex(tok[3], ln)};
    } else if (kind == "rot") {
      if (tok.size() < 2) throw ParseError(where + "expected 'rot <v> <edge-id>...'");
      const VertexId v = vertex(tok[1], ln);
      if (rot_lines[static_cast<std::size_t>(v)]) throw ValidationError(where + "rotation given twice");
      std::vector<EdgeId> ids;
      for (std::size_t i = 2; i < tok.size(); ++i) ids.push_back(edge_id(tok[i], ln));
      rot_lines[static_cast<std::size_t>(v)] = std::move(ids);
      ++rot_count;
    } else if (kind == "t") {
      if (tok.size() != 4) throw ParseError(where + "expected 't <i> <s> <t>'");
      const long long i = to_int(tok[1], ln);
      if (i < 1 || i > k) throw ValidationError(where + "pair index out of range");
      if (pairs[static_cast<std::size_t>(i - 1)]) throw ValidationError(where + "pair defined twice");
      pairs[static_cast<std::size_t>(i - 1)] = std::pair{vertex(tok[2], ln), vertex(tok[3], ln)};
    } else if (kind == "outer") {
      if (tok.size() != 3 || (tok[2] != "L" && tok[2] != "R")) throw ParseError(where + "expected 'outer <edge-id> <L|R>'");
      outer = std::pair{edge_id(tok[1], ln), tok[2][0]};
    } else {
      throw ParseError(where + "unknown record '" + std::string(kind) + "'");
    }
  });
  if (!have_header) throw ParseError("missing 'p pdp' header");

  std::vector<Edge> edge_list;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (!edges[e]) throw ValidationError("edge " + std::to_string(e + 1) + " not defined");
    edge_list.push_back(*edges[e]);
  }
  for (std::size_t e = 0; e < edge_list.size(); ++e)
    if (edge_list[e].u == edge_list[e].v) throw ValidationError("edge " + std::to_string(e + 1) + " is a loop");

  std::optional<std::vector<std::vector<DartId>>> rotations;
  if (rot_count != 0) {
    if (rot_count != n) throw ValidationError("rotations must be given for all vertices or none");
    rotations.emplace(static_cast<std::size_t>(n));
    for (VertexId v = 0; v < n; ++v) {
      for (EdgeId e : *rot_lines[static_cast<std::size_t>(v)]) {
        const Edge& ed = edge_list[static_cast<std::size_t>(e)];
        if (ed.u != v && ed.v != v)
          throw ValidationError("rotation of vertex " + std::to_string(v + 1) + " lists non-incident edge " + std::to_string(e + 1));
        (*rotations)[static_cast<std::size_t>(v)].push_back(dart_of(e, ed.u == v ? 0 : 1));
      }
    }
  }
  std::optional<DartId> outer_dart;
  if (outer) outer_dart = dart_of(outer->first, outer->second == 'L' ? 0 : 1);

  Instance inst;
  try {
    inst.graph = PlaneGraph::build(static_cast<int>(n), std::move(edge_list), std::move(rotations), outer_dart);
  } catch (const NonPlanarError& e) {
    throw ValidationError(e.what());
  } catch (const MalformedRotationError& e) {
    throw ValidationError(e.what());
  }
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (!pairs[i]) throw ValidationError("pair " + std::to_string(i + 1) + " not defined");
    inst.sources.push_back(pairs[i]->first);
    inst.targets.push_back(pairs[i]->second);
  }
  validate_instance(inst);
  return inst;
}

/// Canonical text: header, edges by id, a rotation for every vertex, pairs
/// by index, and the outer face named by its smallest dart.
inline std::string serialize_instance(const Instance& inst) {
  const PlaneGraph& g = inst.graph;
  std::ostringstream out;
  out << "p pdp " << g.vertex_count() << ' ' << g.edge_count() << ' ' << inst.k() << '\n';
  for (EdgeId e = 0; e < g.edge_count(); ++e) out << "e " << e + 1 << ' ' << g.edge(e).u + 1 << ' ' << g.edge(e).v + 1 << '\n';
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    out << "rot " << v + 1;
    for (DartId d : g.rotation(v)) out << ' ' << edge_of(d) + 1;
    out << '\n';
  }
  for (int i = 0; i < inst.k(); ++i)
    out << "t " << i + 1 << ' ' << inst.sources[static_cast<std::size_t>(i)] + 1 << ' '
        << inst.targets[static_cast<std::size_t>(i)] + 1 << '\n';
  const Face& outer = g.face(g.outer_face());
  if (!outer.boundary.empty()) {
    const DartId d = *std::min_element(outer.boundary.begin(), outer.boundary.end());
    out << "outer " << edge_of(d) + 1 << ' ' << (end_of(d) == 0 ? 'L' : 'R') << '\n';
  }
  return out.str();
}

inline std::string serialize_solution(const Solution& sol) {
  std::ostringstream out;
  for (std::size_t i = 0; i < sol.paths.size(); ++i) {
    out << "path " << i + 1;
    for (VertexId v : sol.paths[i]) out << ' ' << v + 1;
    out << '\n';
  }
  return out.str();
}

/// Parses `path <i> <v>...` lines; every index 1..k must appear once.
inline Solution parse_solution(const std::string& text) {
  std::vector<std::optional<std::vector<VertexId>>> paths;
  detail::for_each_line(text, [&](const std::vector<std::string_view>& tok, int ln) {
    if (tok[0] != "path" || tok.size() < 2) throw ParseError("line " + std::to_string(ln) + ": expected 'path <i> <v>...'");
    const long long i = detail::to_int(tok[1], ln);
    if (i < 1) throw ParseError("line " + std::to_string(ln) + ": path index must be positive");
    if (static_cast<std::size_t>(i) > paths.size()) paths.resize(static_cast<std::size_t>(i));
    auto& slot = paths[static_cast<std::size_t>(i - 1)];
    if (slot) throw ParseError("line " + std::to_string(ln) + ": path " + std::to_string(i) + " given twice");
    slot.emplace();
    for (std::size_t j = 2; j < tok.size(); ++j) slot->push_back(static_cast<VertexId>(detail::to_int(tok[j], ln) - 1));
  });
  Solution sol;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    if (!paths[i]) throw ParseError("path " + std::to_string(i + 1) + " missing");
    sol.paths.push_back(std::move(*paths[i]));
  }
  return sol;
}

}  // namespace pdp
