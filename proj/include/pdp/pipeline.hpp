#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pdp/dp_solver.hpp"
#include "pdp/error.hpp"
#include "pdp/instance.hpp"
#include "pdp/oracle.hpp"
#include "pdp/reduction.hpp"
#include "pdp/treewidth.hpp"

namespace pdp {

enum class SolveMethod { Auto, Dp, Oracle };

struct SolveConfig {
  SolveMethod method = SolveMethod::Auto;
  int dp_width_cap = 12;
  std::size_t dp_max_profiles = DpLimits{}.max_profiles;
  std::uint64_t oracle_node_budget = OracleLimits{}.node_budget;
  ReduceOptions reduce{};
  DecompositionStrategy strategy = DecompositionStrategy::MinFill;
};

struct StageTimings {
  double reduce_ms = 0;
  double decompose_ms = 0;
  double solve_ms = 0;
  double total_ms = 0;
};

struct SolveReport {
  bool solvable = false;
  std::optional<Solution> solution;  // in the ids of the input instance
  std::vector<VertexId> removed;
  int width = -1;
  std::string method;  // "dp" or "oracle"
  std::optional<DpStats> dp_stats;
  StageTimings timings;
};

inline const char* to_string(SolveMethod m) {
  switch (m) {
    case SolveMethod::Auto: return "auto";
    case SolveMethod::Dp: return "dp";
    case SolveMethod::Oracle: return "oracle";
  }
  return "?";
}

namespace detail {

using Clock = std::chrono::steady_clock;

inline double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

}  // namespace detail

/// reduce -> decompose -> make_nice -> DP, with the brute-force search as
/// fallback when the width is over the cap or the DP runs out of room.
/// Throws ResourceLimitError when no method finishes within its limits.
inline SolveReport solve(const Instance& inst, const SolveConfig& config = {}) {
  validate_instance(inst);
  const auto t0 = detail::Clock::now();
  SolveReport report;

  auto stage = detail::Clock::now();
  const ReducedInstance reduced = reduce_instance(inst, config.reduce);
  report.removed = reduced.removed;
  report.timings.reduce_ms = detail::ms_since(stage);

  stage = detail::Clock::now();
  const TreeDecomposition td = decompose(reduced.instance.graph, config.strategy);
  const NiceTreeDecomposition nice = make_nice(td);
  report.width = td.width();
  report.timings.decompose_ms = detail::ms_since(stage);

  stage = detail::Clock::now();
  std::optional<Solution> found;
  bool decided = false;
  std::string dp_failure;
  const bool try_dp = config.method == SolveMethod::Dp ||
                      (config.method == SolveMethod::Auto && report.width <= config.dp_width_cap);
  if (try_dp) {
    try {
      DpResult r = solve_dp(reduced.instance, nice, DpLimits{config.dp_max_profiles});
      found = std::move(r.solution);
      report.dp_stats = r.stats;
      report.method = "dp";
      decided = true;
    } catch (const ResourceLimitError& e) {
      if (config.method == SolveMethod::Dp) throw;
      dp_failure = e.what();
    }
  }
  if (!decided) {
    try {
      found = solve_bruteforce(reduced.instance, OracleLimits{config.oracle_node_budget});
      report.method = "oracle";
    } catch (const BudgetExceededError& e) {
      std::string why = e.what();
      if (!dp_failure.empty()) why = dp_failure + "; " + why;
      else if (config.method == SolveMethod::Auto) why = "width " + std::to_string(report.width) + " exceeds the DP cap; " + why;
      throw ResourceLimitError(why);
    }
  }
  report.timings.solve_ms = detail::ms_since(stage);

  if (found) {
    Solution mapped;
    for (const auto& path : found->paths) {
      std::vector<VertexId> p;
      for (VertexId v : path) p.push_back(reduced.vertex_origin[static_cast<std::size_t>(v)]);
      mapped.paths.push_back(std::move(p));
    }
    if (auto verdict = verify_solution(inst, mapped); !verdict)
      throw std::logic_error("solution fails on the input instance: " + verdict.reason);
    report.solvable = true;
    report.solution = std::move(mapped);
  }
  report.timings.total_ms = detail::ms_since(t0);
  return report;
}

}  // namespace pdp
