// Command-line front end for the planar disjoint paths toolkit.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "pdp/pdp.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace pdp;

namespace {

constexpr int kExitError = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw ValidationError("cannot write " + out_path);
  out << text;
}

// "a,b;c,d" with positive integers.
std::vector<std::pair<int, int>> parse_pairs(const std::string& text) {
  std::vector<std::pair<int, int>> out;
  if (text.empty()) return out;
  std::stringstream all(text);
  std::string item;
  while (std::getline(all, item, ';')) {
    const auto comma = item.find(',');
    if (comma == std::string::npos) throw ValidationError("pair '" + item + "' is not of the form a,b");
    try {
      std::size_t used_a = 0, used_b = 0;
      const std::string sa = item.substr(0, comma), sb = item.substr(comma + 1);
      const int a = std::stoi(sa, &used_a), b = std::stoi(sb, &used_b);
      if (used_a != sa.size() || used_b != sb.size()) throw std::invalid_argument(item);
      out.push_back({a, b});
    } catch (const std::logic_error&) {
      throw ValidationError("pair '" + item + "' is not of the form a,b");
    }
  }
  return out;
}

ReduceOptions parse_reduce(const std::string& text) {
  if (text == "safe") return {ReduceMode::Safe, 0};
  if (text == "off") return {ReduceMode::Off, 0};
  if (text.rfind("unsafe:", 0) == 0) {
    const std::string n = text.substr(7);
    if (!n.empty() && n.find_first_not_of("0123456789") == std::string::npos && n.size() < 9)
      return {ReduceMode::Unsafe, std::stoi(n)};
  }
  throw CLI::ValidationError("--reduce", "expected safe, off or unsafe:<n>, got '" + text + "'");
}

json paths_json(const Solution& sol) {
  json paths = json::array();
  for (const auto& p : sol.paths) {
    json one = json::array();
    for (VertexId v : p) one.push_back(v + 1);
    paths.push_back(one);
  }
  return paths;
}

// ---- subcommands ------------------------------------------------------------

struct SolveArgs {
  std::string input;
  std::string method = "auto";
  std::string reduce = "safe";
  std::string strategy = "min-fill";
  SolveConfig config;
  bool as_json = false;
};

int run_solve(const SolveArgs& a) {
  SolveConfig cfg = a.config;
  cfg.method = a.method == "dp" ? SolveMethod::Dp : a.method == "oracle" ? SolveMethod::Oracle : SolveMethod::Auto;
  cfg.reduce = parse_reduce(a.reduce);
  cfg.strategy = a.strategy == "min-degree" ? DecompositionStrategy::MinDegree
                 : a.strategy == "exact"    ? DecompositionStrategy::ExactSmall
                                            : DecompositionStrategy::MinFill;
  const Instance inst = parse_instance(read_file(a.input));
  const SolveReport r = solve(inst, cfg);

  if (a.as_json) {
    json out;
    out["solvable"] = r.solvable;
    out["method"] = r.method;
    out["width"] = r.width;
    json removed = json::array();
    for (VertexId v : r.removed) removed.push_back(v + 1);
    out["removed"] = removed;
    out["solution"] = r.solution ? paths_json(*r.solution) : json(nullptr);
    out["timings_ms"] = {{"reduce", r.timings.reduce_ms},
                         {"decompose", r.timings.decompose_ms},
                         {"solve", r.timings.solve_ms},
                         {"total", r.timings.total_ms}};
    if (r.dp_stats) {
      out["dp"] = {{"max_profiles_per_bag", r.dp_stats->max_profiles_per_bag},
                   {"total_profiles", r.dp_stats->total_profiles},
                   {"profile_cap", static_cast<double>(r.dp_stats->profile_cap)}};
    } else {
      out["dp"] = nullptr;
    }
    std::cout << out.dump(2) << '\n';
  } else {
    std::cout << (r.solvable ? "solvable" : "unsolvable") << '\n'
              << "method " << r.method << '\n'
              << "width " << r.width << '\n'
              << "removed " << r.removed.size() << '\n'
              << std::fixed << std::setprecision(3) << "time_ms reduce " << r.timings.reduce_ms << " decompose "
              << r.timings.decompose_ms << " solve " << r.timings.solve_ms << " total " << r.timings.total_ms << '\n';
    if (r.dp_stats)
      std::cout << "dp profiles max/bag " << r.dp_stats->max_profiles_per_bag << " total " << r.dp_stats->total_profiles
                << '\n';
    if (r.solution) std::cout << serialize_solution(*r.solution);
  }
  return r.solvable ? 0 : 1;
}

int run_verify(const std::string& input, const std::string& solution) {
  const Instance inst = parse_instance(read_file(input));
  const Solution sol = parse_solution(read_file(solution));
  const Verdict v = verify_solution(inst, sol);
  if (v.ok) {
    std::cout << "valid\n";
    return 0;
  }
  std::cout << "invalid: " << v.reason << '\n';
  return 1;
}

struct GenArgs {
  int rows = 0, cols = 0, n = 0, k = 0, depth = 0, ring = 0;
  std::uint64_t seed = 0;
  std::string pairs, out;
};

int run_gen_grid(const GenArgs& a) {
  if (a.cols < 1) throw ValidationError("--cols must be positive");
  std::vector<std::pair<GridCell, GridCell>> cells;
  auto cell = [&](int id) {
    if (id < 1) throw InvalidTerminalError("vertex id " + std::to_string(id) + " is out of range");
    return GridCell{(id - 1) / a.cols + 1, (id - 1) % a.cols + 1};
  };
  for (auto [s, t] : parse_pairs(a.pairs)) cells.push_back({cell(s), cell(t)});
  write_output(serialize_instance(gen_grid(a.rows, a.cols, cells)), a.out);
  return 0;
}

int run_gen_random(const GenArgs& a) {
  write_output(serialize_instance(gen_random_planar(a.n, a.k, a.seed)), a.out);
  return 0;
}

int run_gen_onion(const GenArgs& a) {
  std::vector<std::pair<int, int>> positions;
  for (auto [s, t] : parse_pairs(a.pairs)) positions.push_back({s - 1, t - 1});
  write_output(serialize_instance(gen_onion(a.depth, a.ring, positions)), a.out);
  return 0;
}

int run_gen_corpus(const std::string& dir) {
  fs::create_directories(dir);
  const auto corpus = standard_corpus();
  for (const auto& entry : corpus) write_output(serialize_instance(entry.instance), (fs::path(dir) / (entry.name + ".pdp")).string());
  std::cout << "wrote " << corpus.size() << " instances to " << dir << '\n';
  return 0;
}

int run_analyze(const std::string& input, bool as_json) {
  const Instance inst = parse_instance(read_file(input));
  const PlaneGraph& g = inst.graph;
  json out;
  out["vertices"] = g.vertex_count();
  out["edges"] = g.edge_count();
  out["k"] = inst.k();
  out["planar"] = true;
  out["components"] = g.component_count();
  out["faces"] = g.face_count();
  out["outer_face_length"] = g.face_count() ? g.face(g.outer_face()).length() : 0;
  out["euler"] = g.satisfies_euler();
  int length_sum = 0;
  for (const Face& f : g.faces()) length_sum += f.length();
  out["face_length_sum"] = length_sum;
  json width;
  width["min_fill"] = decompose(g, DecompositionStrategy::MinFill).width();
  width["min_degree"] = decompose(g, DecompositionStrategy::MinDegree).width();
  width["exact"] = g.vertex_count() <= kExactSmallCap ? json(decompose(g, DecompositionStrategy::ExactSmall).width()) : json(nullptr);
  out["width"] = width;
  out["safe_bound"] = inst.k() >= 1 ? json(safe_bound(inst.k())) : json(nullptr);
  if (as_json) {
    std::cout << out.dump(2) << '\n';
    return 0;
  }
  std::cout << "planar yes (embedding valid)\n"
            << "vertices " << g.vertex_count() << " edges " << g.edge_count() << " pairs " << inst.k() << '\n'
            << "components " << g.component_count() << " faces " << g.face_count() << " outer face length "
            << out["outer_face_length"] << '\n'
            << "euler " << (g.satisfies_euler() ? "ok" : "FAILED") << " face length sum " << length_sum << '\n'
            << "width min-fill " << width["min_fill"] << " min-degree " << width["min_degree"] << " exact "
            << (width["exact"].is_null() ? std::string("n/a") : width["exact"].dump()) << '\n'
            << "safe_bound " << (out["safe_bound"].is_null() ? std::string("n/a") : out["safe_bound"].dump()) << '\n';
  return 0;
}

int run_hom_test(const std::string& input, const std::vector<std::string>& flows) {
  const Instance inst = parse_instance(read_file(input));
  std::vector<Flow> parsed;
  for (const auto& path : flows) {
    Flow f;
    try {
      f = parse_flow(read_file(path), inst.graph);
    } catch (const Error& e) {
      std::cerr << "invalid flow " << path << ": " << e.what() << '\n';
      return kExitError;
    }
    if (!is_flow(f, inst)) {
      std::cerr << "invalid flow " << path << ": vertex traces do not match the requests\n";
      return kExitError;
    }
    parsed.push_back(std::move(f));
  }
  const auto h = are_homologous(inst.graph, parsed[0], parsed[1]);
  if (!h) {
    std::cout << "not homologous\n";
    return 1;
  }
  std::cout << "homologous\n";
  const std::string text = serialize_labeling(*h);
  std::cout << (text.empty() ? "h all empty\n" : text);
  return 0;
}

int run_bench(const std::string& dir, bool as_json) {
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".pdp") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  if (files.empty()) throw ValidationError("no .pdp files in " + dir);

  using Clock = std::chrono::steady_clock;
  json rows = json::array();
  int agree = 0;
  for (const auto& path : files) {
    const Instance inst = parse_instance(read_file(path.string()));
    SolveConfig dp_cfg;
    dp_cfg.method = SolveMethod::Dp;
    dp_cfg.reduce.mode = ReduceMode::Off;
    const SolveReport dp = solve(inst, dp_cfg);
    const auto t0 = Clock::now();
    const bool truth = solve_bruteforce(inst).has_value();
    const double oracle_ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    const bool same = dp.solvable == truth;
    agree += same;
    rows.push_back({{"name", path.stem().string()},
                    {"n", inst.graph.vertex_count()},
                    {"m", inst.graph.edge_count()},
                    {"k", inst.k()},
                    {"width", dp.width},
                    {"dp", dp.solvable},
                    {"oracle", truth},
                    {"agree", same},
                    {"dp_ms", dp.timings.total_ms},
                    {"oracle_ms", oracle_ms}});
  }
  const double pct = 100.0 * agree / static_cast<double>(files.size());
  if (as_json) {
    json out;
    out["instances"] = rows;
    out["total"] = files.size();
    out["agree"] = agree;
    out["agreement_pct"] = pct;
    std::cout << out.dump(2) << '\n';
  } else {
    std::cout << std::left << std::setw(22) << "instance" << std::right << std::setw(4) << "n" << std::setw(4) << "m"
              << std::setw(3) << "k" << std::setw(4) << "w" << std::setw(5) << "dp" << std::setw(7) << "oracle"
              << std::setw(6) << "agree" << std::setw(10) << "dp_ms" << std::setw(10) << "orc_ms" << '\n';
    std::cout << std::fixed << std::setprecision(3);
    for (const auto& r : rows)
      std::cout << std::left << std::setw(22) << r["name"].get<std::string>() << std::right << std::setw(4)
                << r["n"].get<int>() << std::setw(4) << r["m"].get<int>() << std::setw(3) << r["k"].get<int>()
                << std::setw(4) << r["width"].get<int>() << std::setw(5) << (r["dp"].get<bool>() ? "yes" : "no")
                << std::setw(7) << (r["oracle"].get<bool>() ? "yes" : "no") << std::setw(6)
                << (r["agree"].get<bool>() ? "ok" : "DIFF") << std::setw(10) << r["dp_ms"].get<double>()
                << std::setw(10) << r["oracle_ms"].get<double>() << '\n';
    std::cout << std::setprecision(1) << "agreement " << pct << "% (" << agree << "/" << files.size() << ")\n";
  }
  return agree == static_cast<int>(files.size()) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact solvers and tools for planar disjoint paths"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  auto* solve_cmd = app.add_subcommand("solve", "Solve an instance");
  solve_cmd->add_option("--input", solve_args.input, "Instance file")->required();
  solve_cmd->add_option("--method", solve_args.method, "auto, dp or oracle")->check(CLI::IsMember({"auto", "dp", "oracle"}));
  solve_cmd->add_option("--reduce", solve_args.reduce, "safe, off or unsafe:<n>");
  solve_cmd->add_option("--strategy", solve_args.strategy, "Decomposition heuristic")
      ->check(CLI::IsMember({"min-fill", "min-degree", "exact"}));
  solve_cmd->add_option("--dp-width-cap", solve_args.config.dp_width_cap, "Largest width handed to the DP in auto mode");
  solve_cmd->add_option("--dp-max-profiles", solve_args.config.dp_max_profiles, "DP table size limit");
  solve_cmd->add_option("--oracle-node-budget", solve_args.config.oracle_node_budget, "Search node budget of the oracle");
  solve_cmd->add_flag("--json", solve_args.as_json, "Machine-readable report");

  std::string verify_input, verify_solution_path;
  auto* verify_cmd = app.add_subcommand("verify", "Check a solution file against an instance");
  verify_cmd->add_option("--input", verify_input, "Instance file")->required();
  verify_cmd->add_option("--solution", verify_solution_path, "Solution file")->required();

  GenArgs gen;
  std::string corpus_dir;
  auto* gen_cmd = app.add_subcommand("gen", "Generate instances");
  gen_cmd->require_subcommand(1);
  auto* grid_cmd = gen_cmd->add_subcommand("grid", "Rectangular grid");
  grid_cmd->add_option("--rows", gen.rows)->required();
  grid_cmd->add_option("--cols", gen.cols)->required();
  grid_cmd->add_option("--pairs", gen.pairs, "Terminal pairs \"a,b;c,d\" (1-based vertex ids)");
  grid_cmd->add_option("--out", gen.out, "Output file (default: stdout)");
  auto* random_cmd = gen_cmd->add_subcommand("random", "Random connected plane graph");
  random_cmd->add_option("--n", gen.n)->required();
  random_cmd->add_option("--k", gen.k)->required();
  random_cmd->add_option("--seed", gen.seed)->required();
  random_cmd->add_option("--out", gen.out, "Output file (default: stdout)");
  auto* onion_cmd = gen_cmd->add_subcommand("onion", "Centre inside nested rings, terminals on the outer ring");
  onion_cmd->add_option("--depth", gen.depth)->required();
  onion_cmd->add_option("--ring", gen.ring)->required();
  onion_cmd->add_option("--pairs", gen.pairs, "Outer ring positions \"a,b;c,d\" (1-based)");
  onion_cmd->add_option("--out", gen.out, "Output file (default: stdout)");
  auto* corpus_cmd = gen_cmd->add_subcommand("corpus", "Write the standard corpus");
  corpus_cmd->add_option("--out", corpus_dir, "Directory")->required();

  std::string analyze_input;
  bool analyze_json = false;
  auto* analyze_cmd = app.add_subcommand("analyze", "Embedding, face and width statistics");
  analyze_cmd->add_option("--input", analyze_input, "Instance file")->required();
  analyze_cmd->add_flag("--json", analyze_json, "Machine-readable report");

  std::string hom_input;
  std::vector<std::string> hom_flows;
  auto* hom_cmd = app.add_subcommand("hom-test", "Decide whether two flows are homologous");
  hom_cmd->add_option("--input", hom_input, "Instance file")->required();
  hom_cmd->add_option("--flow", hom_flows, "Flow file (give twice)")->required()->expected(1)->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);

  std::string bench_dir;
  bool bench_json = false;
  auto* bench_cmd = app.add_subcommand("bench", "Compare the DP with the oracle over a directory of instances");
  bench_cmd->add_option("--corpus", bench_dir, "Directory of .pdp files")->required();
  bench_cmd->add_flag("--json", bench_json, "Machine-readable report");

  try {
    app.parse(argc, argv);
    if (hom_cmd->parsed() && hom_flows.size() != 2) throw CLI::ValidationError("--flow", "exactly two flows are required");
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  try {
    if (solve_cmd->parsed()) return run_solve(solve_args);
    if (verify_cmd->parsed()) return run_verify(verify_input, verify_solution_path);
    if (grid_cmd->parsed()) return run_gen_grid(gen);
    if (random_cmd->parsed()) return run_gen_random(gen);
    if (onion_cmd->parsed()) return run_gen_onion(gen);
    if (corpus_cmd->parsed()) return run_gen_corpus(corpus_dir);
    if (analyze_cmd->parsed()) return run_analyze(analyze_input, analyze_json);
    if (hom_cmd->parsed()) return run_hom_test(hom_input, hom_flows);
    if (bench_cmd->parsed()) return run_bench(bench_dir, bench_json);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
  }
  return kExitError;
}
