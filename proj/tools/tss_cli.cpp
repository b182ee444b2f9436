// tss: solve, benchmark and compare minimum target set heuristics.
//
// Exit status: 0 success, 1 I/O or data error, 2 bad arguments,
// 3 when `verify` finds a set that does not activate the graph.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <set>

#include "tss/tss.hpp"

namespace fs = std::filesystem;
using namespace tss;

namespace {

constexpr int kOk = 0;
constexpr int kIoError = 1;
constexpr int kUsage = 2;
constexpr int kInvalidSet = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

Algorithm algorithm_or_throw(const std::string& name) {
  auto a = parse_algorithm(name);
  if (!a) throw UsageError("unknown algorithm '" + name + "'");
  return *a;
}

BrkgaParams parse_params(const std::string& s) {
  auto parts = split_commas(s);
  if (parts.size() != 3) throw UsageError("--params expects pe,pm,pbias");
  BrkgaParams p;
  try {
    p = {std::stod(parts[0]), std::stod(parts[1]), std::stod(parts[2])};
  } catch (const std::exception&) {
    throw UsageError("--params expects three numbers");
  }
  return p;
}

std::ofstream open_out(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

std::vector<std::uint64_t> read_solution(const fs::path& path) {
  std::istringstream in(read_file(path));
  std::vector<std::uint64_t> ids;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (detail::is_comment_or_blank(line)) continue;
    auto tokens = detail::split_ws(line);
    if (tokens.size() != 1) throw ParseError(lineno, "expected one vertex id");
    std::uint64_t id = 0;
    if (!detail::parse_uint(tokens[0], id)) throw ParseError(lineno, "bad vertex id '" + std::string(tokens[0]) + "'");
    ids.push_back(id);
  }
  return ids;
}

// ---- solve -----------------------------------------------------------------

struct SolveArgs {
  std::string graph, algo = "fast-rev", thresholds = "majority", out, trace, params;
  std::optional<double> budget;
  std::optional<std::uint64_t> iterations;
  std::optional<std::size_t> target;
  std::uint64_t seed = 1;
};

int cmd_solve(const SolveArgs& a) {
  Algorithm algo = algorithm_or_throw(a.algo);
  CellOptions opt;
  if (a.budget) {
    if (!(*a.budget > 0.0)) throw UsageError("--budget must be positive");
    opt.budget = a.budget;
  }
  opt.iteration_limit = a.iterations;
  if (!a.params.empty()) {
    if (algo != Algorithm::brkga && algo != Algorithm::brkga_rev)
      throw UsageError("--params applies to brkga and brkga-rev only");
    opt.fixed_params = parse_params(a.params);
  }
  InstanceSpec spec{fs::path(a.graph).stem().string(), a.graph, a.thresholds, a.target};
  LoadedInstance inst{spec, load_graph(a.graph), {}};
  inst.thresholds = load_thresholds(inst.graph, a.thresholds);

  RunRecord rec = run_cell(inst, algo, 0, a.seed, opt);
  std::cout << "instance " << rec.instance << " (" << inst.graph.vertex_count() << " vertices, "
            << inst.graph.edge_count() << " edges)\n";
  std::cout << "algorithm " << rec.algorithm << '\n';
  std::cout << "fitness " << rec.best_fitness << '\n';
  std::cout << "wall_time " << std::fixed << std::setprecision(3) << rec.wall_time << " s\n";
  if (!is_deterministic(algo)) std::cout << "iterations " << rec.iterations << '\n';

  if (!a.out.empty()) {
    auto out = open_out(a.out);
    for (auto id : rec.solution) out << id << '\n';
  }
  if (!a.trace.empty()) {
    auto out = open_out(a.trace);
    write_trace(out, rec);
  }
  return kOk;
}

// ---- bench -----------------------------------------------------------------

struct BenchArgs {
  std::string plan, algos, thresholds = "majority", out, summary, trace_dir, params;
  std::vector<std::string> graphs;
  std::optional<std::size_t> runs, workers;
  std::optional<double> budget;
  std::optional<std::uint64_t> iterations, seed;
};

std::size_t env_workers() {
  if (const char* w = std::getenv("TSS_WORKERS")) {
    std::uint64_t v = 0;
    if (detail::parse_uint(w, v) && v > 0) return static_cast<std::size_t>(v);
  }
  return 1;
}

int cmd_bench(const BenchArgs& a) {
  ExperimentPlan plan;
  if (!a.plan.empty()) {
    if (!a.graphs.empty()) throw UsageError("give either --plan or --graph, not both");
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(read_file(a.plan));
    } catch (const nlohmann::json::exception& e) {
      throw UsageError(std::string("bad plan file: ") + e.what());
    }
    try {
      plan = plan_from_json(j, fs::path(a.plan).parent_path());
    } catch (const std::exception& e) {
      throw UsageError(std::string("bad plan file: ") + e.what());
    }
    if (!j.contains("workers")) plan.workers = env_workers();
  } else {
    if (a.graphs.empty()) throw UsageError("bench needs --plan or at least one --graph");
    for (const auto& g : a.graphs) plan.instances.push_back({fs::path(g).stem().string(), g, a.thresholds, {}});
    plan.workers = env_workers();
  }
  if (!a.algos.empty()) {
    plan.algorithms.clear();
    for (const auto& name : split_commas(a.algos)) plan.algorithms.push_back(algorithm_or_throw(name));
  }
  if (a.runs) plan.runs = *a.runs;
  if (a.budget) plan.budget = a.budget;
  if (a.iterations) plan.iteration_limit = a.iterations;
  if (a.seed) plan.seed = *a.seed;
  if (a.workers) plan.workers = *a.workers;
  if (!a.params.empty()) plan.fixed_params = parse_params(a.params);
  try {
    plan.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  std::optional<std::ofstream> records;
  if (!a.out.empty()) records = open_out(a.out);
  auto sink = [&](const RunRecord& r) {
    if (records) {
      write_record(*records, r);
      records->flush();
    }
    if (!a.trace_dir.empty()) {
      auto out = open_out(fs::path(a.trace_dir) / (r.instance + "_" + r.algorithm + "_" + std::to_string(r.run) + ".csv"));
      write_trace(out, r);
    }
  };
  std::vector<RunRecord> all;
  try {
    all = run_experiment(plan, sink);
  } catch (const ExperimentError& e) {
    std::cerr << "tss: " << e.what() << '\n';
    return kIoError;
  }
  auto rows = summarize(all);
  write_summary_table(std::cout, rows);
  if (!a.summary.empty()) {
    auto out = open_out(a.summary);
    write_summary_csv(out, rows);
  }
  return kOk;
}

// ---- stats -----------------------------------------------------------------

struct StatsArgs {
  std::string records, baseline, against;
  double alpha = 0.05;
};

int cmd_stats(const StatsArgs& a) {
  std::istringstream in(read_file(a.records));
  std::vector<RunRecord> recs = read_records(in);
  for (const auto& r : recs) algorithm_or_throw(r.algorithm);
  algorithm_or_throw(a.baseline);
  std::vector<std::string> others = split_commas(a.against);
  for (const auto& o : others) algorithm_or_throw(o);
  if (!(a.alpha > 0.0 && a.alpha < 1.0)) throw UsageError("--alpha must lie in (0, 1)");

  std::vector<std::string> instances;
  std::map<std::pair<std::string, std::string>, std::vector<double>> fit;
  for (const auto& r : recs) {
    if (std::find(instances.begin(), instances.end(), r.instance) == instances.end()) instances.push_back(r.instance);
    fit[{r.instance, r.algorithm}].push_back(static_cast<double>(r.best_fitness));
  }

  std::cout << std::left << std::setw(16) << "instance";
  for (const auto& o : others) std::cout << std::right << std::setw(16) << (a.baseline + " vs " + o);
  std::cout << '\n';
  for (const auto& inst : instances) {
    std::cout << std::left << std::setw(16) << inst;
    const auto& base = fit[{inst, a.baseline}];
    for (const auto& o : others) {
      const auto& cmp = fit[{inst, o}];
      std::string cell = "-";
      if (!base.empty() && !cmp.empty()) {
        double p = mann_whitney_u(base, cmp);
        std::ostringstream s;
        s << std::setprecision(3) << std::scientific << p << (p <= a.alpha ? " *" : "  ");
        cell = s.str();
      }
      std::cout << std::right << std::setw(16) << cell;
    }
    std::cout << '\n';
  }
  std::cout << "* p <= " << a.alpha << '\n';
  return kOk;
}

// ---- verify ----------------------------------------------------------------

struct VerifyArgs {
  std::string graph, solution, thresholds = "majority";
};

int cmd_verify(const VerifyArgs& a) {
  Graph g = load_graph(a.graph);
  Thresholds th = load_thresholds(g, a.thresholds);
  VertexSet s(g.vertex_count());
  for (auto id : read_solution(a.solution)) {
    auto v = g.find_original(id);
    if (!v) throw ValidationError("vertex " + std::to_string(id) + " is not in the graph");
    s.insert(*v);
  }
  VertexSet reached = spread(g, th, s);
  std::cout << "set size " << s.size() << ", activates " << reached.size() << " of " << g.vertex_count() << '\n';
  if (reached.size() == g.vertex_count()) {
    std::cout << "valid\n";
    return kOk;
  }
  std::cout << "invalid\n";
  return kInvalidSet;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimum target set selection under threshold diffusion"};
  app.require_subcommand(1);

  SolveArgs sa;
  auto* solve = app.add_subcommand("solve", "run one heuristic on one graph");
  solve->add_option("--graph", sa.graph, "edge list, optionally gzip-compressed")->required();
  solve->add_option("--algo", sa.algo, "mdg, mdg-rev, brkga, brkga-rev, fast or fast-rev")->capture_default_str();
  solve->add_option("--budget", sa.budget, "seconds; default max(100, |V|/100)");
  solve->add_option("--iterations", sa.iterations, "generation cap");
  solve->add_option("--seed", sa.seed)->capture_default_str();
  solve->add_option("--thresholds", sa.thresholds, "'majority' or a file of 'vertex threshold' lines")
      ->capture_default_str();
  solve->add_option("--out", sa.out, "write the target set, one original id per line");
  solve->add_option("--trace", sa.trace, "write the convergence trace as CSV");
  solve->add_option("--params", sa.params, "pe,pm,pbias for brkga and brkga-rev");
  solve->add_option("--target-fitness", sa.target, "stop once a set this small is found");

  BenchArgs ba;
  auto* bench = app.add_subcommand("bench", "run an experiment grid");
  bench->add_option("--plan", ba.plan, "JSON plan file");
  bench->add_option("--graph", ba.graphs, "instance (repeatable)");
  bench->add_option("--algos", ba.algos, "comma-separated algorithm list");
  bench->add_option("--thresholds", ba.thresholds)->capture_default_str();
  bench->add_option("--runs", ba.runs, "runs per cell (default 10)");
  bench->add_option("--budget", ba.budget, "seconds per run");
  bench->add_option("--iterations", ba.iterations, "generation cap per run");
  bench->add_option("--seed", ba.seed, "base seed (default 1)");
  bench->add_option("--workers", ba.workers, "worker threads (default $TSS_WORKERS or 1)");
  bench->add_option("--params", ba.params, "pe,pm,pbias for the static modes");
  bench->add_option("--out", ba.out, "NDJSON run records");
  bench->add_option("--summary", ba.summary, "CSV summary");
  bench->add_option("--trace-dir", ba.trace_dir, "one trace CSV per run");

  StatsArgs st;
  auto* stats = app.add_subcommand("stats", "Mann-Whitney U tests between algorithms");
  stats->add_option("--records", st.records)->required();
  stats->add_option("--baseline", st.baseline)->required();
  stats->add_option("--against", st.against, "comma-separated")->required();
  stats->add_option("--alpha", st.alpha)->capture_default_str();

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "check that a set activates the whole graph");
  verify->add_option("--graph", va.graph)->required();
  verify->add_option("--solution", va.solution)->required();
  verify->add_option("--thresholds", va.thresholds)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    std::cerr << "tss: " << e.what() << "\n\n" << (app.get_subcommands().empty() ? app.help() : app.get_subcommands()[0]->help());
    return kUsage;
  }

  try {
    if (solve->parsed()) return cmd_solve(sa);
    if (bench->parsed()) return cmd_bench(ba);
    if (stats->parsed()) return cmd_stats(st);
    return cmd_verify(va);
  } catch (const UsageError& e) {
    std::cerr << "tss: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "tss: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "tss: " << e.what() << '\n';
    return kIoError;
  }
}
