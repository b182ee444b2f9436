#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "tss/brkga.hpp"
#include "tss/diffusion.hpp"
#include "tss/graph.hpp"
#include "tss/greedy.hpp"
#include "tss/io.hpp"
#include "tss/random.hpp"

namespace tss {

enum class Algorithm { mdg, mdg_rev, brkga, brkga_rev, fast, fast_rev };

inline constexpr Algorithm kAllAlgorithms[] = {Algorithm::mdg,       Algorithm::mdg_rev, Algorithm::brkga,
                                               Algorithm::brkga_rev, Algorithm::fast,    Algorithm::fast_rev};

inline std::string_view algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::mdg: return "mdg";
    case Algorithm::mdg_rev: return "mdg-rev";
    case Algorithm::brkga: return "brkga";
    case Algorithm::brkga_rev: return "brkga-rev";
    case Algorithm::fast: return "fast";
    case Algorithm::fast_rev: return "fast-rev";
  }
  return "?";
}

inline std::optional<Algorithm> parse_algorithm(std::string_view name) {
  for (Algorithm a : kAllAlgorithms)
    if (algorithm_name(a) == name) return a;
  return std::nullopt;
}

inline bool is_deterministic(Algorithm a) { return a == Algorithm::mdg || a == Algorithm::mdg_rev; }
inline bool uses_reverse_mdg(Algorithm a) {
  return a == Algorithm::mdg_rev || a == Algorithm::brkga_rev || a == Algorithm::fast_rev;
}

/// max{100, |V|/100} seconds.
inline double default_budget(std::size_t vertex_count) {
  return std::max(100.0, static_cast<double>(vertex_count) / 100.0);
}

/// Independent per-cell seed from the base seed and the cell coordinates.
inline std::uint64_t derive_seed(std::uint64_t base, std::string_view instance, Algorithm algo,
                                 std::uint64_t run) {
  std::uint64_t h = splitmix64(base);
  h = hash_combine(h, hash_string(instance));
  h = hash_combine(h, hash_string(algorithm_name(algo)));
  return hash_combine(h, run);
}

struct InstanceSpec {
  std::string name;
  std::string path;
  std::string thresholds = "majority";
  /// Known optimum; runs stop once they reach it.
  std::optional<std::size_t> target_fitness;
};

struct ExperimentPlan {
  std::vector<InstanceSpec> instances;
  std::vector<Algorithm> algorithms{std::begin(kAllAlgorithms), std::end(kAllAlgorithms)};
  std::size_t runs = 10;
  /// Overrides the max{100, |V|/100} rule when set.
  std::optional<double> budget;
  std::optional<std::uint64_t> iteration_limit;
  std::uint64_t seed = 1;
  std::size_t workers = 1;
  std::optional<BrkgaParams> fixed_params;
  bool keep_solutions = true;

  void validate() const {
    if (runs < 1) throw std::invalid_argument("runs must be >= 1");
    if (budget && !(*budget > 0.0)) throw std::invalid_argument("budget must be > 0 seconds");
    if (instances.empty()) throw std::invalid_argument("plan has no instances");
    if (algorithms.empty()) throw std::invalid_argument("plan has no algorithms");
  }
};

struct RunRecord {
  std::string instance;
  std::string algorithm;
  std::uint64_t run = 0;
  std::uint64_t seed = 0;
  std::size_t best_fitness = 0;
  double wall_time = 0.0;
  std::uint64_t iterations = 0;
  std::size_t population_min = 0;
  std::size_t population_max = 0;
  std::vector<std::uint64_t> solution;  // original vertex ids
  std::vector<TracePoint> trace;

  friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

class ExperimentError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// ---- persistence -----------------------------------------------------------

inline nlohmann::json to_json(const RunRecord& r) {
  nlohmann::json trace = nlohmann::json::array();
  for (const auto& t : r.trace) trace.push_back({t.elapsed, t.iteration, t.best_fitness});
  return {{"instance", r.instance},
          {"algorithm", r.algorithm},
          {"run", r.run},
          {"seed", r.seed},
          {"best_fitness", r.best_fitness},
          {"wall_time", r.wall_time},
          {"iterations", r.iterations},
          {"population_min", r.population_min},
          {"population_max", r.population_max},
          {"solution", r.solution},
          {"trace", trace}};
}

inline RunRecord record_from_json(const nlohmann::json& j) {
  RunRecord r;
  r.instance = j.at("instance").get<std::string>();
  r.algorithm = j.at("algorithm").get<std::string>();
  r.run = j.at("run").get<std::uint64_t>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.best_fitness = j.at("best_fitness").get<std::size_t>();
  r.wall_time = j.at("wall_time").get<double>();
  r.iterations = j.value("iterations", std::uint64_t{0});
  r.population_min = j.value("population_min", std::size_t{0});
  r.population_max = j.value("population_max", std::size_t{0});
  if (j.contains("solution")) r.solution = j.at("solution").get<std::vector<std::uint64_t>>();
  if (j.contains("trace")) {
    for (const auto& t : j.at("trace"))
      r.trace.push_back({t.at(0).get<double>(), t.at(1).get<std::uint64_t>(), t.at(2).get<std::size_t>()});
  }
  return r;
}

inline void write_record(std::ostream& out, const RunRecord& r) { out << to_json(r).dump() << '\n'; }

/// Newline-delimited JSON, one record per line.
inline std::vector<RunRecord> read_records(std::istream& in) {
  std::vector<RunRecord> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(record_from_json(nlohmann::json::parse(line)));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(lineno, std::string("bad record: ") + e.what());
    }
  }
  return out;
}

inline void write_trace(std::ostream& out, const RunRecord& r) {
  out << "elapsed_seconds,iteration,best_fitness\n";
  for (const auto& t : r.trace) out << t.elapsed << ',' << t.iteration << ',' << t.best_fitness << '\n';
}

/// Plan file (JSON):
///
///   {"instances": [{"name": "karate", "path": "data/karate.txt",
///                   "thresholds": "majority", "target_fitness": 3}],
///    "algorithms": ["mdg-rev", "fast-rev"], "runs": 10,
///    "budget": 100, "iterations": 1000, "seed": 1, "workers": 4,
///    "params": [0.24, 0.11, 0.51]}
///
/// Only "instances" is required. Relative instance paths resolve against
/// `base_dir`.
inline ExperimentPlan plan_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir = {}) {
  ExperimentPlan plan;
  for (const auto& inst : j.at("instances")) {
    InstanceSpec spec;
    if (inst.is_string()) {
      spec.path = inst.get<std::string>();
    } else {
      spec.path = inst.at("path").get<std::string>();
      spec.name = inst.value("name", std::string{});
      spec.thresholds = inst.value("thresholds", std::string{"majority"});
      if (inst.contains("target_fitness")) spec.target_fitness = inst.at("target_fitness").get<std::size_t>();
    }
    std::filesystem::path p(spec.path);
    if (p.is_relative() && !base_dir.empty()) spec.path = (base_dir / p).string();
    if (spec.thresholds != "majority") {
      std::filesystem::path tp(spec.thresholds);
      if (tp.is_relative() && !base_dir.empty()) spec.thresholds = (base_dir / tp).string();
    }
    if (spec.name.empty()) spec.name = p.stem().string();
    plan.instances.push_back(std::move(spec));
  }
  if (j.contains("algorithms")) {
    plan.algorithms.clear();
    for (const auto& a : j.at("algorithms")) {
      auto algo = parse_algorithm(a.get<std::string>());
      if (!algo) throw std::invalid_argument("unknown algorithm '" + a.get<std::string>() + "'");
      plan.algorithms.push_back(*algo);
    }
  }
  plan.runs = j.value("runs", plan.runs);
  if (j.contains("budget") && !j.at("budget").is_null()) plan.budget = j.at("budget").get<double>();
  if (j.contains("iterations") && !j.at("iterations").is_null())
    plan.iteration_limit = j.at("iterations").get<std::uint64_t>();
  plan.seed = j.value("seed", plan.seed);
  plan.workers = j.value("workers", plan.workers);
  if (j.contains("params")) {
    auto v = j.at("params").get<std::vector<double>>();
    if (v.size() != 3) throw std::invalid_argument("params must have three entries");
    plan.fixed_params = BrkgaParams{v[0], v[1], v[2]};
  }
  plan.validate();
  return plan;
}

// ---- running ---------------------------------------------------------------

struct LoadedInstance {
  InstanceSpec spec;
  Graph graph;
  Thresholds thresholds;
};

inline LoadedInstance load_instance(const InstanceSpec& spec) {
  try {
    LoadedInstance inst{spec, load_graph(spec.path), {}};
    inst.thresholds = load_thresholds(inst.graph, spec.thresholds);
    return inst;
  } catch (const std::exception& e) {
    throw ExperimentError("instance '" + spec.name + "': " + e.what());
  }
}

struct CellOptions {
  std::optional<double> budget;
  std::optional<std::uint64_t> iteration_limit;
  std::optional<BrkgaParams> fixed_params;
  bool keep_solution = true;
};

/// Runs one algorithm once on a loaded instance.
inline RunRecord run_cell(const LoadedInstance& inst, Algorithm algo, std::uint64_t run, std::uint64_t seed,
                          const CellOptions& opt = {}) {
  const Graph& g = inst.graph;
  RunRecord rec;
  rec.instance = inst.spec.name;
  rec.algorithm = std::string(algorithm_name(algo));
  rec.run = run;
  rec.seed = seed;

  VertexSet best;
  if (is_deterministic(algo)) {
    auto start = std::chrono::steady_clock::now();
    GreedySolver solver(g, inst.thresholds);
    best = solver.mdg();
    if (algo == Algorithm::mdg_rev) best = solver.reduce_valid(std::move(best));
    rec.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    rec.best_fitness = best.size();
    rec.trace.push_back({rec.wall_time, 0, rec.best_fitness});
  } else {
    BrkgaConfig cfg;
    cfg.mode = (algo == Algorithm::fast || algo == Algorithm::fast_rev) ? ParameterMode::power_law
                                                                         : ParameterMode::fixed;
    if (opt.fixed_params) cfg.fixed_params = *opt.fixed_params;
    cfg.apply_reverse_mdg = uses_reverse_mdg(algo);
    cfg.seed = seed;
    if (opt.iteration_limit) cfg.iteration_limit = opt.iteration_limit;
    if (opt.budget) {
      cfg.time_limit = *opt.budget;
    } else if (!opt.iteration_limit) {
      cfg.time_limit = default_budget(g.vertex_count());
    }
    cfg.target_fitness = inst.spec.target_fitness;
    RunResult res = run_brkga(cfg, g, inst.thresholds);
    best = std::move(res.best_set);
    rec.best_fitness = res.best_fitness;
    rec.wall_time = res.wall_time;
    rec.iterations = res.iterations;
    rec.population_min = res.min_population;
    rec.population_max = res.max_population;
    rec.trace = std::move(res.trace);
  }
  if (opt.keep_solution) {
    for (VertexId v : best.to_vector()) rec.solution.push_back(g.original_id(v));
  }
  return rec;
}

/// Runs every (instance, algorithm, run) cell of the plan.
///
/// Instances are processed one at a time; cells of an instance are spread
/// over `plan.workers` threads. `sink` sees each instance's records, in
/// canonical order, as soon as the instance finishes, so a later load failure
/// still leaves earlier results persisted. Deterministic algorithms run once
/// per instance and their record is replicated across run indices.
inline std::vector<RunRecord> run_experiment(const ExperimentPlan& plan,
                                             const std::function<void(const RunRecord&)>& sink = {}) {
  plan.validate();
  std::vector<RunRecord> all;
  for (const InstanceSpec& spec : plan.instances) {
    LoadedInstance inst = load_instance(spec);
    CellOptions opt{plan.budget, plan.iteration_limit, plan.fixed_params, plan.keep_solutions};

    struct Cell {
      Algorithm algo;
      std::uint64_t run;
    };
    std::vector<Cell> cells;
    for (Algorithm a : plan.algorithms) {
      if (is_deterministic(a)) {
        cells.push_back({a, 0});
      } else {
        for (std::uint64_t k = 0; k < plan.runs; ++k) cells.push_back({a, k});
      }
    }
    std::vector<std::optional<RunRecord>> done(cells.size());
    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr error;
    auto worker = [&] {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= cells.size()) return;
        try {
          const Cell& c = cells[i];
          done[i] = run_cell(inst, c.algo, c.run, derive_seed(plan.seed, spec.name, c.algo, c.run), opt);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    };
    const std::size_t nthreads = std::max<std::size_t>(1, std::min(plan.workers, cells.size()));
    if (nthreads == 1) {
      worker();
    } else {
      std::vector<std::jthread> pool;
      for (std::size_t t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    }
    if (error) std::rethrow_exception(error);

    std::size_t ci = 0;
    for (Algorithm a : plan.algorithms) {
      if (is_deterministic(a)) {
        RunRecord base = *done[ci++];
        for (std::uint64_t k = 0; k < plan.runs; ++k) {
          RunRecord r = base;
          r.run = k;
          r.seed = derive_seed(plan.seed, spec.name, a, k);
          all.push_back(std::move(r));
          if (sink) sink(all.back());
        }
      } else {
        for (std::uint64_t k = 0; k < plan.runs; ++k) {
          all.push_back(std::move(*done[ci++]));
          if (sink) sink(all.back());
        }
      }
    }
  }
  return all;
}

// ---- summaries -------------------------------------------------------------

struct SummaryRow {
  std::string instance;
  std::string algorithm;
  std::size_t runs = 0;
  std::size_t best = 0;
  double average = 0.0;
  double mean_wall_time = 0.0;
};

/// Best (minimum) and mean fitness per (instance, algorithm), in order of
/// first appearance.
inline std::vector<SummaryRow> summarize(const std::vector<RunRecord>& records) {
  std::vector<SummaryRow> rows;
  std::map<std::pair<std::string, std::string>, std::size_t> index;
  for (const auto& r : records) {
    auto key = std::make_pair(r.instance, r.algorithm);
    auto [it, fresh] = index.try_emplace(key, rows.size());
    if (fresh) rows.push_back({r.instance, r.algorithm, 0, r.best_fitness, 0.0, 0.0});
    SummaryRow& row = rows[it->second];
    ++row.runs;
    row.best = std::min(row.best, r.best_fitness);
    row.average += static_cast<double>(r.best_fitness);
    row.mean_wall_time += r.wall_time;
  }
  for (auto& row : rows) {
    row.average /= static_cast<double>(row.runs);
    row.mean_wall_time /= static_cast<double>(row.runs);
  }
  return rows;
}

inline std::string format_one_decimal(double x) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(1) << x;
  return s.str();
}

inline void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows) {
  out << "instance,algorithm,runs,best,avg,mean_wall_time\n";
  for (const auto& r : rows) {
    out << r.instance << ',' << r.algorithm << ',' << r.runs << ',' << r.best << ',' << format_one_decimal(r.average)
        << ',' << std::setprecision(6) << r.mean_wall_time << '\n';
  }
}

/// Instances as rows, one Best/Avg column pair per algorithm.
inline void write_summary_table(std::ostream& out, const std::vector<SummaryRow>& rows) {
  std::vector<std::string> instances, algorithms;
  std::map<std::pair<std::string, std::string>, const SummaryRow*> cell;
  for (const auto& r : rows) {
    if (std::find(instances.begin(), instances.end(), r.instance) == instances.end()) instances.push_back(r.instance);
    if (std::find(algorithms.begin(), algorithms.end(), r.algorithm) == algorithms.end())
      algorithms.push_back(r.algorithm);
    cell[{r.instance, r.algorithm}] = &r;
  }
  std::size_t name_w = 8;
  for (const auto& i : instances) name_w = std::max(name_w, i.size());
  const int col = 12;
  out << std::left << std::setw(static_cast<int>(name_w) + 2) << "network";
  for (const auto& a : algorithms) out << std::right << std::setw(2 * col) << a;
  out << '\n' << std::left << std::setw(static_cast<int>(name_w) + 2) << "";
  for (std::size_t i = 0; i < algorithms.size(); ++i) out << std::right << std::setw(col) << "best" << std::setw(col) << "avg";
  out << '\n';
  for (const auto& inst : instances) {
    out << std::left << std::setw(static_cast<int>(name_w) + 2) << inst;
    for (const auto& a : algorithms) {
      auto it = cell.find({inst, a});
      if (it == cell.end()) {
        out << std::right << std::setw(col) << "-" << std::setw(col) << "-";
      } else {
        out << std::right << std::setw(col) << it->second->best << std::setw(col)
            << format_one_decimal(it->second->average);
      }
    }
    out << '\n';
  }
}

// ---- exact oracle ------------------------------------------------------------

inline constexpr std::size_t kExactOracleMaxVertices = 20;

/// Lexicographically first valid set of minimum size among sets of at most
/// `max_size` vertices, if any.
inline std::optional<VertexSet> smallest_valid_set_up_to(const Graph& g, const Thresholds& th,
                                                         std::size_t max_size) {
  const std::size_t n = g.vertex_count();
  DiffusionState state(g, th);
  std::vector<VertexId> combo;
  for (std::size_t k = 0; k <= std::min(max_size, n); ++k) {
    combo.resize(k);
    for (std::size_t i = 0; i < k; ++i) combo[i] = static_cast<VertexId>(i);
    for (;;) {
      state.assign(std::span<const VertexId>(combo));
      if (state.complete()) return VertexSet::of(n, combo);
      // next k-combination of 0..n-1
      std::size_t i = k;
      while (i > 0 && combo[i - 1] == n - k + i - 1) --i;
      if (i == 0) break;
      ++combo[i - 1];
      for (std::size_t j = i; j < k; ++j) combo[j] = combo[j - 1] + 1;
    }
  }
  return std::nullopt;
}

/// Minimum-cardinality valid set by enumeration in order of increasing size.
/// Refuses graphs with more than 20 vertices.
inline VertexSet exact_min_target_set(const Graph& g, const Thresholds& th) {
  if (g.vertex_count() > kExactOracleMaxVertices) {
    throw std::length_error("exact search limited to " + std::to_string(kExactOracleMaxVertices) +
                            " vertices, graph has " + std::to_string(g.vertex_count()));
  }
  auto s = smallest_valid_set_up_to(g, th, g.vertex_count());
  return *s;  // V itself is always valid
}

}  // namespace tss
