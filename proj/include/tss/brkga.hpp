#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "tss/diffusion.hpp"
#include "tss/graph.hpp"
#include "tss/greedy.hpp"
#include "tss/powerlaw.hpp"
#include "tss/random.hpp"

namespace tss {

/// A random-key vector together with its decoded set and fitness.
struct Individual {
  std::vector<double> keys;
  std::size_t fitness = std::numeric_limits<std::size_t>::max();
  VertexSet decoded;

  bool evaluated() const noexcept { return fitness != std::numeric_limits<std::size_t>::max(); }
};

using Population = std::vector<Individual>;

enum class ParameterMode { fixed, power_law };

struct BrkgaConfig {
  std::size_t population_size = 46;
  ParameterMode mode = ParameterMode::fixed;
  /// Used in fixed mode. Not the original tuned values; see README.
  BrkgaParams fixed_params{0.24, 0.11, 0.51};
  double power_law_beta = ParameterSampler::kDefaultBeta;
  bool seed_half_individual = true;
  bool apply_reverse_mdg = false;
  std::uint64_t seed = 0;

  std::optional<double> time_limit;  // seconds
  std::optional<std::uint64_t> iteration_limit;
  /// Stop as soon as the best fitness is at most this value.
  std::optional<std::size_t> target_fitness;

  void validate() const {
    if (population_size < 2) throw std::invalid_argument("population size must be >= 2");
    if (time_limit && !(*time_limit > 0.0)) throw std::invalid_argument("time budget must be > 0 seconds");
    if (!time_limit && !iteration_limit && !target_fitness)
      throw std::invalid_argument("no termination criterion: set a time budget, iteration cap or target");
    if (mode == ParameterMode::fixed) {
      const auto& p = fixed_params;
      auto in01 = [](double x) { return x >= 0.0 && x <= 1.0; };
      if (!in01(p.elite_fraction) || !in01(p.mutant_fraction) || !in01(p.bias))
        throw std::invalid_argument("BRKGA parameters must lie in [0,1]");
      if (p.elite_fraction + p.mutant_fraction > 1.0 + 1e-12)
        throw std::invalid_argument("elite + mutant fraction must not exceed 1");
    } else if (!(power_law_beta > 1.0)) {
      throw std::invalid_argument("power-law exponent must be > 1");
    }
  }
};

struct TracePoint {
  double elapsed = 0.0;
  std::uint64_t iteration = 0;
  std::size_t best_fitness = 0;

  friend bool operator==(const TracePoint&, const TracePoint&) = default;
};

struct RunResult {
  VertexSet best_set;
  std::size_t best_fitness = 0;
  std::vector<TracePoint> trace;
  std::uint64_t iterations = 0;
  double wall_time = 0.0;
  std::size_t min_population = 0;
  std::size_t max_population = 0;
};

template <class S>
concept ParameterSource = requires(const S& s, Rng& rng) {
  { s.next(rng) } -> std::convertible_to<BrkgaParams>;
};

/// ceil(fraction * n), ignoring floating noise just above an integer.
inline std::size_t fraction_count(double fraction, std::size_t n) {
  double x = fraction * static_cast<double>(n);
  return static_cast<std::size_t>(std::ceil(x - 1e-9));
}

/// Group sizes for one generation: elites, mutants, crossover children.
struct GenerationShape {
  std::size_t elites = 0;
  std::size_t mutants = 0;
  std::size_t children = 0;
};

inline GenerationShape generation_shape(const BrkgaParams& p, std::size_t n) {
  GenerationShape s;
  s.elites = std::clamp<std::size_t>(fraction_count(p.elite_fraction, n), 1, n);
  s.mutants = std::min(fraction_count(p.mutant_fraction, n), n - s.elites);
  s.children = n - s.elites - s.mutants;
  return s;
}

/// Indices of the ceil(p_e * n) fittest individuals, ties resolved by
/// position in the population.
inline std::vector<std::size_t> select_elites(const Population& pop, double elite_fraction) {
  std::vector<std::size_t> idx(pop.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return pop[a].fitness < pop[b].fitness; });
  std::size_t k = std::clamp<std::size_t>(fraction_count(elite_fraction, pop.size()), 1, pop.size());
  idx.resize(k);
  return idx;
}

/// Per component: take y's key with probability `bias`, else x's.
inline Individual crossover(const Individual& x, const Individual& y, double bias, Rng& rng) {
  if (x.keys.size() != y.keys.size()) throw std::invalid_argument("parents differ in length");
  Individual child;
  child.keys.resize(x.keys.size());
  for (std::size_t i = 0; i < child.keys.size(); ++i)
    child.keys[i] = uniform01(rng) < bias ? y.keys[i] : x.keys[i];
  return child;
}

inline Individual random_individual(std::size_t n, Rng& rng) {
  Individual ind;
  ind.keys.resize(n);
  for (auto& k : ind.keys) k = uniform01(rng);
  return ind;
}

/// The evolutionary loop over one instance.
///
/// Evaluation is Baldwinian: when reverse_mdg is enabled it shrinks the
/// decoded set and so the fitness, but the keys are left untouched.
class Brkga {
public:
  Brkga(const Graph& g, const Thresholds& th, BrkgaConfig cfg)
      : graph_(&g), cfg_(std::move(cfg)), solver_(g, th), rng_(cfg_.seed) {
    if (cfg_.population_size < 2) throw std::invalid_argument("population size must be >= 2");
  }

  const BrkgaConfig& config() const noexcept { return cfg_; }
  const Population& population() const noexcept { return population_; }
  Rng& rng() noexcept { return rng_; }

  std::size_t evaluate(Individual& ind) {
    ind.decoded = solver_.decode(ind.keys);
    if (cfg_.apply_reverse_mdg) ind.decoded = solver_.reduce_valid(std::move(ind.decoded));
    ind.fitness = ind.decoded.size();
    return ind.fitness;
  }

  /// n - 1 uniform individuals plus the all-0.5 individual (or n uniform
  /// ones when seeding is off), all evaluated.
  void init_population() {
    const std::size_t n = graph_->vertex_count();
    population_.clear();
    population_.reserve(cfg_.population_size);
    std::size_t randoms = cfg_.seed_half_individual ? cfg_.population_size - 1 : cfg_.population_size;
    for (std::size_t i = 0; i < randoms; ++i) population_.push_back(random_individual(n, rng_));
    if (cfg_.seed_half_individual) {
      Individual half;
      half.keys.assign(n, 0.5);
      population_.push_back(std::move(half));
    }
    for (auto& ind : population_) evaluate(ind);
  }

  /// One generation: elites survive, fresh mutants, and children of a
  /// uniform parent from the whole population and a uniform elite.
  GenerationShape evolve_step(const BrkgaParams& params) {
    const std::size_t n = graph_->vertex_count();
    const std::size_t size = population_.size();
    GenerationShape shape = generation_shape(params, size);
    std::vector<std::size_t> elite_idx = select_elites(population_, params.elite_fraction);
    elite_idx.resize(shape.elites);

    Population next;
    next.reserve(size);
    for (std::size_t i : elite_idx) next.push_back(population_[i]);
    for (std::size_t i = 0; i < shape.mutants; ++i) next.push_back(random_individual(n, rng_));
    for (std::size_t i = 0; i < shape.children; ++i) {
      const Individual& x = population_[uniform_below(rng_, size)];
      const Individual& y = population_[elite_idx[uniform_below(rng_, elite_idx.size())]];
      next.push_back(crossover(x, y, params.bias, rng_));
    }
    for (std::size_t i = shape.elites; i < next.size(); ++i) evaluate(next[i]);
    population_ = std::move(next);
    return shape;
  }

  const Individual& best() const {
    return *std::min_element(population_.begin(), population_.end(),
                             [](const Individual& a, const Individual& b) { return a.fitness < b.fitness; });
  }

  template <ParameterSource Source>
  RunResult run(const Source& source) {
    cfg_.validate();
    using clock = std::chrono::steady_clock;
    const auto start = clock::now();
    auto elapsed = [&] { return std::chrono::duration<double>(clock::now() - start).count(); };

    RunResult result;
    init_population();
    result.min_population = result.max_population = population_.size();
    const Individual* incumbent = &best();
    result.best_fitness = incumbent->fitness;
    result.best_set = incumbent->decoded;
    result.trace.push_back({elapsed(), 0, result.best_fitness});

    std::uint64_t iteration = 0;
    for (;;) {
      if (cfg_.target_fitness && result.best_fitness <= *cfg_.target_fitness) break;
      if (cfg_.iteration_limit && iteration >= *cfg_.iteration_limit) break;
      if (cfg_.time_limit && elapsed() >= *cfg_.time_limit) break;

      BrkgaParams params = source.next(rng_);
      evolve_step(params);
      ++iteration;
      result.min_population = std::min(result.min_population, population_.size());
      result.max_population = std::max(result.max_population, population_.size());

      const Individual& b = best();
      if (b.fitness < result.best_fitness) {
        result.best_fitness = b.fitness;
        result.best_set = b.decoded;
        result.trace.push_back({elapsed(), iteration, result.best_fitness});
      }
    }
    result.iterations = iteration;
    result.wall_time = elapsed();
    return result;
  }

  RunResult run() {
    if (cfg_.mode == ParameterMode::power_law) return run(ParameterSampler(cfg_.power_law_beta));
    return run(StaticParameters{cfg_.fixed_params});
  }

private:
  const Graph* graph_;
  BrkgaConfig cfg_;
  GreedySolver solver_;
  Rng rng_;
  Population population_;
};

inline RunResult run_brkga(const BrkgaConfig& cfg, const Graph& g, const Thresholds& th) {
  return Brkga(g, th, cfg).run();
}

}  // namespace tss
