#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "tss/random.hpp"

namespace tss {

/// Capped discrete power law on [1..r]: Pr[X = k] = k^-beta / sum_{j<=r} j^-beta.
class PowerLaw {
public:
  PowerLaw(double beta, std::int64_t r) : beta_(beta), r_(r) {
    if (!(beta > 1.0)) throw std::invalid_argument("power-law exponent must be > 1, got " + std::to_string(beta));
    if (r < 1) throw std::invalid_argument("power-law range must be >= 1, got " + std::to_string(r));
    const auto n = static_cast<std::size_t>(r);
    mass_.resize(n);
    cumulative_.resize(n);
    // Neumaier summation for the normalizer and the running table.
    double sum = 0.0, comp = 0.0;
    for (std::size_t k = 1; k <= n; ++k) {
      double term = std::pow(static_cast<double>(k), -beta);
      mass_[k - 1] = term;
      double t = sum + term;
      comp += std::abs(sum) >= std::abs(term) ? (sum - t) + term : (term - t) + sum;
      sum = t;
      cumulative_[k - 1] = sum + comp;
    }
    normalizer_ = sum + comp;
    for (std::size_t i = 0; i < n; ++i) {
      mass_[i] /= normalizer_;
      cumulative_[i] /= normalizer_;
    }
    cumulative_.back() = 1.0;
  }

  double beta() const noexcept { return beta_; }
  std::int64_t range() const noexcept { return r_; }
  /// C_r(beta).
  double normalizer() const noexcept { return normalizer_; }

  double probability(std::int64_t k) const {
    if (k < 1 || k > r_) return 0.0;
    return mass_[static_cast<std::size_t>(k - 1)];
  }
  std::span<const double> cumulative() const { return cumulative_; }

  /// Inverse-CDF draw: the smallest k with F(k) > u for u uniform in [0,1).
  std::int64_t sample(Rng& rng) const {
    double u = uniform01(rng);
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    if (it == cumulative_.end()) --it;
    return static_cast<std::int64_t>(it - cumulative_.begin()) + 1;
  }

private:
  double beta_;
  std::int64_t r_;
  double normalizer_ = 1.0;
  std::vector<double> mass_;
  std::vector<double> cumulative_;
};

/// Elite fraction, mutant fraction and crossover bias for one generation.
struct BrkgaParams {
  double elite_fraction = 0.24;
  double mutant_fraction = 0.11;
  double bias = 0.51;

  friend bool operator==(const BrkgaParams&, const BrkgaParams&) = default;
};

/// Constant parameters; does not touch the random source.
struct StaticParameters {
  BrkgaParams params;
  BrkgaParams next(Rng&) const { return params; }
};

/// Raw power-law draws before conversion.
struct ParameterDraw {
  std::int64_t elite = 1;
  std::int64_t mutant = 1;
  std::int64_t bias = 1;
};

/// Per-generation parameters from three capped power laws.
///
///   elite fraction  = 0.10 + 0.01 (15 - x),  x ~ PL(beta, [1..15])
///   mutant fraction = 0.10 + 0.01 x,         x ~ PL(beta, [1..20])
///   crossover bias  = 0.50 + 0.01 x,         x ~ PL(beta, [1..30])
///
/// The elite and mutant ranges are disjoint and sum to at most 0.54.
class ParameterSampler {
public:
  static constexpr double kDefaultBeta = 1.5;

  explicit ParameterSampler(double beta = kDefaultBeta)
      : elite_(beta, 15), mutant_(beta, 20), bias_(beta, 30) {}

  ParameterDraw draw(Rng& rng) const {
    ParameterDraw d;
    d.elite = elite_.sample(rng);
    d.mutant = mutant_.sample(rng);
    d.bias = bias_.sample(rng);
    return d;
  }

  /// Conversion maps, computed in hundredths so each value is the double
  /// nearest its two-decimal label.
  static BrkgaParams convert(const ParameterDraw& d) {
    return {static_cast<double>(10 + (15 - d.elite)) / 100.0, static_cast<double>(10 + d.mutant) / 100.0,
            static_cast<double>(50 + d.bias) / 100.0};
  }

  BrkgaParams next(Rng& rng) const { return convert(draw(rng)); }

  const PowerLaw& elite_law() const noexcept { return elite_; }
  const PowerLaw& mutant_law() const noexcept { return mutant_; }
  const PowerLaw& bias_law() const noexcept { return bias_; }

private:
  PowerLaw elite_;
  PowerLaw mutant_;
  PowerLaw bias_;
};

inline BrkgaParams sample_parameters(const ParameterSampler& sampler, Rng& rng) { return sampler.next(rng); }

}  // namespace tss
