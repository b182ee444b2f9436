#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace tss {

struct MannWhitneyResult {
  /// U statistic of the first sample: pairs (a_i, b_j) with a_i > b_j, ties
  /// counting one half.
  double u = 0.0;
  double p_value = 1.0;
  bool exact = false;
};

/// Sample sizes below this (for the smaller sample) use the exact
/// permutation distribution.
inline constexpr std::size_t kMannWhitneyExactBelow = 8;

namespace detail {

struct RankedPool {
  std::vector<std::int64_t> doubled_ranks;  // midranks times two, pooled order: a then b
  double tie_term = 0.0;                    // sum over tie groups of t^3 - t
};

inline RankedPool rank_pool(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size() + b.size();
  std::vector<std::pair<double, std::size_t>> pooled;
  pooled.reserve(n);
  for (std::size_t i = 0; i < a.size(); ++i) pooled.emplace_back(a[i], i);
  for (std::size_t i = 0; i < b.size(); ++i) pooled.emplace_back(b[i], a.size() + i);
  std::sort(pooled.begin(), pooled.end());

  RankedPool out;
  out.doubled_ranks.resize(n);
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && pooled[j].first == pooled[i].first) ++j;
    // positions i..j-1 share ranks i+1..j; their mean, doubled, is i+1+j
    for (std::size_t k = i; k < j; ++k) out.doubled_ranks[pooled[k].second] = static_cast<std::int64_t>(i + 1 + j);
    double t = static_cast<double>(j - i);
    out.tie_term += t * t * t - t;
    i = j;
  }
  return out;
}

/// Probability that a uniformly random size-`na` subset of the pooled
/// doubled ranks has |2U - na*nb| >= deviation.
inline double exact_tail(const std::vector<std::int64_t>& ranks, std::size_t na, std::size_t nb,
                         std::int64_t deviation) {
  std::int64_t max_sum = 0;
  {
    std::vector<std::int64_t> sorted = ranks;
    std::sort(sorted.rbegin(), sorted.rend());
    for (std::size_t i = 0; i < na; ++i) max_sum += sorted[i];
  }
  const auto width = static_cast<std::size_t>(max_sum + 1);
  // count[k][s]: subsets of size k with doubled rank sum s
  std::vector<std::vector<long double>> count(na + 1, std::vector<long double>(width, 0.0L));
  count[0][0] = 1.0L;
  std::size_t seen = 0;
  for (std::int64_t r : ranks) {
    ++seen;
    for (std::size_t k = std::min(na, seen); k >= 1; --k) {
      auto& dst = count[k];
      const auto& src = count[k - 1];
      for (std::size_t s = width; s-- > static_cast<std::size_t>(r);) dst[s] += src[s - static_cast<std::size_t>(r)];
    }
  }
  const auto na_i = static_cast<std::int64_t>(na);
  const auto center = static_cast<std::int64_t>(na * nb);
  long double total = 0.0L, tail = 0.0L;
  for (std::size_t s = 0; s < width; ++s) {
    long double c = count[na][s];
    if (c == 0.0L) continue;
    total += c;
    std::int64_t twice_u = static_cast<std::int64_t>(s) - na_i * (na_i + 1);
    if (std::llabs(twice_u - center) >= deviation) tail += c;
  }
  return static_cast<double>(tail / total);
}

}  // namespace detail

/// Two-sided Mann-Whitney U test.
///
/// The exact permutation distribution (with midranks for ties) is used when
/// the smaller sample has fewer than 8 values; otherwise the normal
/// approximation with tie-corrected variance and continuity correction.
/// The result does not depend on argument order.
inline MannWhitneyResult mann_whitney_u_test(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("Mann-Whitney U test needs two non-empty samples");

  // Canonical argument order, so p(a, b) and p(b, a) are computed identically.
  std::vector<double> first(a.begin(), a.end()), second(b.begin(), b.end());
  std::sort(first.begin(), first.end());
  std::sort(second.begin(), second.end());
  bool swapped = second.size() < first.size() || (second.size() == first.size() && second < first);
  if (swapped) std::swap(first, second);

  const std::size_t na = first.size(), nb = second.size();
  const double n = static_cast<double>(na + nb);
  detail::RankedPool pool = detail::rank_pool(first, second);
  std::int64_t rank_sum2 = 0;
  for (std::size_t i = 0; i < na; ++i) rank_sum2 += pool.doubled_ranks[i];
  const auto na_i = static_cast<std::int64_t>(na);
  const std::int64_t twice_u = rank_sum2 - na_i * (na_i + 1);
  const auto center = static_cast<std::int64_t>(na * nb);
  const std::int64_t deviation = std::llabs(twice_u - center);

  MannWhitneyResult res;
  double u_first = static_cast<double>(twice_u) / 2.0;
  res.u = swapped ? static_cast<double>(na * nb) - u_first : u_first;

  if (std::min(na, nb) < kMannWhitneyExactBelow) {
    res.exact = true;
    res.p_value = std::min(1.0, detail::exact_tail(pool.doubled_ranks, na, nb, deviation));
    return res;
  }

  const double var = static_cast<double>(na) * static_cast<double>(nb) / 12.0 *
                     ((n + 1.0) - pool.tie_term / (n * (n - 1.0)));
  if (!(var > 0.0)) {
    res.p_value = 1.0;
    return res;
  }
  const double z = (static_cast<double>(deviation) / 2.0 - 0.5) / std::sqrt(var);
  res.p_value = z <= 0.0 ? 1.0 : std::min(1.0, std::erfc(z / std::sqrt(2.0)));
  return res;
}

inline double mann_whitney_u(std::span<const double> a, std::span<const double> b) {
  return mann_whitney_u_test(a, b).p_value;
}

}  // namespace tss
