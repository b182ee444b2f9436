#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "tss/diffusion.hpp"
#include "tss/graph.hpp"

namespace tss {

class PreconditionError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// Greedy constructors and the degree-ordered reduction, with reusable
/// scratch space. One instance per thread; the graph and thresholds are
/// shared read-only.
///
/// All argmax selections break ties toward the lowest vertex id.
class GreedySolver {
public:
  GreedySolver(const Graph& g, const Thresholds& th) : graph_(&g), theta_(&th), state_(g, th) {
    const std::size_t n = g.vertex_count();
    by_degree_desc_.resize(n);
    std::iota(by_degree_desc_.begin(), by_degree_desc_.end(), VertexId{0});
    std::stable_sort(by_degree_desc_.begin(), by_degree_desc_.end(),
                     [&](VertexId a, VertexId b) { return g.degree(a) > g.degree(b); });
    by_degree_asc_.resize(n);
    std::iota(by_degree_asc_.begin(), by_degree_asc_.end(), VertexId{0});
    std::stable_sort(by_degree_asc_.begin(), by_degree_asc_.end(),
                     [&](VertexId a, VertexId b) { return g.degree(a) < g.degree(b); });
    order_.reserve(n);
    score_.resize(n);
  }

  /// Maximum-degree greedy: repeatedly add the uncovered vertex of largest
  /// degree until the cascade covers everything.
  VertexSet mdg() { return construct(by_degree_desc_); }

  /// As mdg, but selecting by keys[v] * deg(v).
  VertexSet decode(std::span<const double> keys) {
    const std::size_t n = graph_->vertex_count();
    if (keys.size() != n) {
      throw std::invalid_argument("key vector has " + std::to_string(keys.size()) + " entries, expected " +
                                  std::to_string(n));
    }
    for (std::size_t v = 0; v < n; ++v) {
      if (!(keys[v] >= 0.0 && keys[v] <= 1.0)) {
        throw std::invalid_argument("key " + std::to_string(v) + " outside [0,1]");
      }
      score_[v] = keys[v] * static_cast<double>(graph_->degree(static_cast<VertexId>(v)));
    }
    order_.resize(n);
    std::iota(order_.begin(), order_.end(), VertexId{0});
    std::sort(order_.begin(), order_.end(), [&](VertexId a, VertexId b) {
      return score_[a] != score_[b] ? score_[a] > score_[b] : a < b;
    });
    return construct(order_);
  }

  /// Single ascending-degree pass dropping every vertex whose removal keeps
  /// the set valid. `s` must be valid.
  VertexSet reverse_mdg(const VertexSet& s) {
    if (s.universe() != graph_->vertex_count()) throw std::invalid_argument("set universe mismatch");
    state_.assign(s);
    if (!state_.complete()) throw PreconditionError("reverse_mdg requires a valid target set");
    return reduce_valid(s);
  }

  /// reverse_mdg without the validity check on the input.
  VertexSet reduce_valid(VertexSet current) {
    for (VertexId v : by_degree_asc_) {
      if (!current.contains(v)) continue;
      current.erase(v);
      state_.assign(current);
      if (!state_.complete()) current.insert(v);
    }
    return current;
  }

  std::span<const VertexId> degree_order_desc() const { return by_degree_desc_; }
  std::span<const VertexId> degree_order_asc() const { return by_degree_asc_; }

private:
  VertexSet construct(std::span<const VertexId> priority) {
    VertexSet chosen(graph_->vertex_count());
    state_.reset();
    // Scores are fixed for the whole construction, so the argmax over
    // uncovered vertices is the next uncovered entry of the priority order.
    for (VertexId v : priority) {
      if (state_.complete()) break;
      if (state_.is_active(v)) continue;
      chosen.insert(v);
      state_.add(v);
    }
    return chosen;
  }

  const Graph* graph_;
  const Thresholds* theta_;
  DiffusionState state_;
  std::vector<VertexId> by_degree_desc_;
  std::vector<VertexId> by_degree_asc_;
  std::vector<VertexId> order_;
  std::vector<double> score_;
};

inline VertexSet mdg(const Graph& g, const Thresholds& th) { return GreedySolver(g, th).mdg(); }

inline VertexSet decode(const Graph& g, const Thresholds& th, std::span<const double> keys) {
  return GreedySolver(g, th).decode(keys);
}

inline VertexSet reverse_mdg(const Graph& g, const Thresholds& th, const VertexSet& s) {
  return GreedySolver(g, th).reverse_mdg(s);
}

}  // namespace tss
