#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "tss/graph.hpp"

namespace tss {

/// Dense membership set over the vertices of one graph.
class VertexSet {
public:
  VertexSet() = default;
  explicit VertexSet(std::size_t universe) : member_(universe, 0) {}

  static VertexSet of(std::size_t universe, std::span<const VertexId> vertices) {
    VertexSet s(universe);
    for (VertexId v : vertices) s.insert(v);
    return s;
  }
  static VertexSet full(std::size_t universe) {
    VertexSet s(universe);
    for (VertexId v = 0; v < universe; ++v) s.insert(v);
    return s;
  }

  std::size_t universe() const noexcept { return member_.size(); }
  std::size_t size() const noexcept { return count_; }
  bool empty() const noexcept { return count_ == 0; }
  bool contains(VertexId v) const { return member_[v] != 0; }

  /// Returns true if v was not already present.
  bool insert(VertexId v) {
    if (member_.at(v)) return false;
    member_[v] = 1;
    ++count_;
    return true;
  }
  bool erase(VertexId v) {
    if (!member_.at(v)) return false;
    member_[v] = 0;
    --count_;
    return true;
  }
  void clear() {
    std::fill(member_.begin(), member_.end(), 0);
    count_ = 0;
  }

  bool subset_of(const VertexSet& other) const {
    if (other.universe() != universe()) return false;
    for (std::size_t v = 0; v < member_.size(); ++v)
      if (member_[v] && !other.member_[v]) return false;
    return true;
  }

  /// Members in ascending id order.
  std::vector<VertexId> to_vector() const {
    std::vector<VertexId> out;
    out.reserve(count_);
    for (VertexId v = 0; v < member_.size(); ++v)
      if (member_[v]) out.push_back(v);
    return out;
  }

  friend bool operator==(const VertexSet& a, const VertexSet& b) {
    return a.count_ == b.count_ && a.member_ == b.member_;
  }

private:
  std::vector<std::uint8_t> member_;
  std::size_t count_ = 0;
};

/// Incremental threshold-diffusion state over a shared graph.
///
/// The active set is kept closed under the activation rule: after every
/// public call no inactive vertex v has at least theta(v) active neighbors.
/// Activations are propagated breadth-first; each newly active vertex bumps
/// the active-neighbor counter of its neighbors exactly once.
class DiffusionState {
public:
  DiffusionState(const Graph& g, const Thresholds& th)
      : graph_(&g), theta_(&th), active_(g.vertex_count()), counter_(g.vertex_count(), 0) {
    if (th.size() != g.vertex_count()) throw std::invalid_argument("threshold/graph size mismatch");
    queue_.reserve(g.vertex_count());
    seed_zero_thresholds();
  }

  /// Resets to the closure of the empty set.
  void reset() {
    active_.clear();
    std::fill(counter_.begin(), counter_.end(), 0);
    seed_zero_thresholds();
  }

  /// Resets to the closure of `s`.
  void assign(const VertexSet& s) {
    if (s.universe() != graph_->vertex_count()) throw std::invalid_argument("set universe mismatch");
    reset();
    queue_.clear();
    for (VertexId v = 0; v < s.universe(); ++v)
      if (s.contains(v) && active_.insert(v)) queue_.push_back(v);
    propagate();
  }
  void assign(std::span<const VertexId> s) {
    reset();
    queue_.clear();
    for (VertexId v : s)
      if (active_.insert(v)) queue_.push_back(v);
    propagate();
  }

  /// Adds v and cascades. Returns the number of newly activated vertices
  /// (0 when v was already active).
  std::size_t add(VertexId v) {
    if (v >= graph_->vertex_count()) {
      throw std::out_of_range("vertex " + std::to_string(v) + " out of range");
    }
    if (active_.contains(v)) return 0;
    std::size_t before = active_.size();
    queue_.clear();
    active_.insert(v);
    queue_.push_back(v);
    propagate();
    return active_.size() - before;
  }

  const VertexSet& active() const noexcept { return active_; }
  bool is_active(VertexId v) const { return active_.contains(v); }
  std::size_t active_count() const noexcept { return active_.size(); }
  bool complete() const noexcept { return active_.size() == graph_->vertex_count(); }
  std::uint32_t active_neighbors(VertexId v) const { return counter_[v]; }
  std::span<const std::uint32_t> counters() const { return counter_; }

  const Graph& graph() const noexcept { return *graph_; }
  const Thresholds& thresholds() const noexcept { return *theta_; }

private:
  void seed_zero_thresholds() {
    queue_.clear();
    for (VertexId v = 0; v < graph_->vertex_count(); ++v)
      if ((*theta_)[v] == 0 && active_.insert(v)) queue_.push_back(v);
    propagate();
  }

  void propagate() {
    // FIFO over a flat buffer; queue_ only grows during one cascade.
    for (std::size_t head = 0; head < queue_.size(); ++head) {
      VertexId u = queue_[head];
      for (VertexId w : graph_->neighbors(u)) {
        if (++counter_[w] >= (*theta_)[w] && !active_.contains(w)) {
          active_.insert(w);
          queue_.push_back(w);
        }
      }
    }
    queue_.clear();
  }

  const Graph* graph_;
  const Thresholds* theta_;
  VertexSet active_;
  std::vector<std::uint32_t> counter_;
  std::vector<VertexId> queue_;
};

/// Fixed point of the diffusion started from `s`.
inline VertexSet spread(const Graph& g, const Thresholds& th, const VertexSet& s) {
  DiffusionState state(g, th);
  state.assign(s);
  return state.active();
}

inline DiffusionState state_from_set(const Graph& g, const Thresholds& th, const VertexSet& s) {
  DiffusionState state(g, th);
  state.assign(s);
  return state;
}

/// Copying variant of DiffusionState::add.
inline DiffusionState add_and_spread(DiffusionState state, VertexId v) {
  state.add(v);
  return state;
}

inline bool is_valid(const Graph& g, const Thresholds& th, const VertexSet& s) {
  DiffusionState state(g, th);
  state.assign(s);
  return state.complete();
}

/// |s| for a valid set, |V| + 1 otherwise.
inline std::size_t fitness(const Graph& g, const Thresholds& th, const VertexSet& s) {
  return is_valid(g, th, s) ? s.size() : g.vertex_count() + 1;
}

}  // namespace tss
