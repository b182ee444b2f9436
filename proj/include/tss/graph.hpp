#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace tss {

using VertexId = std::uint32_t;

/// Raised when an edge list or threshold file cannot be read. Carries the
/// 1-based line number of the offending line.
class ParseError : public std::runtime_error {
public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

/// Raised when input is well-formed but violates a model constraint.
class ValidationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct ParseStats {
  std::size_t lines = 0;
  std::size_t edges_read = 0;
  std::size_t self_loops_dropped = 0;
  std::size_t duplicates_dropped = 0;
};

/// Immutable undirected simple graph in compressed adjacency form.
///
/// Vertices are dense ids 0..n-1. Each neighbor list is sorted ascending and
/// free of duplicates and self-loops. When the graph was built from an edge
/// list, original_id(v) gives the id that appeared in the input.
class Graph {
public:
  Graph() : offsets_{0} {}

  /// Builds a graph over `vertex_count` vertices. Self-loops and duplicate
  /// edges (in either orientation) are dropped; `stats` receives the counts.
  static Graph from_edges(std::size_t vertex_count,
                          std::span<const std::pair<VertexId, VertexId>> edges,
                          ParseStats* stats = nullptr) {
    Graph g;
    g.offsets_.assign(vertex_count + 1, 0);
    std::vector<std::pair<VertexId, VertexId>> arcs;
    arcs.reserve(edges.size() * 2);
    for (auto [u, v] : edges) {
      if (u >= vertex_count || v >= vertex_count) {
        throw std::out_of_range("edge endpoint " + std::to_string(std::max(u, v)) +
                                " outside vertex range");
      }
      if (u == v) {
        if (stats) ++stats->self_loops_dropped;
        continue;
      }
      arcs.emplace_back(u, v);
      arcs.emplace_back(v, u);
    }
    std::sort(arcs.begin(), arcs.end());
    auto last = std::unique(arcs.begin(), arcs.end());
    if (stats) stats->duplicates_dropped += static_cast<std::size_t>(arcs.end() - last) / 2;
    arcs.erase(last, arcs.end());

    g.neighbors_.reserve(arcs.size());
    for (auto [u, v] : arcs) {
      ++g.offsets_[u + 1];
      g.neighbors_.push_back(v);
    }
    for (std::size_t i = 0; i < vertex_count; ++i) g.offsets_[i + 1] += g.offsets_[i];
    g.original_ids_.resize(vertex_count);
    for (std::size_t i = 0; i < vertex_count; ++i) g.original_ids_[i] = i;
    g.build_index();
    return g;
  }

  std::size_t vertex_count() const noexcept { return offsets_.size() - 1; }
  std::size_t edge_count() const noexcept { return neighbors_.size() / 2; }

  std::span<const VertexId> neighbors(VertexId v) const {
    return {neighbors_.data() + offsets_[v], neighbors_.data() + offsets_[v + 1]};
  }

  std::size_t degree(VertexId v) const { return offsets_[v + 1] - offsets_[v]; }

  std::size_t max_degree() const {
    std::size_t best = 0;
    for (VertexId v = 0; v < vertex_count(); ++v) best = std::max(best, degree(v));
    return best;
  }

  bool has_edge(VertexId u, VertexId v) const {
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
  }

  std::uint64_t original_id(VertexId v) const { return original_ids_[v]; }
  std::span<const std::uint64_t> original_ids() const { return original_ids_; }

  /// Dense id for an input id, if the id appeared in the source.
  std::optional<VertexId> find_original(std::uint64_t id) const {
    auto it = original_index_.find(id);
    if (it == original_index_.end()) return std::nullopt;
    return it->second;
  }

  void set_original_ids(std::vector<std::uint64_t> ids) {
    if (ids.size() != vertex_count()) throw std::invalid_argument("original id table size mismatch");
    original_ids_ = std::move(ids);
    build_index();
  }

  /// Edge list with original ids, each undirected edge once (u < v by dense id).
  std::vector<std::pair<std::uint64_t, std::uint64_t>> original_edges() const {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
    out.reserve(edge_count());
    for (VertexId u = 0; u < vertex_count(); ++u)
      for (VertexId v : neighbors(u))
        if (u < v) out.emplace_back(original_ids_[u], original_ids_[v]);
    return out;
  }

private:
  void build_index() {
    original_index_.clear();
    original_index_.reserve(original_ids_.size());
    for (VertexId v = 0; v < original_ids_.size(); ++v) original_index_.emplace(original_ids_[v], v);
  }

  std::vector<std::size_t> offsets_;
  std::vector<VertexId> neighbors_;
  std::vector<std::uint64_t> original_ids_;
  std::unordered_map<std::uint64_t, VertexId> original_index_;
};

/// Per-vertex activation thresholds, 0 <= theta(v) <= deg(v).
class Thresholds {
public:
  Thresholds() = default;

  Thresholds(const Graph& g, std::vector<std::uint32_t> theta) : theta_(std::move(theta)) {
    if (theta_.size() != g.vertex_count()) throw std::invalid_argument("threshold count != vertex count");
    for (VertexId v = 0; v < theta_.size(); ++v) {
      if (theta_[v] > g.degree(v)) {
        throw ValidationError("threshold " + std::to_string(theta_[v]) + " of vertex " +
                              std::to_string(g.original_id(v)) + " exceeds its degree " +
                              std::to_string(g.degree(v)));
      }
    }
  }

  std::uint32_t operator[](VertexId v) const { return theta_[v]; }
  std::size_t size() const noexcept { return theta_.size(); }
  std::span<const std::uint32_t> values() const { return theta_; }

private:
  std::vector<std::uint32_t> theta_;
};

namespace detail {

inline bool parse_uint(std::string_view tok, std::uint64_t& out) {
  if (tok.empty()) return false;
  std::uint64_t value = 0;
  for (char c : tok) {
    if (c < '0' || c > '9') return false;
    auto digit = static_cast<std::uint64_t>(c - '0');
    if (value > (std::numeric_limits<std::uint64_t>::max() - digit) / 10) return false;
    value = value * 10 + digit;
  }
  out = value;
  return true;
}

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> toks;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r'))
      ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r')
      ++j;
    if (j > i) toks.push_back(line.substr(i, j - i));
    i = j;
  }
  return toks;
}

inline bool is_comment_or_blank(std::string_view line) {
  auto pos = line.find_first_not_of(" \t\r");
  return pos == std::string_view::npos || line[pos] == '#' || line[pos] == '%';
}

}  // namespace detail

/// Reads a SNAP-style edge list: one `u v` pair per line, `#` comments.
///
/// Ids may be any non-negative integers; they are densely renumbered in order
/// of first appearance and kept as original ids on the graph.
inline Graph parse_edge_list(std::istream& in, ParseStats* stats = nullptr) {
  ParseStats local;
  std::unordered_map<std::uint64_t, VertexId> dense;
  std::vector<std::uint64_t> originals;
  std::vector<std::pair<VertexId, VertexId>> edges;
  auto intern = [&](std::uint64_t id) {
    auto [it, fresh] = dense.try_emplace(id, static_cast<VertexId>(originals.size()));
    if (fresh) originals.push_back(id);
    return it->second;
  };

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (detail::is_comment_or_blank(line)) continue;
    auto toks = detail::split_ws(line);
    if (toks.size() != 2) {
      throw ParseError(lineno, "expected two vertex ids, found " + std::to_string(toks.size()) + " tokens");
    }
    std::uint64_t a = 0, b = 0;
    if (!detail::parse_uint(toks[0], a) || !detail::parse_uint(toks[1], b)) {
      throw ParseError(lineno, "vertex ids must be non-negative integers");
    }
    VertexId u = intern(a);  // sequenced: ids number in order of appearance
    edges.emplace_back(u, intern(b));
  }
  if (originals.size() > std::numeric_limits<VertexId>::max()) throw ParseError(lineno, "too many vertices");
  local.lines = lineno;
  local.edges_read = edges.size();
  Graph g = Graph::from_edges(originals.size(), edges, &local);
  g.set_original_ids(std::move(originals));
  if (stats) *stats = local;
  return g;
}

inline Graph parse_edge_list(std::string_view text, ParseStats* stats = nullptr) {
  std::istringstream in{std::string(text)};
  return parse_edge_list(in, stats);
}

/// Writes the graph back out as an edge list over original ids.
inline void write_edge_list(std::ostream& out, const Graph& g) {
  for (auto [u, v] : g.original_edges()) out << u << '\t' << v << '\n';
  // Isolated vertices have no edge to carry them; emit them as self-loops,
  // which the parser drops while still registering the id.
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (g.degree(v) == 0) out << g.original_id(v) << '\t' << g.original_id(v) << '\n';
}

/// theta(v) = ceil(deg(v) / 2).
inline Thresholds majority_thresholds(const Graph& g) {
  std::vector<std::uint32_t> theta(g.vertex_count());
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    theta[v] = static_cast<std::uint32_t>((g.degree(v) + 1) / 2);
  return Thresholds(g, std::move(theta));
}

/// Reads `vertex_id threshold` lines (original ids). Vertices not listed keep
/// the majority threshold.
inline Thresholds thresholds_from_file(const Graph& g, std::istream& in) {
  Thresholds base = majority_thresholds(g);
  std::vector<std::uint32_t> theta(base.values().begin(), base.values().end());
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (detail::is_comment_or_blank(line)) continue;
    auto toks = detail::split_ws(line);
    std::uint64_t id = 0, value = 0;
    if (toks.size() != 2 || !detail::parse_uint(toks[0], id) || !detail::parse_uint(toks[1], value)) {
      throw ParseError(lineno, "expected `vertex_id threshold`");
    }
    auto v = g.find_original(id);
    if (!v) throw ValidationError("line " + std::to_string(lineno) + ": unknown vertex " + std::to_string(id));
    if (value > g.degree(*v)) {
      throw ValidationError("line " + std::to_string(lineno) + ": threshold " + std::to_string(value) +
                            " of vertex " + std::to_string(id) + " exceeds its degree " +
                            std::to_string(g.degree(*v)));
    }
    theta[*v] = static_cast<std::uint32_t>(value);
  }
  return Thresholds(g, std::move(theta));
}

inline Thresholds thresholds_from_file(const Graph& g, std::string_view text) {
  std::istringstream in{std::string(text)};
  return thresholds_from_file(g, in);
}

}  // namespace tss
