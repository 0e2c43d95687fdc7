#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace kcuts {

struct Edge {
  int u = 0;
  int v = 0;
  double w = 0.0;
};

namespace detail {

// Shortest round-trip decimal form; keeps emitted edge lists byte-stable.
inline std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

}  // namespace detail

/// Undirected weighted graph over vertices 0..n-1.
///
/// Invariants established at construction and held forever:
///  - every edge satisfies u < v, weights are finite and strictly positive,
///  - the edge list is sorted lexicographically and duplicate-free,
///  - every vertex has strictly positive degree,
///  - total_weight() == sum of all degrees == 2 * sum of edge weights.
class WeightedGraph {
 public:
  WeightedGraph() = default;

  WeightedGraph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
    if (n_ < 2) throw std::invalid_argument("graph needs at least 2 vertices");
    for (auto& e : edges_) {
      if (e.u > e.v) std::swap(e.u, e.v);
      if (e.u < 0 || e.v >= n_) throw std::invalid_argument("edge endpoint out of range");
      if (e.u == e.v) throw std::invalid_argument("self-loop at vertex " + std::to_string(e.u));
      if (!(e.w > 0.0) || !std::isfinite(e.w))
        throw std::invalid_argument("nonpositive edge weight on edge " + std::to_string(e.u) +
                                    "-" + std::to_string(e.v));
    }
    std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
      return a.u != b.u ? a.u < b.u : a.v < b.v;
    });
    for (std::size_t i = 1; i < edges_.size(); ++i)
      if (edges_[i].u == edges_[i - 1].u && edges_[i].v == edges_[i - 1].v)
        throw std::invalid_argument("duplicate edge " + std::to_string(edges_[i].u) + "-" +
                                    std::to_string(edges_[i].v));

    degree_.assign(n_, 0.0);
    adj_.assign(n_, {});
    for (const auto& e : edges_) {
      degree_[e.u] += e.w;
      degree_[e.v] += e.w;
      adj_[e.u].emplace_back(e.v, e.w);
      adj_[e.v].emplace_back(e.u, e.w);
    }
    for (int i = 0; i < n_; ++i)
      if (degree_[i] <= 0.0)
        throw std::invalid_argument("vertex " + std::to_string(i) + " has zero degree");
    total_weight_ = 0.0;
    for (double d : degree_) total_weight_ += d;
  }

  int n() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  double degree(int v) const { return degree_[v]; }
  const std::vector<double>& degrees() const { return degree_; }
  double total_weight() const { return total_weight_; }

  // Neighbors of v as (other endpoint, weight), in canonical edge order.
  const std::vector<std::pair<int, double>>& neighbors(int v) const { return adj_[v]; }

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<double> degree_;
  std::vector<std::vector<std::pair<int, double>>> adj_;
  double total_weight_ = 0.0;
};

/// A vertex set with its boundary data. expansion = cut_weight / min(set_weight,
/// total_weight - set_weight) and always lies in [0, 1].
struct Cut {
  std::vector<int> members;  // sorted ascending
  double cut_weight = 0.0;
  double set_weight = 0.0;
  double expansion = 0.0;
};

/// Exact expansion of a nonempty proper subset S.
inline Cut expansion(const WeightedGraph& g, std::vector<int> members) {
  if (members.empty()) throw std::invalid_argument("expansion: empty vertex set");
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  if (static_cast<int>(members.size()) >= g.n())
    throw std::invalid_argument("expansion: set must be a proper subset");
  std::vector<char> in_set(g.n(), 0);
  for (int v : members) {
    if (v < 0 || v >= g.n()) throw std::invalid_argument("expansion: vertex out of range");
    in_set[v] = 1;
  }

  Cut cut;
  cut.members = std::move(members);
  for (int v : cut.members) {
    cut.set_weight += g.degree(v);
    for (const auto& [u, w] : g.neighbors(v))
      if (!in_set[u]) cut.cut_weight += w;
  }
  const double other = g.total_weight() - cut.set_weight;
  cut.expansion = cut.cut_weight / std::min(cut.set_weight, other);
  return cut;
}

/// Parses "u v w" lines; '#' starts a comment, blank lines are skipped.
/// Parallel undirected edges are merged by summing weights. Vertex ids must be
/// dense: every vertex in 0..max_id must end up with positive degree.
inline WeightedGraph load_edge_list(std::istream& in) {
  struct Key {
    int u, v;
    bool operator<(const Key& o) const { return u != o.u ? u < o.u : v < o.v; }
  };
  std::vector<std::pair<Key, double>> acc;
  std::string line;
  int lineno = 0;
  int max_id = -1;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
    std::istringstream ls(line);
    long long u, v;
    double w;
    if (!(ls >> u)) continue;  // blank or comment-only line
    if (!(ls >> v >> w))
      throw std::runtime_error("line " + std::to_string(lineno) + ": expected 'u v w'");
    std::string rest;
    if (ls >> rest)
      throw std::runtime_error("line " + std::to_string(lineno) + ": trailing tokens");
    if (u < 0 || v < 0 || u > 1 << 28 || v > 1 << 28)
      throw std::runtime_error("line " + std::to_string(lineno) + ": vertex id out of range");
    if (u == v)
      throw std::runtime_error("line " + std::to_string(lineno) + ": self-loop at vertex " +
                               std::to_string(u));
    if (!(w > 0.0) || !std::isfinite(w))
      throw std::runtime_error("line " + std::to_string(lineno) + ": nonpositive weight");
    Key key{static_cast<int>(std::min(u, v)), static_cast<int>(std::max(u, v))};
    acc.emplace_back(key, w);
    max_id = std::max(max_id, key.v);
  }
  if (acc.empty()) throw std::runtime_error("edge list contains no edges");

  std::stable_sort(acc.begin(), acc.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Edge> edges;
  for (const auto& [key, w] : acc) {
    if (!edges.empty() && edges.back().u == key.u && edges.back().v == key.v)
      edges.back().w += w;
    else
      edges.push_back({key.u, key.v, w});
  }
  try {
    return WeightedGraph(max_id + 1, std::move(edges));
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(e.what());
  }
}

inline void write_edge_list(const WeightedGraph& g, std::ostream& out) {
  for (const auto& e : g.edges())
    out << e.u << ' ' << e.v << ' ' << detail::format_double(e.w) << '\n';
}

}  // namespace kcuts
