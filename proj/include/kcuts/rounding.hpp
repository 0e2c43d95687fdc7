#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "kcuts/embedding.hpp"
#include "kcuts/graph.hpp"

namespace kcuts {

/// Output of the gaussian argmax rounding: k vectors with pairwise disjoint
/// supports. Vertex i carries value <u_i, g_l> in the part l whose projection
/// of the direction u_i/||u_i|| is largest (ties toward the smaller index).
/// Rows flagged as unembedded appear in no part.
struct RoundedFamily {
  int k = 0;
  std::vector<std::vector<std::pair<int, double>>> parts;  // per part: (vertex, value), vertex-sorted
  std::vector<int> zero_vertices;
};

inline RoundedFamily round_embedding(const SpectralData& sd,
                                     const std::vector<Eigen::VectorXd>& gaussians) {
  if (static_cast<int>(gaussians.size()) != sd.k)
    throw std::invalid_argument("round_embedding: need exactly k gaussian vectors");
  for (const auto& g : gaussians)
    if (g.size() != sd.k)
      throw std::invalid_argument("round_embedding: gaussian dimension mismatch");

  RoundedFamily fam;
  fam.k = sd.k;
  fam.parts.assign(sd.k, {});
  fam.zero_vertices = sd.zero_rows;
  std::vector<char> zero(sd.embedding.rows(), 0);
  for (int v : sd.zero_rows) zero[v] = 1;

  for (int i = 0; i < sd.embedding.rows(); ++i) {
    if (zero[i]) continue;
    int best = 0;
    double best_score = sd.embedding.row(i).dot(gaussians[0]);
    for (int l = 1; l < sd.k; ++l) {
      const double s = sd.embedding.row(i).dot(gaussians[l]);
      if (s > best_score) {  // strict: equal scores keep the smaller index
        best_score = s;
        best = l;
      }
    }
    fam.parts[best].emplace_back(i, best_score);
  }
  return fam;
}

namespace detail {

// Minimum-expansion level set over thresholds at the distinct positive values
// of a sparse nonnegative vector. The level set equal to all of V is not a
// valid cut and is skipped.
inline Cut sweep_level_sets(const WeightedGraph& g,
                            std::vector<std::pair<int, double>> entries) {
  if (entries.empty())
    throw std::domain_error("sweep_cut: vector has empty support");
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });

  std::vector<char> in_set(g.n(), 0);
  double set_w = 0.0, cut_w = 0.0;
  double best_phi = 0.0;
  int best_len = -1;
  const int m = static_cast<int>(entries.size());
  for (int i = 0; i < m; ++i) {
    const int v = entries[i].first;
    double to_set = 0.0;
    for (const auto& [u, w] : g.neighbors(v))
      if (in_set[u]) to_set += w;
    in_set[v] = 1;
    set_w += g.degree(v);
    cut_w += g.degree(v) - 2.0 * to_set;
    const bool boundary = (i + 1 == m) || entries[i + 1].second != entries[i].second;
    if (!boundary || i + 1 == g.n()) continue;
    const double phi = cut_w / std::min(set_w, g.total_weight() - set_w);
    if (best_len < 0 || phi < best_phi) {
      best_phi = phi;
      best_len = i + 1;
    }
  }
  if (best_len < 0)
    throw std::domain_error("sweep_cut: no proper level set (support covers every vertex)");

  std::vector<int> members(best_len);
  for (int i = 0; i < best_len; ++i) members[i] = entries[i].first;
  return expansion(g, std::move(members));  // exact recomputation of the winner
}

}  // namespace detail

/// Level-set sweep of a nonnegative vector indexed by vertex.
inline Cut sweep_cut(const WeightedGraph& g, const std::vector<double>& x) {
  if (static_cast<int>(x.size()) != g.n())
    throw std::invalid_argument("sweep_cut: vector length must equal n");
  std::vector<std::pair<int, double>> entries;
  for (int i = 0; i < g.n(); ++i) {
    if (!(x[i] >= 0.0) || !std::isfinite(x[i]))
      throw std::invalid_argument("sweep_cut: vector must be nonnegative and finite");
    if (x[i] > 0.0) entries.emplace_back(i, x[i]);
  }
  return detail::sweep_level_sets(g, std::move(entries));
}

/// The guarantee the sweep is held against: 2 * sum_e w|x_u - x_v| / sum_i d_i x_i.
inline double sweep_bound(const WeightedGraph& g, const std::vector<double>& x) {
  double num = 0.0, den = 0.0;
  for (const auto& e : g.edges()) num += e.w * std::abs(x[e.u] - x[e.v]);
  for (int i = 0; i < g.n(); ++i) den += g.degree(i) * x[i];
  if (!(den > 0.0)) throw std::domain_error("sweep_bound: vector has zero mass");
  return 2.0 * num / den;
}

/// Classic eigenvector sweep: minimum expansion over all n-1 prefixes of the
/// vertices sorted by coordinate value. Used by the recursive bisection baseline.
inline Cut cheeger_sweep(const WeightedGraph& g, const Eigen::VectorXd& coord) {
  if (coord.size() != g.n())
    throw std::invalid_argument("cheeger_sweep: vector length must equal n");
  std::vector<int> order(g.n());
  for (int i = 0; i < g.n(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return coord[a] != coord[b] ? coord[a] > coord[b] : a < b;
  });

  std::vector<char> in_set(g.n(), 0);
  double set_w = 0.0, cut_w = 0.0, best_phi = 0.0;
  int best_len = -1;
  for (int i = 0; i + 1 < g.n(); ++i) {
    const int v = order[i];
    double to_set = 0.0;
    for (const auto& [u, w] : g.neighbors(v))
      if (in_set[u]) to_set += w;
    in_set[v] = 1;
    set_w += g.degree(v);
    cut_w += g.degree(v) - 2.0 * to_set;
    const double phi = cut_w / std::min(set_w, g.total_weight() - set_w);
    if (best_len < 0 || phi < best_phi) {
      best_phi = phi;
      best_len = i + 1;
    }
  }
  std::vector<int> members(order.begin(), order.begin() + best_len);
  return expansion(g, std::move(members));
}

}  // namespace kcuts
