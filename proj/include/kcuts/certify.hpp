#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "kcuts/graph.hpp"

namespace kcuts {

/// Spectral lower-bound check for a disjoint family: m disjoint nonempty sets
/// cannot all have expansion below lambda_m / 2, so the family's worst cut is
/// a witness. slack = max_phi - lambda/2; the check passes when the slack is
/// nonnegative up to rounding.
struct Certificate {
  int family_size = 0;
  double lambda = 0.0;       // eigenvalue matched to the family size
  double lower_bound = 0.0;  // lambda / 2
  double max_phi = 0.0;      // recomputed, not trusted from the input
  double slack = 0.0;
  bool pass = false;
};

inline constexpr double kCertificateSlackTol = 1e-8;

inline Certificate verify_lower_bound(const WeightedGraph& g,
                                      const std::vector<Cut>& cuts, double lambda) {
  if (cuts.empty()) throw std::invalid_argument("verify_lower_bound: empty family");
  std::vector<char> seen(g.n(), 0);
  Certificate cert;
  cert.family_size = static_cast<int>(cuts.size());
  cert.lambda = lambda;
  cert.lower_bound = lambda / 2.0;
  cert.max_phi = 0.0;
  for (const auto& c : cuts) {
    for (int v : c.members) {
      if (v < 0 || v >= g.n())
        throw std::invalid_argument("verify_lower_bound: vertex out of range");
      if (seen[v]) throw std::invalid_argument("verify_lower_bound: sets are not disjoint");
      seen[v] = 1;
    }
    cert.max_phi = std::max(cert.max_phi, expansion(g, c.members).expansion);
  }
  cert.slack = cert.max_phi - cert.lower_bound;
  cert.pass = cert.slack >= -kCertificateSlackTol;
  return cert;
}

/// Extends a disjoint family to a full partition of V. Unassigned vertices are
/// attached to the part they connect to most heavily (ties toward the smaller
/// part index); a vertex with no edge into any part seeds a new part.
inline std::vector<std::vector<int>> complete_to_partition(const WeightedGraph& g,
                                                           const std::vector<Cut>& cuts) {
  std::vector<int> label(g.n(), -1);
  std::vector<std::vector<int>> parts;
  for (const auto& c : cuts) {
    parts.emplace_back(c.members);
    for (int v : c.members) {
      if (label[v] != -1)
        throw std::invalid_argument("complete_to_partition: sets are not disjoint");
      label[v] = static_cast<int>(parts.size()) - 1;
    }
  }
  if (parts.empty()) {
    parts.push_back({0});
    label[0] = 0;
  }

  for (;;) {
    bool changed = false;
    int orphan = -1;
    for (int v = 0; v < g.n(); ++v) {
      if (label[v] != -1) continue;
      std::vector<double> attach(parts.size(), 0.0);
      for (const auto& [u, w] : g.neighbors(v))
        if (label[u] != -1) attach[label[u]] += w;
      int best = -1;
      for (int p = 0; p < static_cast<int>(parts.size()); ++p)
        if (attach[p] > 0.0 && (best < 0 || attach[p] > attach[best])) best = p;
      if (best >= 0) {
        label[v] = best;
        parts[best].push_back(v);
        changed = true;
      } else if (orphan < 0) {
        orphan = v;
      }
    }
    if (changed) continue;
    if (orphan < 0) break;
    label[orphan] = static_cast<int>(parts.size());  // isolated from every part: start a new one
    parts.push_back({orphan});
  }
  for (auto& p : parts) std::sort(p.begin(), p.end());
  return parts;
}

namespace detail {

// Expansion of every proper nonempty subset, indexed by bitmask. Only usable
// for tiny n; the table is the shared engine of both exhaustive oracles.
inline std::vector<double> expansion_by_mask(const WeightedGraph& g) {
  const int n = g.n();
  if (n > 20) throw std::invalid_argument("exhaustive oracle limited to n <= 20");
  const std::uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1u);
  std::vector<double> set_w(full + 1, 0.0), cut_w(full + 1, 0.0);
  for (std::uint32_t m = 1; m <= full; ++m) {
    const int v = __builtin_ctz(m);
    const std::uint32_t rest = m & (m - 1);
    double to_rest = 0.0;
    for (const auto& [u, w] : g.neighbors(v))
      if (rest >> u & 1u) to_rest += w;
    set_w[m] = set_w[rest] + g.degree(v);
    cut_w[m] = cut_w[rest] + g.degree(v) - 2.0 * to_rest;
  }
  std::vector<double> phi(full + 1, 0.0);
  for (std::uint32_t m = 1; m < full; ++m)
    phi[m] = cut_w[m] / std::min(set_w[m], g.total_weight() - set_w[m]);
  return phi;
}

}  // namespace detail

/// Exhaustive minimum expansion over all proper nonempty subsets. Each
/// complementary pair is scanned once (the side not containing vertex n-1);
/// ties keep the first minimizer in ascending mask order.
inline Cut brute_force_min_expansion(const WeightedGraph& g) {
  const auto phi = detail::expansion_by_mask(g);
  const std::uint32_t half = 1u << (g.n() - 1);
  std::uint32_t best = 1;
  for (std::uint32_t m = 2; m < half; ++m)
    if (phi[m] < phi[best]) best = m;
  std::vector<int> members;
  for (int v = 0; v < g.n(); ++v)
    if (best >> v & 1u) members.push_back(v);
  return expansion(g, std::move(members));
}

/// Exhaustive optimum of the k-cut objective: over all choices of k pairwise
/// disjoint nonempty proper subsets, the minimum possible value of the largest
/// expansion. Exponential in n; guarded to n <= 10, k <= 3.
inline double brute_force_k_cuts(const WeightedGraph& g, int k) {
  const int n = g.n();
  if (n > 10) throw std::invalid_argument("brute_force_k_cuts limited to n <= 10");
  if (k < 1 || k > 3) throw std::invalid_argument("brute_force_k_cuts limited to 1 <= k <= 3");
  const auto phi = detail::expansion_by_mask(g);
  const std::uint32_t full = (1u << n) - 1u;

  double best = std::numeric_limits<double>::infinity();
  std::vector<int> label(n, 0);  // 0 = in no set, 1..k = set index
  for (;;) {
    std::vector<std::uint32_t> mask(k, 0);
    for (int v = 0; v < n; ++v)
      if (label[v] > 0) mask[label[v] - 1] |= 1u << v;
    bool valid = true;
    double worst = 0.0;
    for (int j = 0; j < k && valid; ++j) {
      if (mask[j] == 0 || mask[j] == full) valid = false;
      else worst = std::max(worst, phi[mask[j]]);
    }
    if (valid) best = std::min(best, worst);

    int pos = 0;  // odometer over (k+1)^n assignments
    while (pos < n && label[pos] == k) label[pos++] = 0;
    if (pos == n) break;
    ++label[pos];
  }
  return best;
}

}  // namespace kcuts
