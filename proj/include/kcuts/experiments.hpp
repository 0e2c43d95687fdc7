#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "kcuts/generators.hpp"
#include "kcuts/graph.hpp"
#include "kcuts/many_cuts.hpp"
#include "kcuts/rounding.hpp"

namespace kcuts {

namespace detail {

struct Induced {
  WeightedGraph graph;
  std::vector<int> ids;  // ids[i] = original vertex of induced vertex i
};

inline Induced induce(const WeightedGraph& g, const std::vector<int>& members) {
  std::vector<int> local(g.n(), -1);
  Induced out;
  out.ids = members;
  std::sort(out.ids.begin(), out.ids.end());
  for (int i = 0; i < static_cast<int>(out.ids.size()); ++i) local[out.ids[i]] = i;
  std::vector<Edge> edges;
  for (const auto& e : g.edges())
    if (local[e.u] >= 0 && local[e.v] >= 0)
      edges.push_back({local[e.u], local[e.v], e.w});
  out.graph = WeightedGraph(static_cast<int>(out.ids.size()), std::move(edges));
  return out;
}

// Connected components of the subgraph induced by `members`, each sorted,
// ordered by smallest contained vertex.
inline std::vector<std::vector<int>> components_within(const WeightedGraph& g,
                                                       const std::vector<int>& members) {
  std::vector<char> inside(g.n(), 0), seen(g.n(), 0);
  for (int v : members) inside[v] = 1;
  std::vector<int> order = members;
  std::sort(order.begin(), order.end());
  std::vector<std::vector<int>> comps;
  for (int start : order) {
    if (seen[start]) continue;
    std::vector<int> comp;
    std::queue<int> q;
    q.push(start);
    seen[start] = 1;
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      comp.push_back(v);
      for (const auto& [u, w] : g.neighbors(v)) {
        (void)w;
        if (inside[u] && !seen[u]) {
          seen[u] = 1;
          q.push(u);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  return comps;
}

}  // namespace detail

/// Output of the recursive bisection baseline.
struct RecursivePartition {
  std::vector<std::vector<int>> parts;  // disjoint cover of V, each sorted
  std::vector<double> expansions;       // per part, NaN for the whole vertex set
  bool complete = false;                // true when k parts were reached
  std::string warning;
};

/// Greedy baseline partitioner: repeatedly takes the heaviest part and splits
/// it with a second-eigenvector sweep (a disconnected part is split along a
/// zero-weight component boundary instead). Stops early, with a warning, if no
/// part with at least two vertices remains.
inline RecursivePartition recursive_partition(const WeightedGraph& g, int k,
                                              const EigsOptions& eigs = {}) {
  if (k < 1 || k > g.n())
    throw std::invalid_argument("recursive_partition: need 1 <= k <= n");

  RecursivePartition out;
  std::vector<int> all(g.n());
  for (int v = 0; v < g.n(); ++v) all[v] = v;
  out.parts.push_back(std::move(all));

  while (static_cast<int>(out.parts.size()) < k) {
    std::vector<int> order(out.parts.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    auto part_weight = [&](int idx) {
      double w = 0.0;
      for (int v : out.parts[idx]) w += g.degree(v);
      return w;
    };
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      const double wa = part_weight(a), wb = part_weight(b);
      return wa != wb ? wa > wb : a < b;
    });

    bool split = false;
    for (int idx : order) {
      const auto& part = out.parts[idx];
      if (part.size() < 2) continue;

      std::vector<int> piece;
      auto comps = detail::components_within(g, part);
      if (comps.size() > 1) {
        piece = std::move(comps.front());  // free split: no internal edges crossed
      } else {
        auto ind = detail::induce(g, part);
        EigsOptions opt = eigs;
        opt.k = 2;
        const SpectralData sd = spectral_embedding(ind.graph, opt);
        const Eigen::VectorXd coord = sd.embedding.col(1);
        const Cut local = cheeger_sweep(ind.graph, coord);
        piece.reserve(local.members.size());
        for (int v : local.members) piece.push_back(ind.ids[v]);
      }

      std::vector<char> in_piece(g.n(), 0);
      for (int v : piece) in_piece[v] = 1;
      std::vector<int> rest;
      for (int v : part) {
        if (!in_piece[v]) rest.push_back(v);
      }
      std::sort(piece.begin(), piece.end());
      const bool piece_first = piece[0] < rest[0];
      out.parts[idx] = piece_first ? std::move(piece) : std::move(rest);
      out.parts.push_back(piece_first ? std::move(rest) : std::move(piece));
      split = true;
      break;
    }
    if (!split) {
      out.warning = "stopped at " + std::to_string(out.parts.size()) +
                    " parts: every remaining part is a single vertex";
      break;
    }
  }

  out.complete = static_cast<int>(out.parts.size()) == k;
  for (const auto& p : out.parts)
    out.expansions.push_back(static_cast<int>(p.size()) == g.n()
                                 ? std::numeric_limits<double>::quiet_NaN()
                                 : expansion(g, p).expansion);
  return out;
}

/// One experiment run: named scalar metrics plus the vertex-set families and
/// spectrum behind them, so every reported ratio can be recomputed from the
/// report alone.
struct ExperimentReport {
  std::string experiment;
  std::vector<std::pair<std::string, double>> params;
  std::vector<std::pair<std::string, double>> metrics;
  std::vector<std::string> notes;
  std::vector<std::pair<std::string, std::vector<Cut>>> families;
  std::vector<double> eigenvalues;
  bool has_algorithm = false;
  CutReport algorithm;
};

namespace detail {

inline double max_expansion(const std::vector<Cut>& cuts) {
  double m = 0.0;
  for (const auto& c : cuts) m = std::max(m, c.expansion);
  return m;
}

}  // namespace detail

/// Hub-and-cliques stress test: k cliques of size s = (n-1)/k plus a hub
/// vertex attached everywhere with edge weight p*n. Swapping the hub into the
/// first clique yields k disjoint sets whose worst expansion stays near 1 even
/// though lambda_k is small, so max phi / sqrt(lambda_k) grows with n. Only
/// meaningful for n > k^3, which is enforced.
inline ExperimentReport run_fig2(int n, int k, double p, std::uint64_t seed = 1) {
  if (static_cast<long long>(n) <= static_cast<long long>(k) * k * k)
    throw std::invalid_argument("run_fig2: the hub construction needs n > k^3");
  const WeightedGraph g = gen_fig2(n, k, p);
  const int s = (n - 1) / k;
  const int hub = n - 1;

  ExperimentReport rep;
  rep.experiment = "fig2";
  rep.params = {{"n", double(n)}, {"k", double(k)}, {"p", p}, {"seed", double(seed)}};

  std::vector<Cut> cliques, perturbed;
  for (int j = 0; j < k; ++j) {
    std::vector<int> members(s);
    for (int t = 0; t < s; ++t) members[t] = j * s + t;
    cliques.push_back(expansion(g, members));
    if (j == 0) members.push_back(hub);
    perturbed.push_back(expansion(g, members));
  }

  ManyCutsConfig cfg;
  cfg.k = k;
  cfg.seed = seed;
  rep.algorithm = many_sparse_cuts(g, cfg);
  rep.has_algorithm = true;
  rep.eigenvalues = rep.algorithm.eigenvalues;
  const double lambda_k = rep.eigenvalues.back();

  const double measured = detail::max_expansion(perturbed);
  const double closed_form =
      p * n * k / (double(s) * double(s) + p * n * k);
  const double clique_max = detail::max_expansion(cliques);

  rep.metrics = {
      {"max_phi_measured", measured},
      {"max_phi_closed_form", closed_form},
      {"closed_form_abs_diff", std::abs(measured - closed_form)},
      {"lambda_k", lambda_k},
      {"sqrt_lambda_k", std::sqrt(lambda_k)},
      {"ratio_phi_over_sqrt_lambda_k", measured / std::sqrt(lambda_k)},
      {"clique_phi_max", clique_max},
      {"lambda_k_upper_slack", 2.0 * clique_max - lambda_k},
      {"algo_phi_max", detail::max_expansion(rep.algorithm.cuts)},
      {"algo_cuts_returned", double(rep.algorithm.cuts.size())},
  };
  rep.families = {{"cliques", std::move(cliques)}, {"hub_swapped", std::move(perturbed)}};
  rep.notes = {
      "hub_swapped takes the k cliques and moves the hub into the first one",
      "max_phi_measured is the worst expansion over the hub_swapped family",
      "lambda_k_upper_slack checks lambda_k <= 2 * clique_phi_max via the "
      "disjoint-family lower bound applied to the cliques",
  };
  return rep;
}

/// Clustered-hierarchy test: super-sets of cliques plus unit-degree extra
/// vertices. Reports the planted families' expansions against their design
/// bounds, the recursive bisection baseline's count of expansion-1 parts, and
/// the gaussian-rounding algorithm's worst returned cut.
inline ExperimentReport run_appendix_a(int n, int k, double eps, double c,
                                       std::uint64_t seed = 1) {
  const HierarchyGraph hg = gen_appendix_a(n, k, eps, c);
  const WeightedGraph& g = hg.graph;
  const HierarchyMeta& meta = hg.meta;

  ExperimentReport rep;
  rep.experiment = "appendix-a";
  rep.params = {{"n", double(n)}, {"k", double(k)}, {"eps", eps},
                {"c", c},         {"seed", double(seed)}};

  std::vector<Cut> cliques, supersets;
  for (int i = 0; i < meta.supersets; ++i) {
    for (int j = 0; j < meta.cliques_per_superset; ++j)
      cliques.push_back(expansion(g, meta.clique_members(i, j)));
    supersets.push_back(expansion(g, meta.superset_members(i)));
  }
  const double clique_max = detail::max_expansion(cliques);
  const double superset_max = detail::max_expansion(supersets);
  const double clique_bound = 1.5 * (c + 1.0) * double(k) * double(k) / (double(n) * double(n));
  const double superset_bound = clique_max / (c + 1.0);

  const RecursivePartition baseline = recursive_partition(g, k);
  int unit_parts = 0;
  for (double phi : baseline.expansions)
    if (phi == 1.0) ++unit_parts;
  const int unit_expected = k - meta.supersets;

  ManyCutsConfig cfg;
  cfg.k = k;
  cfg.seed = seed;
  rep.algorithm = many_sparse_cuts(g, cfg);
  rep.has_algorithm = true;
  rep.eigenvalues = rep.algorithm.eigenvalues;
  const double lambda_k = rep.eigenvalues.back();
  const double algo_max = detail::max_expansion(rep.algorithm.cuts);
  const double algo_bound = 20.0 * std::sqrt(lambda_k * std::log(double(k)));

  rep.metrics = {
      {"eps_effective", meta.eps_effective},
      {"clique_phi_max", clique_max},
      {"clique_phi_bound", clique_bound},
      {"superset_phi_max", superset_max},
      {"superset_phi_bound", superset_bound},
      {"baseline_parts", double(baseline.parts.size())},
      {"baseline_unit_phi_parts", double(unit_parts)},
      {"baseline_unit_phi_expected", double(unit_expected)},
      {"lambda_k", lambda_k},
      {"algo_phi_max", algo_max},
      {"algo_phi_bound", algo_bound},
      {"algo_cuts_returned", double(rep.algorithm.cuts.size())},
  };

  std::vector<Cut> baseline_cuts;
  if (baseline.parts.size() >= 2)
    for (const auto& part : baseline.parts) baseline_cuts.push_back(expansion(g, part));
  rep.families = {{"cliques", std::move(cliques)},
                  {"supersets", std::move(supersets)},
                  {"recursive_baseline", std::move(baseline_cuts)}};
  rep.notes = {
      "clique_phi_bound = 1.5*(c+1)*k^2/n^2 is the design bound for each clique",
      "superset_phi_bound = clique_phi_max/(c+1): super-sets are a factor c+1 sparser",
      "baseline_unit_phi_parts counts recursive-bisection parts with expansion "
      "exactly 1 (the weakly attached extra vertices have degree 1)",
      "algo_phi_bound = 20*sqrt(lambda_k*ln k) is the target envelope for the "
      "gaussian rounding",
  };
  if (!baseline.warning.empty()) rep.notes.push_back("baseline: " + baseline.warning);
  return rep;
}

}  // namespace kcuts
