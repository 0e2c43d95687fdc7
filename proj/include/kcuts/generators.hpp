#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "kcuts/graph.hpp"

namespace kcuts {

namespace detail {

inline void add_clique(std::vector<Edge>& edges, int first, int size, double w) {
  for (int a = 0; a < size; ++a)
    for (int b = a + 1; b < size; ++b) edges.push_back({first + a, first + b, w});
}

}  // namespace detail

/// k unit-weight cliques of size (n-1)/k plus a hub vertex (id n-1) joined to
/// every other vertex with edge weight p*n. Requires k >= 2 and k | (n-1).
inline WeightedGraph gen_fig2(int n, int k, double p) {
  if (k < 2) throw std::invalid_argument("gen_fig2: k must be >= 2");
  if (n < k + 1 || (n - 1) % k != 0)
    throw std::invalid_argument("gen_fig2: k must divide n-1");
  if (!(p > 0.0)) throw std::invalid_argument("gen_fig2: p must be positive");
  const int s = (n - 1) / k;
  std::vector<Edge> edges;
  for (int j = 0; j < k; ++j) detail::add_clique(edges, j * s, s, 1.0);
  const double hub_w = p * n;
  for (int v = 0; v < n - 1; ++v) edges.push_back({v, n - 1, hub_w});
  return WeightedGraph(n, std::move(edges));
}

/// Layout metadata for the clustered-hierarchy graph below.
struct HierarchyMeta {
  int supersets = 0;           // nearest integer to k^eps, >= 2
  int cliques_per_superset = 0;
  int clique_size = 0;         // n / k
  int extras = 0;              // k - supersets, ids n .. n+extras-1
  double eps_requested = 0.0;
  double eps_effective = 0.0;  // log(supersets) / log(k)
  double c = 0.0;

  int clique_first(int i, int j) const {
    return (i * cliques_per_superset + j) * clique_size;
  }
  std::vector<int> clique_members(int i, int j) const {
    std::vector<int> m(clique_size);
    for (int t = 0; t < clique_size; ++t) m[t] = clique_first(i, j) + t;
    return m;
  }
  std::vector<int> superset_members(int i) const {
    std::vector<int> m;
    for (int j = 0; j < cliques_per_superset; ++j)
      for (int v : clique_members(i, j)) m.push_back(v);
    return m;
  }
};

struct HierarchyGraph {
  WeightedGraph graph;
  HierarchyMeta meta;
};

/// Super-sets of cliques plus weakly attached extra vertices.
///
/// round(k^eps) super-sets, each holding k/round(k^eps) unit cliques of size
/// n/k; total inter-clique weight c per clique, spread uniformly over clique
/// pairs inside a super-set; k - round(k^eps) extra vertices, each attached to
/// every super-set with total weight 1/round(k^eps) spread uniformly over its
/// vertices (so every extra vertex has degree exactly 1). eps is re-derived
/// from the rounded super-set count and reported in the metadata.
inline HierarchyGraph gen_appendix_a(int n, int k, double eps, double c) {
  if (k < 3) throw std::invalid_argument("gen_appendix_a: k must be >= 3");
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("gen_appendix_a: need 0 < eps < 1");
  if (!(c > 0.0)) throw std::invalid_argument("gen_appendix_a: c must be positive");
  if (n < 2 * k || n % k != 0)
    throw std::invalid_argument("gen_appendix_a: need n divisible by k with n/k >= 2");
  const int supersets = std::max(2, static_cast<int>(std::lround(std::pow(double(k), eps))));
  if (supersets >= k)
    throw std::invalid_argument("gen_appendix_a: rounded k^eps leaves no extra vertices");
  if (k % supersets != 0)
    throw std::invalid_argument("gen_appendix_a: rounded k^eps must divide k");
  const int q = k / supersets;  // cliques per super-set
  if (q < 2)
    throw std::invalid_argument("gen_appendix_a: each super-set needs at least 2 cliques");

  HierarchyMeta meta;
  meta.supersets = supersets;
  meta.cliques_per_superset = q;
  meta.clique_size = n / k;
  meta.extras = k - supersets;
  meta.eps_requested = eps;
  meta.eps_effective = std::log(double(supersets)) / std::log(double(k));
  meta.c = c;

  const int size = meta.clique_size;
  std::vector<Edge> edges;
  for (int i = 0; i < supersets; ++i)
    for (int j = 0; j < q; ++j) detail::add_clique(edges, meta.clique_first(i, j), size, 1.0);

  // Clique pair weight c/(q-1), split evenly across the size^2 vertex pairs.
  const double pair_w = c / double(q - 1) / (double(size) * double(size));
  for (int i = 0; i < supersets; ++i)
    for (int a = 0; a < q; ++a)
      for (int b = a + 1; b < q; ++b)
        for (int x = 0; x < size; ++x)
          for (int y = 0; y < size; ++y)
            edges.push_back({meta.clique_first(i, a) + x, meta.clique_first(i, b) + y, pair_w});

  // Extra vertex <-> super-set weight 1/supersets, split across its q*size vertices.
  const double extra_w = 1.0 / double(supersets) / (double(q) * double(size));
  for (int e = 0; e < meta.extras; ++e)
    for (int v = 0; v < n; ++v) edges.push_back({v, n + e, extra_w});

  return HierarchyGraph{WeightedGraph(n + meta.extras, std::move(edges)), meta};
}

/// k unit cliques of size s arranged in a cycle; one bridge edge of the given
/// weight joins the last vertex of each clique to the first of the next.
inline WeightedGraph ring_of_cliques(int k, int s, double bridge) {
  if (k < 3) throw std::invalid_argument("ring_of_cliques: k must be >= 3");
  if (s < 1) throw std::invalid_argument("ring_of_cliques: s must be >= 1");
  if (!(bridge > 0.0)) throw std::invalid_argument("ring_of_cliques: bridge weight must be positive");
  std::vector<Edge> edges;
  for (int j = 0; j < k; ++j) detail::add_clique(edges, j * s, s, 1.0);
  for (int j = 0; j < k; ++j) {
    int a = j * s + (s - 1);
    int b = ((j + 1) % k) * s;
    edges.push_back({a, b, bridge});
  }
  return WeightedGraph(k * s, std::move(edges));
}

inline WeightedGraph disjoint_cliques(int k, int s) {
  if (k < 1 || s < 2) throw std::invalid_argument("disjoint_cliques: need k >= 1, s >= 2");
  std::vector<Edge> edges;
  for (int j = 0; j < k; ++j) detail::add_clique(edges, j * s, s, 1.0);
  return WeightedGraph(k * s, std::move(edges));
}

inline WeightedGraph path_graph(int n) {
  if (n < 2) throw std::invalid_argument("path_graph: n must be >= 2");
  std::vector<Edge> edges;
  for (int v = 0; v + 1 < n; ++v) edges.push_back({v, v + 1, 1.0});
  return WeightedGraph(n, std::move(edges));
}

inline WeightedGraph complete_graph(int n) {
  if (n < 2) throw std::invalid_argument("complete_graph: n must be >= 2");
  std::vector<Edge> edges;
  detail::add_clique(edges, 0, n, 1.0);
  return WeightedGraph(n, std::move(edges));
}

/// k unit cliques plus one weak noise edge between every pair of cliques,
/// with seeded random endpoints.
inline WeightedGraph planted_partition(int k, int s, double noise_w, std::uint64_t seed) {
  if (k < 2 || s < 2) throw std::invalid_argument("planted_partition: need k >= 2, s >= 2");
  if (!(noise_w > 0.0)) throw std::invalid_argument("planted_partition: noise weight must be positive");
  std::vector<Edge> edges;
  for (int j = 0; j < k; ++j) detail::add_clique(edges, j * s, s, 1.0);
  std::mt19937_64 rng(seed);
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b) {
      int va = a * s + static_cast<int>(rng() % static_cast<std::uint64_t>(s));
      int vb = b * s + static_cast<int>(rng() % static_cast<std::uint64_t>(s));
      edges.push_back({va, vb, noise_w});
    }
  return WeightedGraph(k * s, std::move(edges));
}

/// Unit-weight geometric graph on n seeded uniform points in the unit square;
/// vertices closer than the radius are adjacent. A vertex left isolated is
/// joined to its nearest neighbor so degrees stay positive.
inline WeightedGraph random_geometric(int n, double radius, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("random_geometric: n must be >= 2");
  if (!(radius > 0.0)) throw std::invalid_argument("random_geometric: radius must be positive");
  std::mt19937_64 rng(seed);
  auto coin = [&rng]() {
    return double(rng() >> 11) * 0x1.0p-53 + 0x1.0p-54;  // uniform in (0,1)
  };
  std::vector<double> px(n), py(n);
  for (int i = 0; i < n; ++i) {
    px[i] = coin();
    py[i] = coin();
  }
  auto dist2 = [&](int a, int b) {
    double dx = px[a] - px[b], dy = py[a] - py[b];
    return dx * dx + dy * dy;
  };
  std::vector<Edge> edges;
  std::vector<char> covered(n, 0);
  const double r2 = radius * radius;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (dist2(a, b) <= r2) {
        edges.push_back({a, b, 1.0});
        covered[a] = covered[b] = 1;
      }
  for (int a = 0; a < n; ++a) {
    if (covered[a]) continue;
    int best = -1;
    double bd = 0.0;
    for (int b = 0; b < n; ++b) {
      if (b == a) continue;
      double d = dist2(a, b);
      if (best < 0 || d < bd) {
        best = b;
        bd = d;
      }
    }
    edges.push_back({std::min(a, best), std::max(a, best), 1.0});
    covered[a] = 1;
  }
  return WeightedGraph(n, std::move(edges));
}

/// Named-family dispatcher backing the command-line generator.
struct GeneratedFamily {
  WeightedGraph graph;
  std::vector<std::string> comments;  // emitted as '#' header lines
};

inline GeneratedFamily gen_family(const std::string& name,
                                  const std::map<std::string, double>& params) {
  auto need = [&](std::initializer_list<std::string> keys) {
    for (const auto& [key, value] : params) {
      bool known = false;
      for (const auto& k : keys) known |= (k == key);
      if (!known) throw std::invalid_argument("unknown parameter '" + key + "' for family " + name);
      (void)value;
    }
    for (const auto& k : keys)
      if (!params.count(k)) throw std::invalid_argument("family " + name + " needs parameter '" + k + "'");
  };
  auto as_int = [&](const std::string& key) {
    double v = params.at(key);
    if (v != std::floor(v)) throw std::invalid_argument("parameter '" + key + "' must be an integer");
    return static_cast<int>(v);
  };
  auto as_seed = [&](const std::string& key) {
    double v = params.at(key);
    if (v < 0 || v != std::floor(v)) throw std::invalid_argument("parameter '" + key + "' must be a nonnegative integer");
    return static_cast<std::uint64_t>(v);
  };

  GeneratedFamily out;
  std::string plist;
  for (const auto& [key, value] : params)
    plist += (plist.empty() ? "" : ",") + key + "=" + detail::format_double(value);
  out.comments.push_back("# family: " + name);
  if (!plist.empty()) out.comments.push_back("# params: " + plist);

  if (name == "fig2") {
    need({"n", "k", "p"});
    out.graph = gen_fig2(as_int("n"), as_int("k"), params.at("p"));
  } else if (name == "appendix-a") {
    need({"n", "k", "eps", "c"});
    auto built = gen_appendix_a(as_int("n"), as_int("k"), params.at("eps"), params.at("c"));
    out.graph = std::move(built.graph);
    out.comments.push_back("# eps_effective: " + detail::format_double(built.meta.eps_effective));
    out.comments.push_back("# supersets: " + std::to_string(built.meta.supersets) +
                           " cliques_per_superset: " + std::to_string(built.meta.cliques_per_superset) +
                           " clique_size: " + std::to_string(built.meta.clique_size) +
                           " extras: " + std::to_string(built.meta.extras));
  } else if (name == "ring-of-cliques") {
    need({"k", "s", "bridge"});
    out.graph = ring_of_cliques(as_int("k"), as_int("s"), params.at("bridge"));
  } else if (name == "disjoint-cliques") {
    need({"k", "s"});
    out.graph = disjoint_cliques(as_int("k"), as_int("s"));
  } else if (name == "path") {
    need({"n"});
    out.graph = path_graph(as_int("n"));
  } else if (name == "complete") {
    need({"n"});
    out.graph = complete_graph(as_int("n"));
  } else if (name == "planted") {
    need({"k", "s", "noise", "seed"});
    out.graph = planted_partition(as_int("k"), as_int("s"), params.at("noise"), as_seed("seed"));
  } else if (name == "geometric") {
    need({"n", "radius", "seed"});
    out.graph = random_geometric(as_int("n"), params.at("radius"), as_seed("seed"));
  } else {
    throw std::invalid_argument("unknown graph family '" + name + "'");
  }
  return out;
}

}  // namespace kcuts
