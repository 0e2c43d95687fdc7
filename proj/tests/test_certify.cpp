#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "kcuts/certify.hpp"
#include "kcuts/generators.hpp"
#include "kcuts/spectral.hpp"

using namespace kcuts;

namespace {

Cut make_cut(const WeightedGraph& g, std::vector<int> members) {
  return expansion(g, std::move(members));
}

}  // namespace

TEST_CASE("certificate accepts a family matching its eigenvalue bound") {
  WeightedGraph g = disjoint_cliques(3, 4);
  std::vector<Cut> family = {make_cut(g, {0, 1, 2, 3}), make_cut(g, {4, 5, 6, 7})};
  Certificate cert = verify_lower_bound(g, family, 0.0);
  CHECK(cert.family_size == 2);
  CHECK(cert.lower_bound == 0.0);
  CHECK(cert.max_phi == 0.0);
  CHECK(cert.slack == 0.0);
  CHECK(cert.pass);
}

TEST_CASE("certificate rejects an eigenvalue that is too large") {
  WeightedGraph g = disjoint_cliques(3, 4);
  std::vector<Cut> family = {make_cut(g, {0, 1, 2, 3})};
  Certificate cert = verify_lower_bound(g, family, 10.0);
  CHECK(cert.lower_bound == 5.0);
  CHECK_FALSE(cert.pass);
  CHECK(cert.slack < 0.0);
}

TEST_CASE("certificate recomputes expansions and validates the family") {
  WeightedGraph g = path_graph(4);
  Cut forged = make_cut(g, {0, 1});
  forged.expansion = 999.0;  // stored value must be ignored
  Certificate cert = verify_lower_bound(g, {forged}, 0.1);
  CHECK(cert.max_phi == Catch::Approx(1.0 / 3.0).margin(1e-15));

  CHECK_THROWS_WITH(verify_lower_bound(g, {}, 0.0),
                    Catch::Matchers::ContainsSubstring("empty family"));
  std::vector<Cut> overlap = {make_cut(g, {0, 1}), make_cut(g, {1, 2})};
  CHECK_THROWS_WITH(verify_lower_bound(g, overlap, 0.0),
                    Catch::Matchers::ContainsSubstring("not disjoint"));
  Cut bad;
  bad.members = {7};
  CHECK_THROWS_WITH(verify_lower_bound(g, {bad}, 0.0),
                    Catch::Matchers::ContainsSubstring("out of range"));
}

TEST_CASE("partition completion attaches leftovers to their heaviest part") {
  WeightedGraph dj = disjoint_cliques(3, 4);
  // Third clique has no edge into the named parts, so it seeds its own.
  auto parts = complete_to_partition(dj, {make_cut(dj, {0, 1, 2, 3}), make_cut(dj, {4, 5, 6, 7})});
  REQUIRE(parts.size() == 3);
  CHECK(parts[2] == std::vector<int>{8, 9, 10, 11});

  // Hub ties equally to all three cliques; ties go to the first part.
  WeightedGraph hub = gen_fig2(13, 3, 1.0);
  auto hp = complete_to_partition(
      hub, {make_cut(hub, {0, 1, 2, 3}), make_cut(hub, {4, 5, 6, 7}), make_cut(hub, {8, 9, 10, 11})});
  REQUIRE(hp.size() == 3);
  CHECK(hp[0] == std::vector<int>{0, 1, 2, 3, 12});
  double max_phi = 0.0;
  for (const auto& p : hp) max_phi = std::max(max_phi, expansion(hub, p).expansion);
  CHECK(max_phi == 0.8125);

  // Half a clique pulls in its other half before the second clique seeds.
  WeightedGraph two = disjoint_cliques(2, 3);
  auto tp = complete_to_partition(two, {make_cut(two, {0, 1})});
  REQUIRE(tp.size() == 2);
  CHECK(tp[0] == std::vector<int>{0, 1, 2});
  CHECK(tp[1] == std::vector<int>{3, 4, 5});

  // No cuts at all: vertex 0 seeds and a connected graph collapses onto it.
  auto whole = complete_to_partition(path_graph(5), {});
  REQUIRE(whole.size() == 1);
  CHECK(whole[0] == std::vector<int>{0, 1, 2, 3, 4});

  CHECK_THROWS_WITH(complete_to_partition(two, {make_cut(two, {0, 1}), make_cut(two, {1, 2})}),
                    Catch::Matchers::ContainsSubstring("not disjoint"));

  // Every completion is a real partition.
  std::vector<char> seen(hub.n(), 0);
  for (const auto& p : hp)
    for (int v : p) {
      CHECK(!seen[v]);
      seen[v] = 1;
    }
  for (char c : seen) CHECK(c == 1);
}

TEST_CASE("exhaustive minimum expansion on small graphs") {
  Cut k2 = brute_force_min_expansion(complete_graph(2));
  CHECK(k2.expansion == 1.0);

  Cut p4 = brute_force_min_expansion(path_graph(4));
  CHECK(p4.members == std::vector<int>{0, 1});
  CHECK(p4.expansion == Catch::Approx(1.0 / 3.0).margin(1e-15));

  Cut c4 = brute_force_min_expansion(complete_graph(4));
  CHECK(c4.members.size() == 2);
  CHECK(c4.expansion == Catch::Approx(2.0 / 3.0).margin(1e-15));

  CHECK_THROWS_WITH(brute_force_min_expansion(path_graph(21)),
                    Catch::Matchers::ContainsSubstring("n <= 20"));
}

TEST_CASE("exhaustive k-cut objective agrees with its one-set case") {
  WeightedGraph p6 = path_graph(6);
  CHECK(brute_force_k_cuts(p6, 1) == brute_force_min_expansion(p6).expansion);

  WeightedGraph dj = disjoint_cliques(2, 3);
  CHECK(brute_force_k_cuts(dj, 2) == 0.0);

  // More sets can only make the worst expansion larger.
  double prev = 0.0;
  for (int k = 1; k <= 3; ++k) {
    double val = brute_force_k_cuts(p6, k);
    CHECK(val >= prev);
    prev = val;
  }

  // Spectral lower bound: the k-th eigenvalue certifies every k-set family.
  EigsOptions o;
  o.k = 3;
  o.tol = 1e-10;
  auto eig = bottom_k_eigs(p6, o);
  for (int k = 1; k <= 3; ++k)
    CHECK(brute_force_k_cuts(p6, k) >= eig.values[k - 1] / 2.0 - 1e-8);

  CHECK_THROWS_WITH(brute_force_k_cuts(path_graph(11), 2),
                    Catch::Matchers::ContainsSubstring("n <= 10"));
  CHECK_THROWS_AS(brute_force_k_cuts(p6, 0), std::invalid_argument);
  CHECK_THROWS_AS(brute_force_k_cuts(p6, 4), std::invalid_argument);
}
