#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "ssecut/decomp.hpp"
#include "ssecut/embed.hpp"
#include "ssecut/oracle.hpp"
#include "ssecut/rng.hpp"
#include "test_util.hpp"

using namespace ssecut;

namespace {

Matrix line_metric(int n, double step) {
  Matrix d(n, n);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) d(u, v) = std::abs(u - v) * step;
  return d;
}

Matrix euclidean_metric(Rng& rng, int n, int dim) {
  Matrix pts(dim, n);
  for (double& v : pts.a) v = rng.next_gaussian();
  Matrix d(n, n);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) d(u, v) = std::sqrt(dist2(pts, u, v));
  return d;
}

double block_diameter(const Matrix& d, const std::vector<int>& block) {
  double dia = 0.0;
  for (std::size_t i = 0; i < block.size(); ++i)
    for (std::size_t j = i + 1; j < block.size(); ++j)
      dia = std::max(dia, d(block[i], block[j]));
  return dia;
}

}  // namespace

TEST_CASE("padded_decomposition structure on a line") {
  Matrix d = line_metric(6, 1.0);
  PaddedPartition part = padded_decomposition(d, 1.5, 42);
  CHECK(part.scale == 1.5);
  CHECK(part.seed == 42);
  CHECK(part.beta == doctest::Approx(10.0 * (std::log(6.0) + 1.0)));
  REQUIRE(part.block_of.size() == 6);
  std::vector<int> count(part.blocks.size(), 0);
  for (int u = 0; u < 6; ++u) {
    int b = part.block_of[std::size_t(u)];
    REQUIRE(b >= 0);
    REQUIRE(std::size_t(b) < part.blocks.size());
    const std::vector<int>& blk = part.blocks[std::size_t(b)];
    CHECK(std::find(blk.begin(), blk.end(), u) != blk.end());
    ++count[std::size_t(b)];
  }
  std::size_t total = 0;
  for (const std::vector<int>& blk : part.blocks) {
    CHECK(!blk.empty());
    CHECK(block_diameter(d, blk) <= 1.5 + 1e-12);
    total += blk.size();
  }
  CHECK(total == 6);
}

TEST_CASE("padded_decomposition diameter bound is exact on random metrics") {
  Rng rng(71);
  for (int trial = 0; trial < 20; ++trial) {
    Matrix d = euclidean_metric(rng, 10, 3);
    double delta = 0.5 + rng.next_unit() * 2.0;
    PaddedPartition part = padded_decomposition(d, delta, rng.next_u64());
    for (const std::vector<int>& blk : part.blocks)
      CHECK(block_diameter(d, blk) <= delta + 1e-12);
  }
}

TEST_CASE("padded_decomposition is seed deterministic") {
  Rng rng(73);
  Matrix d = euclidean_metric(rng, 9, 2);
  PaddedPartition a = padded_decomposition(d, 1.0, 5);
  PaddedPartition b = padded_decomposition(d, 1.0, 5);
  CHECK(a.blocks == b.blocks);
  CHECK(a.block_of == b.block_of);
}

TEST_CASE("padded_decomposition validates the metric") {
  Matrix bad(3, 3);
  bad(0, 1) = 1.0;
  bad(1, 0) = 2.0;  // asymmetric
  bad(0, 2) = bad(2, 0) = 1.0;
  bad(1, 2) = bad(2, 1) = 1.0;
  CHECK_THROWS_AS(padded_decomposition(bad, 1.0, 0), std::invalid_argument);

  Matrix tri(3, 3);
  tri(0, 1) = tri(1, 0) = 1.0;
  tri(1, 2) = tri(2, 1) = 1.0;
  tri(0, 2) = tri(2, 0) = 5.0;  // violates the triangle inequality
  CHECK_THROWS_AS(padded_decomposition(tri, 1.0, 0), std::invalid_argument);

  Matrix diag = line_metric(3, 1.0);
  diag(1, 1) = 0.5;
  CHECK_THROWS_AS(padded_decomposition(diag, 1.0, 0), std::invalid_argument);

  CHECK_THROWS_AS(padded_decomposition(line_metric(3, 1.0), 0.0, 0), std::invalid_argument);
}

TEST_CASE("genus_round on a ring") {
  Graph g = testutil::cycle(8);
  VectorSolution sol = solve_best_embedding(g);
  GenusRound res = genus_round(g, sol, 2, 0.5, 3.0, 17);
  CHECK(res.phi_sdp == doctest::Approx(sol.objective));
  CHECK(res.beta_pad == 3.0);
  if (res.is_cut) {
    CHECK(res.cut.sparsity >= brute_sparsest(g).sparsity - 1e-9);
  } else if (!res.inconclusive) {
    REQUIRE(!res.small_set.set.empty());
    CHECK(res.small_set.set.size() <= 4);  // n/r
    CHECK(res.delta > 0.0);
    if (res.phi_sdp > 0.0)
      CHECK(res.constant == doctest::Approx(res.small_set.sparsity * 0.25 /
                                            (3.0 * res.phi_sdp))
                                .epsilon(1e-9));
  }

  GenusRound again = genus_round(g, sol, 2, 0.5, 3.0, 17);
  CHECK(again.is_cut == res.is_cut);
  CHECK(again.cut.set == res.cut.set);
  CHECK(again.small_set.set == res.small_set.set);
}

TEST_CASE("genus_round splits a disconnected graph for free") {
  std::vector<std::tuple<int, int, double>> e;
  for (auto [u, v] : {std::pair{0, 1}, {1, 2}, {0, 2}}) {
    e.emplace_back(u, v, 0.5);
    e.emplace_back(u + 3, v + 3, 0.5);
  }
  Graph g = make_graph(6, e);
  VectorSolution sol = solve_base_embedding(g, 0.5);
  GenusRound res = genus_round(g, sol, 2, 0.5, 3.0, 1);
  REQUIRE(res.is_cut);
  CHECK(res.cut.sparsity == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("genus_round on a barbell exposes a sparse piece") {
  Graph g = normalize_regular(testutil::barbell(3));
  VectorSolution sol = solve_best_embedding(g);
  GenusRound res = genus_round(g, sol, 2, 0.5, 3.0, 23);
  CHECK(!res.inconclusive);
  double best = brute_sparsest(g).sparsity;
  if (res.is_cut) {
    CHECK(res.cut.sparsity >= best - 1e-9);
  } else {
    CHECK(res.small_set.set.size() <= 3);
    CHECK(res.small_set.sparsity >= best - 1e-9);
  }
}

TEST_CASE("genus_round argument validation") {
  Graph g = testutil::cycle(4);
  VectorSolution sol = solve_best_embedding(g);
  CHECK_THROWS_AS(genus_round(g, sol, 0, 0.5, 3.0, 0), std::invalid_argument);
  CHECK_THROWS_AS(genus_round(g, sol, 5, 0.5, 3.0, 0), std::invalid_argument);
  CHECK_THROWS_AS(genus_round(g, sol, 2, 0.0, 3.0, 0), std::invalid_argument);
  CHECK_THROWS_AS(genus_round(g, sol, 2, 0.5, 0.0, 0), std::invalid_argument);
  CHECK_THROWS_AS(genus_round(g, sol, 2, 0.5, 3.0, 0, 0), std::invalid_argument);
  VectorSolution wrong = solve_best_embedding(testutil::cycle(6));
  CHECK_THROWS_AS(genus_round(g, wrong, 2, 0.5, 3.0, 0), std::invalid_argument);
}

TEST_CASE("region oracle init derives its constants") {
  Graph g = testutil::cycle(8);
  Matrix len(8, 8);
  for (const auto& [u, v, w] : g.edges()) len(u, v) = len(v, u) = 1.0;
  RegionOracleState st = region_oracle_init(g, len, 2.0, 0.5, 2.0, 2);
  double ln30r = std::log(60.0);
  CHECK(st.kappa == doctest::Approx(0.5 / (40.0 * 2.0 * ln30r)).epsilon(1e-12));
  CHECK(st.budget == doctest::Approx(8.0 * 0.5 / (20.0 * 2.0 * ln30r)).epsilon(1e-12));
  CHECK(st.total_length == doctest::Approx(4.0).epsilon(1e-12));  // 8 edges, w=1/2, len 1
  double want_d0 = st.radius_c * 2.0 * ln30r * std::max(1.0, std::log(2.0 * 4.0 / (8.0 * 0.5)));
  CHECK(st.d0 == doctest::Approx(want_d0).epsilon(1e-12));
  CHECK(st.boundary == 0.0);
  CHECK(std::count(st.remaining.begin(), st.remaining.end(), 1) == 8);
}

TEST_CASE("region oracle removal keeps its invariants") {
  Graph g = testutil::cycle(8);
  Matrix len(8, 8);
  for (const auto& [u, v, w] : g.edges()) len(u, v) = len(v, u) = 1.0;
  RegionOracleState st = region_oracle_init(g, len, 2.0, 0.5, 2.0, 2);
  std::vector<int> S{0, 1, 2, 3};
  std::vector<int> removed = region_oracle_remove(st, S);
  // The removed block is a superset of S and leaves the remaining set.
  for (int u : S) CHECK(std::find(removed.begin(), removed.end(), u) != removed.end());
  for (int u : removed) CHECK(st.remaining[std::size_t(u)] == 0);
  REQUIRE(st.blocks.size() == 1);
  CHECK(st.blocks[0] == removed);
  REQUIRE(st.radii.size() == 1);
  CHECK(st.radii[0] <= st.d0 + 1e-9);
  CHECK(st.boundary <= st.budget + 1e-9);

  // A second removal must come from what is left.
  std::vector<int> rest;
  for (int u = 0; u < 8; ++u)
    if (st.remaining[std::size_t(u)]) rest.push_back(u);
  if (rest.size() >= 4) {
    std::vector<int> removed2 = region_oracle_remove(st, rest);
    CHECK(st.boundary <= st.budget + 1e-9);
    CHECK(st.blocks.size() == 2);
  }
}

TEST_CASE("region oracle rejects bad input") {
  Graph g = testutil::cycle(8);
  Matrix len(8, 8);
  for (const auto& [u, v, w] : g.edges()) len(u, v) = len(v, u) = 1.0;
  CHECK_THROWS_AS(region_oracle_init(g, len, 0.5, 0.5, 2.0, 2), std::invalid_argument);
  CHECK_THROWS_AS(region_oracle_init(g, len, 2.0, 0.0, 2.0, 2), std::invalid_argument);
  CHECK_THROWS_AS(region_oracle_init(g, len, 2.0, 0.5, 0.0, 2), std::invalid_argument);
  CHECK_THROWS_AS(region_oracle_init(g, len, 2.0, 0.5, 2.0, 0), std::invalid_argument);
  CHECK_THROWS_AS(region_oracle_init(g, Matrix(4, 4), 2.0, 0.5, 2.0, 2), std::invalid_argument);
  Matrix zerolen(8, 8);
  CHECK_THROWS_AS(region_oracle_init(g, zerolen, 2.0, 0.5, 2.0, 2), std::invalid_argument);

  RegionOracleState st = region_oracle_init(g, len, 2.0, 0.5, 2.0, 2);
  CHECK_THROWS_AS(region_oracle_remove(st, {0, 1}), std::invalid_argument);  // too small
  std::vector<int> removed = region_oracle_remove(st, {0, 1, 2, 3});
  std::vector<int> overlap = removed;
  CHECK_THROWS_AS(region_oracle_remove(st, overlap), std::invalid_argument);
}
