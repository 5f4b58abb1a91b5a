#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <numeric>

#include "doctest.h"
#include "ssecut/embed.hpp"
#include "ssecut/gs_round.hpp"
#include "ssecut/oracle.hpp"
#include "ssecut/rng.hpp"
#include "test_util.hpp"

using namespace ssecut;

namespace {

Matrix random_matrix(Rng& rng, int rows, int cols) {
  Matrix m(rows, cols);
  for (double& v : m.a) v = rng.next_gaussian();
  return m;
}

Matrix low_rank_plus_noise(Rng& rng, int rows, int cols, int rank, double noise) {
  Matrix a = random_matrix(rng, rows, rank);
  Matrix b = random_matrix(rng, rank, cols);
  Matrix x = matmul(a, b);
  for (double& v : x.a) v += noise * rng.next_gaussian();
  return x;
}

double tail_fraction(const Matrix& x, int r) {
  Matrix gram = matmul(transpose(x), x);
  return sum_tail_descending(gram, r) / trace(gram);
}

}  // namespace

TEST_CASE("projection_gamma basics") {
  // Rank one: any single nonzero column spans everything.
  Matrix x(3, 4);
  for (int j = 0; j < 4; ++j) {
    x(0, j) = 1.0 + j;
    x(1, j) = 2.0 * (1.0 + j);
  }
  CHECK(projection_gamma(x, {0}) == doctest::Approx(0.0).epsilon(1e-12));

  // Orthonormal columns: leftover mass is exactly the unselected count.
  Matrix id = Matrix::identity(5);
  CHECK(projection_gamma(id, {0, 2}) == doctest::Approx(3.0 / 5.0));

  Rng rng(41);
  for (int trial = 0; trial < 10; ++trial) {
    Matrix m = random_matrix(rng, 4, 8);
    std::vector<int> S{int(rng.next_below(8)), int(rng.next_below(8)), int(rng.next_below(8))};
    std::sort(S.begin(), S.end());
    S.erase(std::unique(S.begin(), S.end()), S.end());
    Matrix resid = testutil::gram_schmidt_residual(m, S);
    double total = 0.0, left = 0.0;
    for (double v : m.a) total += v * v;
    for (double v : resid.a) left += v * v;
    CHECK(projection_gamma(m, S) == doctest::Approx(left / total).epsilon(1e-8));
  }

  CHECK_THROWS_AS(projection_gamma(Matrix(3, 3), {0}), std::invalid_argument);
  CHECK_THROWS_AS(projection_gamma(id, {}), std::invalid_argument);
}

TEST_CASE("column_select on exact low rank") {
  Rng rng(43);
  Matrix x = low_rank_plus_noise(rng, 6, 8, 2, 0.0);
  std::vector<int> S = column_select(x, 2, 0.5);  // r' = 7
  CHECK(S.size() == 7);
  CHECK(projection_gamma(x, S) <= 1e-9);
}

TEST_CASE("column_select on orthonormal columns") {
  Matrix id = Matrix::identity(8);
  std::vector<int> S = column_select(id, 2, 0.5);  // r' = 7 of 8
  REQUIRE(S.size() == 7);
  // Any 7 of 8 orthonormal columns leave exactly one unit of mass behind.
  CHECK(projection_gamma(id, S) == doctest::Approx(1.0 / 8.0));
  // And the advertised bound holds: 2 * tail_2 / 8 = 12/8.
  CHECK(1.0 / 8.0 <= 2.0 * tail_fraction(id, 2) + 1e-6);
}

TEST_CASE("column_select against exhaustive subset oracle") {
  Rng rng(47);
  for (int trial = 0; trial < 3; ++trial) {
    Matrix x = low_rank_plus_noise(rng, 6, 12, 2, 0.05);
    int r = 2;
    double eps = 0.4;
    std::vector<int> S = column_select(x, r, eps);  // r' = 8
    REQUIRE(S.size() == 8);
    double got = projection_gamma(x, S);

    // Exhaustive minimum over all C(12,8) selections.
    double best = 1.0;
    std::vector<int> pick(8);
    std::vector<bool> mask(12, false);
    std::fill(mask.begin(), mask.begin() + 8, true);
    std::sort(mask.begin(), mask.end());
    do {
      int k = 0;
      for (int j = 0; j < 12; ++j)
        if (mask[j]) pick[k++] = j;
      best = std::min(best, projection_gamma(x, pick));
    } while (std::next_permutation(mask.begin(), mask.end()));

    CHECK(got >= best - 1e-12);
    CHECK(got <= tail_fraction(x, r) / (1.0 - eps) + 1e-6);
  }
}

TEST_CASE("column_select errors") {
  Matrix id = Matrix::identity(4);
  CHECK_THROWS_AS(column_select(id, 2, 0.5), std::invalid_argument);  // r' = 7 > 4
  CHECK_THROWS_AS(column_select(id, 0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(column_select(id, 1, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(column_select(Matrix(4, 4), 1, 0.9), std::invalid_argument);
}

TEST_CASE("threshold_round separates disconnected components") {
  std::vector<std::tuple<int, int, double>> e;
  for (auto [u, v] : {std::pair{0, 1}, {1, 2}, {0, 2}}) {
    e.emplace_back(u, v, 0.5);
    e.emplace_back(u + 3, v + 3, 0.5);
  }
  Graph g = make_graph(6, e);
  VectorSolution sol = solve_base_embedding(g, 0.5);
  std::vector<int> all(6);
  std::iota(all.begin(), all.end(), 0);
  CutResult cut = threshold_round(g, sol, all);
  CHECK(cut.sparsity == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(cut.cut_weight == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("threshold_round recovers an integral cut") {
  Graph g = testutil::cycle(6);
  // Indicator embedding of {0,1,2}.
  Matrix x(1, 6);
  for (int u = 0; u < 3; ++u) x(0, u) = 1.0;
  VectorSolution sol;
  sol.x = mean_shift(x);
  sol.nu = 0.0;
  for (double v : sol.x.a) sol.nu += v * v;
  sol.objective = cut_quality(g, {0, 1, 2}).sparsity;
  CutResult cut = threshold_round(g, sol, {0});
  bool front = cut.set == std::vector<int>{0, 1, 2};
  bool back = cut.set == std::vector<int>{3, 4, 5};
  CHECK((front || back));
  CHECK(cut.sparsity == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("threshold_round on a solved ring") {
  Graph g = testutil::cycle(8);
  VectorSolution sol = solve_best_embedding(g);
  std::vector<int> all(8);
  std::iota(all.begin(), all.end(), 0);
  CutResult cut = threshold_round(g, sol, all);
  CutResult best = brute_sparsest(g);
  CHECK(cut.sparsity >= best.sparsity - 1e-9);
  CHECK(cut.sparsity <= sol.objective + 1e-6);  // gamma = 0 on a full selection
}

TEST_CASE("tail_bound_via_graph values") {
  Graph k4 = normalize_regular(testutil::complete(4));
  VectorSolution sol = solve_best_embedding(k4);
  EigenDecomposition ed = eigh(laplacian(k4));
  double via = tail_bound_via_graph(sol, k4, 1);
  CHECK(via == doctest::Approx(sol.objective / ed.values[1]).epsilon(1e-9));
  CHECK(ed.values[1] == doctest::Approx(4.0 / 3.0).epsilon(1e-7));

  Graph c8 = testutil::cycle(8);
  VectorSolution sol8 = solve_best_embedding(c8);
  EigenDecomposition ed8 = eigh(laplacian(c8));
  for (int r = 1; r <= 4; ++r) {
    double v = tail_bound_via_graph(sol8, c8, r);
    CHECK(v == doctest::Approx(sol8.objective / ed8.values[r]).epsilon(1e-9));
  }
}

TEST_CASE("tail_bound_via_graph rejects vanishing spectrum") {
  std::vector<std::tuple<int, int, double>> e{{0, 1, 0.5}, {1, 2, 0.5}, {0, 2, 0.5},
                                              {3, 4, 0.5}, {4, 5, 0.5}, {3, 5, 0.5}};
  Graph g = make_graph(6, e);
  VectorSolution sol = solve_base_embedding(g, 0.5);
  CHECK_THROWS_AS(tail_bound_via_graph(sol, g, 1), std::invalid_argument);
  Graph c4 = testutil::cycle(4);
  VectorSolution s4 = solve_best_embedding(c4);
  CHECK_THROWS_AS(tail_bound_via_graph(s4, c4, 0), std::invalid_argument);
  CHECK_THROWS_AS(tail_bound_via_graph(s4, c4, 4), std::invalid_argument);
}

TEST_CASE("tail_bound_via_flow matches graph bound on edge flows") {
  Graph g = testutil::cycle(8);
  VectorSolution sol = solve_best_embedding(g);
  MultiFlow f;
  f.n = 8;
  for (const auto& [u, v, w] : g.edges()) f.paths.push_back({{u, v}, w});
  for (int r = 1; r <= 3; ++r)
    CHECK(tail_bound_via_flow(sol, f, g, r) ==
          doctest::Approx(tail_bound_via_graph(sol, g, r)).epsilon(1e-9));
}

TEST_CASE("tail_bound_via_flow on the uniform clique flow") {
  Graph k6 = normalize_regular(testutil::complete(6));
  VectorSolution sol = solve_best_embedding(k6);
  MultiFlow f;
  f.n = 6;
  for (int u = 0; u < 6; ++u)
    for (int v = u + 1; v < 6; ++v) f.paths.push_back({{u, v}, 0.2});
  // L(F) is the 0.2-weighted clique: lambda_{r+1} = 1.2 for every r >= 1.
  double via = tail_bound_via_flow(sol, f, k6, 2);
  CHECK(via == doctest::Approx(sol.objective / 1.2).epsilon(1e-9));

  // Halving the flow halves the spectrum and doubles the bound.
  MultiFlow half = scale_flow(f, 0.5);
  CHECK(tail_bound_via_flow(sol, half, k6, 2) == doctest::Approx(2.0 * via).epsilon(1e-9));
}

TEST_CASE("trace_min_check hand case") {
  Matrix l = laplacian(testutil::cycle(4));  // spectrum 0, 1, 1, 2
  auto [tail, bound] = trace_min_check(l, l, 1);
  CHECK(tail == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(bound == doctest::Approx(6.0).epsilon(1e-9));
}

TEST_CASE("trace_min_check identity and self pairings") {
  Rng rng(53);
  Matrix a = random_matrix(rng, 4, 4);
  Matrix y = matmul(transpose(a), a);
  // Z = I: the bound is the whole trace.
  auto [tail, bound] = trace_min_check(y, Matrix::identity(4), 2);
  CHECK(bound == doctest::Approx(trace(y)).epsilon(1e-9));
  CHECK(tail <= bound + 1e-9);
  // Z = Y at the last admissible r.
  auto [t2, b2] = trace_min_check(y, y, 3);
  CHECK(t2 <= b2 + 1e-9);

  CHECK_THROWS_AS(trace_min_check(y, y, 4), std::invalid_argument);
  CHECK_THROWS_AS(trace_min_check(y, Matrix::identity(3), 1), std::invalid_argument);
}

TEST_CASE("trace_min_check random psd pairs") {
  Rng rng(59);
  for (int trial = 0; trial < 100; ++trial) {
    Matrix a = random_matrix(rng, 5, 5);
    Matrix b = random_matrix(rng, 5, 5);
    Matrix y = matmul(transpose(a), a);
    Matrix z = matmul(transpose(b), b);
    for (int i = 0; i < 5; ++i) z(i, i) += 0.1;  // keep lambda_{r+1} clear of zero
    for (int r = 0; r < 5; ++r) {
      auto [tail, bound] = trace_min_check(y, z, r);
      CHECK(tail <= bound + 1e-6);
    }
  }
}

TEST_CASE("gs_rounding honors the rounding contract") {
  Rng rng(61);
  for (int trial = 0; trial < 6; ++trial) {
    Graph g = normalize_regular(testutil::random_connected(rng, 8, 0.4));
    VectorSolution sol = solve_best_embedding(g);
    RoundingReport rep = gs_rounding(g, sol, 2, 0.5, 7);
    CHECK(rep.selected.size() == std::min<std::size_t>(7, 8));
    if (rep.gamma < 1.0) CHECK(rep.best_cut.sparsity <= rep.bound + 1e-6);
    CHECK(rep.best_cut.sparsity >= brute_sparsest(g).sparsity - 1e-9);
  }
}

TEST_CASE("gs_rounding selects every column when r prime covers them") {
  std::vector<std::tuple<int, int, double>> e{{0, 1, 0.5}, {1, 2, 0.5}, {0, 2, 0.5},
                                              {3, 4, 0.5}, {4, 5, 0.5}, {3, 5, 0.5}};
  Graph g = make_graph(6, e);
  VectorSolution sol = solve_base_embedding(g, 0.5);
  RoundingReport rep = gs_rounding(g, sol, 2, 0.25, 0);  // r' = 11 >= 6
  CHECK(rep.selected == std::vector<int>{0, 1, 2, 3, 4, 5});
  CHECK(rep.gamma == 0.0);
  CHECK(rep.best_cut.sparsity == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("gs_rounding is seed deterministic") {
  Graph g = testutil::cycle(8);
  VectorSolution sol = solve_best_embedding(g);
  RoundingReport a = gs_rounding(g, sol, 2, 0.5, 17);
  RoundingReport b = gs_rounding(g, sol, 2, 0.5, 17);
  CHECK(a.selected == b.selected);
  CHECK(a.gamma == b.gamma);
  CHECK(a.best_cut.set == b.best_cut.set);
  CHECK(a.best_cut.sparsity == b.best_cut.sparsity);
}
