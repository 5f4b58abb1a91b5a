#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "ssecut/graph.hpp"
#include "ssecut/json_io.hpp"
#include "ssecut/linalg.hpp"
#include "ssecut/rng.hpp"
#include "test_util.hpp"

using namespace ssecut;

TEST_CASE("normalize_regular K4") {
  std::vector<std::tuple<int, int, double>> e;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) e.emplace_back(i, j, 1.0);
  bool regular = false;
  Graph g = normalize_regular(make_graph(4, e), &regular);
  CHECK(regular);
  for (const auto& [u, v, w] : g.edges()) {
    CHECK(w == doctest::Approx(1.0 / 3.0));
    (void)u;
    (void)v;
  }
  for (double d : g.degrees()) CHECK(d == doctest::Approx(1.0));
}

TEST_CASE("normalize_regular already normalized is identity") {
  Graph g = testutil::cycle(6);
  bool regular = false;
  Graph h = normalize_regular(g, &regular);
  CHECK(regular);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) CHECK(h.weights(i, j) == doctest::Approx(g.weights(i, j)));
}

TEST_CASE("normalize_regular star averaging") {
  // Star K_{1,3}: center 0 has degree 3, leaves degree 1. Averaged weight per
  // edge is (1/1 + 1/3)/2 = 2/3; the result is not regular and says so.
  Graph g = make_graph(4, {{0, 1, 1.0}, {0, 2, 1.0}, {0, 3, 1.0}});
  bool regular = true;
  Graph h = normalize_regular(g, &regular);
  CHECK(!regular);
  CHECK(h.weights(0, 1) == doctest::Approx(2.0 / 3.0));
  CHECK(h.degrees()[0] == doctest::Approx(2.0));
  CHECK(h.degrees()[1] == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("normalize_regular rejects isolated vertex") {
  Graph g = make_graph(3, {{0, 1, 1.0}});
  CHECK_THROWS(normalize_regular(g));
}

TEST_CASE("cut_weight hand values") {
  Graph k4 = testutil::complete(4);
  CHECK(cut_weight(k4, {1}) == doctest::Approx(1.0));
  CHECK(cut_weight(k4, {}) == doctest::Approx(0.0));
  Graph c4 = testutil::cycle(4);
  CHECK(cut_weight(c4, {0, 1}) == doctest::Approx(1.0));
}

TEST_CASE("cut_quality hand values") {
  Graph k4 = testutil::complete(4);
  CutResult one = cut_quality(k4, {2});
  CHECK(one.sparsity == doctest::Approx(4.0 / 3.0));
  CHECK(one.expansion == doctest::Approx(1.0));
  CutResult two = cut_quality(k4, {0, 3});
  CHECK(two.sparsity == doctest::Approx(4.0 / 3.0));
  CHECK(two.expansion == doctest::Approx(2.0 / 3.0));
  Graph c4 = testutil::cycle(4);
  CutResult pair = cut_quality(c4, {0, 1});
  CHECK(pair.sparsity == doctest::Approx(1.0));
  CHECK(pair.expansion == doctest::Approx(0.5));
}

TEST_CASE("cut_quality rejects trivial sets") {
  Graph c4 = testutil::cycle(4);
  CHECK_THROWS(cut_quality(c4, {}));
  CHECK_THROWS(cut_quality(c4, {0, 1, 2, 3}));
}

TEST_CASE("laplacian basics") {
  Graph k2 = make_graph(2, {{0, 1, 1.0}});
  Matrix l = laplacian(k2);
  CHECK(l(0, 0) == doctest::Approx(1.0));
  CHECK(l(0, 1) == doctest::Approx(-1.0));
  Graph c4 = testutil::cycle(4);
  // Degree-1 regular: L equals the normalized form.
  Matrix ln = normalized_laplacian(c4);
  Matrix lr = laplacian(c4);
  for (std::size_t k = 0; k < ln.a.size(); ++k) CHECK(std::abs(ln.a[k] - lr.a[k]) < 1e-12);
  EigenDecomposition ed = eigh(lr);
  std::vector<double> want{0.0, 1.0, 1.0, 2.0};
  for (int i = 0; i < 4; ++i)
    CHECK(ed.values[static_cast<std::size_t>(i)] ==
          doctest::Approx(want[static_cast<std::size_t>(i)]).epsilon(1e-9));
}

TEST_CASE("expansion sandwich and indicator rayleigh quotient") {
  Rng rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    Graph g = testutil::random_connected(rng, 7, 0.5);
    Matrix l = laplacian(g);
    for (std::uint32_t mask = 1; mask < (1u << 7) - 1; ++mask) {
      std::vector<int> s;
      for (int v = 0; v < 7; ++v)
        if (mask & (1u << v)) s.push_back(v);
      CutResult c = cut_quality(g, s);
      CHECK(c.expansion <= c.sparsity + 1e-9);
      CHECK(c.sparsity <= 2.0 * c.expansion + 1e-9);
      if (s.size() <= 3) {
        // 1_S^T L 1_S = cut weight, so the indicator's Rayleigh quotient is
        // the expansion.
        double quad = 0.0;
        for (int i : s)
          for (int j : s) quad += l(i, j);
        CHECK(quad == doctest::Approx(c.cut_weight).epsilon(1e-9));
        CHECK(quad / static_cast<double>(s.size()) == doctest::Approx(c.expansion).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("laplacian is psd and cut weight is symmetric") {
  Rng rng(33);
  Graph g = testutil::random_connected(rng, 8, 0.4);
  EigenDecomposition ed = eigh(laplacian(g));
  for (double v : ed.values) CHECK(v >= -1e-9);
  std::vector<int> s{0, 2, 5};
  CHECK(cut_weight(g, s) == doctest::Approx(cut_weight(g, complement_set(8, s))).epsilon(1e-12));
}

TEST_CASE("graph json round trip and loader rejections") {
  Graph g = testutil::barbell(3);
  Graph back = graph_from_json(graph_to_json(g));
  CHECK(back.n == g.n);
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j) CHECK(back.weights(i, j) == doctest::Approx(g.weights(i, j)));

  nlohmann::json dup = {{"n", 3}, {"edges", {{0, 1, 1.0}, {0, 1, 2.0}}}};
  CHECK_THROWS(graph_from_json(dup));
  nlohmann::json self_loop = {{"n", 3}, {"edges", {{1, 1, 1.0}}}};
  CHECK_THROWS(graph_from_json(self_loop));
  nlohmann::json out_of_range = {{"n", 3}, {"edges", {{0, 7, 1.0}}}};
  CHECK_THROWS(graph_from_json(out_of_range));
}

TEST_CASE("connected and hop diameter") {
  CHECK(testutil::cycle(8).connected());
  CHECK(testutil::cycle(8).hop_diameter() == 4);
  Graph two = make_graph(4, {{0, 1, 1.0}, {2, 3, 1.0}});
  CHECK(!two.connected());
}
