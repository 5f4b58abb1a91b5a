#include "ssecut/planted.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <set>
#include <stdexcept>
#include <utility>

#include "ssecut/oracle.hpp"
#include "ssecut/rng.hpp"

namespace ssecut {

namespace {

using EdgeSet = std::set<std::pair<int, int>>;

std::pair<int, int> ordered(int a, int b) { return {std::min(a, b), std::max(a, b)}; }

/// Random circulant on vertices base..base+s-1 with exact degree t. Offsets
/// below s/2 contribute 2 to the degree, the matching offset s/2 (even s)
/// contributes 1; parity feasibility was checked by the caller.
EdgeSet circulant_side(int base, int s, int t, Rng& rng) {
  int half = (t % 2 == 1) ? 1 : 0;
  int full = (t - half) / 2;
  std::vector<int> pool;
  for (int o = 1; o <= (s - 1) / 2; ++o) pool.push_back(o);
  rng.shuffle(pool);
  EdgeSet edges;
  for (int k = 0; k < full; ++k) {
    int o = pool[static_cast<std::size_t>(k)];
    for (int i = 0; i < s; ++i) edges.insert(ordered(base + i, base + (i + o) % s));
  }
  if (half)
    for (int i = 0; i < s / 2; ++i) edges.insert(ordered(base + i, base + i + s / 2));
  return edges;
}

Graph induced_subgraph(const Graph& g, const std::vector<int>& verts) {
  Graph ind;
  ind.n = static_cast<int>(verts.size());
  ind.weights = Matrix(ind.n, ind.n);
  for (int i = 0; i < ind.n; ++i)
    for (int j = 0; j < ind.n; ++j)
      if (i != j)
        ind.weights(i, j) = g.weight(verts[static_cast<std::size_t>(i)],
                                     verts[static_cast<std::size_t>(j)]);
  return ind;
}

double induced_min_expansion(const Graph& g, const std::vector<int>& side) {
  if (side.size() < 2 || side.size() > 22) return -1.0;
  Graph ind = induced_subgraph(g, side);
  return brute_set_range(ind, 1, static_cast<int>(side.size()) / 2).expansion;
}

}  // namespace

PlantedInstance generate_planted(int n, double rho, int inner_degree, int cross_edges,
                                 std::uint64_t seed) {
  if (!(rho > 0.0 && rho <= 0.5)) throw std::invalid_argument("rho must lie in (0, 0.5]");
  const int s1 = static_cast<int>(std::floor(rho * n));
  const int s2 = n - s1;
  if (s1 < 2) throw std::invalid_argument("planted side needs at least two vertices");
  if (inner_degree < 0 || cross_edges < 0)
    throw std::invalid_argument("degree and cross count must be nonnegative");

  Rng rng(seed);
  EdgeSet edges;
  int expected_degree = inner_degree;

  if (inner_degree == 0) {
    if (s1 != s2 || cross_edges != s1 * s2)
      throw std::invalid_argument(
          "inner degree 0 admits only the complete bipartite construction");
    for (int i = 0; i < s1; ++i)
      for (int j = 0; j < s2; ++j) edges.insert(ordered(i, s1 + j));
    expected_degree = s1;
  } else {
    for (int s : {s1, s2}) {
      if (inner_degree > s - 1)
        throw std::invalid_argument("inner degree exceeds a side's size");
      if (inner_degree % 2 == 1 && s % 2 == 1)
        throw std::invalid_argument("odd inner degree needs even side sizes");
    }
    if (cross_edges % 2 != 0)
      throw std::invalid_argument(
          "cross edges come from degree-preserving swaps, so the count must be even");
    const int swaps = cross_edges / 2;
    if (swaps > s1 * inner_degree / 2 || swaps > s2 * inner_degree / 2)
      throw std::invalid_argument("not enough inner edges to swap into cross edges");

    EdgeSet inner1 = circulant_side(0, s1, inner_degree, rng);
    EdgeSet inner2 = circulant_side(s1, s2, inner_degree, rng);
    std::vector<std::pair<int, int>> e1(inner1.begin(), inner1.end());
    std::vector<std::pair<int, int>> e2(inner2.begin(), inner2.end());

    bool built = false;
    for (int attempt = 0; attempt < 200 && !built; ++attempt) {
      rng.shuffle(e1);
      rng.shuffle(e2);
      EdgeSet cross;
      bool clean = true;
      for (int k = 0; k < swaps && clean; ++k) {
        auto [a, b] = e1[static_cast<std::size_t>(k)];
        auto [c, d] = e2[static_cast<std::size_t>(k)];
        if (rng.next_u64() & 1) std::swap(c, d);
        clean = cross.insert(ordered(a, c)).second && cross.insert(ordered(b, d)).second;
      }
      if (!clean) continue;
      edges = cross;
      for (std::size_t k = static_cast<std::size_t>(swaps); k < e1.size(); ++k)
        edges.insert(e1[k]);
      for (std::size_t k = static_cast<std::size_t>(swaps); k < e2.size(); ++k)
        edges.insert(e2[k]);
      built = true;
    }
    if (!built)
      throw std::invalid_argument("could not place the cross edges without collisions");
  }

  std::vector<std::tuple<int, int, double>> edge_list;
  for (auto [a, b] : edges) edge_list.emplace_back(a, b, 1.0);
  Graph raw = make_graph(n, edge_list);
  for (double d : raw.degrees())
    if (std::abs(d - expected_degree) > 1e-9)
      throw std::logic_error("construction lost exact regularity");

  PlantedInstance inst;
  bool was_regular = false;
  inst.graph = normalize_regular(raw, &was_regular);
  if (!was_regular) throw std::logic_error("regular graph failed the regularity check");
  inst.rho = rho;
  inst.planted.resize(static_cast<std::size_t>(s1));
  for (int i = 0; i < s1; ++i) inst.planted[static_cast<std::size_t>(i)] = i;
  inst.planted_cut = cut_quality(inst.graph, inst.planted);
  inst.phi_planted = inst.planted_cut.expansion;
  inst.side_expansion = induced_min_expansion(inst.graph, inst.planted);
  inst.rest_expansion =
      induced_min_expansion(inst.graph, complement_set(n, inst.planted));
  return inst;
}

HypothesisReport check_hypothesis(const PlantedInstance& inst, double eps, double c0) {
  const int n = inst.graph.n;
  if (n > 24) throw std::invalid_argument("hypothesis check enumerates subsets, needs n <= 24");
  if (!(eps > 0.0) || !(inst.rho * eps < 1.0))
    throw std::invalid_argument("eps must be positive with rho*eps below 1");
  if (!(c0 > 0.0)) throw std::invalid_argument("constant must be positive");

  HypothesisReport rep;
  rep.cross_heavy = inst.side_expansion >= 0.0 && inst.rest_expansion >= 0.0 &&
                    inst.phi_planted >= std::min(inst.side_expansion, inst.rest_expansion);
  rep.delta = c0 * inst.phi_planted *
              std::sqrt(std::log(static_cast<double>(n)) * std::log(1.0 / (inst.rho * eps))) /
              std::pow(eps, 1.5);
  if (rep.delta <= 1e-15) {
    rep.pass = false;
    rep.witness = {inst.planted[0]};
    rep.note = "expansion floor is zero, the hypothesis cannot hold nontrivially";
    return rep;
  }

  const int cap = static_cast<int>(std::floor(inst.rho * n / 2.0));
  double worst = std::numeric_limits<double>::infinity();
  std::vector<int> worst_set;
  auto scan_side = [&](const std::vector<int>& side) {
    if (static_cast<int>(side.size()) < 2 || cap < 1) return;
    Graph ind = induced_subgraph(inst.graph, side);
    enumerate_cuts(ind.weights, [&](std::uint32_t bits, int size, double cutw) {
      if (size > cap) return;
      double ratio = cutw / (size * rep.delta);
      if (ratio < worst) {
        worst = ratio;
        worst_set.clear();
        for (int i = 0; i < ind.n; ++i)
          if (bits & (1u << i)) worst_set.push_back(side[static_cast<std::size_t>(i)]);
      }
    });
  };
  scan_side(inst.planted);
  scan_side(complement_set(n, inst.planted));

  if (!std::isfinite(worst)) {
    rep.pass = false;
    rep.witness = {inst.planted[0]};
    rep.note = "sides too small to test any subset";
    return rep;
  }
  rep.margin = worst;
  rep.pass = worst >= 1.0;
  if (!rep.pass) rep.witness = std::move(worst_set);
  rep.note = rep.pass ? "every small subset clears the floor"
                      : "a subset falls short of the required internal expansion";
  return rep;
}

}  // namespace ssecut
