#include "ssecut/decomp.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <queue>
#include <stdexcept>

#include "ssecut/gs_round.hpp"
#include "ssecut/rng.hpp"

namespace ssecut {

namespace {

void check_metric(const Matrix& d) {
  if (d.rows != d.cols || d.rows < 1) throw std::invalid_argument("distance matrix must be square");
  const int n = d.rows;
  for (int u = 0; u < n; ++u) {
    if (std::abs(d(u, u)) > 1e-9) throw std::invalid_argument("metric has a nonzero diagonal");
    for (int v = 0; v < n; ++v) {
      if (d(u, v) < -1e-9) throw std::invalid_argument("metric has a negative distance");
      if (std::abs(d(u, v) - d(v, u)) > 1e-7)
        throw std::invalid_argument("metric is not symmetric");
    }
  }
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      for (int w = 0; w < n; ++w)
        if (d(u, v) > d(u, w) + d(w, v) + 1e-7)
          throw std::invalid_argument("metric violates the triangle inequality");
}

double block_diameter(const Matrix& d, const std::vector<int>& b) {
  double diam = 0.0;
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = i + 1; j < b.size(); ++j) diam = std::max(diam, d(b[i], b[j]));
  return diam;
}

}  // namespace

PaddedPartition padded_decomposition(const Matrix& dist, double delta, std::uint64_t seed) {
  check_metric(dist);
  if (!(delta > 0.0)) throw std::invalid_argument("decomposition scale must be positive");
  const int n = dist.rows;

  Rng rng(seed);
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  rng.shuffle(perm);
  double radius = delta / 4.0 + rng.next_unit() * delta / 4.0;

  PaddedPartition part;
  part.scale = delta;
  part.beta = 10.0 * (std::log(static_cast<double>(std::max(n, 2))) + 1.0);
  part.seed = seed;
  part.block_of.assign(static_cast<std::size_t>(n), -1);

  // Every point joins the first center in the random order within the
  // radius; its own center qualifies, so nobody is left out.
  std::vector<int> home(static_cast<std::size_t>(n), -1);
  for (int u = 0; u < n; ++u)
    for (int c : perm)
      if (dist(c, u) <= radius) {
        home[static_cast<std::size_t>(u)] = c;
        break;
      }
  for (int c : perm) {
    std::vector<int> blk;
    for (int u = 0; u < n; ++u)
      if (home[static_cast<std::size_t>(u)] == c) blk.push_back(u);
    if (!blk.empty()) part.blocks.push_back(std::move(blk));
  }

  // Carved blocks sit in a ball of radius <= delta/2, so only metric noise
  // can push a diameter past delta; evict such stragglers into singletons.
  for (std::size_t b = 0; b < part.blocks.size(); ++b) {
    while (part.blocks[b].size() > 1 && block_diameter(dist, part.blocks[b]) > delta + 1e-9) {
      std::size_t worst = 0;
      double worst_ecc = -1.0;
      for (std::size_t i = 0; i < part.blocks[b].size(); ++i) {
        double ecc = 0.0;
        for (int v : part.blocks[b]) ecc = std::max(ecc, dist(part.blocks[b][i], v));
        if (ecc > worst_ecc) {
          worst_ecc = ecc;
          worst = i;
        }
      }
      part.blocks.push_back({part.blocks[b][worst]});
      part.blocks[b].erase(part.blocks[b].begin() + static_cast<std::ptrdiff_t>(worst));
    }
  }

  for (std::size_t b = 0; b < part.blocks.size(); ++b)
    for (int u : part.blocks[b]) part.block_of[static_cast<std::size_t>(u)] = static_cast<int>(b);
  return part;
}

GenusRound genus_round(const Graph& g, const VectorSolution& sol, int r, double eps,
                       double beta_pad, std::uint64_t seed, int draws, double delta_override) {
  const int n = g.n;
  if (sol.x.cols != n || sol.x.rows < 1)
    throw std::invalid_argument("solution does not match the graph");
  if (r < 1 || r > n) throw std::invalid_argument("block size parameter out of range");
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  if (!(beta_pad > 0.0)) throw std::invalid_argument("padding parameter must be positive");
  if (draws < 1) throw std::invalid_argument("need at least one decomposition draw");

  GenusRound out;
  out.phi_sdp = sol.objective;
  out.beta_pad = beta_pad;

  if (!g.connected()) {
    // A component is a sparsity-zero cut; no decomposition needed.
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::vector<int> comp{0};
    seen[0] = 1;
    for (std::size_t head = 0; head < comp.size(); ++head)
      for (int v = 0; v < n; ++v)
        if (!seen[static_cast<std::size_t>(v)] && g.weight(comp[head], v) > 0.0) {
          seen[static_cast<std::size_t>(v)] = 1;
          comp.push_back(v);
        }
    out.is_cut = true;
    out.cut = cut_quality(g, comp);
    out.note = "graph is disconnected, returning a component";
    return out;
  }

  const double accept = (1.0 + eps) * out.phi_sdp + 1e-6;
  try {
    RoundingReport rr = gs_rounding(g, sol, r, std::clamp(eps, 0.05, 0.9), seed);
    if (!rr.best_cut.set.empty() && rr.best_cut.sparsity <= accept) {
      out.is_cut = true;
      out.cut = rr.best_cut;
      out.note = "column-selection rounding met the target";
      return out;
    }
  } catch (const std::exception&) {
  }

  double nu = 0.0;
  for (int u = 0; u < n; ++u)
    for (int i = 0; i < sol.x.rows; ++i) nu += sol.x(i, u) * sol.x(i, u);
  nu /= n;
  out.delta = delta_override > 0.0 ? delta_override : (eps / 2.0) * nu;
  if (!(out.delta > 0.0)) {
    out.inconclusive = true;
    out.note = "embedding collapsed to a point, no scale to decompose at";
    return out;
  }

  // Shortest-path closure of the squared distances; padded_decomposition
  // wants exact triangle inequalities and the erosion balls use the same
  // closed metric.
  Matrix d(n, n);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) d(u, v) = u == v ? 0.0 : dist2(sol.x, u, v);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) d(u, v) = d(v, u) = 0.5 * (d(u, v) + d(v, u));
  for (int w = 0; w < n; ++w)
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v) d(u, v) = std::min(d(u, v), d(u, w) + d(w, v));

  CutResult best;
  best.sparsity = std::numeric_limits<double>::infinity();
  Rng root(seed ^ 0x6a09e667f3bcc909ull);
  for (int k = 0; k < draws; ++k) {
    Rng rng = root.split(static_cast<std::uint64_t>(k));
    PaddedPartition part = padded_decomposition(d, out.delta, rng.next_u64());
    double tau = rng.next_unit() * out.delta / beta_pad;
    for (const std::vector<int>& block : part.blocks) {
      if (static_cast<double>(block.size()) > static_cast<double>(n) / r) continue;
      std::vector<int> eroded;
      for (int u : block) {
        bool inside = true;
        for (int v = 0; v < n && inside; ++v)
          if (d(u, v) <= tau && part.block_of[static_cast<std::size_t>(v)] !=
                                    part.block_of[static_cast<std::size_t>(u)])
            inside = false;
        if (inside) eroded.push_back(u);
      }
      if (eroded.empty() || static_cast<int>(eroded.size()) >= n) continue;
      CutResult c = cut_quality(g, eroded);
      if (c.sparsity < best.sparsity) best = c;
    }
  }

  if (best.set.empty()) {
    out.inconclusive = true;
    out.note = "no eroded block of size at most n/r survived any draw";
    return out;
  }
  out.is_cut = false;
  out.small_set = best;
  double denom = beta_pad / (eps * eps) * out.phi_sdp;
  out.constant = denom > 1e-300 ? best.sparsity / denom : 0.0;
  out.note = "eroded decomposition block";
  return out;
}

RegionOracleState region_oracle_init(const Graph& g, const Matrix& lengths, double f_r,
                                     double alpha, double delta, int r) {
  if (lengths.rows != g.n || lengths.cols != g.n)
    throw std::invalid_argument("edge lengths must match the graph");
  if (!(f_r >= 1.0)) throw std::invalid_argument("set-size polynomial must be at least 1");
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  if (!(delta > 0.0)) throw std::invalid_argument("delta must be positive");
  if (r < 1) throw std::invalid_argument("r must be positive");

  RegionOracleState st;
  st.g = g;
  st.lengths = lengths;
  st.f_r = f_r;
  st.alpha = alpha;
  st.delta = delta;
  st.r = r;
  st.total_length = 0.0;
  for (auto [u, v, w] : g.edges()) {
    if (!(lengths(u, v) > 0.0)) throw std::invalid_argument("every edge needs a positive length");
    st.total_length += w * lengths(u, v);
  }
  double log30r = std::log(30.0 * r);
  st.kappa = alpha / (40.0 * delta * log30r);
  st.budget = g.n * alpha / (20.0 * delta * log30r);
  double ratio = st.total_length > 0.0
                     ? std::max(1.0, std::log(r * st.total_length / (g.n * alpha)))
                     : 1.0;
  st.d0 = st.radius_c * delta * log30r * ratio;
  st.remaining.assign(static_cast<std::size_t>(g.n), 1);
  return st;
}

std::vector<int> region_oracle_remove(RegionOracleState& state, const std::vector<int>& S) {
  const int n = state.g.n;
  if (static_cast<double>(S.size()) < static_cast<double>(n) / state.f_r)
    throw std::invalid_argument("set handed to the oracle is too small");
  for (int u : S)
    if (u < 0 || u >= n || !state.remaining[static_cast<std::size_t>(u)])
      throw std::invalid_argument("set is not within the remaining vertices");

  // Multi-source Dijkstra over the remaining vertices, edge lengths as
  // distances.
  std::vector<double> dist(static_cast<std::size_t>(n),
                           std::numeric_limits<double>::infinity());
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  for (int u : S) {
    dist[static_cast<std::size_t>(u)] = 0.0;
    heap.push({0.0, u});
  }
  while (!heap.empty()) {
    auto [du, u] = heap.top();
    heap.pop();
    if (du > dist[static_cast<std::size_t>(u)]) continue;
    for (int v = 0; v < n; ++v) {
      if (!state.remaining[static_cast<std::size_t>(v)] || state.g.weight(u, v) <= 0.0) continue;
      double nd = du + state.lengths(u, v);
      if (nd < dist[static_cast<std::size_t>(v)]) {
        dist[static_cast<std::size_t>(v)] = nd;
        heap.push({nd, v});
      }
    }
  }

  std::vector<int> reach;
  for (int u = 0; u < n; ++u)
    if (state.remaining[static_cast<std::size_t>(u)] &&
        std::isfinite(dist[static_cast<std::size_t>(u)]))
      reach.push_back(u);
  std::sort(reach.begin(), reach.end(), [&](int a, int b) {
    return dist[static_cast<std::size_t>(a)] < dist[static_cast<std::size_t>(b)];
  });

  // Grow by whole distance groups; stop at the first prefix whose crossing
  // capacity within the remaining graph is at most kappa times its size.
  std::vector<char> in_ball(static_cast<std::size_t>(n), 0);
  std::vector<int> ball;
  double radius = 0.0;
  bool stopped = false;
  std::size_t head = 0;
  while (head < reach.size()) {
    double rho = dist[static_cast<std::size_t>(reach[head])];
    while (head < reach.size() && dist[static_cast<std::size_t>(reach[head])] <= rho + 1e-12) {
      in_ball[static_cast<std::size_t>(reach[head])] = 1;
      ball.push_back(reach[head]);
      ++head;
    }
    double crossing = 0.0;
    for (int u : ball)
      for (int v = 0; v < n; ++v)
        if (state.remaining[static_cast<std::size_t>(v)] && !in_ball[static_cast<std::size_t>(v)])
          crossing += state.g.weight(u, v);
    if (crossing <= state.kappa * static_cast<double>(ball.size()) + 1e-12) {
      radius = rho;
      stopped = true;
      break;
    }
  }
  if (!stopped) throw std::logic_error("region growth ran out of vertices before stopping");
  if (radius > state.d0 + 1e-9)
    throw std::logic_error("region growth exceeded its radius bound");

  double crossing = 0.0;
  for (int u : ball)
    for (int v = 0; v < n; ++v)
      if (state.remaining[static_cast<std::size_t>(v)] && !in_ball[static_cast<std::size_t>(v)])
        crossing += state.g.weight(u, v);
  state.boundary += crossing;
  if (state.boundary > state.budget + 1e-9)
    throw std::logic_error("partition capacity exceeded its budget");

  for (int u : ball) state.remaining[static_cast<std::size_t>(u)] = 0;
  state.blocks.push_back(ball);
  state.centers.push_back(S);
  state.radii.push_back(radius);
  return ball;
}

}  // namespace ssecut
