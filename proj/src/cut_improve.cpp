#include "ssecut/cut_improve.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <set>
#include <stdexcept>

#include "ssecut/lp.hpp"

namespace ssecut {

namespace {

/// Lower metric, then smaller side, then lexicographic set.
bool better_cut(double metric_a, const CutResult& a, double metric_b, const CutResult& b) {
  if (metric_a != metric_b) return metric_a < metric_b;
  if (a.set.size() != b.set.size()) return a.set.size() < b.set.size();
  return a.set < b.set;
}

std::vector<int> component_of_zero(const Graph& g) {
  std::vector<char> seen(static_cast<std::size_t>(g.n), 0);
  std::vector<int> comp{0};
  seen[0] = 1;
  for (std::size_t head = 0; head < comp.size(); ++head)
    for (int v = 0; v < g.n; ++v)
      if (!seen[static_cast<std::size_t>(v)] && g.weight(comp[head], v) > 0.0) {
        seen[static_cast<std::size_t>(v)] = 1;
        comp.push_back(v);
      }
  return comp;
}

}  // namespace

std::vector<std::vector<int>> eigenspace_enumerate(const Matrix& laplacian, int r, double phi,
                                                   double eps, double net_resolution, int cap) {
  if (laplacian.rows != laplacian.cols || laplacian.rows < 2)
    throw std::invalid_argument("laplacian must be square with at least two rows");
  const int n = laplacian.rows;
  if (r < 1 || r >= n) throw std::invalid_argument("eigenspace dimension out of range");
  if (phi < 0.0) throw std::invalid_argument("expansion target must be nonnegative");
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  if (!(net_resolution > 0.0 && net_resolution <= 2.0))
    throw std::invalid_argument("net resolution must lie in (0, 2]");
  if (cap < 1) throw std::invalid_argument("candidate cap must be positive");

  EigenDecomposition ed = eigh(laplacian);
  // The net spans the bottom r eigenvectors; the eigenvalue right above them
  // is the gap every distance guarantee divides by.
  if (ed.values[static_cast<std::size_t>(r)] <= 1e-9)
    throw std::invalid_argument("spectral gap above the enumerated eigenspace is degenerate");

  int steps = static_cast<int>(std::floor(2.0 / net_resolution)) + 1;
  std::vector<double> grid(static_cast<std::size_t>(steps));
  for (int k = 0; k < steps; ++k) grid[static_cast<std::size_t>(k)] = -1.0 + k * net_resolution;

  std::set<std::vector<int>> dedup;
  std::vector<int> idx(static_cast<std::size_t>(r), 0);
  std::vector<double> y(static_cast<std::size_t>(n));
  while (true) {
    bool all_zero = true;
    for (int j = 0; j < r; ++j)
      if (std::abs(grid[static_cast<std::size_t>(idx[static_cast<std::size_t>(j)])]) > 1e-12)
        all_zero = false;
    if (!all_zero) {
      for (int u = 0; u < n; ++u) {
        double s = 0.0;
        for (int j = 0; j < r; ++j)
          s += grid[static_cast<std::size_t>(idx[static_cast<std::size_t>(j)])] *
               ed.vectors(u, j);
        y[static_cast<std::size_t>(u)] = s;
      }
      std::vector<double> sorted = y;
      std::sort(sorted.begin(), sorted.end());
      for (int k = 0; k + 1 < n; ++k) {
        if (sorted[static_cast<std::size_t>(k + 1)] - sorted[static_cast<std::size_t>(k)] <= 1e-12)
          continue;
        double theta = 0.5 * (sorted[static_cast<std::size_t>(k)] +
                              sorted[static_cast<std::size_t>(k + 1)]);
        std::vector<int> s;
        for (int u = 0; u < n; ++u)
          if (y[static_cast<std::size_t>(u)] > theta) s.push_back(u);
        if (s.empty() || static_cast<int>(s.size()) >= n) continue;
        dedup.insert(std::move(s));
        if (static_cast<int>(dedup.size()) > cap)
          throw std::runtime_error("eigenspace candidate cap exceeded");
      }
    }
    int j = 0;
    while (j < r && ++idx[static_cast<std::size_t>(j)] == steps) {
      idx[static_cast<std::size_t>(j)] = 0;
      ++j;
    }
    if (j == r) break;
  }
  return {dedup.begin(), dedup.end()};
}

CutResult improve_cut(const Graph& g, const std::vector<int>& T, double phi_guess, double delta) {
  const int n = g.n;
  if (T.empty() || static_cast<int>(T.size()) >= n)
    throw std::invalid_argument("guess must be a proper nonempty vertex set");
  if (!(phi_guess > 0.0)) throw std::invalid_argument("expansion guess must be positive");
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0, 1)");
  std::vector<char> in_t(static_cast<std::size_t>(n), 0);
  for (int u : T) {
    if (u < 0 || u >= n) throw std::invalid_argument("guess vertex out of range");
    in_t[static_cast<std::size_t>(u)] = 1;
  }

  FlowNetwork net;
  net.n = n + 2;
  net.source = n;
  net.sink = n + 1;
  const double anchor = 4.0 * phi_guess / delta;
  for (auto [u, v, w] : g.edges()) {
    net.add_arc(u, v, w);
    net.add_arc(v, u, w);
  }
  for (int u = 0; u < n; ++u) {
    if (in_t[static_cast<std::size_t>(u)])
      net.add_arc(u, net.sink, anchor);
    else
      net.add_arc(net.source, u, anchor);
  }

  MaxFlowResult mf = max_flow(net);
  std::vector<char> on_source(static_cast<std::size_t>(net.n), 0);
  for (int u : mf.source_side) on_source[static_cast<std::size_t>(u)] = 1;
  std::vector<int> q;
  for (int u = 0; u < n; ++u)
    if (!on_source[static_cast<std::size_t>(u)]) q.push_back(u);
  if (q.empty() || static_cast<int>(q.size()) >= n)
    throw std::runtime_error("improvement network produced a trivial cut");
  return cut_quality(g, q);
}

CutResult flow_round(const Graph& g, const MultiFlow& f, const SpectralCertificate& cert,
                     double eps, RoundMode mode, double net_resolution) {
  const int n = g.n;
  if (n < 2) throw std::invalid_argument("rounding needs at least two vertices");
  if (f.n != n) throw std::invalid_argument("flow does not match the graph");
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  if (!cert.valid) throw std::invalid_argument("certificate is not valid");
  if (mode.kind == RoundMode::Kind::balanced && !(mode.c > 0.0 && mode.c <= 1.0))
    throw std::invalid_argument("balance fraction must lie in (0, 1]");

  if (!g.connected()) return cut_quality(g, component_of_zero(g));

  const int min_side =
      mode.kind == RoundMode::Kind::balanced
          ? static_cast<int>(std::ceil(mode.c * n / 2.0))
          : 1;
  auto metric_of = [&](const CutResult& c) {
    if (mode.kind == RoundMode::Kind::sparsest) return c.sparsity;
    return c.expansion;
  };
  auto feasible = [&](const CutResult& c) {
    int side = std::min(static_cast<int>(c.set.size()), n - static_cast<int>(c.set.size()));
    return side >= min_side;
  };

  // Net space: the certificate pins lambda_r(L(F)) >= d*lambda, so the r-1
  // bottom eigenvectors sit under that gap. Skip past numerically zero gap
  // positions (the flow may touch only part of the graph).
  Matrix lf = flow_laplacian(f);
  EigenDecomposition ed = eigh(lf);
  int rdim = std::clamp(cert.r - 1, 1, n - 1);
  while (rdim < n - 1 && ed.values[static_cast<std::size_t>(rdim)] <= 1e-9) ++rdim;
  if (ed.values[static_cast<std::size_t>(rdim)] <= 1e-9)
    throw std::runtime_error("certificate flow has an empty spectrum");

  EigenDecomposition gd = eigh(laplacian(g));
  double lo = std::max(1e-4, gd.values[1] / 8.0);
  std::vector<double> guesses;
  for (double p = lo; p <= 1.0 + 1e-12; p *= 1.0 + eps) guesses.push_back(p);
  if (guesses.empty()) guesses.push_back(lo);

  double delta = eps;
  if (mode.kind == RoundMode::Kind::expansion) delta = 0.5;
  if (mode.kind == RoundMode::Kind::balanced) delta = mode.c / 2.0;
  delta = std::clamp(delta, 1e-3, 0.99);

  std::vector<std::vector<int>> candidates =
      eigenspace_enumerate(lf, rdim, lo, eps, net_resolution);
  // Prefixes of the graph's own Fiedler order guarantee a feasible set at
  // every size, which balanced mode needs.
  std::vector<int> order(static_cast<std::size_t>(n));
  for (int u = 0; u < n; ++u) order[static_cast<std::size_t>(u)] = u;
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return gd.vectors(a, 1) < gd.vectors(b, 1); });
  for (int k = 1; k < n; ++k)
    candidates.emplace_back(order.begin(), order.begin() + k);

  CutResult best;
  bool have = false;
  double best_metric = std::numeric_limits<double>::infinity();
  auto consider = [&](const CutResult& c) {
    if (!feasible(c)) return;
    double m = metric_of(c);
    if (!have || better_cut(m, c, best_metric, best)) {
      best = c;
      best_metric = m;
      have = true;
    }
  };

  for (const std::vector<int>& cand : candidates) {
    CutResult direct = cut_quality(g, cand);
    consider(direct);
    consider(cut_quality(g, complement_set(n, cand)));
    for (double phi : guesses) {
      try {
        consider(improve_cut(g, cand, phi, delta));
      } catch (const std::runtime_error&) {
        // Trivial min cut at this guess; other guesses still apply.
      }
    }
  }

  if (!have) throw std::runtime_error("no candidate satisfied the mode's size constraint");
  return best;
}

}  // namespace ssecut
