#include "ssecut/sse_flow.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>

#include "ssecut/lp.hpp"
#include "ssecut/oracle.hpp"

namespace ssecut {

namespace {

void validate_paths(const MultiFlow& f) {
  if (f.n < 1) throw std::invalid_argument("flow: n must be positive");
  for (const auto& p : f.paths) {
    if (p.verts.size() < 2) throw std::invalid_argument("flow: path needs at least two vertices");
    for (int v : p.verts)
      if (v < 0 || v >= f.n) throw std::invalid_argument("flow: path vertex out of range");
    if (p.verts.front() == p.verts.back())
      throw std::invalid_argument("flow: path endpoints must differ");
    if (p.amount < 0.0) throw std::invalid_argument("flow: negative amount");
  }
}

}  // namespace

Matrix flow_demands(const MultiFlow& f) {
  validate_paths(f);
  Matrix d(f.n, f.n);
  for (const auto& p : f.paths) {
    d(p.verts.front(), p.verts.back()) += p.amount;
    d(p.verts.back(), p.verts.front()) += p.amount;
  }
  return d;
}

std::vector<double> flow_degrees(const MultiFlow& f) {
  Matrix d = flow_demands(f);
  std::vector<double> deg(f.n, 0.0);
  for (int i = 0; i < f.n; ++i)
    for (int j = 0; j < f.n; ++j) deg[i] += d(i, j);
  return deg;
}

Matrix flow_laplacian(const MultiFlow& f) {
  Matrix d = flow_demands(f);
  Matrix l(f.n, f.n);
  for (int i = 0; i < f.n; ++i)
    for (int j = 0; j < f.n; ++j) {
      if (i == j) continue;
      l(i, j) = -d(i, j);
      l(i, i) += d(i, j);
    }
  return l;
}

MultiFlow scale_flow(const MultiFlow& f, double factor) {
  if (factor < 0.0) throw std::invalid_argument("scale_flow: negative factor");
  MultiFlow out = f;
  for (auto& p : out.paths) p.amount *= factor;
  return out;
}

CapacityCheck verify_capacity(const MultiFlow& f, const Graph& g) {
  validate_paths(f);
  if (f.n != g.n) throw std::invalid_argument("verify_capacity: size mismatch");
  Matrix load(g.n, g.n);
  for (const auto& p : f.paths)
    for (std::size_t i = 0; i + 1 < p.verts.size(); ++i) {
      int a = p.verts[i], b = p.verts[i + 1];
      if (a == b || g.weight(a, b) <= 0.0)
        throw std::invalid_argument("verify_capacity: path traverses a non-edge");
      load(a, b) += p.amount;
      load(b, a) += p.amount;
    }
  CapacityCheck out;
  double worst = 0.0;
  for (int a = 0; a < g.n; ++a)
    for (int b = a + 1; b < g.n; ++b) {
      double over = load(a, b) - g.weight(a, b);
      if (over > 1e-9 && over > worst) {
        worst = over;
        out.pass = false;
        out.u = a;
        out.v = b;
        out.load = load(a, b);
        out.cap = g.weight(a, b);
      }
    }
  return out;
}

namespace {

SseCheck check_sse_range(const MultiFlow& f, double d, double beta, int lo, int hi) {
  SseCheck out;
  std::vector<double> deg = flow_degrees(f);
  for (int i = 0; i < f.n; ++i)
    if (deg[i] > d + 1e-9) {
      out.degree_ok = false;
      out.bad_vertex = i;
      return out;
    }
  Matrix dem = flow_demands(f);
  double best = std::numeric_limits<double>::infinity();
  std::uint32_t best_bits = 0;
  int best_size = 0;
  enumerate_cuts(dem, [&](std::uint32_t bits, int size, double cutw) {
    if (size < lo || size > hi) return;
    double ratio = cutw / (d * double(size));
    if (ratio < best || (ratio == best && size < best_size)) {
      best = ratio;
      best_bits = bits;
      best_size = size;
    }
  });
  out.witness = bits_to_set(best_bits, f.n);
  out.ratio = best;
  out.crossing = best * d * double(best_size);
  out.pass = best >= beta - 1e-9;
  return out;
}

}  // namespace

SseCheck verify_sse(const MultiFlow& f, double r, double d, double beta) {
  if (r < 1.0) throw std::invalid_argument("verify_sse: r must be >= 1");
  int n = f.n;
  int hi = std::min(n - 1, int(std::floor(double(n) / r + 1e-9)));
  if (hi < 1) throw std::invalid_argument("verify_sse: size range empty");
  return check_sse_range(f, d, beta, 1, hi);
}

SseCheck verify_weak_sse(const MultiFlow& f, double r, double d, double beta) {
  if (r < 1.0) throw std::invalid_argument("verify_weak_sse: r must be >= 1");
  int n = f.n;
  int lo = std::max(1, int(std::ceil(double(n) / (3.0 * r) - 1e-9)));
  int hi = std::min(n - 1, int(std::floor(double(n) / r + 1e-9)));
  if (lo > hi) throw std::invalid_argument("verify_weak_sse: size range empty");
  return check_sse_range(f, d, beta, lo, hi);
}

SpectralCertificate verify_spectral(const MultiFlow& f, int r, double d, double lambda) {
  if (r < 1 || r > f.n) throw std::invalid_argument("verify_spectral: r out of range");
  SpectralCertificate cert;
  cert.r = r;
  cert.d = d;
  cert.lambda = lambda;
  cert.degrees = flow_degrees(f);
  cert.lambda_measured = eigh(flow_laplacian(f)).values[r - 1];
  bool deg_ok = true;
  for (double dv : cert.degrees)
    if (dv < d / 2.0 - 1e-7 || dv > d + 1e-7) deg_ok = false;
  cert.valid = deg_ok && cert.lambda_measured >= d * lambda - 1e-7;
  return cert;
}

WeakToSse weak_to_sse(const MultiFlow& f, const Graph& g, double r, double d, double beta) {
  if (f.n != g.n) throw std::invalid_argument("weak_to_sse: size mismatch");
  if (!verify_weak_sse(f, r, d, beta).pass)
    throw std::invalid_argument("weak_to_sse: flow is not weak-SSE");
  int n = f.n;
  if (n > 24) throw std::invalid_argument("weak_to_sse: removal loop capped at n <= 24");
  int cap3r = int(std::floor(double(n) / (3.0 * r) + 1e-9));

  // Removal loop: shave off small sets whose demand expansion inside the
  // remaining vertex set falls below beta. Dropped demand becomes self-loops,
  // which the restricted demand matrix simply omits.
  Matrix dem = flow_demands(f);
  std::vector<char> alive(n, 1);
  std::vector<int> removed;
  while (cap3r >= 1) {
    std::vector<int> idx;
    for (int i = 0; i < n; ++i)
      if (alive[i]) idx.push_back(i);
    int na = int(idx.size());
    if (na < 2) break;
    Matrix sub(na, na);
    for (int a = 0; a < na; ++a)
      for (int b = 0; b < na; ++b) sub(a, b) = dem(idx[a], idx[b]);
    double best = std::numeric_limits<double>::infinity();
    std::uint32_t best_bits = 0;
    enumerate_cuts(sub, [&](std::uint32_t bits, int size, double cutw) {
      if (size > std::min(cap3r, na - 1)) return;
      double ratio = cutw / (d * double(size));
      if (ratio < best) {
        best = ratio;
        best_bits = bits;
      }
    });
    if (!(best < beta)) break;
    for (int a : bits_to_set(best_bits, na)) {
      alive[idx[a]] = 0;
      removed.push_back(idx[a]);
    }
  }
  std::sort(removed.begin(), removed.end());
  if (int(removed.size()) > cap3r)
    throw std::logic_error("weak_to_sse: removal loop exceeded n/3r, flow was not weak-SSE");

  WeakToSse out;
  out.removed = removed;
  if (removed.empty()) {
    out.is_flow = true;
    out.flow = f;
    return out;
  }

  // Source feeds U at capacity d beta per vertex; everything else drains to
  // the sink at the same rate; graph edges carry their weights both ways.
  std::vector<char> in_u(n, 0);
  for (int u : removed) in_u[u] = 1;
  FlowNetwork net;
  net.n = n + 2;
  net.source = n;
  net.sink = n + 1;
  for (int i = 0; i < n; ++i) {
    if (in_u[i])
      net.add_arc(net.source, i, d * beta);
    else
      net.add_arc(i, net.sink, d * beta);
  }
  for (const auto& [u, v, w] : g.edges()) {
    net.add_arc(u, v, w);
    net.add_arc(v, u, w);
  }
  MaxFlowResult mf = max_flow(net);
  double target = d * beta * double(removed.size());

  if (mf.value < target - 1e-9) {
    std::vector<int> q;
    for (int i = 0; i < n; ++i)
      if (mf.source_side[i]) q.push_back(i);
    if (q.empty() || int(q.size()) > int(std::floor(double(n) / r + 1e-9)))
      throw std::logic_error("weak_to_sse: min-cut side outside the guaranteed size range");
    double cutw = cut_weight(g, q);
    if (!(cutw / double(q.size()) < d * beta + 1e-9))
      throw std::logic_error("weak_to_sse: min-cut side misses the expansion guarantee");
    out.is_flow = false;
    out.small_set = cut_quality(g, q);
    return out;
  }

  MultiFlow f2;
  f2.n = n;
  for (const auto& p : f.paths) f2.paths.push_back({p.verts, p.amount / 2.0});
  for (const auto& [verts, amount] : decompose_paths(net, mf.flow)) {
    if (verts.size() < 4) throw std::logic_error("weak_to_sse: degenerate augmenting path");
    std::vector<int> inner(verts.begin() + 1, verts.end() - 1);
    f2.paths.push_back({std::move(inner), amount / 2.0});
  }
  SseCheck chk = verify_sse(f2, r, d, beta / 6.0);
  if (!chk.pass) {
    std::ostringstream os;
    os << "weak_to_sse: repaired flow fails at beta/6 (ratio " << chk.ratio << " on set of size "
       << chk.witness.size() << ")";
    throw std::logic_error(os.str());
  }
  out.is_flow = true;
  out.flow = std::move(f2);
  return out;
}

MultiFlow comb_to_spectral(const MultiFlow& f, const Graph& g, double d) {
  if (f.n != g.n) throw std::invalid_argument("comb_to_spectral: size mismatch");
  std::vector<double> deg = flow_degrees(f);
  for (double dv : deg)
    if (dv > d + 1e-9) throw std::invalid_argument("comb_to_spectral: flow degree exceeds d");
  std::vector<double> gdeg = g.degrees();
  for (double dv : gdeg)
    if (std::abs(dv - 1.0) > 1e-6)
      throw std::invalid_argument("comb_to_spectral: host graph must be normalized regular");

  MultiFlow f2;
  f2.n = f.n;
  for (const auto& p : f.paths) f2.paths.push_back({p.verts, p.amount / 2.0});
  for (const auto& [u, v, w] : g.edges()) f2.paths.push_back({{u, v}, d * w / 2.0});

  std::vector<double> deg2 = flow_degrees(f2);
  for (double dv : deg2)
    if (dv < d / 2.0 - 1e-7 || dv > d + 1e-7)
      throw std::logic_error("comb_to_spectral: output degree left [d/2, d]");

  // When F fits in half the capacity, F1 rides the other half.
  Graph half = g;
  for (double& w : half.weights.a) w *= 0.5;
  if (verify_capacity(f, half).pass && !verify_capacity(f2, g).pass)
    throw std::logic_error("comb_to_spectral: capacity split failed");
  return f2;
}

double disjoint_expansion_check(const MultiFlow& f, const std::vector<std::vector<int>>& sets) {
  if (sets.empty()) throw std::invalid_argument("disjoint_expansion_check: no sets");
  std::vector<char> seen(f.n, 0);
  for (const auto& s : sets) {
    if (s.empty()) throw std::invalid_argument("disjoint_expansion_check: empty set");
    for (int v : s) {
      if (v < 0 || v >= f.n)
        throw std::invalid_argument("disjoint_expansion_check: vertex out of range");
      if (seen[v]) throw std::invalid_argument("disjoint_expansion_check: overlapping sets");
      seen[v] = 1;
    }
  }
  Matrix dem = flow_demands(f);
  double worst = 0.0;
  for (const auto& s : sets) {
    std::vector<char> in(f.n, 0);
    for (int v : s) in[v] = 1;
    double crossing = 0.0;
    for (int v : s)
      for (int j = 0; j < f.n; ++j)
        if (!in[j]) crossing += dem(v, j);
    worst = std::max(worst, crossing / double(s.size()));
  }
  return worst;
}

namespace {

// Dijkstra on lengths 1/w, honoring banned vertices and banned directed edges.
std::vector<int> shortest_path(const Graph& g, int s, int t, const std::vector<char>& banned_vert,
                               const std::set<std::pair<int, int>>& banned_edge) {
  int n = g.n;
  std::vector<double> dist(n, std::numeric_limits<double>::infinity());
  std::vector<int> prev(n, -1);
  std::vector<char> done(n, 0);
  dist[s] = 0.0;
  for (int round = 0; round < n; ++round) {
    int u = -1;
    for (int i = 0; i < n; ++i)
      if (!done[i] && !banned_vert[i] && (u < 0 || dist[i] < dist[u])) u = i;
    if (u < 0 || dist[u] == std::numeric_limits<double>::infinity()) break;
    done[u] = 1;
    if (u == t) break;
    for (int v = 0; v < n; ++v) {
      double w = g.weight(u, v);
      if (w <= 0.0 || done[v] || banned_vert[v]) continue;
      if (banned_edge.count({u, v})) continue;
      double nd = dist[u] + 1.0 / w;
      if (nd < dist[v] - 1e-15) {
        dist[v] = nd;
        prev[v] = u;
      }
    }
  }
  if (dist[t] == std::numeric_limits<double>::infinity()) return {};
  std::vector<int> path;
  for (int v = t; v >= 0; v = prev[v]) path.push_back(v);
  std::reverse(path.begin(), path.end());
  return path;
}

double path_length(const Graph& g, const std::vector<int>& p) {
  double len = 0.0;
  for (std::size_t i = 0; i + 1 < p.size(); ++i) len += 1.0 / g.weight(p[i], p[i + 1]);
  return len;
}

// Yen's k shortest simple paths between s and t, hop-limited.
std::vector<std::vector<int>> k_shortest(const Graph& g, int s, int t, int k, int hop_limit) {
  std::vector<std::vector<int>> found;
  std::vector<char> no_vert(g.n, 0);
  std::set<std::pair<int, int>> no_edge;
  std::vector<int> first = shortest_path(g, s, t, no_vert, no_edge);
  if (first.empty()) return found;
  found.push_back(first);
  std::map<double, std::set<std::vector<int>>> candidates;
  while (int(found.size()) < k) {
    const std::vector<int>& last = found.back();
    for (std::size_t i = 0; i + 1 < last.size(); ++i) {
      std::vector<int> root(last.begin(), last.begin() + i + 1);
      std::set<std::pair<int, int>> banned_edge;
      for (const auto& p : found)
        if (p.size() > i + 1 && std::equal(root.begin(), root.end(), p.begin()))
          banned_edge.insert({p[i], p[i + 1]});
      std::vector<char> banned_vert(g.n, 0);
      for (std::size_t j = 0; j < i; ++j) banned_vert[root[j]] = 1;
      std::vector<int> spur = shortest_path(g, last[i], t, banned_vert, banned_edge);
      if (spur.empty()) continue;
      std::vector<int> total = root;
      total.insert(total.end(), spur.begin() + 1, spur.end());
      if (int(total.size()) - 1 > hop_limit) continue;
      if (std::find(found.begin(), found.end(), total) != found.end()) continue;
      candidates[path_length(g, total)].insert(total);
    }
    if (candidates.empty()) break;
    auto it = candidates.begin();
    std::vector<int> next = *it->second.begin();
    it->second.erase(it->second.begin());
    if (it->second.empty()) candidates.erase(it);
    found.push_back(next);
  }
  return found;
}

struct ClusterWeights {
  std::vector<double> w;
};

// Weights for the bottom-2r eigenvectors, averaging across a degenerate
// eigenvalue cluster at the cutoff.
ClusterWeights eigen_weights(const std::vector<double>& values, int k) {
  int n = int(values.size());
  ClusterWeights cw;
  cw.w.assign(n, 0.0);
  double cut = values[k - 1];
  double tol = 1e-8 * (1.0 + std::abs(cut));
  int full = 0;
  std::vector<int> cluster;
  for (int i = 0; i < n; ++i) {
    if (values[i] < cut - tol)
      ++full;
    else if (std::abs(values[i] - cut) <= tol)
      cluster.push_back(i);
  }
  for (int i = 0; i < full; ++i) cw.w[i] = 1.0;
  double frac = double(k - full) / double(cluster.size());
  for (int i : cluster) cw.w[i] = frac;
  return cw;
}

double eig_sum(const Matrix& lap, int k) { return sum_smallest(lap, k); }

}  // namespace

SpectralFlowResult construct_spectral_flow(const Graph& g, int r, double d, int iterations) {
  int n = g.n;
  if (!g.connected()) throw std::invalid_argument("construct_spectral_flow: graph disconnected");
  if (r < 1 || 2 * r > n) throw std::invalid_argument("construct_spectral_flow: need 1 <= 2r <= n");
  if (d <= 0.0) throw std::invalid_argument("construct_spectral_flow: d must be positive");

  // Path basis: k shortest simple paths per pair on lengths 1/w, plus every
  // direct edge (the edge-demand flow must be representable).
  int hop_limit = std::max(2, 2 * g.hop_diameter());
  std::vector<std::vector<int>> basis;
  std::set<std::vector<int>> dedup;
  auto add_path = [&](std::vector<int> p) {
    if (p.size() < 2) return;
    std::vector<int> key = p;
    if (key.front() > key.back()) std::reverse(key.begin(), key.end());
    if (dedup.insert(key).second) basis.push_back(std::move(key));
  };
  for (const auto& [u, v, w] : g.edges()) {
    (void)w;
    add_path({u, v});
  }
  for (int s = 0; s < n; ++s)
    for (int t = s + 1; t < n; ++t)
      for (auto& p : k_shortest(g, s, t, 4, hop_limit)) add_path(std::move(p));
  int np = int(basis.size());
  if (np == 0) throw std::invalid_argument("construct_spectral_flow: empty path basis");

  // Shared constraint rows: per-edge capacity, per-vertex degree window.
  auto edges = g.edges();
  std::map<std::pair<int, int>, int> edge_row;
  std::vector<LpConstraint> rows;
  for (const auto& [u, v, w] : edges) {
    edge_row[{u, v}] = int(rows.size());
    rows.push_back({std::vector<double>(np, 0.0), Rel::Le, w});
  }
  int deg_hi = int(rows.size());
  for (int i = 0; i < n; ++i) rows.push_back({std::vector<double>(np, 0.0), Rel::Le, d});
  int deg_lo = int(rows.size());
  for (int i = 0; i < n; ++i) rows.push_back({std::vector<double>(np, 0.0), Rel::Ge, d / 2.0});
  for (int p = 0; p < np; ++p) {
    for (std::size_t i = 0; i + 1 < basis[p].size(); ++i) {
      int a = basis[p][i], b = basis[p][i + 1];
      rows[edge_row.at({std::min(a, b), std::max(a, b)})].coef[p] += 1.0;
    }
    int s = basis[p].front(), t = basis[p].back();
    rows[deg_hi + s].coef[p] += 1.0;
    rows[deg_hi + t].coef[p] += 1.0;
    rows[deg_lo + s].coef[p] += 1.0;
    rows[deg_lo + t].coef[p] += 1.0;
  }

  LpProblem feas{std::vector<double>(np, 0.0), rows};
  LpResult feas_res = solve_lp(feas);
  if (feas_res.status != LpStatus::Optimal)
    throw std::invalid_argument(
        "construct_spectral_flow: degree window infeasible on the path basis");

  // Start from the edge-demand flow d*w_e when it sits inside the polytope
  // (for a normalized regular host it has degree exactly d); otherwise from
  // the feasibility vertex.
  std::vector<double> amount(np, 0.0);
  {
    std::vector<double> gdeg = g.degrees();
    double dmax = *std::max_element(gdeg.begin(), gdeg.end());
    double dmin = *std::min_element(gdeg.begin(), gdeg.end());
    if (d <= 1.0 + 1e-12 && d * dmax <= d + 1e-9 && d * dmin >= d / 2.0 - 1e-9) {
      for (int p = 0; p < np; ++p)
        if (basis[p].size() == 2) amount[p] = d * g.weight(basis[p][0], basis[p][1]);
    } else {
      amount = feas_res.x;
      amount.resize(np);
    }
  }

  auto demands_of = [&](const std::vector<double>& a) {
    Matrix dm(n, n);
    for (int p = 0; p < np; ++p) {
      dm(basis[p].front(), basis[p].back()) += a[p];
      dm(basis[p].back(), basis[p].front()) += a[p];
    }
    return dm;
  };
  auto laplacian_of = [&](const Matrix& dm) {
    Matrix l(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        l(i, j) = -dm(i, j);
        l(i, i) += dm(i, j);
      }
    return l;
  };

  SpectralFlowResult out;
  Matrix lap_cur = laplacian_of(demands_of(amount));
  double obj = eig_sum(lap_cur, 2 * r);
  out.objective_history.push_back(obj);

  int stall = 0;
  for (int t = 0; t < iterations && stall < 10; ++t) {
    EigenDecomposition ed = eigh(lap_cur);
    ClusterWeights cw = eigen_weights(ed.values, 2 * r);
    // Supergradient of the eigenvalue sum in the demand between u and v.
    Matrix s(n, n);
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) {
        double acc = 0.0;
        for (int k = 0; k < n; ++k) {
          if (cw.w[k] == 0.0) continue;
          double diff = ed.vectors(u, k) - ed.vectors(v, k);
          acc += cw.w[k] * diff * diff;
        }
        s(u, v) = s(v, u) = acc;
      }
    LpProblem lp{std::vector<double>(np, 0.0), rows};
    for (int p = 0; p < np; ++p) lp.objective[p] = s(basis[p].front(), basis[p].back());
    LpResult lr = solve_lp(lp);
    if (lr.status != LpStatus::Optimal)
      throw std::logic_error("construct_spectral_flow: bounded subproblem failed to solve");

    Matrix lap_hat = laplacian_of(demands_of(lr.x));
    auto value_at = [&](double theta) {
      Matrix mix(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) mix(i, j) = (1.0 - theta) * lap_cur(i, j) + theta * lap_hat(i, j);
      return eig_sum(mix, 2 * r);
    };
    // Golden-section over the segment; the objective is concave, and the
    // endpoints are always candidates so the step never loses ground.
    double lo = 0.0, hi = 1.0;
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double m1 = hi - gr * (hi - lo), m2 = lo + gr * (hi - lo);
    double f1 = value_at(m1), f2 = value_at(m2);
    for (int it = 0; it < 40; ++it) {
      if (f1 < f2) {
        lo = m1;
        m1 = m2;
        f1 = f2;
        m2 = lo + gr * (hi - lo);
        f2 = value_at(m2);
      } else {
        hi = m2;
        m2 = m1;
        f2 = f1;
        m1 = hi - gr * (hi - lo);
        f1 = value_at(m1);
      }
    }
    double theta = 0.5 * (lo + hi);
    double best_theta = 0.0, best_val = obj;
    for (double cand : {theta, 1.0}) {
      double v = value_at(cand);
      if (v > best_val + 1e-12) {
        best_val = v;
        best_theta = cand;
      }
    }
    if (best_theta == 0.0)
      ++stall;
    else {
      stall = best_val - obj < 1e-10 ? stall + 1 : 0;
      for (int p = 0; p < np; ++p) amount[p] = (1.0 - best_theta) * amount[p] + best_theta * lr.x[p];
      lap_cur = laplacian_of(demands_of(amount));
      obj = eig_sum(lap_cur, 2 * r);
    }
    out.objective_history.push_back(obj);
  }

  out.flow.n = n;
  for (int p = 0; p < np; ++p)
    if (amount[p] > 1e-15) out.flow.paths.push_back({basis[p], amount[p]});
  double final_obj = out.flow.paths.empty() ? 0.0 : eig_sum(flow_laplacian(out.flow), 2 * r);
  out.cert = verify_spectral(out.flow.paths.empty() ? MultiFlow{n, {}} : out.flow, 2 * r, d,
                             final_obj / (2.0 * r * d));
  return out;
}

nlohmann::json flow_to_json(const MultiFlow& f) {
  nlohmann::json paths = nlohmann::json::array();
  for (const auto& p : f.paths) paths.push_back({{"verts", p.verts}, {"amount", p.amount}});
  return {{"paths", paths}};
}

MultiFlow flow_from_json(const nlohmann::json& j, int n) {
  MultiFlow f;
  f.n = n;
  for (const auto& p : j.at("paths"))
    f.paths.push_back({p.at("verts").get<std::vector<int>>(), p.at("amount").get<double>()});
  validate_paths(f);
  return f;
}

nlohmann::json cert_to_json(const SpectralCertificate& c) {
  return {{"r", c.r},
          {"d", c.d},
          {"lambda", c.lambda},
          {"lambda_measured", c.lambda_measured},
          {"degrees", c.degrees}};
}

SpectralCertificate cert_from_json(const nlohmann::json& j) {
  SpectralCertificate c;
  c.r = j.at("r").get<int>();
  c.d = j.at("d").get<double>();
  c.lambda = j.at("lambda").get<double>();
  c.lambda_measured = j.at("lambda_measured").get<double>();
  c.degrees = j.at("degrees").get<std::vector<double>>();
  bool deg_ok = true;
  for (double dv : c.degrees)
    if (dv < c.d / 2.0 - 1e-7 || dv > c.d + 1e-7) deg_ok = false;
  c.valid = deg_ok && c.lambda_measured >= c.d * c.lambda - 1e-7;
  return c;
}

}  // namespace ssecut
