#include "ssecut/gs_round.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "ssecut/rng.hpp"

namespace ssecut {

double projection_gamma(const Matrix& x, const std::vector<int>& S) {
  double total = frobenius_norm(x);
  total *= total;
  if (total <= 0.0) throw std::invalid_argument("projection_gamma: all-zero vectors");
  Matrix r = project_residual(x, S);
  double res = frobenius_norm(r);
  return std::min(1.0, std::max(0.0, res * res / total));
}

namespace {

double col_dot(const Matrix& m, int a, int b) {
  double s = 0.0;
  for (int i = 0; i < m.rows; ++i) s += m(i, a) * m(i, b);
  return s;
}

std::string dump_graph(const Graph& g) {
  std::ostringstream os;
  os << "n=" << g.n << " edges=[";
  for (const auto& [u, v, w] : g.edges()) os << "(" << u << "," << v << "," << w << ")";
  os << "]";
  return os.str();
}

}  // namespace

std::vector<int> column_select(const Matrix& x, int r, double eps) {
  if (r < 1) throw std::invalid_argument("column_select: r must be >= 1");
  if (eps <= 0.0 || eps >= 1.0) throw std::invalid_argument("column_select: eps must be in (0,1)");
  int rp = int(std::ceil(double(r) / eps)) + r + 1;
  if (rp > x.cols) throw std::invalid_argument("column_select: r' exceeds column count");

  double total = frobenius_norm(x);
  total *= total;
  if (total <= 0.0) throw std::invalid_argument("column_select: all-zero vectors");

  // Greedy: add the column whose direction removes the most residual
  // Frobenius mass; dependent columns (zero residual) contribute nothing and
  // are filled in by index at the end.
  Matrix res = x;
  std::vector<char> used(x.cols, 0);
  std::vector<int> sel;
  for (int step = 0; step < rp; ++step) {
    int best_j = -1;
    double best_red = -1.0;
    for (int j = 0; j < x.cols; ++j) {
      if (used[j]) continue;
      double nj = col_dot(res, j, j);
      if (nj <= 1e-20 * total) continue;
      double red = 0.0;
      for (int k = 0; k < x.cols; ++k) {
        double d = col_dot(res, j, k);
        red += d * d;
      }
      red /= nj;
      if (red > best_red + 1e-15 * total) {
        best_red = red;
        best_j = j;
      }
    }
    if (best_j < 0) break;
    used[best_j] = 1;
    sel.push_back(best_j);
    double nrm = std::sqrt(col_dot(res, best_j, best_j));
    std::vector<double> q = res.col(best_j);
    for (double& v : q) v /= nrm;
    for (int k = 0; k < x.cols; ++k) {
      double d = 0.0;
      for (int i = 0; i < x.rows; ++i) d += q[i] * res(i, k);
      for (int i = 0; i < x.rows; ++i) res(i, k) -= d * q[i];
    }
  }
  for (int j = 0; j < x.cols && int(sel.size()) < rp; ++j)
    if (!used[j]) {
      used[j] = 1;
      sel.push_back(j);
    }
  std::sort(sel.begin(), sel.end());

  Matrix gram = matmul(transpose(x), x);
  double bound = sum_tail_descending(gram, std::min(r, x.cols)) / ((1.0 - eps) * total);
  double gamma = projection_gamma(x, sel);
  // The greedy choice nearly always clears the selection bound; when it does
  // not, a bounded swap polish restores it deterministically.
  for (int round = 0; round < 200 && gamma > bound + 1e-6; ++round) {
    double best_gamma = gamma;
    int out = -1, in = -1;
    for (std::size_t a = 0; a < sel.size(); ++a)
      for (int j = 0; j < x.cols; ++j) {
        if (used[j]) continue;
        std::vector<int> cand = sel;
        cand[a] = j;
        double gc = projection_gamma(x, cand);
        if (gc < best_gamma - 1e-12) {
          best_gamma = gc;
          out = int(a);
          in = j;
        }
      }
    if (out < 0) break;
    used[sel[out]] = 0;
    used[in] = 1;
    sel[out] = in;
    std::sort(sel.begin(), sel.end());
    gamma = best_gamma;
  }
  if (gamma > bound + 1e-6) {
    std::ostringstream os;
    os << "column_select: selection bound violated: gamma=" << gamma << " bound=" << bound
       << " r=" << r << " eps=" << eps << " r'=" << rp;
    throw std::logic_error(os.str());
  }
  return sel;
}

CutResult threshold_round(const Graph& g, const VectorSolution& sol, const std::vector<int>& S,
                          std::uint64_t seed) {
  const Matrix& x = sol.x;
  int n = x.cols;
  if (n != g.n) throw std::invalid_argument("threshold_round: solution size mismatch");
  double gamma = projection_gamma(x, S);
  if (gamma >= 1.0 - 1e-12)
    throw std::invalid_argument("threshold_round: selected columns carry no mass");
  double bound = sol.objective / (1.0 - gamma);

  // Orthonormal basis of the selected span.
  std::vector<std::vector<double>> basis;
  double max_norm = 0.0;
  for (int s : S) max_norm = std::max(max_norm, std::sqrt(col_dot(x, s, s)));
  for (int s : S) {
    std::vector<double> w = x.col(s);
    for (const auto& q : basis) {
      double d = 0.0;
      for (int i = 0; i < x.rows; ++i) d += q[i] * w[i];
      for (int i = 0; i < x.rows; ++i) w[i] -= d * q[i];
    }
    double nrm = 0.0;
    for (double v : w) nrm += v * v;
    nrm = std::sqrt(nrm);
    if (nrm <= 1e-10 * std::max(max_norm, 1e-300)) continue;
    for (double& v : w) v /= nrm;
    basis.push_back(std::move(w));
  }

  std::vector<std::vector<double>> maps;
  auto add_direction = [&](const std::vector<double>& w) {
    std::vector<double> vals(n);
    for (int u = 0; u < n; ++u) {
      double d = 0.0;
      for (int i = 0; i < x.rows; ++i) d += w[i] * x(i, u);
      vals[u] = d;
    }
    maps.push_back(std::move(vals));
  };
  for (const auto& q : basis) add_direction(q);
  Rng rng(seed);
  for (int t = 0; t < 64 && !basis.empty(); ++t) {
    Rng sub = rng.split(t);
    std::vector<double> c(basis.size());
    double nrm = 0.0;
    for (double& v : c) {
      v = sub.next_gaussian();
      nrm += v * v;
    }
    nrm = std::sqrt(std::max(nrm, 1e-300));
    std::vector<double> w(x.rows, 0.0);
    for (std::size_t b = 0; b < basis.size(); ++b)
      for (int i = 0; i < x.rows; ++i) w[i] += c[b] / nrm * basis[b][i];
    add_direction(w);
  }
  for (int t = 0; t < n; ++t) {
    std::vector<double> vals(n);
    for (int u = 0; u < n; ++u) vals[u] = dist2(x, u, t);
    maps.push_back(std::move(vals));
  }

  bool have = false;
  CutResult best;
  auto offer = [&](std::vector<int> set) {
    CutResult c = cut_quality(g, std::move(set));
    if (!have || c.sparsity < best.sparsity ||
        (c.sparsity == best.sparsity &&
         (c.set.size() < best.set.size() ||
          (c.set.size() == best.set.size() && c.set < best.set)))) {
      best = std::move(c);
      have = true;
    }
  };
  std::vector<int> order(n);
  for (const auto& vals : maps) {
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      if (vals[a] != vals[b]) return vals[a] < vals[b];
      return a < b;
    });
    for (int k = 1; k < n; ++k) {
      if (!(vals[order[k - 1]] < vals[order[k]])) continue;  // no threshold in a tie
      std::vector<int> pre(order.begin(), order.begin() + k);
      std::vector<int> suf(order.begin() + k, order.end());
      offer(std::move(pre));
      offer(std::move(suf));
    }
  }
  if (!have)
    throw std::invalid_argument("threshold_round: degenerate solution (all vectors equal)");
  if (best.sparsity > bound + 1e-6) {
    std::ostringstream os;
    os << "threshold_round: rounding contract violated: sparsity=" << best.sparsity
       << " bound=" << bound << " gamma=" << gamma << " objective=" << sol.objective << " S=[";
    for (int s : S) os << s << " ";
    os << "] " << dump_graph(g);
    throw std::logic_error(os.str());
  }
  return best;
}

double tail_bound_via_graph(const VectorSolution& sol, const Graph& g, int r) {
  if (r < 1 || r >= g.n) throw std::invalid_argument("tail_bound_via_graph: r out of range");
  EigenDecomposition ed = eigh(laplacian(g));
  double lam = ed.values[r];
  if (lam <= 1e-9) throw std::invalid_argument("tail_bound_via_graph: lambda_{r+1} vanishes");
  double value = sol.objective / lam;
  Matrix gram = matmul(transpose(sol.x), sol.x);
  double tail_frac = sum_tail_descending(gram, r) / trace(gram);
  if (tail_frac > value + 1e-6)
    throw std::logic_error("tail_bound_via_graph: sigma-tail inequality violated");
  return value;
}

double tail_bound_via_flow(const VectorSolution& sol, const MultiFlow& f, const Graph& g, int r) {
  if (r < 1 || r >= g.n) throw std::invalid_argument("tail_bound_via_flow: r out of range");
  CapacityCheck cap = verify_capacity(f, g);
  if (!cap.pass) throw std::invalid_argument("tail_bound_via_flow: flow exceeds capacity");
  Matrix lf = flow_laplacian(f);
  double lam = eigh(lf).values[r];
  if (lam <= 1e-9) throw std::invalid_argument("tail_bound_via_flow: lambda_{r+1} vanishes");
  double value = sol.objective / lam;
  Matrix gram = matmul(transpose(sol.x), sol.x);
  double tr_flow = 0.0, tr_graph = 0.0;
  Matrix lg = laplacian(g);
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j) {
      tr_flow += gram(i, j) * lf(j, i);
      tr_graph += gram(i, j) * lg(j, i);
    }
  if (tr_flow > tr_graph + 1e-6 * std::max(1.0, std::abs(tr_graph)))
    throw std::logic_error("tail_bound_via_flow: flow trace exceeds graph trace");
  double tail_frac = sum_tail_descending(gram, r) / trace(gram);
  if (tail_frac > value + 1e-6)
    throw std::logic_error("tail_bound_via_flow: sigma-tail inequality violated");
  return value;
}

std::pair<double, double> trace_min_check(const Matrix& y, const Matrix& z, int r) {
  if (y.rows != z.rows) throw std::invalid_argument("trace_min_check: size mismatch");
  if (r < 0 || r >= z.rows) throw std::invalid_argument("trace_min_check: r out of range");
  EigenDecomposition edy = eigh(y);
  EigenDecomposition edz = eigh(z);
  if (edy.values[0] < -1e-7 * std::max(1.0, frobenius_norm(y)) ||
      edz.values[0] < -1e-7 * std::max(1.0, frobenius_norm(z)))
    throw std::invalid_argument("trace_min_check: input not PSD");
  double lam = edz.values[r];
  if (lam <= 1e-12) throw std::invalid_argument("trace_min_check: lambda_{r+1}(Z) vanishes");
  double tail = sum_tail_descending(y, r);
  double tr_yz = 0.0;
  for (int i = 0; i < y.rows; ++i)
    for (int j = 0; j < y.cols; ++j) tr_yz += y(i, j) * z(j, i);
  double bound = tr_yz / lam;
  if (tail > bound + 1e-6)
    throw std::logic_error("trace_min_check: trace lower bound violated");
  return {tail, bound};
}

RoundingReport gs_rounding(const Graph& g, const VectorSolution& sol, int r, double eps,
                           std::uint64_t seed) {
  RoundingReport rep;
  rep.seed = seed;
  int rp = int(std::ceil(double(r) / eps)) + r + 1;
  if (rp >= sol.x.cols) {
    // The requested selection covers every column; gamma is exactly 0 and the
    // column bound holds vacuously.
    rep.selected.resize(sol.x.cols);
    std::iota(rep.selected.begin(), rep.selected.end(), 0);
  } else {
    rep.selected = column_select(sol.x, r, eps);
  }
  rep.gamma = projection_gamma(sol.x, rep.selected);
  rep.bound = sol.objective / (1.0 - rep.gamma);
  rep.best_cut = threshold_round(g, sol, rep.selected, seed);
  return rep;
}

}  // namespace ssecut
