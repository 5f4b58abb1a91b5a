#include "ssecut/embed.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ssecut/oracle.hpp"

namespace ssecut {

double dist2(const Matrix& x, int u, int v) {
  double s = 0.0;
  for (int r = 0; r < x.rows; ++r) {
    double d = x(r, u) - x(r, v);
    s += d * d;
  }
  return s;
}

Matrix mean_shift(const Matrix& x) {
  Matrix out = x;
  for (int r = 0; r < x.rows; ++r) {
    double m = 0.0;
    for (int c = 0; c < x.cols; ++c) m += x(r, c);
    m /= double(x.cols);
    for (int c = 0; c < x.cols; ++c) out(r, c) = x(r, c) - m;
  }
  return out;
}

namespace {

double col_norm2(const Matrix& x, int u) {
  double s = 0.0;
  for (int r = 0; r < x.rows; ++r) s += x(r, u) * x(r, u);
  return s;
}

// Gram of the centered indicator of S at balance k/n: rank one, y_u = 1_S(u) - k/n.
Matrix gram_from_cut(int n, std::uint32_t bits, int k) {
  std::vector<double> y(n);
  for (int i = 0; i < n; ++i) y[i] = ((bits >> i) & 1u ? 1.0 : 0.0) - double(k) / double(n);
  Matrix g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = y[i] * y[j];
  return g;
}

double gram_dist2(const Matrix& g, int u, int v) { return g(u, u) + g(v, v) - 2.0 * g(u, v); }

// Worst l2^2 triangle violation d2(u,v) - d2(u,w) - d2(w,v) over all triples
// and worst diagonal excess over 1.
void gram_residuals(const Matrix& g, double* triangle, double* diag_excess) {
  int n = g.rows;
  double tri = 0.0, dia = 0.0;
  for (int u = 0; u < n; ++u) dia = std::max(dia, g(u, u) - 1.0);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      double duv = gram_dist2(g, u, v);
      for (int w = 0; w < n; ++w) {
        if (w == u || w == v) continue;
        tri = std::max(tri, duv - gram_dist2(g, u, w) - gram_dist2(g, w, v));
      }
    }
  *triangle = tri;
  *diag_excess = dia;
}

// Mix toward the centered-simplex Gram (strictly interior: every triangle has
// slack 2 nu/(n-1), diagonal nu/n) until all constraints hold. Violations are
// linear in the Gram, so the smallest sufficient mixing weight is exact.
Matrix repair_gram(const Matrix& g, double nu) {
  int n = g.rows;
  double tri, dia;
  gram_residuals(g, &tri, &dia);
  if (tri <= 0.0 && dia <= 0.0) return g;
  double slack = 2.0 * nu / double(n - 1);
  double theta = tri > 0.0 ? tri / (tri + slack) : 0.0;
  for (int u = 0; u < n; ++u)
    if (g(u, u) > 1.0) theta = std::max(theta, (g(u, u) - 1.0) / (g(u, u) - nu / double(n)));
  theta = std::min(1.0, theta * (1.0 + 1e-9) + 1e-15);
  Matrix out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double simplex = (i == j) ? nu / double(n) : -nu / (double(n) * double(n - 1));
      out(i, j) = (1.0 - theta) * g(i, j) + theta * simplex;
    }
  return out;
}

Matrix psd_project(const Matrix& g) {
  EigenDecomposition ed = eigh(g);
  int n = g.rows;
  Matrix out(n, n);
  for (int k = 0; k < n; ++k) {
    double lam = ed.values[k];
    if (lam <= 0.0) continue;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) out(i, j) += lam * ed.vectors(i, k) * ed.vectors(j, k);
  }
  return out;
}

double objective_of(const Matrix& lap, const Matrix& g, double nu) {
  double s = 0.0;
  for (int i = 0; i < lap.rows; ++i)
    for (int j = 0; j < lap.cols; ++j) s += lap(i, j) * g(j, i);
  return s / nu;
}

// Best cut with |S| = k: exhaustive below 23 vertices, otherwise a sweep cut
// along the Fiedler vector.
std::uint32_t best_cut_of_size(const Graph& g, int k, const Matrix& lap) {
  int n = g.n;
  if (n <= 22) {
    double best = std::numeric_limits<double>::infinity();
    std::uint32_t best_bits = (1u << k) - 1;
    enumerate_cuts(g.weights, [&](std::uint32_t bits, int size, double cutw) {
      if (size != k) return;
      if (cutw < best) {
        best = cutw;
        best_bits = bits;
      }
    });
    return best_bits;
  }
  EigenDecomposition ed = eigh(lap);
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (ed.vectors(a, 1) != ed.vectors(b, 1)) return ed.vectors(a, 1) < ed.vectors(b, 1);
    return a < b;
  });
  std::uint32_t bits = 0;
  for (int i = 0; i < k; ++i) bits |= 1u << order[i];
  return bits;
}

}  // namespace

SolutionCheck check_solution(const Graph& g, const VectorSolution& sol) {
  const Matrix& x = sol.x;
  int n = x.cols;
  SolutionCheck out;
  double cen = 0.0;
  for (int r = 0; r < x.rows; ++r) {
    double s = 0.0;
    for (int u = 0; u < n; ++u) s += x(r, u);
    cen += s * s;
  }
  out.centering = std::sqrt(cen);
  for (int u = 0; u < n; ++u) out.norm_excess = std::max(out.norm_excess, col_norm2(x, u) - 1.0);
  out.norm_excess = std::max(0.0, out.norm_excess);
  double obj = 0.0;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      double duv = dist2(x, u, v);
      obj += g.weight(u, v) * duv;
      for (int w = 0; w < n; ++w) {
        if (w == u || w == v) continue;
        out.triangle = std::max(out.triangle, duv - dist2(x, u, w) - dist2(x, w, v));
      }
    }
  out.objective_gap = std::abs(sol.objective - obj / sol.nu);
  return out;
}

VectorSolution solve_base_embedding(const Graph& g, double mu, const SolveOptions& opts) {
  int n = g.n;
  if (n < 2) throw std::invalid_argument("solve_base_embedding: need n >= 2");
  int k = int(std::lround(mu * n));
  k = std::max(1, std::min(n / 2, k));
  double bal = double(k) / double(n);
  double nu = double(k) * double(n - k) / double(n);
  Matrix lap = laplacian(g);

  auto finish = [&](const Matrix& gram, int iters, bool conv) {
    VectorSolution sol;
    sol.x = gram_factor(gram);
    sol.mu = bal;
    sol.nu = 0.0;
    for (int u = 0; u < n; ++u) sol.nu += col_norm2(sol.x, u);
    sol.objective = objective_of(lap, gram, sol.nu);
    sol.iterations = iters;
    sol.converged = conv;
    return sol;
  };

  // Spectral candidate: nu times the averaged lambda_2 eigenspace projector.
  // Any feasible Gram is centered, so its objective is >= lambda_2; if this
  // candidate satisfies the triangle and diagonal constraints it is optimal.
  double shift = 0.0;
  for (int i = 0; i < n; ++i) shift = std::max(shift, lap(i, i));
  shift = 4.0 * shift + 1.0;
  Matrix m = lap;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) += shift / double(n);
  EigenDecomposition ed = eigh(m);
  double lambda2 = ed.values[0];
  int mult = 1;
  while (mult < n && ed.values[mult] <= lambda2 + 1e-9 * (1.0 + std::abs(lambda2))) ++mult;
  Matrix spec(n, n);
  for (int t = 0; t < mult; ++t)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) spec(i, j) += nu / double(mult) * ed.vectors(i, t) * ed.vectors(j, t);
  if (n >= 3) spec = repair_gram(spec, nu);
  double tri, dia;
  gram_residuals(spec, &tri, &dia);
  bool spec_ok = tri <= 1e-9 && dia <= 1e-9;

  Matrix integral = gram_from_cut(n, best_cut_of_size(g, k, lap), k);
  double spec_obj = spec_ok ? objective_of(lap, spec, nu) : std::numeric_limits<double>::infinity();
  double int_obj = objective_of(lap, integral, nu);

  if (spec_ok && spec_obj <= lambda2 + 1e-9) return finish(spec, 0, true);
  if (int_obj <= lambda2 + 1e-9) return finish(integral, 0, true);

  Matrix best = spec_obj < int_obj ? spec : integral;
  double best_obj = std::min(spec_obj, int_obj);
  Matrix cur = best;
  std::vector<double> mult_y(std::size_t(n) * n * n, 0.0);
  std::vector<double> history;
  history.reserve(opts.max_iters + 1);
  history.push_back(best_obj);

  double lap_norm = frobenius_norm(lap);
  double step0 = 0.1 * nu / (1.0 + lap_norm);
  bool converged = false;
  int t = 0;
  for (t = 1; t <= opts.max_iters; ++t) {
    Matrix grad = lap;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) {
        double duv = gram_dist2(cur, u, v);
        for (int w = 0; w < n; ++w) {
          if (w == u || w == v) continue;
          double viol = duv - gram_dist2(cur, u, w) - gram_dist2(cur, w, v);
          std::size_t idx = (std::size_t(u) * n + v) * n + w;
          mult_y[idx] = std::max(0.0, mult_y[idx] + opts.penalty * viol);
          double coef = mult_y[idx] + opts.penalty * std::max(0.0, viol);
          if (coef == 0.0) continue;
          grad(w, w) -= 2.0 * coef;
          grad(u, v) -= coef;
          grad(v, u) -= coef;
          grad(u, w) += coef;
          grad(w, u) += coef;
          grad(w, v) += coef;
          grad(v, w) += coef;
        }
      }
    double eta = step0 / std::sqrt(double(t));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) cur(i, j) -= eta * grad(i, j);
    cur = psd_project(cur);
    double tr = trace(cur);
    if (tr <= 1e-12) {
      cur = best;  // degenerate step, restart from the incumbent
      continue;
    }
    double scale = nu / tr;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) cur(i, j) *= scale;
    Matrix feas = n >= 3 ? repair_gram(cur, nu) : cur;
    double obj = objective_of(lap, feas, nu);
    if (obj < best_obj) {
      best_obj = obj;
      best = feas;
    }
    history.push_back(best_obj);
    if (best_obj <= lambda2 + 1e-9) {
      converged = true;
      break;
    }
    if (t >= opts.stall_window &&
        history[t - opts.stall_window] - history[t] < opts.stall_tol) {
      converged = true;
      break;
    }
  }
  return finish(best, t, converged);
}

VectorSolution solve_best_embedding(const Graph& g, const SolveOptions& opts) {
  int n = g.n;
  VectorSolution best;
  bool have = false;
  for (int k = 1; 2 * k <= n; ++k) {
    VectorSolution sol = solve_base_embedding(g, double(k) / double(n), opts);
    if (!have || sol.objective < best.objective) {
      best = sol;
      have = true;
    }
  }
  return best;
}

VectorSolution translate_to_origin(const VectorSolution& sol) {
  const Matrix& x = sol.x;
  int n = x.cols;
  double total = 0.0;
  for (int u = 0; u < n; ++u) total += col_norm2(x, u);
  int pick = -1;
  for (int t = 0; t < n && pick < 0; ++t) {
    double shifted = 0.0;
    for (int u = 0; u < n; ++u) shifted += dist2(x, u, t);
    if (shifted <= 2.0 * total + 1e-9 * (1.0 + total)) pick = t;
  }
  if (pick < 0) pick = 0;  // unreachable: the bound holds on average over t
  VectorSolution out = sol;
  for (int r = 0; r < x.rows; ++r)
    for (int u = 0; u < n; ++u) out.x(r, u) = x(r, u) - x(r, pick);
  double nu2 = 0.0;
  for (int u = 0; u < n; ++u) nu2 += col_norm2(out.x, u);
  out.objective = sol.objective * sol.nu / nu2;
  out.nu = nu2;
  return out;
}

}  // namespace ssecut
