#pragma once

// Shared oracles for the test suite. Everything here recomputes results by a
// different route than the library: characteristic polynomials instead of
// Jacobi, explicit Gram-Schmidt instead of residual projection, exhaustive
// vertex enumeration instead of simplex, subset scans instead of incremental
// cut updates. Oracles are deliberately slow and dumb.

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "ssecut/graph.hpp"
#include "ssecut/linalg.hpp"
#include "ssecut/lp.hpp"
#include "ssecut/rng.hpp"

namespace testutil {

using ssecut::Graph;
using ssecut::Matrix;

// det(A) by Gaussian elimination with partial pivoting.
inline double det(Matrix a) {
  int n = a.rows;
  double d = 1.0;
  for (int k = 0; k < n; ++k) {
    int piv = k;
    for (int i = k + 1; i < n; ++i)
      if (std::abs(a(i, k)) > std::abs(a(piv, k))) piv = i;
    if (std::abs(a(piv, k)) < 1e-300) return 0.0;
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(a(piv, j), a(k, j));
      d = -d;
    }
    d *= a(k, k);
    for (int i = k + 1; i < n; ++i) {
      double f = a(i, k) / a(k, k);
      for (int j = k; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return d;
}

// Roots of det(A - tI) by sign-change bisection on a fine grid between the
// Gershgorin bounds. Assumes simple (well-separated) eigenvalues; callers
// feed matrices chosen for that.
inline std::vector<double> charpoly_eigenvalues(const Matrix& a, int grid = 20000) {
  int n = a.rows;
  double lo = 1e300, hi = -1e300;
  for (int i = 0; i < n; ++i) {
    double radius = 0.0;
    for (int j = 0; j < n; ++j)
      if (j != i) radius += std::abs(a(i, j));
    lo = std::min(lo, a(i, i) - radius);
    hi = std::max(hi, a(i, i) + radius);
  }
  lo -= 1e-6;
  hi += 1e-6;
  auto p = [&](double t) {
    Matrix m = a;
    for (int i = 0; i < n; ++i) m(i, i) -= t;
    return det(m);
  };
  std::vector<double> roots;
  double prev = p(lo);
  for (int k = 1; k <= grid; ++k) {
    double t = lo + (hi - lo) * k / grid;
    double cur = p(t);
    if ((prev < 0.0) != (cur < 0.0) || cur == 0.0) {
      double a0 = lo + (hi - lo) * (k - 1) / grid, b0 = t;
      for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (a0 + b0);
        if ((p(a0) < 0.0) != (p(mid) < 0.0))
          b0 = mid;
        else
          a0 = mid;
      }
      roots.push_back(0.5 * (a0 + b0));
    }
    prev = cur;
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

// X - Q Q^T X with Q an explicit Gram-Schmidt basis of the selected columns.
inline Matrix gram_schmidt_residual(const Matrix& x, const std::vector<int>& S) {
  std::vector<std::vector<double>> q;
  for (int s : S) {
    std::vector<double> v = x.col(s);
    for (const auto& u : q) {
      double d = 0.0;
      for (std::size_t i = 0; i < v.size(); ++i) d += u[i] * v[i];
      for (std::size_t i = 0; i < v.size(); ++i) v[i] -= d * u[i];
    }
    double norm = 0.0;
    for (double c : v) norm += c * c;
    norm = std::sqrt(norm);
    if (norm < 1e-10) continue;
    for (double& c : v) c /= norm;
    q.push_back(v);
  }
  Matrix res = x;
  for (int j = 0; j < x.cols; ++j) {
    std::vector<double> v = x.col(j);
    for (const auto& u : q) {
      double d = 0.0;
      for (std::size_t i = 0; i < v.size(); ++i) d += u[i] * v[i];
      for (std::size_t i = 0; i < v.size(); ++i) v[i] -= d * u[i];
    }
    res.set_col(j, v);
  }
  return res;
}

// Exhaustive basic-solution enumeration for small maximize-LPs with x >= 0.
// Every choice of `vars` active constraints (constraint rows as equalities or
// x_i = 0) is solved and checked against the full system.
inline double lp_vertex_oracle(const ssecut::LpProblem& p, bool* feasible = nullptr) {
  int nv = static_cast<int>(p.objective.size());
  int nc = static_cast<int>(p.constraints.size());
  int total = nc + nv;  // nc rows + nv sign bounds
  std::vector<int> idx(static_cast<std::size_t>(total));
  for (int i = 0; i < total; ++i) idx[static_cast<std::size_t>(i)] = i;

  double best = -1e300;
  bool found = false;
  std::vector<int> comb;
  std::function<void(int)> rec = [&](int start) {
    if (static_cast<int>(comb.size()) == nv) {
      Matrix m(nv, nv);
      std::vector<double> rhs(static_cast<std::size_t>(nv), 0.0);
      for (int r = 0; r < nv; ++r) {
        int c = comb[static_cast<std::size_t>(r)];
        if (c < nc) {
          for (int j = 0; j < nv; ++j) m(r, j) = p.constraints[static_cast<std::size_t>(c)].coef[static_cast<std::size_t>(j)];
          rhs[static_cast<std::size_t>(r)] = p.constraints[static_cast<std::size_t>(c)].rhs;
        } else {
          m(r, c - nc) = 1.0;
        }
      }
      // Solve m x = rhs.
      Matrix a = m;
      std::vector<double> b = rhs;
      bool singular = false;
      for (int k = 0; k < nv && !singular; ++k) {
        int piv = k;
        for (int i = k + 1; i < nv; ++i)
          if (std::abs(a(i, k)) > std::abs(a(piv, k))) piv = i;
        if (std::abs(a(piv, k)) < 1e-9) {
          singular = true;
          break;
        }
        if (piv != k) {
          for (int j = 0; j < nv; ++j) std::swap(a(piv, j), a(k, j));
          std::swap(b[static_cast<std::size_t>(piv)], b[static_cast<std::size_t>(k)]);
        }
        for (int i = k + 1; i < nv; ++i) {
          double f = a(i, k) / a(k, k);
          for (int j = k; j < nv; ++j) a(i, j) -= f * a(k, j);
          b[static_cast<std::size_t>(i)] -= f * b[static_cast<std::size_t>(k)];
        }
      }
      if (!singular) {
        std::vector<double> x(static_cast<std::size_t>(nv), 0.0);
        for (int i = nv - 1; i >= 0; --i) {
          double s = b[static_cast<std::size_t>(i)];
          for (int j = i + 1; j < nv; ++j) s -= a(i, j) * x[static_cast<std::size_t>(j)];
          x[static_cast<std::size_t>(i)] = s / a(i, i);
        }
        bool ok = true;
        for (int i = 0; i < nv && ok; ++i) ok = x[static_cast<std::size_t>(i)] >= -1e-7;
        for (int c = 0; c < nc && ok; ++c) {
          double lhs = 0.0;
          for (int j = 0; j < nv; ++j)
            lhs += p.constraints[static_cast<std::size_t>(c)].coef[static_cast<std::size_t>(j)] * x[static_cast<std::size_t>(j)];
          double r = p.constraints[static_cast<std::size_t>(c)].rhs;
          switch (p.constraints[static_cast<std::size_t>(c)].rel) {
            case ssecut::Rel::Le: ok = lhs <= r + 1e-7; break;
            case ssecut::Rel::Ge: ok = lhs >= r - 1e-7; break;
            case ssecut::Rel::Eq: ok = std::abs(lhs - r) <= 1e-7; break;
          }
        }
        if (ok) {
          double val = 0.0;
          for (int j = 0; j < nv; ++j) val += p.objective[static_cast<std::size_t>(j)] * x[static_cast<std::size_t>(j)];
          best = std::max(best, val);
          found = true;
        }
      }
      return;
    }
    for (int c = start; c < total; ++c) {
      comb.push_back(c);
      rec(c + 1);
      comb.pop_back();
    }
  };
  rec(0);
  if (feasible) *feasible = found;
  return best;
}

// Min s-t cut by subset scan; sides containing the source.
inline double min_cut_oracle(const ssecut::FlowNetwork& net) {
  int n = net.n;
  if (n > 20) throw std::invalid_argument("min_cut_oracle: too large");
  double best = 1e300;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (!(mask & (1u << net.source)) || (mask & (1u << net.sink))) continue;
    double cap = 0.0;
    for (const auto& arc : net.arcs)
      if ((mask & (1u << arc.from)) && !(mask & (1u << arc.to))) cap += arc.cap;
    best = std::min(best, cap);
  }
  return best;
}

// Fixed small-graph builders. Weights chosen so every graph is normalized
// regular (weighted degree 1) unless stated.
inline Graph cycle(int n) {
  std::vector<std::tuple<int, int, double>> e;
  for (int i = 0; i < n; ++i) e.emplace_back(std::min(i, (i + 1) % n), std::max(i, (i + 1) % n), 0.5);
  return ssecut::make_graph(n, e);
}

inline Graph complete(int n) {
  std::vector<std::tuple<int, int, double>> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.emplace_back(i, j, 1.0 / (n - 1));
  return ssecut::make_graph(n, e);
}

inline Graph path_unit(int n) {
  std::vector<std::tuple<int, int, double>> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1, 1.0);
  return ssecut::make_graph(n, e);
}

// a x b grid, unit weights (not regular).
inline Graph grid(int a, int b) {
  std::vector<std::tuple<int, int, double>> e;
  auto id = [&](int i, int j) { return i * b + j; };
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < b; ++j) {
      if (i + 1 < a) e.emplace_back(id(i, j), id(i + 1, j), 1.0);
      if (j + 1 < b) e.emplace_back(id(i, j), id(i, j + 1), 1.0);
    }
  return ssecut::make_graph(a * b, e);
}

// Two K_k blocks joined by a single unit bridge, unit weights.
inline Graph barbell(int k) {
  std::vector<std::tuple<int, int, double>> e;
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      e.emplace_back(i, j, 1.0);
      e.emplace_back(k + i, k + j, 1.0);
    }
  e.emplace_back(k - 1, k, 1.0);
  return ssecut::make_graph(2 * k, e);
}

// Erdos-Renyi with weights in [0.5, 1.5]; retried until connected.
inline Graph random_connected(ssecut::Rng& rng, int n, double p) {
  for (int attempt = 0; attempt < 200; ++attempt) {
    std::vector<std::tuple<int, int, double>> e;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (rng.next_unit() < p) e.emplace_back(i, j, 0.5 + rng.next_unit());
    Graph g = ssecut::make_graph(n, e);
    if (g.connected()) return g;
  }
  throw std::runtime_error("random_connected: p too small");
}

inline double subset_cut_weight(const Graph& g, std::uint32_t mask) {
  double w = 0.0;
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j)
      if ((mask & (1u << i)) && !(mask & (1u << j))) w += g.weights(i, j);
  return w;
}

}  // namespace testutil
