#include "ssecut/lp.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ssecut {

namespace {

constexpr double kPivotTol = 1e-9;

// Dense tableau: m basic rows plus one objective row, rhs in the last column.
struct Tableau {
  int m = 0;
  int ncols = 0;  // variables + 1 (rhs)
  std::vector<double> t;
  std::vector<int> basis;

  double& at(int i, int j) { return t[static_cast<std::size_t>(i) * ncols + j]; }
  double at(int i, int j) const { return t[static_cast<std::size_t>(i) * ncols + j]; }

  void pivot(int row, int col) {
    double p = at(row, col);
    for (int j = 0; j < ncols; ++j) at(row, j) /= p;
    for (int i = 0; i <= m; ++i) {
      if (i == row) continue;
      double f = at(i, col);
      if (f == 0.0) continue;
      for (int j = 0; j < ncols; ++j) at(i, j) -= f * at(row, j);
    }
    basis[row] = col;
  }

  // Objective row entries become reduced costs z_j - c_j for the given c.
  void load_objective(const std::vector<double>& c) {
    for (int j = 0; j < ncols; ++j) at(m, j) = (j < ncols - 1) ? -c[j] : 0.0;
    for (int i = 0; i < m; ++i) {
      double cb = c[basis[i]];
      if (cb == 0.0) continue;
      for (int j = 0; j < ncols; ++j) at(m, j) += cb * at(i, j);
    }
  }

  // Bland: entering = lowest eligible column, leaving = lowest basis label on
  // ratio ties. `allowed` masks columns that may enter.
  enum class Step { Optimal, Unbounded, Pivoted };
  Step step(const std::vector<char>& allowed) {
    int col = -1;
    for (int j = 0; j < ncols - 1; ++j) {
      if (allowed[j] && at(m, j) < -kPivotTol) {
        col = j;
        break;
      }
    }
    if (col < 0) return Step::Optimal;
    int row = -1;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i) {
      double a = at(i, col);
      if (a > kPivotTol) {
        double ratio = at(i, ncols - 1) / a;
        if (ratio < best - 1e-12 ||
            (ratio < best + 1e-12 && (row < 0 || basis[i] < basis[row]))) {
          best = ratio;
          row = i;
        }
      }
    }
    if (row < 0) return Step::Unbounded;
    pivot(row, col);
    return Step::Pivoted;
  }
};

}  // namespace

LpResult solve_lp(const LpProblem& p) {
  int nvars = static_cast<int>(p.objective.size());
  int m = static_cast<int>(p.constraints.size());
  for (const auto& c : p.constraints)
    if (static_cast<int>(c.coef.size()) != nvars)
      throw std::invalid_argument("solve_lp: constraint dimension mismatch");

  // Column layout: original | slack/surplus | artificial | rhs.
  int nslack = 0;
  for (const auto& c : p.constraints)
    if (c.rel != Rel::Eq) ++nslack;
  int nart = 0;
  std::vector<int> art_of_row(m, -1);
  // Artificials are needed for >= and = rows, and for <= rows with negative rhs
  // (which flip into >=). Count after normalization below.

  struct Row {
    std::vector<double> a;
    Rel rel;
    double rhs;
  };
  std::vector<Row> rows(m);
  for (int i = 0; i < m; ++i) {
    rows[i].a = p.constraints[i].coef;
    rows[i].rel = p.constraints[i].rel;
    rows[i].rhs = p.constraints[i].rhs;
    if (rows[i].rhs < 0.0) {
      for (double& v : rows[i].a) v = -v;
      rows[i].rhs = -rows[i].rhs;
      if (rows[i].rel == Rel::Le)
        rows[i].rel = Rel::Ge;
      else if (rows[i].rel == Rel::Ge)
        rows[i].rel = Rel::Le;
    }
  }
  for (int i = 0; i < m; ++i)
    if (rows[i].rel != Rel::Le) ++nart;

  int total = nvars + nslack + nart;
  Tableau tab;
  tab.m = m;
  tab.ncols = total + 1;
  tab.t.assign(static_cast<std::size_t>(m + 1) * tab.ncols, 0.0);
  tab.basis.assign(m, -1);

  int slack_at = nvars;
  int art_at = nvars + nslack;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < nvars; ++j) tab.at(i, j) = rows[i].a[j];
    tab.at(i, tab.ncols - 1) = rows[i].rhs;
    switch (rows[i].rel) {
      case Rel::Le:
        tab.at(i, slack_at) = 1.0;
        tab.basis[i] = slack_at++;
        break;
      case Rel::Ge:
        tab.at(i, slack_at) = -1.0;
        ++slack_at;
        tab.at(i, art_at) = 1.0;
        art_of_row[i] = art_at;
        tab.basis[i] = art_at++;
        break;
      case Rel::Eq:
        tab.at(i, art_at) = 1.0;
        art_of_row[i] = art_at;
        tab.basis[i] = art_at++;
        break;
    }
  }

  std::vector<char> allowed(total, 1);
  LpResult out;

  if (nart > 0) {
    // Phase 1: maximize -(sum of artificials).
    std::vector<double> c1(total, 0.0);
    for (int j = nvars + nslack; j < total; ++j) c1[j] = -1.0;
    tab.load_objective(c1);
    while (true) {
      auto s = tab.step(allowed);
      if (s == Tableau::Step::Optimal) break;
      if (s == Tableau::Step::Unbounded)
        throw std::runtime_error("solve_lp: phase 1 unbounded");
    }
    double art_sum = 0.0;
    for (int i = 0; i < m; ++i)
      if (tab.basis[i] >= nvars + nslack) art_sum += tab.at(i, tab.ncols - 1);
    if (art_sum > 1e-7) {
      out.status = LpStatus::Infeasible;
      return out;
    }
    // Drive remaining zero-value artificials out of the basis when possible.
    for (int i = 0; i < m; ++i) {
      if (tab.basis[i] < nvars + nslack) continue;
      for (int j = 0; j < nvars + nslack; ++j) {
        if (std::abs(tab.at(i, j)) > kPivotTol) {
          tab.pivot(i, j);
          break;
        }
      }
    }
    for (int j = nvars + nslack; j < total; ++j) allowed[j] = 0;
  }

  // Phase 2.
  std::vector<double> c2(total, 0.0);
  for (int j = 0; j < nvars; ++j) c2[j] = p.objective[j];
  tab.load_objective(c2);
  while (true) {
    auto s = tab.step(allowed);
    if (s == Tableau::Step::Optimal) break;
    if (s == Tableau::Step::Unbounded) {
      out.status = LpStatus::Unbounded;
      return out;
    }
  }

  out.status = LpStatus::Optimal;
  out.x.assign(nvars, 0.0);
  for (int i = 0; i < m; ++i)
    if (tab.basis[i] < nvars) out.x[tab.basis[i]] = tab.at(i, tab.ncols - 1);
  out.value = 0.0;
  for (int j = 0; j < nvars; ++j) out.value += p.objective[j] * out.x[j];
  return out;
}

}  // namespace ssecut
