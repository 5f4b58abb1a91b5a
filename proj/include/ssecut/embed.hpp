#pragma once

#include "ssecut/graph.hpp"
#include "ssecut/linalg.hpp"

namespace ssecut {

/// An l2^2 vector solution of the base cut relaxation. Columns of x are the
/// centered vectors, one per vertex. Invariants (post mean-shift): column sum
/// zero within 1e-7, squared norms <= 1 + 1e-7, squared distances satisfy the
/// triangle inequality within 1e-7, and objective equals
/// sum_{u<v} w_uv * dist2(u,v) / nu within 1e-7.
struct VectorSolution {
  Matrix x{0, 0};
  double objective = 0.0;
  double mu = 0.5;
  double nu = 0.0;
  int iterations = 0;
  bool converged = true;
};

struct SolutionCheck {
  double centering = 0.0;    // norm of the column sum
  double norm_excess = 0.0;  // max(0, max_u ||x_u||^2 - 1)
  double triangle = 0.0;     // worst l2^2 triangle violation
  double objective_gap = 0.0;
};

double dist2(const Matrix& x, int u, int v);

/// Subtract the column mean from every column. Pairwise distances are
/// unchanged and afterwards sum_u ||x_u||^2 = (1/n) sum_{u<v} ||x_u - x_v||^2.
Matrix mean_shift(const Matrix& x);

SolutionCheck check_solution(const Graph& g, const VectorSolution& sol);

struct SolveOptions {
  int max_iters = 5000;
  int stall_window = 50;
  double stall_tol = 1e-8;
  double residual_tol = 1e-6;
  double penalty = 10.0;
};

/// Solve the base relaxation at balance mu: minimize tr(L G) / nu over
/// centered PSD Gram matrices with tr(G) = nu = n mu (1-mu), diagonal <= 1 and
/// l2^2 triangle inequalities. Descent starts from the best integral cut of
/// the requested balance, so the result never exceeds that cut's sparsity; a
/// spectral candidate built from the lambda_2 eigenspace is returned directly
/// when it is feasible, because every feasible objective is >= lambda_2.
VectorSolution solve_base_embedding(const Graph& g, double mu, const SolveOptions& opts = {});

/// Sweep all balances k/n, k = 1..n/2, and keep the smallest objective.
VectorSolution solve_best_embedding(const Graph& g, const SolveOptions& opts = {});

/// Shift so the lowest-index admissible vertex sits at the origin; total
/// squared norm at most doubles, distances and triangle inequalities are
/// untouched. The objective is rescaled to keep the objective/nu identity.
VectorSolution translate_to_origin(const VectorSolution& sol);

}  // namespace ssecut
