#pragma once

#include <cstdint>
#include <utility>

#include "ssecut/embed.hpp"
#include "ssecut/graph.hpp"
#include "ssecut/sse_flow.hpp"

namespace ssecut {

/// gamma = ||X_S-perp X||_F^2 / ||X||_F^2, the relative mass outside the span
/// of the selected columns. Throws on all-zero X or empty S.
double projection_gamma(const Matrix& x, const std::vector<int>& S);

/// Greedy Frobenius column selection of r' = ceil(r/eps) + r + 1 columns.
/// Postcondition (checked, with a bounded swap polish before giving up):
/// projection_gamma <= (1-eps)^{-1} tail_r(X^T X) / ||X||_F^2 + 1e-6.
std::vector<int> column_select(const Matrix& x, int r, double eps);

/// Best cut over threshold sweeps of the selected span: directions are an
/// orthonormal basis of span(X_S), 64 seeded random unit combinations of it,
/// and squared distances to each vertex's vector; thresholds at every gap of
/// each sorted value map. Errors if sparsity exceeds objective/(1-gamma)+1e-6
/// (contract falsified) or every direction is constant (degenerate solution).
CutResult threshold_round(const Graph& g, const VectorSolution& sol, const std::vector<int>& S,
                          std::uint64_t seed = 0);

/// phi_SDP / lambda_{r+1}(L(g)); checks the sigma-tail inequality
/// tail_r(X^T X)/||X||_F^2 <= value + 1e-6.
double tail_bound_via_graph(const VectorSolution& sol, const Graph& g, int r);

/// phi_SDP / lambda_{r+1}(L(F)) for a capacity-feasible flow; also checks
/// tr(X^T X L(F)) <= tr(X^T X L(g)) + 1e-6 (path triangle inequality).
double tail_bound_via_flow(const VectorSolution& sol, const MultiFlow& f, const Graph& g, int r);

/// (tail, bound) with tail = sum_{i>r} sigma_i(Y) and bound = tr(Y Z) /
/// lambda_{r+1}(Z); checks tail <= bound + 1e-6 (von Neumann pairing).
std::pair<double, double> trace_min_check(const Matrix& y, const Matrix& z, int r);

struct RoundingReport {
  std::vector<int> selected;
  double gamma = 0.0;
  double bound = 0.0;  // objective / (1 - gamma)
  CutResult best_cut;
  std::uint64_t seed = 0;
};

/// Column selection followed by threshold rounding; the report's cut honors
/// best_cut.sparsity <= bound + 1e-6 whenever gamma < 1. When the requested
/// r' covers every column the selection is all of them (gamma = 0).
RoundingReport gs_rounding(const Graph& g, const VectorSolution& sol, int r, double eps,
                           std::uint64_t seed = 0);

}  // namespace ssecut
