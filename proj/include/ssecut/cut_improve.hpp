#pragma once

#include <vector>

#include "ssecut/graph.hpp"
#include "ssecut/linalg.hpp"
#include "ssecut/sse_flow.hpp"

namespace ssecut {

/// Candidate 0/1 vectors (as vertex sets) from an epsilon-net over the
/// bottom-r eigenspace of L, one threshold sweep per net direction,
/// deduplicated. The contract under test: whenever lambda = (r+1)-th
/// smallest eigenvalue satisfies lambda >= 20*phi/eps, every set of
/// expansion phi has a candidate within relative Hamming distance
/// 8*phi/lambda. phi and eps state that contract; the net itself only needs
/// the eigenvectors.
std::vector<std::vector<int>> eigenspace_enumerate(const Matrix& laplacian, int r, double phi,
                                                   double eps, double net_resolution = 0.25,
                                                   int cap = 1 << 20);

/// Single-commodity improvement around a guess T: source feeds V minus T,
/// T feeds the sink, both through arcs of capacity 4*phi_guess/delta; the
/// returned cut is the sink side of the min cut, rescored from scratch.
CutResult improve_cut(const Graph& g, const std::vector<int>& T, double phi_guess, double delta);

struct RoundMode {
  enum class Kind { sparsest, expansion, balanced };
  Kind kind = Kind::sparsest;
  double c = 0.5;  // balanced: both sides at least ceil(c*n/2) vertices
};

/// Certificate-driven rounding: enumerate candidates in the flow Laplacian's
/// bottom eigenspace, sweep phi_guess over a (1+eps) grid from the spectral
/// lower bound to 1, improve every candidate at each guess, and return the
/// best cut under the mode's metric (sparsity, expansion, or balanced
/// expansion). Ties break by size then lexicographic set.
CutResult flow_round(const Graph& g, const MultiFlow& f, const SpectralCertificate& cert,
                     double eps, RoundMode mode = {}, double net_resolution = 0.25);

}  // namespace ssecut
