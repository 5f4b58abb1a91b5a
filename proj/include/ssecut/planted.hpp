#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ssecut/graph.hpp"

namespace ssecut {

/// Regular graph with a planted side, all measured quantities recomputed on
/// the normalized graph. Induced expansions are exhaustive minima over the
/// side's subsets; -1 marks a side too large to enumerate (> 22 vertices).
struct PlantedInstance {
  Graph graph;
  std::vector<int> planted;  // sorted, |planted| = floor(rho * n)
  double rho = 0.0;
  CutResult planted_cut;
  double phi_planted = 0.0;      // expansion of the planted side
  double side_expansion = -1.0;  // min expansion inside the planted side
  double rest_expansion = -1.0;  // min expansion inside the complement
};

/// Both sides are random circulant graphs of the given inner degree; cross
/// edges come from degree-preserving swaps (one inner edge of each side is
/// replaced by two cross edges), so the unnormalized graph is exactly
/// regular. inner_degree 0 admits only the complete bipartite split
/// (rho = 1/2, cross_edges = |S|^2). cross_edges must be even otherwise.
PlantedInstance generate_planted(int n, double rho, int inner_degree, int cross_edges,
                                 std::uint64_t seed);

struct HypothesisReport {
  bool pass = false;
  double delta = 0.0;   // required expansion floor for small sets inside a side
  double margin = 0.0;  // min over tested T of E(T, side minus T) / (|T| * delta)
  std::vector<int> witness;
  bool cross_heavy = false;
  std::string note;
};

/// Exhaustive check of the planted-model hypothesis: every T inside a side
/// with |T| <= rho*n/2 must satisfy E(T, side minus T) >= |T| * delta, where
/// delta = c0 * phi_planted * sqrt(ln n * ln(1/(rho*eps))) / eps^1.5. A zero
/// delta is reported as a degenerate failure. Needs n <= 24.
HypothesisReport check_hypothesis(const PlantedInstance& inst, double eps, double c0 = 1.0);

}  // namespace ssecut
