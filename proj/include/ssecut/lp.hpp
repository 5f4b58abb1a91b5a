#pragma once

#include <utility>
#include <vector>

namespace ssecut {

enum class Rel { Le, Eq, Ge };

struct LpConstraint {
  std::vector<double> coef;
  Rel rel = Rel::Le;
  double rhs = 0.0;
};

/// maximize objective . x  subject to constraints, x >= 0.
struct LpProblem {
  std::vector<double> objective;
  std::vector<LpConstraint> constraints;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  double value = 0.0;
  std::vector<double> x;
};

/// Two-phase dense-tableau simplex with Bland's rule. Deterministic; suited
/// to path-variable LPs up to a few thousand columns.
LpResult solve_lp(const LpProblem& p);

/// Directed flow network with real capacities.
struct FlowNetwork {
  struct Arc {
    int from = 0;
    int to = 0;
    double cap = 0.0;
  };
  int n = 0;
  int source = 0;
  int sink = 0;
  std::vector<Arc> arcs;

  void add_arc(int u, int v, double cap) { arcs.push_back({u, v, cap}); }
};

struct MaxFlowResult {
  double value = 0.0;
  std::vector<double> flow;       // per arc, same order as net.arcs
  std::vector<int> source_side;   // min cut side containing the source
};

/// Dinic. Residual capacities below 1e-10 are treated as zero.
MaxFlowResult max_flow(const FlowNetwork& net);

/// Decompose a conservative s-t flow into paths (cycles are cancelled).
/// Returns (vertex sequence source..sink, amount) pairs.
std::vector<std::pair<std::vector<int>, double>> decompose_paths(
    const FlowNetwork& net, const std::vector<double>& flow);

}  // namespace ssecut
