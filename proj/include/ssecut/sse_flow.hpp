#pragma once

#include <vector>

#include "json.hpp"
#include "ssecut/graph.hpp"
#include "ssecut/linalg.hpp"

namespace ssecut {

struct FlowPath {
  std::vector<int> verts;
  double amount = 0.0;
};

/// Multicommodity flow as a list of weighted paths. A path routes demand
/// between its endpoints; demands and degrees are derived, so they are
/// symmetric by construction.
struct MultiFlow {
  int n = 0;
  std::vector<FlowPath> paths;
};

/// Symmetric demand matrix delta_ij = sum of amounts over paths i..j.
Matrix flow_demands(const MultiFlow& f);
std::vector<double> flow_degrees(const MultiFlow& f);
/// Laplacian of the demand graph.
Matrix flow_laplacian(const MultiFlow& f);
MultiFlow scale_flow(const MultiFlow& f, double factor);

struct CapacityCheck {
  bool pass = true;
  int u = -1, v = -1;  // worst violating edge when !pass
  double load = 0.0, cap = 0.0;
};

/// Per-edge load <= capacity + 1e-9. Throws when a path step is not an edge
/// of g or a path endpoint repeats.
CapacityCheck verify_capacity(const MultiFlow& f, const Graph& g);

struct SseCheck {
  bool pass = false;
  bool degree_ok = true;
  int bad_vertex = -1;          // degree violator when !degree_ok
  std::vector<int> witness;     // minimizing set over the size range
  double crossing = 0.0;        // demand leaving the witness
  double ratio = 0.0;           // crossing / (d |witness|)
};

/// (r, d, beta)-SSE flow check: every set with |S| <= n/r has crossing demand
/// >= beta d |S|. Exhaustive, n <= 24. The weak variant restricts to
/// ceil(n/3r) <= |S| <= floor(n/r).
SseCheck verify_sse(const MultiFlow& f, double r, double d, double beta);
SseCheck verify_weak_sse(const MultiFlow& f, double r, double d, double beta);

struct SpectralCertificate {
  int r = 0;
  double d = 0.0;
  double lambda = 0.0;
  double lambda_measured = 0.0;  // lambda_r(L(F))
  std::vector<double> degrees;
  bool valid = false;  // degrees in [d/2 - 1e-7, d + 1e-7] and measured >= d lambda - 1e-7
};

SpectralCertificate verify_spectral(const MultiFlow& f, int r, double d, double lambda);

struct WeakToSse {
  bool is_flow = false;
  MultiFlow flow;       // (r, d, beta/6)-SSE when is_flow
  CutResult small_set;  // expansion < d beta in g otherwise
  std::vector<int> removed;  // the set U accumulated by the removal loop
};

/// Repair a weak SSE flow into a full one at beta/6, or surface a set of size
/// <= n/r with expansion below d beta (min-cut branch).
WeakToSse weak_to_sse(const MultiFlow& f, const Graph& g, double r, double d, double beta);

/// F2 = F/2 + d F1/2 where F1 routes every edge's weight as demand. For a
/// normalized regular host all degrees land in [d/2, d].
MultiFlow comb_to_spectral(const MultiFlow& f, const Graph& g, double d);

/// Max over the given pairwise-disjoint sets of crossing demand / |S|.
double disjoint_expansion_check(const MultiFlow& f, const std::vector<std::vector<int>>& sets);

struct SpectralFlowResult {
  MultiFlow flow;
  SpectralCertificate cert;
  std::vector<double> objective_history;  // sum of the 2r smallest eigenvalues
};

/// Frank-Wolfe maximization of sum_{i<=2r} lambda_i(L(F)) over the flow
/// polytope {capacity feasible, degrees in [d/2, d]} restricted to a
/// k-shortest-path basis. The certificate's lambda is objective / (2 r d).
SpectralFlowResult construct_spectral_flow(const Graph& g, int r, double d, int iterations = 300);

/// JSON: {"paths": [{"verts": [...], "amount": x}, ...]}.
nlohmann::json flow_to_json(const MultiFlow& f);
MultiFlow flow_from_json(const nlohmann::json& j, int n);

/// JSON: {"r", "d", "lambda", "lambda_measured", "degrees"}.
nlohmann::json cert_to_json(const SpectralCertificate& c);
SpectralCertificate cert_from_json(const nlohmann::json& j);

}  // namespace ssecut
