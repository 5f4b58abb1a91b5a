#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ssecut/embed.hpp"
#include "ssecut/graph.hpp"
#include "ssecut/linalg.hpp"

namespace ssecut {

/// Random partition of a metric into blocks of diameter at most scale.
struct PaddedPartition {
  std::vector<std::vector<int>> blocks;
  std::vector<int> block_of;  // index into blocks per point
  double scale = 0.0;
  double beta = 0.0;  // padding parameter of the construction, 10(ln n + 1)
  std::uint64_t seed = 0;
};

/// Ball carving with a random vertex order and one radius uniform in
/// [delta/4, delta/2], followed by eviction of stragglers into singleton
/// blocks so the diameter bound is exact, not statistical. dist must be a
/// metric within 1e-7 (symmetry, zero diagonal, triangle inequality).
PaddedPartition padded_decomposition(const Matrix& dist, double delta, std::uint64_t seed);

struct GenusRound {
  bool is_cut = false;
  bool inconclusive = false;
  CutResult cut;
  CutResult small_set;
  double phi_sdp = 0.0;
  double delta = 0.0;     // decomposition scale used
  double beta_pad = 0.0;  // padding parameter assumed for the erosion radius
  double constant = 0.0;  // small-set sparsity * eps^2 / (beta_pad * phi_sdp)
  std::string note;
};

/// Good-or-small-cut rounding: column selection first; otherwise decompose
/// the shortest-path closure of the embedding's squared distances at scale
/// delta = (eps/2) * (average squared norm), erode each small block by a ball
/// of uniform radius tau in [0, delta/beta_pad], and return the sparsest
/// eroded block of size at most n/r. delta_override > 0 replaces the default
/// scale.
GenusRound genus_round(const Graph& g, const VectorSolution& sol, int r, double eps,
                       double beta_pad, std::uint64_t seed, int draws = 64,
                       double delta_override = 0.0);

/// Partition oracle bookkeeping: the remaining vertex set plus every removed
/// block with its seed set and growth radius. Cumulative boundary capacity
/// stays at most n*alpha/(20*delta*ln(30r)) after every removal.
struct RegionOracleState {
  Graph g;
  Matrix lengths;
  double f_r = 1.0;
  double alpha = 0.0;
  double delta = 0.0;
  int r = 1;
  double kappa = 0.0;      // per-ball stop threshold alpha/(40*delta*ln(30r))
  double budget = 0.0;     // n*alpha/(20*delta*ln(30r))
  double d0 = 0.0;         // radius bound C*delta*ln(30r)*max(1, ln(rW/(n*alpha)))
  double radius_c = 4.0;   // the recorded constant C
  double total_length = 0.0;  // W = sum of capacity*length over edges
  std::vector<char> remaining;
  std::vector<std::vector<int>> blocks;
  std::vector<std::vector<int>> centers;
  std::vector<double> radii;
  double boundary = 0.0;  // cumulative capacity between partition classes
};

/// lengths holds per-edge growth distances (entries off the edge set are
/// ignored, entries on it must be positive).
RegionOracleState region_oracle_init(const Graph& g, const Matrix& lengths, double f_r,
                                     double alpha, double delta, int r);

/// Removes a grown superset of S from the remaining vertices and returns it.
/// S needs at least n/f_r vertices, all still remaining. The grown ball stops
/// at the first distance prefix whose crossing capacity is at most kappa
/// times its vertex count; the stop always exists because a full component
/// has no crossing edges.
std::vector<int> region_oracle_remove(RegionOracleState& state, const std::vector<int>& S);

}  // namespace ssecut
