#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ssecut/embed.hpp"
#include "ssecut/graph.hpp"
#include "ssecut/linalg.hpp"

namespace ssecut {

/// Sampling parameters of an m-orthogonal separator. alpha and word_len are
/// derived in make_separator_params; word_exponent is the calibration knob c
/// in the word-length rule m' = m^(c/beta).
struct SeparatorParams {
  double m = 4.0;
  double beta = 0.1;
  double word_exponent = 1.0;
  int word_len = 0;
  double alpha = 0.0;
};

/// Requires m >= 1 and beta in (0, 0.25).
SeparatorParams make_separator_params(double m, double beta, double word_exponent = 1.0);

/// The anchor-selection rule m = 10 r^2 / delta.
SeparatorParams anchor_params(int r, double delta, double beta, double word_exponent = 1.0);

/// One draw: admit u when ||X_u||^2 >= rho (rho uniform in (0,1]), then keep
/// the admitted points whose Gaussian sign word equals a uniformly random
/// word. Inclusion probability is exactly alpha ||X_u||^2 with
/// alpha = 2^-word_len. Columns of x are the points; norms must be <= 1.
std::vector<int> sample_separator(const Matrix& x, const SeparatorParams& p, std::uint64_t seed);

struct SeparatorStats {
  std::vector<double> alpha_hat;    // raw per-point inclusion frequency
  std::vector<double> alpha_sigma;  // binomial std radius per point
  Matrix joint;                     // pairwise joint inclusion (Rao-Blackwell over rho and word)
  Matrix joint_sigma;
  Matrix cut_freq;  // pairwise separation probability, same estimator
  std::vector<std::array<int, 2>> condition2_flags;
  double distortion_hat = 0.0;  // sum of cut frequencies / (alpha * sum of probe distances)
  double distortion_max = 0.0;  // worst per-probe ratio
  double alpha = 0.0;
  int trials = 0;
};

/// Monte Carlo validation of the separator's three defining properties.
/// trials must be at least 10^4. probes default to all pairs at positive
/// distance.
SeparatorStats estimate_properties(const Matrix& x, const SeparatorParams& p, int trials,
                                   std::uint64_t seed,
                                   const std::vector<std::pair<int, int>>& probes = {});

struct AnchorReport {
  std::vector<int> anchors;
  std::vector<std::vector<int>> marked_partition;  // M_i per anchor, pairwise disjoint
  double residual = 0.0;                           // ||X_S^perp X||_F^2 / ||X||_F^2
  double residual_constant = 0.0;                  // residual / (delta + beta)
  bool success = false;
  bool inconclusive = false;
  std::vector<int> failure;  // small-set witness when sampling gave up
  std::string note;
};

/// Iterative top-norm anchor selection. Each anchor's set is drawn from the
/// separator conditioned on containing the anchor (exact conditioning: rho
/// capped at the anchor's norm, word fixed to the anchor's word) and accepted
/// when it marks at least n/r new points with at most 2n/m of its members
/// beta-far from the anchor. attempts_guard scales the 200-attempt budget.
AnchorReport select_anchors(const Matrix& x, int r, double delta, double beta, std::uint64_t seed,
                            int attempts_guard = 10);

struct RoundOrSmall {
  bool is_cut = false;
  bool inconclusive = false;
  CutResult cut;
  CutResult small_set;
  double phi_sdp = 0.0;
  double gamma = 0.0;     // projection residual of the selection used for the cut
  double residual = 0.0;  // anchor residual when the anchor stage ran
  double kappa = 0.0;     // measured small-set constant
  bool anchor_ran = false;
  AnchorReport anchor;  // populated when the anchor stage ran
  std::string note;
};

/// Round-or-small-set: try column-selection rounding, then anchor-based
/// selection, and fall back to the lowest-sparsity small separator sample
/// (size <= 2n/r). Requires a normalized regular graph. A precomputed base
/// embedding may be supplied to skip the solve.
RoundOrSmall round_or_small_set(const Graph& g, int r, double eps, std::uint64_t seed,
                                const VectorSolution* presolved = nullptr,
                                const SolveOptions& opts = {});

}  // namespace ssecut
