#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "ssecut/linalg.hpp"

namespace ssecut {

/// One table key: a vertex set (sorted) with a 0/1 labeling. Bit i of
/// `labels` is the label of set[i].
struct LasserreKey {
  std::vector<int> set;
  std::uint32_t labels = 0;
};

/// Inner-product table of a level-r hierarchy solution: every (S, f) with
/// |S| <= r+1 in canonical order (sets by size then lexicographically,
/// labelings binary-ascending), plus the dense Gram over those keys.
struct LasserreSolution {
  int n = 0;
  int r = 0;
  std::vector<LasserreKey> keys;
  Matrix gram{0, 0};
};

/// Canonical key order for ground set {0..n-1} at level r.
std::vector<LasserreKey> lasserre_keys(int n, int r);

/// Deterministic 0/1 table of the cut S: every labeling consistent with the
/// indicator of S has value 1, everything else 0 (one-dimensional vectors).
LasserreSolution lasserre_from_cut(int n, int r, const std::vector<int>& cut);

/// Mix solutions over the same (n, r): the Gram of a distribution over them.
LasserreSolution lasserre_mix(const std::vector<LasserreSolution>& parts,
                              const std::vector<double>& weights);

struct LasserreReport {
  bool pass = false;
  double empty_norm_gap = 0.0;  // | ||x_empty||^2 - 1 |
  double conflict = 0.0;        // worst inner product across a label conflict
  double consistency = 0.0;     // worst spread within a (union set, labeling) class
  double label_sum = 0.0;       // worst | ||x_u(0)||^2 + ||x_u(1)||^2 - 1 |
  double derivation = 0.0;      // worst || sum_g x_S(f.g) - x_S\u(f) ||
  double psd_gap = 0.0;         // max(0, -lambda_min(gram))
  std::vector<std::string> failures;
  Matrix singletons{0, 0};  // x_u(1) vectors, filled on pass
};

/// Check the hierarchy conditions; tolerance 1e-7 each. Throws when the key
/// list is not the complete canonical table for (n, r).
LasserreReport validate_lasserre(const LasserreSolution& sol);

/// JSON: {"r": int, "entries": [{"sets": [[verts...], [labels...]]}, ...],
/// "gram": [[...]]} with entries in canonical key order.
nlohmann::json lasserre_to_json(const LasserreSolution& sol);
LasserreSolution lasserre_from_json(const nlohmann::json& j);

}  // namespace ssecut
