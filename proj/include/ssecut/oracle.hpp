#pragma once

#include <cstdint>
#include <stdexcept>

#include "ssecut/graph.hpp"

namespace ssecut {

/// Visit every nonempty proper subset of {0..n-1} with its cut weight under
/// the symmetric weight matrix `w`. Gray-code order with incremental cut
/// updates; the running weight is re-accumulated from scratch every 2^16
/// steps to keep float drift below 1e-10 at n <= 24.
template <typename F>
void enumerate_cuts(const Matrix& w, F&& visit) {
  int n = w.rows;
  if (n < 1 || n > 24) throw std::invalid_argument("enumerate_cuts: n must be in [1,24]");
  std::vector<double> deg(n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) deg[i] += w(i, j);

  std::uint32_t bits = 0;
  int size = 0;
  double cutw = 0.0;
  std::uint32_t limit = (n >= 32) ? 0 : (1u << n);
  for (std::uint32_t k = 1; k < limit; ++k) {
    int v = __builtin_ctz(k);
    double inner = 0.0;  // weight from v into the current set, v excluded
    std::uint32_t rest = bits & ~(1u << v);
    while (rest) {
      int u = __builtin_ctz(rest);
      rest &= rest - 1;
      inner += w(v, u);
    }
    if (bits & (1u << v)) {
      bits &= ~(1u << v);
      --size;
      cutw += 2.0 * inner - deg[v];
    } else {
      bits |= 1u << v;
      ++size;
      cutw += deg[v] - 2.0 * inner;
    }
    if ((k & 0xffffu) == 0) {
      double fresh = 0.0;
      for (int i = 0; i < n; ++i) {
        if (!(bits & (1u << i))) continue;
        for (int j = 0; j < n; ++j)
          if (!(bits & (1u << j))) fresh += w(i, j);
      }
      cutw = fresh;
    }
    if (size > 0 && size < n) visit(bits, size, cutw < 0.0 ? 0.0 : cutw);
  }
}

std::vector<int> bits_to_set(std::uint32_t bits, int n);

/// Minimum-sparsity cut over 0 < |S| <= n/2; ties by smaller set, then
/// lexicographic vertex order.
CutResult brute_sparsest(const Graph& g);

struct SmallSetResult {
  double phi = 0.0;
  std::vector<int> phi_witness;
  double expansion = 0.0;
  std::vector<int> expansion_witness;
};

/// Minima of sparsity and expansion over 1 <= |S| <= floor(n/r).
SmallSetResult brute_small_set(const Graph& g, double r);

/// Minimum expansion over ceil(c*n) <= |S| <= n/2.
CutResult brute_balanced(const Graph& g, double c);

/// Minimum expansion over lo <= |S| <= hi (proper subsets).
CutResult brute_set_range(const Graph& g, int lo, int hi);

/// Minimum-sparsity cut at every side size; index k in [1, n/2].
std::vector<CutResult> brute_best_per_size(const Graph& g);

}  // namespace ssecut
