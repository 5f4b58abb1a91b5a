#include "ssecut/oracle.hpp"

#include <cmath>
#include <limits>

namespace ssecut {

std::vector<int> bits_to_set(std::uint32_t bits, int n) {
  std::vector<int> out;
  for (int i = 0; i < n; ++i)
    if (bits & (1u << i)) out.push_back(i);
  return out;
}

namespace {

// Running best over enumerated cuts. Ties go to the smaller side, then to the
// set whose lowest differing vertex is present (lexicographic on the sorted
// vertex list at equal size).
struct Track {
  double val = std::numeric_limits<double>::infinity();
  int size = 0;
  std::uint32_t bits = 0;
  bool seen = false;

  void offer(double v, int sz, std::uint32_t b) {
    if (seen) {
      if (v > val) return;
      if (v == val) {
        if (sz > size) return;
        if (sz == size) {
          std::uint32_t diff = bits ^ b;
          if (diff == 0 || !(b & (diff & -diff))) return;
        }
      }
    }
    val = v;
    size = sz;
    bits = b;
    seen = true;
  }
};

CutResult finish(const Graph& g, const Track& t, const char* who) {
  if (!t.seen) throw std::runtime_error(std::string(who) + ": no admissible sets");
  return cut_quality(g, bits_to_set(t.bits, g.n));
}

}  // namespace

CutResult brute_sparsest(const Graph& g) {
  Track best;
  int n = g.n;
  enumerate_cuts(g.weights, [&](std::uint32_t bits, int size, double cutw) {
    if (2 * size > n) return;
    best.offer(double(n) * cutw / (double(size) * double(n - size)), size, bits);
  });
  return finish(g, best, "brute_sparsest");
}

SmallSetResult brute_small_set(const Graph& g, double r) {
  if (r < 1.0) throw std::invalid_argument("brute_small_set: r must be >= 1");
  int n = g.n;
  int cap = int(std::floor(double(n) / r + 1e-9));
  if (cap > n - 1) cap = n - 1;
  if (cap < 1) throw std::invalid_argument("brute_small_set: no admissible sets");
  Track phi, exp;
  enumerate_cuts(g.weights, [&](std::uint32_t bits, int size, double cutw) {
    if (size > cap) return;
    phi.offer(double(n) * cutw / (double(size) * double(n - size)), size, bits);
    exp.offer(cutw / double(std::min(size, n - size)), size, bits);
  });
  CutResult p = finish(g, phi, "brute_small_set");
  CutResult e = finish(g, exp, "brute_small_set");
  return SmallSetResult{p.sparsity, p.set, e.expansion, e.set};
}

CutResult brute_balanced(const Graph& g, double c) {
  if (c <= 0.0 || c > 0.5) throw std::invalid_argument("brute_balanced: c must be in (0, 1/2]");
  int n = g.n;
  int lo = int(std::ceil(c * double(n) - 1e-9));
  if (lo < 1) lo = 1;
  if (2 * lo > n) throw std::invalid_argument("brute_balanced: no sets of the requested balance");
  Track best;
  enumerate_cuts(g.weights, [&](std::uint32_t bits, int size, double cutw) {
    if (size < lo || 2 * size > n) return;
    best.offer(cutw / double(size), size, bits);
  });
  return finish(g, best, "brute_balanced");
}

CutResult brute_set_range(const Graph& g, int lo, int hi) {
  int n = g.n;
  if (lo < 1) lo = 1;
  if (hi > n - 1) hi = n - 1;
  if (lo > hi) throw std::invalid_argument("brute_set_range: empty size range");
  Track best;
  enumerate_cuts(g.weights, [&](std::uint32_t bits, int size, double cutw) {
    if (size < lo || size > hi) return;
    best.offer(cutw / double(std::min(size, n - size)), size, bits);
  });
  return finish(g, best, "brute_set_range");
}

std::vector<CutResult> brute_best_per_size(const Graph& g) {
  int n = g.n;
  int half = n / 2;
  std::vector<Track> per(half + 1);
  enumerate_cuts(g.weights, [&](std::uint32_t bits, int size, double cutw) {
    if (2 * size > n) return;
    per[size].offer(double(n) * cutw / (double(size) * double(n - size)), size, bits);
  });
  std::vector<CutResult> out(half + 1);
  for (int k = 1; k <= half; ++k)
    if (per[k].seen) out[k] = cut_quality(g, bits_to_set(per[k].bits, n));
  return out;
}

}  // namespace ssecut
