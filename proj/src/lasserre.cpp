#include "ssecut/lasserre.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

namespace ssecut {

namespace {

constexpr double kTol = 1e-7;

// Size-s subsets of {0..n-1} in lexicographic order.
void append_combinations(int n, int s, std::vector<std::vector<int>>& out) {
  std::vector<int> c(s);
  std::iota(c.begin(), c.end(), 0);
  while (true) {
    out.push_back(c);
    int i = s - 1;
    while (i >= 0 && c[i] == n - s + i) --i;
    if (i < 0) return;
    ++c[i];
    for (int j = i + 1; j < s; ++j) c[j] = c[j - 1] + 1;
  }
}

}  // namespace

std::vector<LasserreKey> lasserre_keys(int n, int r) {
  if (n < 1 || r < 0) throw std::invalid_argument("lasserre_keys: need n >= 1, r >= 0");
  std::vector<LasserreKey> keys;
  int cap = std::min(n, r + 1);
  for (int s = 0; s <= cap; ++s) {
    std::vector<std::vector<int>> sets;
    if (s == 0)
      sets.push_back({});
    else
      append_combinations(n, s, sets);
    for (const auto& set : sets)
      for (std::uint32_t f = 0; f < (1u << s); ++f) keys.push_back({set, f});
  }
  return keys;
}

LasserreSolution lasserre_from_cut(int n, int r, const std::vector<int>& cut) {
  LasserreSolution sol;
  sol.n = n;
  sol.r = r;
  sol.keys = lasserre_keys(n, r);
  std::vector<char> in(n, 0);
  for (int v : cut) {
    if (v < 0 || v >= n) throw std::invalid_argument("lasserre_from_cut: vertex out of range");
    in[v] = 1;
  }
  int m = int(sol.keys.size());
  std::vector<double> val(m, 1.0);
  for (int i = 0; i < m; ++i)
    for (int p = 0; p < int(sol.keys[i].set.size()); ++p)
      if (((sol.keys[i].labels >> p) & 1u) != std::uint32_t(in[sol.keys[i].set[p]])) val[i] = 0.0;
  sol.gram = Matrix(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) sol.gram(i, j) = val[i] * val[j];
  return sol;
}

LasserreSolution lasserre_mix(const std::vector<LasserreSolution>& parts,
                              const std::vector<double>& weights) {
  if (parts.empty() || parts.size() != weights.size())
    throw std::invalid_argument("lasserre_mix: need matching nonempty parts and weights");
  LasserreSolution out = parts[0];
  int m = int(out.keys.size());
  out.gram = Matrix(m, m);
  for (std::size_t p = 0; p < parts.size(); ++p) {
    if (parts[p].n != out.n || parts[p].r != out.r || int(parts[p].keys.size()) != m)
      throw std::invalid_argument("lasserre_mix: mismatched tables");
    if (weights[p] < 0.0) throw std::invalid_argument("lasserre_mix: negative weight");
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) out.gram(i, j) += weights[p] * parts[p].gram(i, j);
  }
  return out;
}

LasserreReport validate_lasserre(const LasserreSolution& sol) {
  std::vector<LasserreKey> want = lasserre_keys(sol.n, sol.r);
  if (sol.keys.size() != want.size() || sol.gram.rows != int(want.size()) ||
      sol.gram.cols != int(want.size()))
    throw std::runtime_error("validate_lasserre: missing entries (table size mismatch)");
  for (std::size_t i = 0; i < want.size(); ++i)
    if (sol.keys[i].set != want[i].set || sol.keys[i].labels != want[i].labels)
      throw std::runtime_error("validate_lasserre: missing entries (key " + std::to_string(i) +
                               " not in canonical order)");

  std::map<std::pair<std::vector<int>, std::uint32_t>, int> index;
  for (std::size_t i = 0; i < want.size(); ++i)
    index[{want[i].set, want[i].labels}] = int(i);
  int m = int(want.size());
  const Matrix& G = sol.gram;
  LasserreReport rep;

  rep.empty_norm_gap = std::abs(G(0, 0) - 1.0);

  // Conflict products and union-consistency classes in one pass over pairs.
  std::map<std::pair<std::vector<int>, std::uint32_t>, std::pair<double, double>> classes;
  for (int a = 0; a < m; ++a)
    for (int b = a; b < m; ++b) {
      const LasserreKey& ka = want[a];
      const LasserreKey& kb = want[b];
      bool conflict = false;
      std::vector<int> un;
      std::uint32_t ul = 0;
      std::size_t pa = 0, pb = 0;
      while (pa < ka.set.size() || pb < kb.set.size()) {
        int va = pa < ka.set.size() ? ka.set[pa] : INT32_MAX;
        int vb = pb < kb.set.size() ? kb.set[pb] : INT32_MAX;
        int v = std::min(va, vb);
        std::uint32_t bit;
        if (va == vb) {
          std::uint32_t la = (ka.labels >> pa) & 1u, lb = (kb.labels >> pb) & 1u;
          if (la != lb) conflict = true;
          bit = la;
          ++pa;
          ++pb;
        } else if (va < vb) {
          bit = (ka.labels >> pa) & 1u;
          ++pa;
        } else {
          bit = (kb.labels >> pb) & 1u;
          ++pb;
        }
        if (bit) ul |= 1u << un.size();
        un.push_back(v);
      }
      if (conflict) {
        rep.conflict = std::max(rep.conflict, std::abs(G(a, b)));
        continue;
      }
      auto [it, fresh] = classes.try_emplace({std::move(un), ul}, G(a, b), G(a, b));
      if (!fresh) {
        it->second.first = std::min(it->second.first, G(a, b));
        it->second.second = std::max(it->second.second, G(a, b));
      }
    }
  for (const auto& [key, mm] : classes)
    rep.consistency = std::max(rep.consistency, mm.second - mm.first);

  for (int u = 0; u < sol.n; ++u) {
    int i0 = index.at({{u}, 0u});
    int i1 = index.at({{u}, 1u});
    rep.label_sum = std::max(rep.label_sum, std::abs(G(i0, i0) + G(i1, i1) - G(0, 0)));
  }

  // Derivation: sum_g x_S(f.g) = x_{S\u}(f), checked as a squared norm.
  for (int i = 0; i < m; ++i) {
    const LasserreKey& k = want[i];
    int s = int(k.set.size());
    if (s == 0) continue;
    for (int p = 0; p < s; ++p) {
      if ((k.labels >> p) & 1u) continue;  // handle each (S, u, f) once, from g(u)=0
      int a = i;
      int b = index.at({k.set, k.labels | (1u << p)});
      std::vector<int> rest = k.set;
      rest.erase(rest.begin() + p);
      std::uint32_t rl = (k.labels & ((1u << p) - 1u)) | ((k.labels >> (p + 1)) << p);
      int c = index.at({rest, rl});
      double sq = G(a, a) + G(b, b) + G(c, c) + 2.0 * G(a, b) - 2.0 * G(a, c) - 2.0 * G(b, c);
      rep.derivation = std::max(rep.derivation, std::sqrt(std::max(0.0, sq)));
    }
  }

  EigenDecomposition ed = eigh(G);
  rep.psd_gap = std::max(0.0, -ed.values[0]);

  if (rep.empty_norm_gap > kTol) rep.failures.push_back("empty-set norm differs from 1");
  if (rep.conflict > kTol) rep.failures.push_back("nonzero inner product across a label conflict");
  if (rep.consistency > kTol) rep.failures.push_back("set-union consistency violated");
  if (rep.label_sum > kTol) rep.failures.push_back("per-vertex label sums differ from 1");
  if (rep.derivation > kTol) rep.failures.push_back("label-sum derivation identity violated");
  if (rep.psd_gap > kTol) rep.failures.push_back("Gram not PSD");
  rep.pass = rep.failures.empty();

  if (rep.pass && sol.n > 0) {
    Matrix s1(sol.n, sol.n);
    for (int u = 0; u < sol.n; ++u)
      for (int v = 0; v < sol.n; ++v)
        s1(u, v) = G(index.at({{u}, 1u}), index.at({{v}, 1u}));
    rep.singletons = gram_factor(s1);
  }
  return rep;
}

nlohmann::json lasserre_to_json(const LasserreSolution& sol) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& k : sol.keys) {
    nlohmann::json labels = nlohmann::json::array();
    for (std::size_t p = 0; p < k.set.size(); ++p) labels.push_back(int((k.labels >> p) & 1u));
    entries.push_back({{"sets", {k.set, labels}}});
  }
  nlohmann::json gram = nlohmann::json::array();
  for (int i = 0; i < sol.gram.rows; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < sol.gram.cols; ++j) row.push_back(sol.gram(i, j));
    gram.push_back(row);
  }
  return {{"r", sol.r}, {"entries", entries}, {"gram", gram}};
}

LasserreSolution lasserre_from_json(const nlohmann::json& j) {
  LasserreSolution sol;
  sol.r = j.at("r").get<int>();
  int maxv = -1;
  for (const auto& e : j.at("entries")) {
    const auto& pair = e.at("sets");
    if (!pair.is_array() || pair.size() != 2)
      throw std::runtime_error("lasserre json: entry \"sets\" must be [verts, labels]");
    LasserreKey k;
    k.set = pair[0].get<std::vector<int>>();
    auto labels = pair[1].get<std::vector<int>>();
    if (labels.size() != k.set.size())
      throw std::runtime_error("lasserre json: labels length mismatch");
    for (std::size_t p = 0; p < labels.size(); ++p)
      if (labels[p]) k.labels |= 1u << p;
    for (int v : k.set) maxv = std::max(maxv, v);
    sol.keys.push_back(std::move(k));
  }
  sol.n = maxv + 1;
  const auto& gram = j.at("gram");
  int m = int(sol.keys.size());
  if (int(gram.size()) != m) throw std::runtime_error("lasserre json: gram size mismatch");
  sol.gram = Matrix(m, m);
  for (int i = 0; i < m; ++i) {
    if (int(gram[i].size()) != m) throw std::runtime_error("lasserre json: gram row length mismatch");
    for (int jj = 0; jj < m; ++jj) sol.gram(i, jj) = gram[i][jj].get<double>();
  }
  return sol;
}

}  // namespace ssecut
