#include "ssecut/graph.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

namespace ssecut {

std::vector<double> Graph::degrees() const {
  std::vector<double> d(n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) d[i] += weights(i, j);
  return d;
}

double Graph::total_weight() const {
  double s = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) s += weights(i, j);
  return s;
}

std::vector<std::tuple<int, int, double>> Graph::edges() const {
  std::vector<std::tuple<int, int, double>> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (weights(i, j) > 0.0) e.emplace_back(i, j, weights(i, j));
  return e;
}

bool Graph::connected() const {
  if (n == 0) return true;
  std::vector<char> seen(n, 0);
  std::queue<int> q;
  q.push(0);
  seen[0] = 1;
  int count = 1;
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (int v = 0; v < n; ++v) {
      if (!seen[v] && weights(u, v) > 0.0) {
        seen[v] = 1;
        ++count;
        q.push(v);
      }
    }
  }
  return count == n;
}

int Graph::hop_diameter() const {
  int best = 0;
  for (int s = 0; s < n; ++s) {
    std::vector<int> dist(n, -1);
    std::queue<int> q;
    q.push(s);
    dist[s] = 0;
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int v = 0; v < n; ++v) {
        if (dist[v] < 0 && weights(u, v) > 0.0) {
          dist[v] = dist[u] + 1;
          q.push(v);
        }
      }
    }
    for (int v = 0; v < n; ++v) best = std::max(best, dist[v]);
  }
  return best;
}

Graph make_graph(int n, const std::vector<std::tuple<int, int, double>>& edge_list) {
  if (n < 1) throw std::invalid_argument("make_graph: n must be positive");
  Graph g;
  g.n = n;
  g.weights = Matrix(n, n);
  for (const auto& [u, v, w] : edge_list) {
    if (u < 0 || u >= n || v < 0 || v >= n)
      throw std::invalid_argument("make_graph: vertex index out of range");
    if (u == v) throw std::invalid_argument("make_graph: self-loop");
    if (w < 0.0) throw std::invalid_argument("make_graph: negative weight");
    if (g.weights(u, v) != 0.0) throw std::invalid_argument("make_graph: duplicate edge");
    g.weights(u, v) = w;
    g.weights(v, u) = w;
  }
  return g;
}

Graph normalize_regular(const Graph& g, bool* was_regular) {
  std::vector<double> d = g.degrees();
  for (int i = 0; i < g.n; ++i) {
    if (d[i] <= 0.0)
      throw std::invalid_argument("normalize_regular: isolated vertex " +
                                  std::to_string(i));
  }
  bool regular = true;
  for (int i = 1; i < g.n; ++i)
    if (std::abs(d[i] - d[0]) > 1e-9 * std::max(1.0, d[0])) regular = false;
  if (was_regular) *was_regular = regular;

  Graph out;
  out.n = g.n;
  out.weights = Matrix(g.n, g.n);
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j)
      if (i != j)
        out.weights(i, j) = 0.5 * (g.weights(i, j) / d[i] + g.weights(i, j) / d[j]);
  return out;
}

double cut_weight(const Graph& g, const std::vector<int>& S) {
  std::vector<char> in(g.n, 0);
  for (int v : S) {
    if (v < 0 || v >= g.n) throw std::invalid_argument("cut_weight: vertex out of range");
    in[v] = 1;
  }
  double s = 0.0;
  for (int u = 0; u < g.n; ++u) {
    if (!in[u]) continue;
    for (int v = 0; v < g.n; ++v)
      if (!in[v]) s += g.weights(u, v);
  }
  return s;
}

CutResult cut_quality(const Graph& g, const std::vector<int>& S) {
  int k = static_cast<int>(S.size());
  if (k <= 0 || k >= g.n)
    throw std::invalid_argument("cut_quality: set must be a proper nonempty subset");
  CutResult r;
  r.set = S;
  std::sort(r.set.begin(), r.set.end());
  for (int i = 1; i < k; ++i)
    if (r.set[i] == r.set[i - 1])
      throw std::invalid_argument("cut_quality: duplicate vertex in set");
  r.cut_weight = cut_weight(g, r.set);
  r.sparsity = static_cast<double>(g.n) * r.cut_weight /
               (static_cast<double>(k) * (g.n - k));
  r.expansion = r.cut_weight / std::min(k, g.n - k);
  return r;
}

Matrix laplacian(const Graph& g) {
  Matrix L(g.n, g.n);
  std::vector<double> d = g.degrees();
  for (int i = 0; i < g.n; ++i) {
    L(i, i) = d[i];
    for (int j = 0; j < g.n; ++j)
      if (i != j) L(i, j) = -g.weights(i, j);
  }
  return L;
}

Matrix normalized_laplacian(const Graph& g) {
  std::vector<double> d = g.degrees();
  for (int i = 0; i < g.n; ++i)
    if (d[i] <= 0.0)
      throw std::invalid_argument("normalized_laplacian: zero degree at vertex " +
                                  std::to_string(i));
  Matrix L = laplacian(g);
  Matrix out(g.n, g.n);
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j)
      out(i, j) = L(i, j) / std::sqrt(d[i] * d[j]);
  return out;
}

std::vector<int> complement_set(int n, const std::vector<int>& S) {
  std::vector<char> in(n, 0);
  for (int v : S) in[v] = 1;
  std::vector<int> c;
  for (int v = 0; v < n; ++v)
    if (!in[v]) c.push_back(v);
  return c;
}

}  // namespace ssecut
