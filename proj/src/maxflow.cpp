#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

#include "ssecut/lp.hpp"

namespace ssecut {

namespace {

constexpr double kResidualTol = 1e-10;

struct Dinic {
  struct Edge {
    int to;
    double cap;
    int rev;
    bool original;  // maps back to an input arc
    int arc_index;
  };
  int n;
  std::vector<std::vector<Edge>> adj;
  std::vector<int> level, iter;

  explicit Dinic(int n_) : n(n_), adj(n_), level(n_), iter(n_) {}

  void add(int u, int v, double cap, int arc_index) {
    adj[u].push_back({v, cap, static_cast<int>(adj[v].size()), true, arc_index});
    adj[v].push_back({u, 0.0, static_cast<int>(adj[u].size()) - 1, false, -1});
  }

  bool bfs(int s, int t) {
    std::fill(level.begin(), level.end(), -1);
    std::queue<int> q;
    level[s] = 0;
    q.push(s);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (const Edge& e : adj[u]) {
        if (e.cap > kResidualTol && level[e.to] < 0) {
          level[e.to] = level[u] + 1;
          q.push(e.to);
        }
      }
    }
    return level[t] >= 0;
  }

  double dfs(int u, int t, double f) {
    if (u == t) return f;
    for (int& i = iter[u]; i < static_cast<int>(adj[u].size()); ++i) {
      Edge& e = adj[u][i];
      if (e.cap > kResidualTol && level[e.to] == level[u] + 1) {
        double d = dfs(e.to, t, std::min(f, e.cap));
        if (d > kResidualTol) {
          e.cap -= d;
          adj[e.to][e.rev].cap += d;
          return d;
        }
      }
    }
    return 0.0;
  }
};

}  // namespace

MaxFlowResult max_flow(const FlowNetwork& net) {
  if (net.source == net.sink) throw std::invalid_argument("max_flow: source == sink");
  for (const auto& a : net.arcs)
    if (a.cap < 0.0) throw std::invalid_argument("max_flow: negative capacity");

  Dinic d(net.n);
  for (int i = 0; i < static_cast<int>(net.arcs.size()); ++i)
    d.add(net.arcs[i].from, net.arcs[i].to, net.arcs[i].cap, i);

  double value = 0.0;
  while (d.bfs(net.source, net.sink)) {
    std::fill(d.iter.begin(), d.iter.end(), 0);
    while (true) {
      double f = d.dfs(net.source, net.sink,
                       std::numeric_limits<double>::infinity());
      if (f <= kResidualTol) break;
      value += f;
    }
  }

  MaxFlowResult out;
  out.value = value;
  out.flow.assign(net.arcs.size(), 0.0);
  for (int u = 0; u < d.n; ++u) {
    for (const auto& e : d.adj[u]) {
      if (e.original && e.arc_index >= 0)
        out.flow[e.arc_index] = net.arcs[e.arc_index].cap - e.cap;
    }
  }
  // Min cut: residual-reachable set from the source.
  std::vector<char> seen(net.n, 0);
  std::queue<int> q;
  q.push(net.source);
  seen[net.source] = 1;
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (const auto& e : d.adj[u]) {
      if (e.cap > kResidualTol && !seen[e.to]) {
        seen[e.to] = 1;
        q.push(e.to);
      }
    }
  }
  for (int v = 0; v < net.n; ++v)
    if (seen[v]) out.source_side.push_back(v);
  return out;
}

std::vector<std::pair<std::vector<int>, double>> decompose_paths(
    const FlowNetwork& net, const std::vector<double>& flow) {
  // Residual amounts per arc; walk positive arcs from the source, cancelling
  // any cycle encountered, until the remainder at the source is exhausted.
  std::vector<double> rem = flow;
  std::vector<std::vector<int>> out_arcs(net.n);
  for (int i = 0; i < static_cast<int>(net.arcs.size()); ++i)
    out_arcs[net.arcs[i].from].push_back(i);

  std::vector<std::pair<std::vector<int>, double>> paths;
  auto next_arc = [&](int u) {
    for (int idx : out_arcs[u])
      if (rem[idx] > 1e-9) return idx;
    return -1;
  };

  while (true) {
    if (next_arc(net.source) < 0) break;
    std::vector<int> arc_seq;
    std::vector<int> vert_seq{net.source};
    std::vector<int> pos_in_path(net.n, -1);
    pos_in_path[net.source] = 0;
    int u = net.source;
    bool cancelled = false;
    while (u != net.sink) {
      int idx = next_arc(u);
      if (idx < 0)
        throw std::runtime_error("decompose_paths: flow not conservative");
      int v = net.arcs[idx].to;
      if (pos_in_path[v] >= 0) {
        // Cycle: cancel it and restart the walk.
        int start = pos_in_path[v];
        double c = rem[idx];
        for (int k = start; k < static_cast<int>(arc_seq.size()); ++k)
          c = std::min(c, rem[arc_seq[k]]);
        rem[idx] -= c;
        for (int k = start; k < static_cast<int>(arc_seq.size()); ++k)
          rem[arc_seq[k]] -= c;
        cancelled = true;
        break;
      }
      arc_seq.push_back(idx);
      vert_seq.push_back(v);
      pos_in_path[v] = static_cast<int>(vert_seq.size()) - 1;
      u = v;
    }
    if (cancelled) continue;
    double amt = std::numeric_limits<double>::infinity();
    for (int idx : arc_seq) amt = std::min(amt, rem[idx]);
    for (int idx : arc_seq) rem[idx] -= amt;
    paths.emplace_back(vert_seq, amt);
  }
  return paths;
}

}  // namespace ssecut
