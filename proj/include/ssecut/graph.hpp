#pragma once

#include <string>
#include <tuple>
#include <vector>

#include "ssecut/linalg.hpp"

namespace ssecut {

/// Undirected weighted graph, dense weight matrix, zero diagonal.
struct Graph {
  int n = 0;
  Matrix weights;  // symmetric, weights(i,i) == 0

  double weight(int u, int v) const { return weights(u, v); }
  std::vector<double> degrees() const;
  /// Sum of all edge weights (each edge once).
  double total_weight() const;
  /// Edge list (u < v, w > 0) in lexicographic order.
  std::vector<std::tuple<int, int, double>> edges() const;
  bool connected() const;
  /// Unweighted hop diameter of the largest component.
  int hop_diameter() const;
};

/// Sparsity, expansion, and cut weight of one side of a cut.
struct CutResult {
  std::vector<int> set;  // sorted
  double cut_weight = 0.0;
  double sparsity = 0.0;
  double expansion = 0.0;
};

Graph make_graph(int n, const std::vector<std::tuple<int, int, double>>& edge_list);

/// Scale every row by 1/d_i and symmetrize by averaging. Result has degree 1
/// everywhere iff input was regular; `was_regular` records that. Throws on an
/// isolated vertex.
Graph normalize_regular(const Graph& g, bool* was_regular = nullptr);

double cut_weight(const Graph& g, const std::vector<int>& S);
/// Requires 0 < |S| < n.
CutResult cut_quality(const Graph& g, const std::vector<int>& S);

Matrix laplacian(const Graph& g);
Matrix normalized_laplacian(const Graph& g);

/// Complement of S in {0..n-1}.
std::vector<int> complement_set(int n, const std::vector<int>& S);

}  // namespace ssecut
