#pragma once

#include <vector>

namespace ssecut {

/// Dense row-major matrix. Desk scale (n up to a few hundred); no sparse form.
struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> a;

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0.0) {}

  double& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  double operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }

  static Matrix identity(int n);

  std::vector<double> col(int j) const;
  void set_col(int j, const std::vector<double>& v);
};

Matrix transpose(const Matrix& m);
Matrix matmul(const Matrix& x, const Matrix& y);
double frobenius_norm(const Matrix& m);
double trace(const Matrix& m);
/// Largest |a_ij - a_ji|.
double asymmetry(const Matrix& m);

/// Eigendecomposition of a symmetric matrix; values ascending, vectors in
/// matching columns.
struct EigenDecomposition {
  std::vector<double> values;
  Matrix vectors;
};

/// Cyclic Jacobi. Off-diagonal threshold 1e-12 * ||A||_F, at most 100 sweeps.
/// Throws std::invalid_argument when A is asymmetric beyond 1e-10 relative.
EigenDecomposition eigh(const Matrix& A);

/// Residual of X's columns against span{X[:,s] : s in S}: returns X - P_S X.
/// Modified Gram-Schmidt; columns with residual norm below 1e-10 relative to
/// the largest selected column norm are treated as dependent and skipped.
Matrix project_residual(const Matrix& X, const std::vector<int>& S);

/// Factor a PSD matrix as X with X^T X = A; one column of X per column of A,
/// row count = number of eigenvalues above tol relative to the largest.
Matrix gram_factor(const Matrix& A, double tol = 1e-12);

/// Sum of the k smallest eigenvalues.
double sum_smallest(const Matrix& A, int k);
/// Trace minus the r largest eigenvalues (= sum of sigma_i for i > r, sigma
/// descending). r may be 0 (full trace) up to n (zero).
double sum_tail_descending(const Matrix& A, int r);

}  // namespace ssecut
