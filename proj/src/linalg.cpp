#include "ssecut/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ssecut {

Matrix Matrix::identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

std::vector<double> Matrix::col(int j) const {
  std::vector<double> v(rows);
  for (int i = 0; i < rows; ++i) v[i] = (*this)(i, j);
  return v;
}

void Matrix::set_col(int j, const std::vector<double>& v) {
  for (int i = 0; i < rows; ++i) (*this)(i, j) = v[i];
}

Matrix transpose(const Matrix& m) {
  Matrix t(m.cols, m.rows);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) t(j, i) = m(i, j);
  return t;
}

Matrix matmul(const Matrix& x, const Matrix& y) {
  if (x.cols != y.rows) throw std::invalid_argument("matmul: dimension mismatch");
  Matrix z(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i) {
    for (int k = 0; k < x.cols; ++k) {
      double v = x(i, k);
      if (v == 0.0) continue;
      for (int j = 0; j < y.cols; ++j) z(i, j) += v * y(k, j);
    }
  }
  return z;
}

double frobenius_norm(const Matrix& m) {
  double s = 0.0;
  for (double v : m.a) s += v * v;
  return std::sqrt(s);
}

double trace(const Matrix& m) {
  double s = 0.0;
  int n = std::min(m.rows, m.cols);
  for (int i = 0; i < n; ++i) s += m(i, i);
  return s;
}

double asymmetry(const Matrix& m) {
  double worst = 0.0;
  for (int i = 0; i < m.rows; ++i)
    for (int j = i + 1; j < m.cols; ++j)
      worst = std::max(worst, std::abs(m(i, j) - m(j, i)));
  return worst;
}

EigenDecomposition eigh(const Matrix& A) {
  if (A.rows != A.cols) throw std::invalid_argument("eigh: matrix not square");
  int n = A.rows;
  double scale = frobenius_norm(A);
  if (asymmetry(A) > 1e-10 * std::max(1.0, scale))
    throw std::invalid_argument("eigh: input not symmetric");

  // Work on a symmetrized copy so the rotations see an exactly symmetric matrix.
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = 0.5 * (A(i, j) + A(j, i));
  Matrix v = Matrix::identity(n);

  double threshold = 1e-12 * std::max(scale, 1e-300);
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += m(p, q) * m(p, q);
    if (std::sqrt(2.0 * off) <= threshold) break;

    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        double apq = m(p, q);
        if (std::abs(apq) <= threshold / (n * n)) continue;
        double app = m(p, p), aqq = m(q, q);
        double theta = 0.5 * (aqq - app) / apq;
        double t = (theta >= 0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;
        double tau = s / (1.0 + c);

        m(p, p) = app - t * apq;
        m(q, q) = aqq + t * apq;
        m(p, q) = 0.0;
        m(q, p) = 0.0;
        for (int i = 0; i < n; ++i) {
          if (i == p || i == q) continue;
          double aip = m(i, p), aiq = m(i, q);
          m(i, p) = aip - s * (aiq + tau * aip);
          m(p, i) = m(i, p);
          m(i, q) = aiq + s * (aip - tau * aiq);
          m(q, i) = m(i, q);
        }
        for (int i = 0; i < n; ++i) {
          double vip = v(i, p), viq = v(i, q);
          v(i, p) = vip - s * (viq + tau * vip);
          v(i, q) = viq + s * (vip - tau * viq);
        }
      }
    }
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> diag(n);
  for (int i = 0; i < n; ++i) diag[i] = m(i, i);
  std::sort(order.begin(), order.end(),
            [&](int x, int y) { return diag[x] < diag[y]; });

  EigenDecomposition out;
  out.values.resize(n);
  out.vectors = Matrix(n, n);
  for (int j = 0; j < n; ++j) {
    out.values[j] = diag[order[j]];
    for (int i = 0; i < n; ++i) out.vectors(i, j) = v(i, order[j]);
  }
  return out;
}

Matrix project_residual(const Matrix& X, const std::vector<int>& S) {
  if (S.empty()) throw std::invalid_argument("project_residual: empty column set");
  int dim = X.rows;

  // Orthonormal basis of the selected columns, rank-revealing MGS.
  double max_norm = 0.0;
  for (int s : S) {
    if (s < 0 || s >= X.cols)
      throw std::invalid_argument("project_residual: column index out of range");
    double nrm = 0.0;
    for (int i = 0; i < dim; ++i) nrm += X(i, s) * X(i, s);
    max_norm = std::max(max_norm, std::sqrt(nrm));
  }
  double tol = 1e-10 * max_norm;

  std::vector<std::vector<double>> basis;
  for (int s : S) {
    std::vector<double> w = X.col(s);
    for (const auto& q : basis) {
      double dot = 0.0;
      for (int i = 0; i < dim; ++i) dot += q[i] * w[i];
      for (int i = 0; i < dim; ++i) w[i] -= dot * q[i];
    }
    double nrm = 0.0;
    for (int i = 0; i < dim; ++i) nrm += w[i] * w[i];
    nrm = std::sqrt(nrm);
    if (nrm <= tol) continue;  // dependent column
    for (int i = 0; i < dim; ++i) w[i] /= nrm;
    basis.push_back(std::move(w));
  }

  Matrix R = X;
  for (const auto& q : basis) {
    for (int j = 0; j < X.cols; ++j) {
      double dot = 0.0;
      for (int i = 0; i < dim; ++i) dot += q[i] * R(i, j);
      for (int i = 0; i < dim; ++i) R(i, j) -= dot * q[i];
    }
  }
  return R;
}

Matrix gram_factor(const Matrix& A, double tol) {
  EigenDecomposition d = eigh(A);
  int n = A.rows;
  double top = std::max(0.0, d.values[n - 1]);
  std::vector<int> keep;
  for (int k = 0; k < n; ++k)
    if (d.values[k] > tol * std::max(top, 1.0)) keep.push_back(k);
  if (keep.empty()) keep.push_back(n - 1);
  Matrix x(int(keep.size()), n);
  for (int r = 0; r < int(keep.size()); ++r) {
    double s = std::sqrt(std::max(0.0, d.values[keep[r]]));
    for (int u = 0; u < n; ++u) x(r, u) = s * d.vectors(u, keep[r]);
  }
  return x;
}

double sum_smallest(const Matrix& A, int k) {
  if (k < 1 || k > A.rows) throw std::invalid_argument("sum_smallest: k out of range");
  EigenDecomposition d = eigh(A);
  double s = 0.0;
  for (int i = 0; i < k; ++i) s += d.values[i];
  return s;
}

double sum_tail_descending(const Matrix& A, int r) {
  if (r < 0 || r > A.rows)
    throw std::invalid_argument("sum_tail_descending: r out of range");
  EigenDecomposition d = eigh(A);
  double s = 0.0;
  int n = A.rows;
  // sigma descending = values ascending reversed; tail skips the r largest.
  for (int i = 0; i < n - r; ++i) s += d.values[i];
  return s;
}

}  // namespace ssecut
