#include "ils/dense.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "ils/errors.hpp"

namespace ils {

Matrix Matrix::identity(std::size_t n) {
  Matrix I(n, n);
  for (std::size_t i = 0; i < n; ++i) I(i, i) = 1.0;
  return I;
}

void Matrix::swap_rows(std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t k = 0; k < cols_; ++k) std::swap((*this)(i, k), (*this)(j, k));
}

void Matrix::swap_cols(std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t k = 0; k < rows_; ++k) std::swap((*this)(k, i), (*this)(k, j));
}

Matrix transpose(const Matrix& A) {
  Matrix T(A.cols(), A.rows());
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < A.cols(); ++j) T(j, i) = A(i, j);
  return T;
}

Matrix matmul(const Matrix& A, const Matrix& B) {
  if (A.cols() != B.rows()) throw Error("matmul: dimension mismatch");
  Matrix C(A.rows(), B.cols(), 0.0);
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t k = 0; k < A.cols(); ++k) {
      double a = A(i, k);
      if (a == 0.0) continue;
      for (std::size_t j = 0; j < B.cols(); ++j) C(i, j) += a * B(k, j);
    }
  return C;
}

Vector matvec(const Matrix& A, const Vector& x) {
  if (A.cols() != x.size()) throw Error("matvec: dimension mismatch");
  Vector y(A.rows(), 0.0);
  for (std::size_t i = 0; i < A.rows(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < A.cols(); ++j) s += A(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

Matrix symmetrize(const Matrix& A) {
  Matrix S(A.rows(), A.cols());
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < A.cols(); ++j) S(i, j) = 0.5 * (A(i, j) + A(j, i));
  return S;
}

double frobenius_norm(const Matrix& A) {
  double s = 0.0;
  for (double v : A.data()) s += v * v;
  return std::sqrt(s);
}

double norm2(const Vector& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double dot(const Vector& a, const Vector& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void check_finite(const Matrix& A, const std::string& what) {
  for (double v : A.data())
    if (!std::isfinite(v)) throw Error(what + ": non-finite entry");
}

void check_finite(const Vector& v, const std::string& what) {
  for (double x : v)
    if (!std::isfinite(x)) throw Error(what + ": non-finite entry");
}

bool is_upper_triangular(const Matrix& R, double tol) {
  for (std::size_t i = 0; i < R.rows(); ++i)
    for (std::size_t j = 0; j < std::min(i, R.cols()); ++j)
      if (std::abs(R(i, j)) > tol) return false;
  return true;
}

bool has_positive_diagonal(const Matrix& R) {
  for (std::size_t i = 0; i < std::min(R.rows(), R.cols()); ++i)
    if (!(R(i, i) > 0.0)) return false;
  return true;
}

bool is_unit_lower_triangular(const Matrix& L, double tol) {
  if (L.rows() != L.cols()) return false;
  for (std::size_t i = 0; i < L.rows(); ++i) {
    if (L(i, i) != 1.0) return false;
    for (std::size_t j = i + 1; j < L.cols(); ++j)
      if (std::abs(L(i, j)) > tol) return false;
  }
  return true;
}

namespace {

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void write_matrix(std::ostream& os, const Matrix& A) {
  os << A.rows() << ' ' << A.cols() << '\n';
  for (std::size_t i = 0; i < A.rows(); ++i) {
    for (std::size_t j = 0; j < A.cols(); ++j) {
      if (j) os << ' ';
      os << fmt17(A(i, j));
    }
    os << '\n';
  }
}

Matrix read_matrix(std::istream& is) {
  std::size_t r = 0, c = 0;
  if (!(is >> r >> c)) throw Error("read_matrix: bad header");
  Matrix A(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (!(is >> A(i, j))) throw Error("read_matrix: truncated data");
  return A;
}

void write_vector(std::ostream& os, const Vector& v) {
  Matrix col(v.size(), 1);
  for (std::size_t i = 0; i < v.size(); ++i) col(i, 0) = v[i];
  write_matrix(os, col);
}

Vector read_vector(std::istream& is) {
  Matrix m = read_matrix(is);
  if (m.cols() != 1) throw Error("read_vector: expected a single column");
  Vector v(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) v[i] = m(i, 0);
  return v;
}

void save_matrix(const std::string& path, const Matrix& A) {
  std::ofstream os(path);
  if (!os) throw Error("cannot open " + path);
  write_matrix(os, A);
}

Matrix load_matrix(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error("cannot open " + path);
  return read_matrix(is);
}

void save_vector(const std::string& path, const Vector& v) {
  std::ofstream os(path);
  if (!os) throw Error("cannot open " + path);
  write_vector(os, v);
}

Vector load_vector(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error("cannot open " + path);
  return read_vector(is);
}

}  // namespace ils
