#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace ils {

using Vector = std::vector<double>;
using IntVector = std::vector<long long>;

// Dense real matrix, row-major contiguous storage.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), a_(rows * cols, fill) {}

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  const std::vector<double>& data() const { return a_; }
  std::vector<double>& data() { return a_; }

  void swap_rows(std::size_t i, std::size_t j);
  void swap_cols(std::size_t i, std::size_t j);

  bool operator==(const Matrix& o) const = default;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<double> a_;
};

Matrix transpose(const Matrix& A);
Matrix matmul(const Matrix& A, const Matrix& B);
Vector matvec(const Matrix& A, const Vector& x);
Matrix symmetrize(const Matrix& A);

double frobenius_norm(const Matrix& A);
double norm2(const Vector& v);
double dot(const Vector& a, const Vector& b);

// Throws Error when any entry is NaN or infinite.
void check_finite(const Matrix& A, const std::string& what);
void check_finite(const Vector& v, const std::string& what);

bool is_upper_triangular(const Matrix& R, double tol = 0.0);
bool has_positive_diagonal(const Matrix& R);
bool is_unit_lower_triangular(const Matrix& L, double tol = 0.0);

// Text format shared by every tool: first line "<rows> <cols>", then one
// line per row with whitespace-separated entries printed to 17 significant
// digits. Vectors are stored with cols = 1.
void write_matrix(std::ostream& os, const Matrix& A);
Matrix read_matrix(std::istream& is);
void write_vector(std::ostream& os, const Vector& v);
Vector read_vector(std::istream& is);

void save_matrix(const std::string& path, const Matrix& A);
Matrix load_matrix(const std::string& path);
void save_vector(const std::string& path, const Vector& v);
Vector load_vector(const std::string& path);

}  // namespace ils
