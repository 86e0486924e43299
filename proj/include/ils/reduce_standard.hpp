#pragma once

#include "ils/dense.hpp"
#include "ils/unimodular.hpp"

namespace ils {

// Standard-form reduction state: min ||ybar - R z||^2 with x = Z z.
struct QrzReduction {
  Matrix R;       // upper triangular, positive diagonal
  Vector ybar;    // Q1^T y
  Unimodular uz;  // Z and its exact inverse
  long long igt_count = 0;   // integer Gauss transformations with mu != 0
  long long swap_count = 0;  // column permutations
  double resid2 = 0.0;       // ||Q2^T y||^2, constant part of the objective
};

// Integer Gauss transformation on column k against column i (i < k):
// mu = nint(R(i,k)/R(i,i)); R(0..i, k) -= mu * R(0..i, i). No-op when mu = 0.
void igt_upper(QrzReduction& s, int i, int k);

// Swap columns k-1 and k (0-based), restore the triangle with a Givens
// rotation applied to rows k-1, k of R and to ybar, and re-normalize the
// diagonal sign. Requires 1 <= k < n.
void permute_adjacent(QrzReduction& s, int k);

// LLL reduction (delta = 1): size-reduce every visited column, swap whenever
// r_{k-1,k-1}^2 > r_{k-1,k}^2 + r_kk^2.
QrzReduction lll_reduce(const Matrix& A, const Vector& y);

// Partial LLL: sorted QR start; the swap test uses the hypothetically reduced
// superdiagonal value, and IGTs are applied to a column only when it is about
// to be swapped. The result satisfies the diagonal ordering criterion but is
// generally not size-reduced.
QrzReduction plll_reduce(const Matrix& A, const Vector& y);

// Sorted QR as a reduction (Z is the column permutation).
QrzReduction sorted_qr(const Matrix& A, const Vector& y);

}  // namespace ils
