#pragma once

#include <cstdint>
#include <vector>

#include "ils/dense.hpp"

namespace ils {

// Square integer matrix with overflow-checked updates. Reductions only ever
// build these from elementary column operations and swaps, so |det| = 1 by
// construction; det_bareiss() provides an exact audit for small orders.
class IntMatrix {
 public:
  IntMatrix() = default;
  explicit IntMatrix(std::size_t n) : n_(n), a_(n * n, 0) {}

  static IntMatrix identity(std::size_t n);

  std::size_t order() const { return n_; }

  long long& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  long long operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  // col_dst -= mu * col_src
  void col_axpy(std::size_t dst, std::size_t src, long long mu);
  // row_dst += mu * row_src
  void row_axpy(std::size_t dst, std::size_t src, long long mu);
  void swap_cols(std::size_t i, std::size_t j);
  void swap_rows(std::size_t i, std::size_t j);

  IntVector mul(const IntVector& x) const;             // Z x
  IntVector mul_transpose(const IntVector& x) const;   // Z^T x
  Matrix to_real() const;

  // Exact fraction-free determinant (Bareiss). Throws Error on intermediate
  // overflow; intended for orders <= 12.
  long long det_bareiss() const;

  bool operator==(const IntMatrix& o) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<long long> a_;
};

// Unimodular transformation kept in lockstep with its exact inverse, so
// original-coordinate solutions and backward errors never need a solve.
struct Unimodular {
  IntMatrix Z, Zinv;

  Unimodular() = default;
  explicit Unimodular(std::size_t n)
      : Z(IntMatrix::identity(n)), Zinv(IntMatrix::identity(n)) {}

  // P with columns e_{p[j]}; Zinv = P^T.
  static Unimodular from_permutation(const std::vector<int>& p);

  // Z := Z * (I - mu e_i e_j^T)  =>  Zinv := (I + mu e_i e_j^T) Zinv
  void apply_igt(std::size_t i, std::size_t j, long long mu) {
    Z.col_axpy(j, i, mu);
    Zinv.row_axpy(i, j, mu);
  }

  // Swap columns c1, c2 of Z (rows of Zinv).
  void apply_swap(std::size_t c1, std::size_t c2) {
    Z.swap_cols(c1, c2);
    Zinv.swap_rows(c1, c2);
  }

  // Exact audit: Z * Zinv == I.
  bool is_inverse_pair() const;
};

}  // namespace ils
