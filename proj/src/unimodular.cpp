#include "ils/unimodular.hpp"

#include <algorithm>
#include <cstdlib>

#include "ils/errors.hpp"

namespace ils {

namespace {

constexpr long long kLimit = (1LL << 62);

long long checked(__int128 v, const char* what) {
  if (v > kLimit || v < -kLimit) throw Error(std::string(what) + ": integer overflow");
  return static_cast<long long>(v);
}

}  // namespace

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix I(n);
  for (std::size_t i = 0; i < n; ++i) I(i, i) = 1;
  return I;
}

void IntMatrix::col_axpy(std::size_t dst, std::size_t src, long long mu) {
  for (std::size_t i = 0; i < n_; ++i) {
    __int128 v = static_cast<__int128>((*this)(i, dst)) -
                 static_cast<__int128>(mu) * (*this)(i, src);
    (*this)(i, dst) = checked(v, "col_axpy");
  }
}

void IntMatrix::row_axpy(std::size_t dst, std::size_t src, long long mu) {
  for (std::size_t j = 0; j < n_; ++j) {
    __int128 v = static_cast<__int128>((*this)(dst, j)) +
                 static_cast<__int128>(mu) * (*this)(src, j);
    (*this)(dst, j) = checked(v, "row_axpy");
  }
}

void IntMatrix::swap_cols(std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t k = 0; k < n_; ++k) std::swap((*this)(k, i), (*this)(k, j));
}

void IntMatrix::swap_rows(std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t k = 0; k < n_; ++k) std::swap((*this)(i, k), (*this)(j, k));
}

IntVector IntMatrix::mul(const IntVector& x) const {
  IntVector y(n_, 0);
  for (std::size_t i = 0; i < n_; ++i) {
    __int128 s = 0;
    for (std::size_t j = 0; j < n_; ++j)
      s += static_cast<__int128>((*this)(i, j)) * x[j];
    y[i] = checked(s, "mul");
  }
  return y;
}

IntVector IntMatrix::mul_transpose(const IntVector& x) const {
  IntVector y(n_, 0);
  for (std::size_t j = 0; j < n_; ++j) {
    __int128 s = 0;
    for (std::size_t i = 0; i < n_; ++i)
      s += static_cast<__int128>((*this)(i, j)) * x[i];
    y[j] = checked(s, "mul_transpose");
  }
  return y;
}

Matrix IntMatrix::to_real() const {
  Matrix A(n_, n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) A(i, j) = static_cast<double>((*this)(i, j));
  return A;
}

long long IntMatrix::det_bareiss() const {
  std::size_t n = n_;
  std::vector<__int128> m(n * n);
  for (std::size_t i = 0; i < n * n; ++i) m[i] = a_[i];
  auto at = [&](std::size_t i, std::size_t j) -> __int128& { return m[i * n + j]; };

  __int128 prev = 1;
  int sign = 1;
  constexpr __int128 lim = static_cast<__int128>(1) << 120;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (at(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && at(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(at(k, j), at(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        __int128 v = at(i, j) * at(k, k) - at(i, k) * at(k, j);
        v /= prev;  // exact division in the Bareiss recurrence
        if (v > lim || v < -lim) throw Error("det_bareiss: overflow");
        at(i, j) = v;
      }
    prev = at(k, k);
  }
  return checked(sign * at(n - 1, n - 1), "det_bareiss");
}

Unimodular Unimodular::from_permutation(const std::vector<int>& p) {
  Unimodular u(p.size());
  for (std::size_t j = 0; j < p.size(); ++j) {
    for (std::size_t i = 0; i < p.size(); ++i) {
      u.Z(i, j) = (static_cast<int>(i) == p[j]) ? 1 : 0;
      u.Zinv(j, i) = u.Z(i, j);
    }
  }
  return u;
}

bool Unimodular::is_inverse_pair() const {
  std::size_t n = Z.order();
  if (Zinv.order() != n) return false;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      __int128 s = 0;
      for (std::size_t k = 0; k < n; ++k)
        s += static_cast<__int128>(Z(i, k)) * Zinv(k, j);
      if (s != (i == j ? 1 : 0)) return false;
    }
  return true;
}

}  // namespace ils
