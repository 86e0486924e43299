#include "ils/reduce_standard.hpp"

#include <cmath>

#include "ils/errors.hpp"
#include "ils/factor.hpp"
#include "ils/rounding.hpp"

namespace ils {

namespace {

QrzReduction from_factors(QrFactors&& f) {
  QrzReduction s;
  std::size_t n = f.R.rows();
  s.R = std::move(f.R);
  s.ybar = std::move(f.ybar);
  s.uz = Unimodular::from_permutation(f.perm);
  s.resid2 = f.resid2;
  (void)n;
  return s;
}

long long swap_cap(std::size_t n) {
  return 10LL * static_cast<long long>(n) * n * n;
}

}  // namespace

void igt_upper(QrzReduction& s, int i, int k) {
  long long mu = nint(s.R(i, k) / s.R(i, i));
  if (mu == 0) return;
  for (int t = 0; t <= i; ++t) s.R(t, k) -= static_cast<double>(mu) * s.R(t, i);
  s.uz.apply_igt(i, k, mu);
  ++s.igt_count;
}

void permute_adjacent(QrzReduction& s, int k) {
  Matrix& R = s.R;
  const int n = static_cast<int>(R.rows());
  for (int t = 0; t <= k; ++t) std::swap(R(t, k - 1), R(t, k));
  // rows k-1,k now hold [[r_{k-1,k}, r_{k-1,k-1}], [r_kk, 0]]; rotate it back
  GivensPair g = givens_pair(R(k - 1, k - 1), R(k, k - 1));
  for (int j = k - 1; j < n; ++j) {
    double a = R(k - 1, j), b = R(k, j);
    R(k - 1, j) = g.c * a + g.s * b;
    R(k, j) = -g.s * a + g.c * b;
  }
  R(k, k - 1) = 0.0;
  double a = s.ybar[k - 1], b = s.ybar[k];
  s.ybar[k - 1] = g.c * a + g.s * b;
  s.ybar[k] = -g.s * a + g.c * b;
  if (R(k, k) < 0.0) {
    for (int j = k; j < n; ++j) R(k, j) = -R(k, j);
    s.ybar[k] = -s.ybar[k];
  }
  s.uz.apply_swap(k - 1, k);
  ++s.swap_count;
}

QrzReduction lll_reduce(const Matrix& A, const Vector& y) {
  QrzReduction s = from_factors(qr_householder(A, y));
  const int n = static_cast<int>(s.R.rows());
  const long long cap = swap_cap(n);
  int k = 1;
  while (k < n) {
    for (int i = k - 1; i >= 0; --i) igt_upper(s, i, k);
    if (sq(s.R(k - 1, k - 1)) > sq(s.R(k - 1, k)) + sq(s.R(k, k))) {
      permute_adjacent(s, k);
      if (s.swap_count > cap) throw NonTermination("lll swap cap exceeded");
      if (k > 1) --k;
    } else {
      ++k;
    }
  }
  return s;
}

QrzReduction plll_reduce(const Matrix& A, const Vector& y) {
  QrzReduction s = from_factors(sorted_qr_factors(A, y));
  const int n = static_cast<int>(s.R.rows());
  const long long cap = swap_cap(n);
  int k = 1;
  while (k < n) {
    double rdd = s.R(k - 1, k - 1);
    double rt = s.R(k - 1, k) - static_cast<double>(nint(s.R(k - 1, k) / rdd)) * rdd;
    if (sq(rdd) > sq(rt) + sq(s.R(k, k))) {
      for (int i = k - 1; i >= 0; --i) igt_upper(s, i, k);
      permute_adjacent(s, k);
      if (s.swap_count > cap) throw NonTermination("plll swap cap exceeded");
      if (k > 1) --k;
    } else {
      ++k;
    }
  }
  return s;
}

QrzReduction sorted_qr(const Matrix& A, const Vector& y) {
  return from_factors(sorted_qr_factors(A, y));
}

}  // namespace ils
