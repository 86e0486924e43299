#include "ils/factor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "ils/errors.hpp"

namespace ils {

GivensPair givens_pair(double a, double b) {
  if (a == 0.0 && b == 0.0) throw DegenerateRotation("zero input pair");
  double r = std::hypot(a, b);
  return {a / r, b / r};
}

namespace {

// Shared Householder engine. When `sorted` is set, each step pivots the
// remaining column with the smallest projected norm into position k.
QrFactors householder_engine(const Matrix& A0, const Vector& y0, bool sorted) {
  const std::size_t m = A0.rows(), n = A0.cols();
  if (m < n) throw Error("qr: need rows >= cols");
  if (y0.size() != m) throw Error("qr: y length mismatch");
  check_finite(A0, "qr A");
  check_finite(y0, "qr y");

  Matrix A = A0;
  Vector y = y0;
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Matrix V(m, n, 0.0);  // unit reflectors, column k lives in rows k..m-1

  for (std::size_t k = 0; k < n; ++k) {
    if (sorted) {
      std::size_t best = k;
      double bestnorm = std::numeric_limits<double>::infinity();
      for (std::size_t j = k; j < n; ++j) {
        double s = 0.0;
        for (std::size_t i = k; i < m; ++i) s += A(i, j) * A(i, j);
        if (s < bestnorm) {
          bestnorm = s;
          best = j;
        }
      }
      if (best != k) {
        A.swap_cols(k, best);
        std::swap(perm[k], perm[best]);
      }
    }

    double normx = 0.0;
    for (std::size_t i = k; i < m; ++i) normx += A(i, k) * A(i, k);
    normx = std::sqrt(normx);
    if (normx == 0.0) continue;  // zero column; rank check below reports it

    double s0 = A(k, k) >= 0.0 ? 1.0 : -1.0;
    double vnorm2 = 0.0;
    for (std::size_t i = k; i < m; ++i) {
      double v = A(i, k) + (i == k ? s0 * normx : 0.0);
      V(i, k) = v;
      vnorm2 += v * v;
    }
    if (vnorm2 == 0.0) continue;
    double inv = 1.0 / std::sqrt(vnorm2);
    for (std::size_t i = k; i < m; ++i) V(i, k) *= inv;

    for (std::size_t j = k; j < n; ++j) {
      double d = 0.0;
      for (std::size_t i = k; i < m; ++i) d += V(i, k) * A(i, j);
      for (std::size_t i = k; i < m; ++i) A(i, j) -= 2.0 * d * V(i, k);
    }
    double dy = 0.0;
    for (std::size_t i = k; i < m; ++i) dy += V(i, k) * y[i];
    for (std::size_t i = k; i < m; ++i) y[i] -= 2.0 * dy * V(i, k);
  }

  QrFactors f;
  f.perm = perm;
  f.R = Matrix(n, n, 0.0);
  f.ybar = Vector(n, 0.0);
  Vector sign(n, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (A(i, i) < 0.0) sign[i] = -1.0;
    for (std::size_t j = i; j < n; ++j) f.R(i, j) = sign[i] * A(i, j);
    f.ybar[i] = sign[i] * y[i];
  }

  double maxdiag = 0.0;
  for (std::size_t i = 0; i < n; ++i) maxdiag = std::max(maxdiag, f.R(i, i));
  double eps = std::numeric_limits<double>::epsilon();
  for (std::size_t i = 0; i < n; ++i)
    if (f.R(i, i) <= static_cast<double>(n) * eps * maxdiag)
      throw RankDeficient("pivot collapse at column " + std::to_string(i));

  // Thin Q: apply the reflector chain to e_j, fold in the sign flips.
  f.Q1 = Matrix(m, n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    Vector e(m, 0.0);
    e[j] = 1.0;
    for (std::size_t k2 = n; k2-- > 0;) {
      double d = 0.0;
      for (std::size_t i = k2; i < m; ++i) d += V(i, k2) * e[i];
      for (std::size_t i = k2; i < m; ++i) e[i] -= 2.0 * d * V(i, k2);
    }
    for (std::size_t i = 0; i < m; ++i) f.Q1(i, j) = sign[j] * e[i];
  }

  double y2 = dot(y0, y0), ybar2 = dot(f.ybar, f.ybar);
  f.resid2 = std::max(0.0, y2 - ybar2);
  return f;
}

}  // namespace

QrFactors qr_householder(const Matrix& A, const Vector& y) {
  return householder_engine(A, y, false);
}

QrFactors sorted_qr_factors(const Matrix& A, const Vector& y) {
  return householder_engine(A, y, true);
}

Vector solve_lower(const Matrix& T, const Vector& b) {
  std::size_t n = T.rows();
  if (T.cols() != n || b.size() != n) throw Error("solve_lower: shape mismatch");
  Vector x(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (T(i, i) == 0.0) throw SingularTriangular("zero diagonal");
    double s = b[i];
    for (std::size_t j = 0; j < i; ++j) s -= T(i, j) * x[j];
    x[i] = s / T(i, i);
  }
  return x;
}

Vector solve_upper(const Matrix& T, const Vector& b) {
  std::size_t n = T.rows();
  if (T.cols() != n || b.size() != n) throw Error("solve_upper: shape mismatch");
  Vector x(n, 0.0);
  for (std::size_t ii = n; ii-- > 0;) {
    if (T(ii, ii) == 0.0) throw SingularTriangular("zero diagonal");
    double s = b[ii];
    for (std::size_t j = ii + 1; j < n; ++j) s -= T(ii, j) * x[j];
    x[ii] = s / T(ii, ii);
  }
  return x;
}

Vector solve_transposed_upper(const Matrix& R, const Vector& b) {
  std::size_t n = R.rows();
  Vector x(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (R(i, i) == 0.0) throw SingularTriangular("zero diagonal");
    double s = b[i];
    for (std::size_t j = 0; j < i; ++j) s -= R(j, i) * x[j];
    x[i] = s / R(i, i);
  }
  return x;
}

namespace {

Matrix checked_symmetric(const Matrix& W) {
  if (W.rows() != W.cols()) throw Error("ltdl: matrix not square");
  check_finite(W, "ltdl W");
  double asym = 0.0;
  for (std::size_t i = 0; i < W.rows(); ++i)
    for (std::size_t j = 0; j < W.cols(); ++j)
      asym = std::max(asym, std::abs(W(i, j) - W(j, i)));
  if (asym > 1e-10 * frobenius_norm(W))
    throw NotSymmetric("max |W - W^T| = " + std::to_string(asym));
  return symmetrize(W);
}

}  // namespace

LtdlFactors ltdl(const Matrix& W) {
  Matrix M = checked_symmetric(W);
  std::size_t n = M.rows();
  LtdlFactors f{Matrix::identity(n), Vector(n, 0.0)};
  for (std::size_t k = n; k-- > 0;) {
    double dk = M(k, k);
    if (!(dk > 0.0)) throw NotPositiveDefinite("pivot " + std::to_string(dk));
    f.d[k] = dk;
    for (std::size_t j = 0; j < k; ++j) f.L(k, j) = M(k, j) / dk;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j <= i; ++j) {
        M(i, j) -= dk * f.L(k, i) * f.L(k, j);
        M(j, i) = M(i, j);
      }
  }
  return f;
}

LtdlPivoted ltdl_sympiv(const Matrix& W) {
  Matrix M = checked_symmetric(W);
  std::size_t n = M.rows();
  LtdlPivoted f{Matrix::identity(n), Vector(n, 0.0), std::vector<int>(n)};
  std::iota(f.perm.begin(), f.perm.end(), 0);
  for (std::size_t k = n; k-- > 0;) {
    // lowest index among strict minima; the trailing position keeps exact
    // ties so an already-ordered matrix is left untouched
    std::size_t q = k;
    for (std::size_t j = 0; j < k; ++j)
      if (M(j, j) < M(q, q)) q = j;
    if (q != k) {
      M.swap_rows(q, k);
      M.swap_cols(q, k);
      std::swap(f.perm[q], f.perm[k]);
      // already-built rows of L reference the active indices: swap those
      // column entries along with the pivot
      for (std::size_t r = k + 1; r < n; ++r) std::swap(f.L(r, q), f.L(r, k));
    }
    double dk = M(k, k);
    if (!(dk > 0.0)) throw NotPositiveDefinite("pivot " + std::to_string(dk));
    f.d[k] = dk;
    for (std::size_t j = 0; j < k; ++j) f.L(k, j) = M(k, j) / dk;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j <= i; ++j) {
        M(i, j) -= dk * f.L(k, i) * f.L(k, j);
        M(j, i) = M(i, j);
      }
  }
  return f;
}

Vector jacobi_eigenvalues(Matrix A) {
  std::size_t n = A.rows();
  if (A.cols() != n) throw Error("jacobi: matrix not square");
  double fro = frobenius_norm(A);
  if (fro == 0.0) return Vector(n, 0.0);

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += 2.0 * A(i, j) * A(i, j);
    if (std::sqrt(off) <= 1e-14 * fro) break;

    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        double apq = A(p, q);
        if (apq == 0.0) continue;
        double tau = (A(q, q) - A(p, p)) / (2.0 * apq);
        double t = (tau >= 0.0 ? 1.0 : -1.0) /
                   (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        double c = 1.0 / std::sqrt(1.0 + t * t);
        double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          double akp = A(k, p), akq = A(k, q);
          A(k, p) = c * akp - s * akq;
          A(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          double apk = A(p, k), aqk = A(q, k);
          A(p, k) = c * apk - s * aqk;
          A(q, k) = s * apk + c * aqk;
        }
      }
  }
  Vector ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = A(i, i);
  return ev;
}

double cond_spd(const Matrix& W) {
  Vector ev = jacobi_eigenvalues(symmetrize(W));
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (double v : ev) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (!(lo > 0.0)) throw NotPositiveDefinite("eigenvalue " + std::to_string(lo));
  return hi / lo;
}

double spectral_norm_sym(const Matrix& A) {
  Vector ev = jacobi_eigenvalues(symmetrize(A));
  double m = 0.0;
  for (double v : ev) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace ils
