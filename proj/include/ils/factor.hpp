#pragma once

#include <utility>
#include <vector>

#include "ils/dense.hpp"

namespace ils {

struct GivensPair {
  double c, s;
};

// Rotation G = [[c, s], [-s, c]] with G (a, b)^T = (hypot(a,b), 0)^T.
// Throws DegenerateRotation when a = b = 0.
GivensPair givens_pair(double a, double b);

struct QrFactors {
  Matrix R;               // n x n, positive diagonal
  Vector ybar;            // Q1^T y
  Matrix Q1;              // m x n thin factor (sign-adjusted)
  std::vector<int> perm;  // column j of the factored matrix is A(:, perm[j])
  double resid2 = 0.0;    // ||Q2^T y||^2 = ||y||^2 - ||ybar||^2
};

// Householder QR of A (m >= n, full column rank) with ybar = Q1^T y.
// Reflector signs are chosen to avoid cancellation, then rows of R (and the
// matching entries of ybar / columns of Q1) are flipped so every r_ii > 0.
// Throws RankDeficient when any |r_ii| <= n*eps*max_j |r_jj|.
QrFactors qr_householder(const Matrix& A, const Vector& y);

// QR with column pivoting: at step k the remaining column with the smallest
// projected norm is moved to position k, so small diagonal entries of R come
// first. perm records the choice.
QrFactors sorted_qr_factors(const Matrix& A, const Vector& y);

// Forward / back substitution; throws SingularTriangular on a zero pivot.
// Entries of T outside the relevant triangle are ignored.
Vector solve_lower(const Matrix& T, const Vector& b);
Vector solve_upper(const Matrix& T, const Vector& b);
// Solves R^T q = b by forward substitution without forming R^T.
Vector solve_transposed_upper(const Matrix& R, const Vector& b);

struct LtdlFactors {
  Matrix L;  // unit lower triangular
  Vector d;  // positive diagonal of D
};

struct LtdlPivoted {
  Matrix L;
  Vector d;
  std::vector<int> perm;  // P(:, j) = e_{perm[j]}; P^T W P = L^T D L
};

// L^T D L factorization of a symmetric positive definite W, computed from the
// bottom-right corner up: d_n = w_nn, l = w(1:n-1, n)/d_n, recurse on the
// Schur complement. Throws NotPositiveDefinite / NotSymmetric.
LtdlFactors ltdl(const Matrix& W);

// Same recursion with symmetric pivoting: at each step the smallest diagonal
// entry of the active block is swapped into the pivot position (ties resolve
// to the lowest index).
LtdlPivoted ltdl_sympiv(const Matrix& W);

// Eigenvalues of a symmetric matrix by cyclic Jacobi sweeps, iterated until
// the off-diagonal norm drops below 1e-14 * ||A||_F.
Vector jacobi_eigenvalues(Matrix A);

// lambda_max / lambda_min of an SPD matrix; throws NotPositiveDefinite when
// any computed eigenvalue is <= 0.
double cond_spd(const Matrix& W);

// 2-norm of a symmetric matrix (max |lambda|).
double spectral_norm_sym(const Matrix& A);

}  // namespace ils
