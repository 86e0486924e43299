#pragma once

#include "ils/dense.hpp"
#include "ils/unimodular.hpp"

namespace ils {

// Quadratic-form reduction state for min (x - xhat)^T W^-1 (x - xhat):
// Z^T W Z = L^T D L, zhat = Z^T xhat, solution maps back via x = Z^-T z.
struct LtdlState {
  Matrix L;       // unit lower triangular
  Vector d;       // diagonal of D, positive
  Unimodular uz;  // Z and exact inverse
  Vector zhat;    // transformed real estimate, kept in lockstep
  long long igt_count = 0;
  long long perm_count = 0;
};

// GAUSS: mu = nint(L(i,j)) (i > j); if mu != 0, L(i..n-1, j) -= mu*L(i..n-1, i),
// Z(:, j) -= mu*Z(:, i), zhat[j] -= mu*zhat[i]. Afterwards |L(i,j)| <= 1/2.
void gauss_igt(LtdlState& st, int i, int j);

// PERMUTE on pair (k, k+1), 0-based; delta = d_k + L(k+1,k)^2 d_{k+1} is
// supplied by the caller.
void permute_pair(LtdlState& st, int k, double delta);

// Classical decorrelation: full-column IGTs at each visited column, permute
// whenever it shrinks d_{k+1}, restart from the right after every permutation.
LtdlState lambda_reduce(const Matrix& W, const Vector& xhat);

// Modified reduction: symmetric-pivoted start, greedy pair selection by the
// ratio dbar_{k+1}/d_{k+1}, lazily applied subdiagonal IGTs, and a final pass
// over the whole strictly lower triangle.
LtdlState mreduction(const Matrix& W, const Vector& xhat);

// Partial reduction: symmetric-pivoted start; at column k the trial
// subdiagonal value decides the permutation, the full column is reduced only
// when the permutation is committed, and the walk resumes at k+1.
LtdlState preduction(const Matrix& W, const Vector& xhat);

// lambda_reduce with the column IGT loop cut down to the subdiagonal entry.
LtdlState minreduction(const Matrix& W, const Vector& xhat);

// Plain L^T D L factorization, Z = I.
LtdlState noreduction(const Matrix& W, const Vector& xhat);

// Sum of absolute correlation coefficients: sum_{i<j} |w_ij|/sqrt(w_ii w_jj).
double psi(const Matrix& W);

// W_z = Z^T W Z reconstructed from the state's factors (L^T D L).
Matrix reconstruct_wz(const LtdlState& st);

}  // namespace ils
