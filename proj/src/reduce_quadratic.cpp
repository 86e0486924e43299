#include "ils/reduce_quadratic.hpp"

#include <cmath>

#include "ils/errors.hpp"
#include "ils/factor.hpp"
#include "ils/rounding.hpp"

namespace ils {

namespace {

long long perm_cap(std::size_t n) {
  return 10LL * static_cast<long long>(n) * n * n;
}

LtdlState state_from_sympiv(const Matrix& W, const Vector& xhat) {
  LtdlPivoted f = ltdl_sympiv(W);
  std::size_t n = f.d.size();
  LtdlState st;
  st.L = std::move(f.L);
  st.d = std::move(f.d);
  st.uz = Unimodular::from_permutation(f.perm);
  st.zhat.resize(n);
  for (std::size_t i = 0; i < n; ++i) st.zhat[i] = xhat[f.perm[i]];  // P^T xhat
  return st;
}

}  // namespace

void gauss_igt(LtdlState& st, int i, int j) {
  long long mu = nint(st.L(i, j));
  if (mu == 0) return;
  const int n = static_cast<int>(st.L.rows());
  for (int t = i; t < n; ++t) st.L(t, j) -= static_cast<double>(mu) * st.L(t, i);
  st.uz.apply_igt(i, j, mu);
  st.zhat[j] -= static_cast<double>(mu) * st.zhat[i];
  ++st.igt_count;
}

void permute_pair(LtdlState& st, int k, double delta) {
  Matrix& L = st.L;
  Vector& d = st.d;
  const int n = static_cast<int>(L.rows());
  double eta = d[k] / delta;
  double lam = d[k + 1] * L(k + 1, k) / delta;
  d[k] = eta * d[k + 1];
  d[k + 1] = delta;
  for (int j = 0; j < k; ++j) {
    double a0 = L(k, j), a1 = L(k + 1, j);
    L(k, j) = -L(k + 1, k) * a0 + a1;
    L(k + 1, j) = eta * a0 + lam * a1;
  }
  L(k + 1, k) = lam;
  for (int i = k + 2; i < n; ++i) std::swap(L(i, k), L(i, k + 1));
  st.uz.apply_swap(k, k + 1);
  std::swap(st.zhat[k], st.zhat[k + 1]);
  ++st.perm_count;
}

LtdlState noreduction(const Matrix& W, const Vector& xhat) {
  LtdlFactors f = ltdl(W);
  LtdlState st;
  st.L = std::move(f.L);
  st.d = std::move(f.d);
  st.uz = Unimodular(st.d.size());
  st.zhat = xhat;
  return st;
}

LtdlState lambda_reduce(const Matrix& W, const Vector& xhat) {
  LtdlState st = noreduction(W, xhat);
  const int n = static_cast<int>(st.d.size());
  const long long cap = perm_cap(n);
  int k = n - 2, k1 = n - 2;
  while (k >= 0) {
    if (k <= k1)
      for (int i = k + 1; i < n; ++i) gauss_igt(st, i, k);
    double dbar = st.d[k] + sq(st.L(k + 1, k)) * st.d[k + 1];
    if (dbar < st.d[k + 1]) {
      permute_pair(st, k, dbar);
      if (st.perm_count > cap) throw NonTermination("lambda permutation cap");
      k1 = k;
      k = n - 2;
    } else {
      --k;
    }
  }
  return st;
}

LtdlState minreduction(const Matrix& W, const Vector& xhat) {
  LtdlState st = noreduction(W, xhat);
  const int n = static_cast<int>(st.d.size());
  const long long cap = perm_cap(n);
  int k = n - 2, k1 = n - 2;
  while (k >= 0) {
    if (k <= k1) gauss_igt(st, k + 1, k);  // subdiagonal entry only
    double dbar = st.d[k] + sq(st.L(k + 1, k)) * st.d[k + 1];
    if (dbar < st.d[k + 1]) {
      permute_pair(st, k, dbar);
      if (st.perm_count > cap) throw NonTermination("minreduction permutation cap");
      k1 = k;
      k = n - 2;
    } else {
      --k;
    }
  }
  return st;
}

LtdlState mreduction(const Matrix& W, const Vector& xhat) {
  LtdlState st = state_from_sympiv(W, xhat);
  const int n = static_cast<int>(st.d.size());
  const long long cap = perm_cap(n);

  // ChangeFlag(k+1) marks that L(k+1,k) may have moved since the cached
  // dbar_{k+1} was computed; all set initially so every read is primed.
  // Math indices 1..n+1; entry for pair k (0-based) lives at flag[k+2].
  std::vector<char> flag(n + 2, 1);
  Vector dbar_cache(n + 1, 0.0);

  while (true) {
    double minratio = 1.0;
    int sel = -1;
    double seld = 0.0;
    for (int k = 0; k + 1 < n; ++k) {
      if (st.d[k] / st.d[k + 1] < 1.0) {
        if (flag[k + 2]) {
          gauss_igt(st, k + 1, k);
          dbar_cache[k + 1] = st.d[k] + sq(st.L(k + 1, k)) * st.d[k + 1];
          flag[k + 2] = 0;
        }
        double tmp = dbar_cache[k + 1] / st.d[k + 1];
        if (tmp < minratio) {
          sel = k;
          minratio = tmp;
          seld = dbar_cache[k + 1];
        }
      }
    }
    if (sel < 0) break;
    permute_pair(st, sel, seld);
    if (st.perm_count > cap) throw NonTermination("mreduction permutation cap");
    for (int t = sel + 1; t <= sel + 3 && t <= n + 1; ++t) flag[t] = 1;
  }

  // Lazy strategy: finish by reducing the whole strictly lower triangle.
  for (int k = 0; k + 1 < n; ++k)
    for (int i = k + 1; i < n; ++i) gauss_igt(st, i, k);
  return st;
}

LtdlState preduction(const Matrix& W, const Vector& xhat) {
  LtdlState st = state_from_sympiv(W, xhat);
  const int n = static_cast<int>(st.d.size());
  const long long cap = perm_cap(n);
  int k = n - 2, k1 = n - 2;
  while (k >= 0) {
    double lt = st.L(k + 1, k) - static_cast<double>(nint(st.L(k + 1, k)));
    double dbar = st.d[k] + sq(lt) * st.d[k + 1];
    if (dbar < st.d[k + 1]) {
      if (k <= k1)
        for (int i = k + 1; i < n; ++i) gauss_igt(st, i, k);
      permute_pair(st, k, dbar);
      if (st.perm_count > cap) throw NonTermination("preduction permutation cap");
      k1 = k;
      if (k < n - 2) ++k;  // no restart: resume one pair to the right
    } else {
      --k;
    }
  }
  return st;
}

double psi(const Matrix& W) {
  std::size_t n = W.rows();
  if (W.cols() != n) throw Error("psi: matrix not square");
  for (std::size_t i = 0; i < n; ++i)
    if (!(W(i, i) > 0.0)) throw NotPositiveDefinite("psi: diagonal entry <= 0");
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      s += std::abs(W(i, j)) / std::sqrt(W(i, i) * W(j, j));
  return s;
}

Matrix reconstruct_wz(const LtdlState& st) {
  std::size_t n = st.d.size();
  Matrix W(n, n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = std::max(i, j); k < n; ++k)
        s += st.L(k, i) * st.d[k] * st.L(k, j);
      W(i, j) = s;
    }
  return W;
}

}  // namespace ils
