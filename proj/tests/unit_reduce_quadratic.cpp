#include <doctest.h>

#include <cmath>

#include "ils/bench.hpp"
#include "ils/dense.hpp"
#include "ils/factor.hpp"
#include "ils/reduce_quadratic.hpp"
#include "ils/rng.hpp"
#include "ils/rounding.hpp"
#include "ils/search.hpp"
#include "oracles.hpp"

using namespace ils;

namespace {

Matrix w41() {
  Matrix W(2, 2);
  W(0, 0) = 11026;
  W(0, 1) = 1050;
  W(1, 0) = 1050;
  W(1, 1) = 100;
  return W;
}

// 2x2 covariance with L = [[1,0],[0.8,1]], D = diag(1, 100)
Matrix w42_pair() {
  Matrix W(2, 2);
  W(0, 0) = 65;
  W(0, 1) = 80;
  W(1, 0) = 80;
  W(1, 1) = 100;
  return W;
}

Matrix w44() {
  Matrix W(3, 3);
  double v[9] = {1.3616, 1.7318, 0.9696, 1.7318, 2.5813,
                 1.4713, 0.9696, 1.4713, 0.8694};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) W(i, j) = v[3 * i + j];
  return W;
}

Matrix w42_psi() {
  Matrix W(3, 3);
  double v[9] = {2.8376, -0.0265, -0.8061, -0.0265, 0.7587,
                 2.0602, -0.8061, 2.0602,  5.7845};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) W(i, j) = v[3 * i + j];
  return W;
}

bool reduction_postconditions(const LtdlState& st, bool size_reduced) {
  const int n = static_cast<int>(st.d.size());
  for (int k = 0; k + 1 < n; ++k) {
    if (st.d[k + 1] > st.d[k] + sq(st.L(k + 1, k)) * st.d[k + 1] + 1e-12)
      return false;
    if (size_reduced)
      for (int i = k + 1; i < n; ++i)
        if (std::abs(st.L(i, k)) > 0.5 + 1e-12) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("gauss_igt on the 2x2 worked covariance") {
  LtdlState st = noreduction(w41(), Vector{5.38, 18.34});
  CHECK(st.L(1, 0) == doctest::Approx(10.5).epsilon(1e-12));
  gauss_igt(st, 1, 0);  // mu = nint(10.5) = 10
  CHECK(st.L(1, 0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(st.uz.Z(1, 0) == -10);
  Matrix Wz(2, 2, 0.0);
  Matrix Zr = st.uz.Z.to_real();
  Wz = matmul(transpose(Zr), matmul(w41(), Zr));
  CHECK(Wz(0, 0) == 26.0);
  CHECK(Wz(0, 1) == 50.0);
  CHECK(Wz(1, 0) == 50.0);
  CHECK(Wz(1, 1) == 100.0);
  // zhat follows: zhat[0] = 5.38 - 10*18.34
  CHECK(st.zhat[0] == doctest::Approx(5.38 - 10 * 18.34));
}

TEST_CASE("gauss_igt no-op and negative rounding") {
  Matrix L = Matrix::identity(3);
  L(1, 0) = 0.4;
  L(2, 0) = -1.7;
  LtdlState st{L, Vector{1, 1, 1}, Unimodular(3), Vector{0, 0, 0}};
  gauss_igt(st, 1, 0);
  CHECK(st.L(1, 0) == 0.4);
  CHECK(st.igt_count == 0);
  gauss_igt(st, 2, 0);  // mu = -2
  CHECK(st.L(2, 0) == doctest::Approx(0.3));
  CHECK(st.igt_count == 1);
}

TEST_CASE("permute_pair matches the worked d updates") {
  // L = [[1,0],[0.8,1]], D = diag(1,100): no prior IGT
  LtdlState st = noreduction(w42_pair(), Vector{13.5, 1.2});
  CHECK(st.L(1, 0) == doctest::Approx(0.8).epsilon(1e-12));
  double delta = st.d[0] + sq(st.L(1, 0)) * st.d[1];
  CHECK(delta == doctest::Approx(65.0).epsilon(1e-12));
  double before = st.d[0] * st.d[1];
  permute_pair(st, 0, delta);
  CHECK(st.d[1] == doctest::Approx(65.0).epsilon(1e-12));
  CHECK(st.d[0] == doctest::Approx(100.0 / 65.0).epsilon(1e-12));
  CHECK(st.d[0] * st.d[1] == doctest::Approx(before).epsilon(1e-12));

  // with the IGT first: l becomes -0.2, dbar = 5, then dbar1 = 20
  LtdlState st2 = noreduction(w42_pair(), Vector{13.5, 1.2});
  gauss_igt(st2, 1, 0);
  CHECK(st2.L(1, 0) == doctest::Approx(-0.2).epsilon(1e-12));
  double delta2 = st2.d[0] + sq(st2.L(1, 0)) * st2.d[1];
  CHECK(delta2 == doctest::Approx(5.0).epsilon(1e-12));
  permute_pair(st2, 0, delta2);
  CHECK(st2.d[1] == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(st2.d[0] == doctest::Approx(20.0).epsilon(1e-12));
}

TEST_CASE("lambda reduction leaves a decreasing diagonal matrix alone") {
  Matrix W(3, 3, 0.0);
  W(0, 0) = 9;
  W(1, 1) = 4;
  W(2, 2) = 1;
  LtdlState st = lambda_reduce(W, Vector{0.3, 0.4, 0.5});
  CHECK(st.uz.Z == IntMatrix::identity(3));
  CHECK(st.igt_count == 0);
  CHECK(st.perm_count == 0);
}

TEST_CASE("lambda reduction on the 3x3 worked example") {
  LtdlState st = lambda_reduce(w44(), Vector{27.6490, 10.3038, 5.2883});
  CHECK(st.d[0] == doctest::Approx(0.3205).epsilon(2e-3));
  CHECK(st.d[1] == doctest::Approx(0.2710).epsilon(2e-3));
  CHECK(st.d[2] == doctest::Approx(0.1738).epsilon(2e-3));
  CHECK(reduction_postconditions(st, true));
  SearchOutcome out = search_quadratic(st);
  CHECK(out.x_opt == IntVector{28, 10, 5});
}

TEST_CASE("mreduction agrees with lambda on the 3x3 worked example") {
  Vector xhat{27.6490, 10.3038, 5.2883};
  LtdlState a = lambda_reduce(w44(), xhat);
  LtdlState b = mreduction(w44(), xhat);
  CHECK(a.uz.Z == b.uz.Z);
  SearchOutcome oa = search_quadratic(a);
  SearchOutcome ob = search_quadratic(b);
  CHECK(oa.x_opt == ob.x_opt);
}

TEST_CASE("preduction on the 3x3 worked example") {
  LtdlState st = preduction(w44(), Vector{27.6490, 10.3038, 5.2883});
  IntMatrix want(3);
  long long zv[9] = {0, 1, 0, 0, 0, 1, 1, -1, -2};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) want(i, j) = zv[3 * i + j];
  CHECK(st.uz.Z == want);
  CHECK(st.d[0] == doctest::Approx(0.3205).epsilon(2e-3));
  CHECK(st.d[1] == doctest::Approx(0.2710).epsilon(2e-3));
  CHECK(st.d[2] == doctest::Approx(0.1738).epsilon(2e-3));
  SearchOutcome out = search_quadratic(st);
  CHECK(out.x_opt == IntVector{28, 10, 5});
}

TEST_CASE("preduction leaves a decreasing diagonal untouched") {
  Matrix W(3, 3, 0.0);
  W(0, 0) = 9;
  W(1, 1) = 4;
  W(2, 2) = 1;
  LtdlState st = preduction(W, Vector{0.3, 0.4, 0.5});
  CHECK(st.igt_count == 0);
  CHECK(st.uz.Z == IntMatrix::identity(3));
}

TEST_CASE("noreduction is the plain factorization") {
  Matrix W = w44();
  LtdlState st = noreduction(W, Vector{1, 2, 3});
  CHECK(st.uz.Z == IntMatrix::identity(3));
  double rbe = relative_backward_error(W, st.uz, st.L, st.d);
  CHECK(rbe <= 1e-12);
}

TEST_CASE("psi values") {
  CHECK(psi(w42_psi()) == doctest::Approx(1.2005).epsilon(5e-4));
  Matrix D(4, 4, 0.0);
  for (int i = 0; i < 4; ++i) D(i, i) = 1.0 + i;
  CHECK(psi(D) == 0.0);
}

TEST_CASE("reduction invariants on random SPD inputs") {
  Rng rng(123);
  for (int trial = 0; trial < 15; ++trial) {
    int n = 2 + static_cast<int>(rng.uniform_int(0, 6));
    auto [W, xhat] = gen_case({1, n, rng.next()});
    Vector x0 = xhat;

    for (const char* m : {"lambda", "preduction", "minreduction", "mreduction"}) {
      LtdlState st = reduce_quadratic_by_name(m, W, x0);
      CHECK(st.uz.is_inverse_pair());

      // eigen-product invariance: prod d_i == det(W)
      double prod = 1.0;
      for (double v : st.d) prod *= v;
      CHECK(prod == doctest::Approx(oracle::det_fraction_free(W)).epsilon(1e-9));

      // zhat lockstep: zhat == Z^T x0
      Matrix Zr = st.uz.Z.to_real();
      Vector want = matvec(transpose(Zr), x0);
      for (std::size_t i = 0; i < want.size(); ++i)
        CHECK(st.zhat[i] == doctest::Approx(want[i]).epsilon(1e-12));
    }

    LtdlState lam = lambda_reduce(W, x0);
    CHECK(reduction_postconditions(lam, true));
    LtdlState pre = preduction(W, x0);
    CHECK(reduction_postconditions(pre, false));
    LtdlState mi = minreduction(W, x0);
    CHECK(reduction_postconditions(mi, false));

    // stable pipelines agree in original coordinates
    SearchOutcome ol = search_quadratic(lam);
    SearchOutcome op = search_quadratic(pre);
    CHECK(ol.x_opt == op.x_opt);
  }
}

TEST_CASE("backward error stays small for the stable reductions") {
  Rng rng(321);
  for (int c : {1, 3, 7}) {
    auto [W, xhat] = gen_case({c, 10, rng.next()});
    for (const char* m : {"lambda", "preduction"}) {
      LtdlState st = reduce_quadratic_by_name(m, W, xhat);
      CHECK(relative_backward_error(W, st.uz, st.L, st.d) <= 1e-10);
    }
  }
}
