#include <doctest.h>

#include <cmath>
#include <sstream>

#include "ils/dense.hpp"
#include "ils/errors.hpp"
#include "ils/factor.hpp"
#include "ils/rng.hpp"
#include "ils/rounding.hpp"
#include "ils/unimodular.hpp"
#include "oracles.hpp"

using namespace ils;

namespace {

Matrix random_matrix(Rng& rng, int m, int n) {
  Matrix A(m, n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) A(i, j) = rng.gaussian();
  return A;
}

Matrix random_spd(Rng& rng, int n) {
  Matrix A = random_matrix(rng, n, n);
  Matrix W = symmetrize(matmul(transpose(A), A));
  for (int i = 0; i < n; ++i) W(i, i) += 0.5;
  return W;
}

}  // namespace

TEST_CASE("rounding follows the smaller-magnitude tie rule") {
  CHECK(nint(10.5) == 10);
  CHECK(nint(-10.5) == -10);
  CHECK(nint(0.5) == 0);
  CHECK(nint(-0.5) == 0);
  CHECK(nint(1.5) == 1);
  CHECK(nint(10.6) == 11);
  CHECK(nint(-1.7) == -2);
  CHECK(sgn(0.0) == -1);
  CHECK(sgn(-3.0) == -1);
  CHECK(sgn(2.0) == 1);
}

TEST_CASE("givens pairs") {
  auto g = givens_pair(1.0, 0.0);
  CHECK(g.c == doctest::Approx(1.0));
  CHECK(g.s == doctest::Approx(0.0));
  g = givens_pair(3.0, 4.0);
  CHECK(g.c == doctest::Approx(0.6));
  CHECK(g.s == doctest::Approx(0.8));
  g = givens_pair(0.0, 2.0);
  CHECK(g.c == doctest::Approx(0.0));
  CHECK(g.s == doctest::Approx(1.0));
  CHECK_THROWS_AS(givens_pair(0.0, 0.0), DegenerateRotation);
}

TEST_CASE("qr identity and 2x1 column") {
  Matrix I3 = Matrix::identity(3);
  Vector y{1, 2, 3};
  QrFactors f = qr_householder(I3, y);
  for (int i = 0; i < 3; ++i) {
    CHECK(f.R(i, i) == doctest::Approx(1.0));
    CHECK(f.ybar[i] == doctest::Approx(y[i]));
  }

  Matrix A(2, 1);
  A(0, 0) = 3;
  A(1, 0) = 4;
  f = qr_householder(A, Vector{3, 4});
  CHECK(f.R(0, 0) == doctest::Approx(5.0));
  CHECK(f.ybar[0] == doctest::Approx(5.0));
}

TEST_CASE("qr reconstruction on random 6x4") {
  Rng rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    Matrix A = random_matrix(rng, 6, 4);
    Vector y(6);
    for (auto& v : y) v = rng.gaussian();
    QrFactors f = qr_householder(A, y);

    Matrix QtQ = matmul(transpose(f.Q1), f.Q1);
    Matrix QR = matmul(f.Q1, f.R);
    double e1 = 0.0, e2 = 0.0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        e1 = std::max(e1, std::abs(QtQ(i, j) - (i == j ? 1.0 : 0.0)));
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 4; ++j) e2 = std::max(e2, std::abs(QR(i, j) - A(i, j)));
    CHECK(e1 <= 1e-12 * 4);
    CHECK(e2 <= 1e-12 * frobenius_norm(A));
    CHECK(has_positive_diagonal(f.R));
    // Frobenius norm preserved by R
    CHECK(frobenius_norm(f.R) == doctest::Approx(frobenius_norm(A)).epsilon(1e-12));
  }
}

TEST_CASE("qr detects rank deficiency") {
  Matrix A(3, 2);
  A(0, 0) = 1;
  A(0, 1) = 2;
  A(1, 0) = 2;
  A(1, 1) = 4;
  A(2, 0) = 3;
  A(2, 1) = 6;
  CHECK_THROWS_AS(qr_householder(A, Vector{1, 1, 1}), RankDeficient);
}

TEST_CASE("ltdl examples") {
  Matrix I2 = Matrix::identity(2);
  LtdlFactors f = ltdl(I2);
  CHECK(f.L == Matrix::identity(2));
  CHECK(f.d[0] == 1.0);
  CHECK(f.d[1] == 1.0);

  Matrix W(2, 2);
  W(0, 0) = 11026;
  W(0, 1) = 1050;
  W(1, 0) = 1050;
  W(1, 1) = 100;
  f = ltdl(W);
  CHECK(f.L(1, 0) == doctest::Approx(10.5).epsilon(1e-12));
  CHECK(f.d[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(f.d[1] == doctest::Approx(100.0).epsilon(1e-12));

  Matrix W3(3, 3);
  double w3[9] = {1.3616, 1.7318, 0.9696, 1.7318, 2.5813,
                  1.4713, 0.9696, 1.4713, 0.8694};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) W3(i, j) = w3[3 * i + j];
  f = ltdl(W3);
  Matrix rec(3, 3, 0.0);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = std::max(i, j); k < 3; ++k)
        rec(i, j) += f.L(k, i) * f.d[k] * f.L(k, j);
  double err = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      err += (rec(i, j) - W3(i, j)) * (rec(i, j) - W3(i, j));
  CHECK(std::sqrt(err) <= 1e-12 * frobenius_norm(W3));
}

TEST_CASE("ltdl error paths") {
  Matrix W(2, 2);
  W(0, 0) = 1;
  W(0, 1) = 2;
  W(1, 0) = 2;
  W(1, 1) = 1;  // eigenvalues 3, -1
  CHECK_THROWS_AS(ltdl(W), NotPositiveDefinite);

  Matrix S(2, 2);
  S(0, 0) = 1;
  S(0, 1) = 0.5;
  S(1, 0) = 0.2;
  S(1, 1) = 1;
  CHECK_THROWS_AS(ltdl(S), NotSymmetric);
}

TEST_CASE("ltdl round trip and determinant consistency") {
  Rng rng(21);
  for (int n : {2, 4, 6, 8}) {
    Matrix W = random_spd(rng, n);
    LtdlFactors f = ltdl(W);
    Matrix rec(n, n, 0.0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = std::max(i, j); k < n; ++k)
          rec(i, j) += f.L(k, i) * f.d[k] * f.L(k, j);
    double err = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        err += (rec(i, j) - W(i, j)) * (rec(i, j) - W(i, j));
    CHECK(std::sqrt(err) <= 1e-12 * frobenius_norm(W));

    double prod = 1.0;
    for (double d : f.d) prod *= d;
    CHECK(prod == doctest::Approx(oracle::det_fraction_free(W)).epsilon(1e-10));
  }
}

TEST_CASE("symmetric pivoting order") {
  Matrix W(3, 3, 0.0);
  W(0, 0) = 3;
  W(1, 1) = 1;
  W(2, 2) = 2;
  LtdlPivoted f = ltdl_sympiv(W);
  CHECK(f.d[0] == doctest::Approx(3.0));
  CHECK(f.d[1] == doctest::Approx(2.0));
  CHECK(f.d[2] == doctest::Approx(1.0));

  LtdlPivoted id = ltdl_sympiv(Matrix::identity(3));
  for (int i = 0; i < 3; ++i) CHECK(id.perm[i] == i);

  Rng rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    int n = 3 + trial % 5;
    Matrix W2 = random_spd(rng, n);
    LtdlPivoted g = ltdl_sympiv(W2);
    // P^T W P == L^T D L
    Matrix rec(n, n, 0.0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = std::max(i, j); k < n; ++k)
          rec(i, j) += g.L(k, i) * g.d[k] * g.L(k, j);
    double err = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double want = W2(g.perm[i], g.perm[j]);
        err += (rec(i, j) - want) * (rec(i, j) - want);
      }
    CHECK(std::sqrt(err) <= 1e-12 * frobenius_norm(W2));
  }
}

TEST_CASE("triangular solves") {
  Matrix I = Matrix::identity(3);
  Vector b{1, -2, 3};
  CHECK(solve_lower(I, b) == b);
  CHECK(solve_upper(I, b) == b);

  Matrix T(2, 2, 0.0);
  T(0, 0) = 2;
  T(1, 0) = 1;
  T(1, 1) = 1;
  Vector x = solve_lower(T, Vector{2, 2});
  CHECK(x[0] == doctest::Approx(1.0));
  CHECK(x[1] == doctest::Approx(1.0));

  Matrix S(2, 2, 0.0);
  S(1, 1) = 1;
  CHECK_THROWS_AS(solve_lower(S, Vector{1, 1}), SingularTriangular);

  Rng rng(41);
  for (int trial = 0; trial < 10; ++trial) {
    int n = 4;
    Matrix L(n, n, 0.0);
    for (int i = 0; i < n; ++i) {
      L(i, i) = 1.0 + rng.uniform();
      for (int j = 0; j < i; ++j) L(i, j) = rng.gaussian() * 0.5;
    }
    Vector rhs(n);
    for (auto& v : rhs) v = rng.gaussian();
    Vector sol = solve_lower(L, rhs);
    Vector back = matvec(L, sol);
    for (int i = 0; i < n; ++i)
      CHECK(back[i] == doctest::Approx(rhs[i]).epsilon(1e-12));
  }
}

TEST_CASE("cond_spd identity and scale invariance") {
  CHECK(cond_spd(Matrix::identity(5)) == doctest::Approx(1.0));
  Rng rng(51);
  for (int trial = 0; trial < 10; ++trial) {
    Matrix W = random_spd(rng, 4);
    double c1 = cond_spd(W);
    Matrix W2 = W;
    for (auto& v : W2.data()) v *= 37.5;
    CHECK(cond_spd(W2) == doctest::Approx(c1).epsilon(1e-10));
  }
  Matrix neg(2, 2, 0.0);
  neg(0, 0) = 1;
  neg(1, 1) = -1;
  CHECK_THROWS_AS(cond_spd(neg), NotPositiveDefinite);
}

TEST_CASE("cond_spd matches the worked condition numbers") {
  // W = L^T D L with l21 = 1000.5, D = diag(4, 0.05)
  auto build = [](double l21, double d1, double d2) {
    Matrix W(2, 2);
    W(0, 0) = d1 + l21 * l21 * d2;
    W(0, 1) = l21 * d2;
    W(1, 0) = l21 * d2;
    W(1, 1) = d2;
    return W;
  };
  CHECK(cond_spd(build(1000.5, 4, 0.05)) ==
        doctest::Approx(1.2527e10).epsilon(1e-3));
  CHECK(cond_spd(build(0.5, 4, 0.05)) == doctest::Approx(80.5071).epsilon(1e-3));
}

TEST_CASE("matrix text round-trip keeps 17 digits") {
  Rng rng(61);
  Matrix A(3, 4);
  for (auto& v : A.data()) v = rng.gaussian() * std::pow(10.0, rng.uniform_int(-8, 8));
  std::stringstream ss;
  write_matrix(ss, A);
  Matrix B = read_matrix(ss);
  CHECK(A == B);  // bitwise round-trip

  Vector y{1.0 / 3.0, -2.5e-13, 7.25};
  std::stringstream sv;
  write_vector(sv, y);
  Vector z = read_vector(sv);
  CHECK(y == z);
}

TEST_CASE("unimodular bookkeeping and bareiss determinant") {
  Unimodular u(4);
  Rng rng(71);
  for (int step = 0; step < 30; ++step) {
    int i = static_cast<int>(rng.uniform_int(0, 3));
    int j = static_cast<int>(rng.uniform_int(0, 3));
    if (i == j) {
      u.apply_swap(i, (i + 1) % 4);
    } else {
      u.apply_igt(i, j, rng.uniform_int(-3, 3));
    }
  }
  CHECK(u.is_inverse_pair());
  long long det = u.Z.det_bareiss();
  CHECK((det == 1 || det == -1));
}
