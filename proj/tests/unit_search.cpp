#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>

#include "ils/bench.hpp"
#include "ils/dense.hpp"
#include "ils/reduce_quadratic.hpp"
#include "ils/reduce_standard.hpp"
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

// Non-dash entries of one column of the trace row list.
IntVector row_column(const SearchTrace& t, std::size_t level) {
  IntVector vals;
  for (const auto& row : t.rows)
    if (row[level]) vals.push_back(*row[level]);
  return vals;
}

}  // namespace

TEST_CASE("diagonal standard search rounds componentwise") {
  SearchOutcome out = search_standard(Matrix::identity(2), Vector{0.4, -0.3});
  CHECK(out.z_opt == IntVector{0, 0});
  CHECK(out.beta_sq == doctest::Approx(0.25));
  CHECK(out.found);
  CHECK(out.nodes >= 2);
}

TEST_CASE("quadratic search on identity factors") {
  LtdlState st{Matrix::identity(2), Vector{1, 1}, Unimodular(2),
               Vector{0.4, -0.3}};
  SearchOutcome out = search_quadratic(st);
  CHECK(out.z_opt == IntVector{0, 0});
}

TEST_CASE("2x2 worked example: solution, trace and node invariance") {
  Vector xhat{5.38, 18.34};
  LtdlState plain = noreduction(w41(), xhat);
  LtdlState igt = noreduction(w41(), xhat);
  gauss_igt(igt, 1, 0);

  SearchTrace ta, tb;
  SearchOutcome oa = search_quadratic(plain, kInfiniteRadius, &ta);
  SearchOutcome ob = search_quadratic(igt, kInfiniteRadius, &tb);

  CHECK(oa.x_opt == IntVector{2, 18});
  CHECK(ob.x_opt == IntVector{2, 18});
  CHECK(oa.nodes == ob.nodes);
  CHECK(oa.beta_sq == doctest::Approx(ob.beta_sq).epsilon(1e-12));

  // first full point and the level-2 walk
  REQUIRE(!ta.rows.empty());
  CHECK(*ta.rows[0][0] == 2);
  CHECK(*ta.rows[0][1] == 18);
  CHECK(*tb.rows[0][0] == -178);
  CHECK(*tb.rows[0][1] == 18);
  IntVector want{18, 19, 17, 20};
  CHECK(row_column(ta, 1) == want);
  CHECK(row_column(tb, 1) == want);
  // exhaustion row at the end
  CHECK(!ta.rows.back()[0].has_value());
  CHECK(!ta.rows.back()[1].has_value());
}

TEST_CASE("quad_to_standard identity and objective equivalence") {
  auto [R, ybar] = quad_to_standard(Matrix::identity(3), Vector{0.5, 1.5, -2.0});
  CHECK(R == Matrix::identity(3));
  CHECK(ybar == Vector{0.5, 1.5, -2.0});

  auto [R41, y41] = quad_to_standard(w41(), Vector{5.38, 18.34});
  SearchOutcome out = search_standard(R41, y41);
  CHECK(out.z_opt == IntVector{2, 18});

  Rng rng(7);
  for (int trial = 0; trial < 5; ++trial) {
    auto [W, xhat] = gen_case({7, 4, rng.next()});
    auto [R2, y2] = quad_to_standard(W, xhat);
    LtdlState st = noreduction(W, xhat);
    for (int pt = 0; pt < 20; ++pt) {
      IntVector z(4);
      for (auto& v : z) v = rng.uniform_int(-40, 40);
      double a = objective_standard(R2, y2, z);
      double b = objective_quadratic(st, z);
      CHECK(a == doctest::Approx(b).epsilon(1e-10));
    }
  }
}

TEST_CASE("standard search equals brute force on small instances") {
  Rng rng(99);
  for (int trial = 0; trial < 30; ++trial) {
    int n = 2 + static_cast<int>(rng.uniform_int(0, 2));
    Matrix A(n + 2, n);
    for (auto& v : A.data()) v = rng.gaussian();
    Vector y(n + 2);
    for (auto& v : y) v = 3.0 * rng.gaussian();
    QrzReduction red = lll_reduce(A, y);
    SearchOutcome out = search_standard(red.R, red.ybar);
    auto [best, argbest] = oracle::brute_standard(red.R, red.ybar, out.babai, 5);
    CHECK(out.beta_sq == doctest::Approx(best).epsilon(1e-9));
  }
}

TEST_CASE("radius shrinks monotonically and babai bounds the optimum") {
  Rng rng(101);
  for (int trial = 0; trial < 10; ++trial) {
    auto [W, xhat] = gen_case({1, 5, rng.next()});
    LtdlState st = noreduction(W, xhat);
    SearchOutcome out = search_quadratic(st);
    for (std::size_t i = 1; i < out.beta_sq_history.size(); ++i)
      CHECK(out.beta_sq_history[i] < out.beta_sq_history[i - 1]);
    double fb = objective_quadratic(st, out.babai);
    double fo = objective_quadratic(st, out.z_opt);
    CHECK(fb >= fo - 1e-12);
    if (out.babai != out.z_opt) CHECK(fb > fo);
  }
}

TEST_CASE("zig-zag enumeration never skips an integer inside a level") {
  Rng rng(103);
  for (int trial = 0; trial < 10; ++trial) {
    auto [W, xhat] = gen_case({1, 4, rng.next()});
    LtdlState st = noreduction(W, xhat);
    SearchTrace trace;
    search_quadratic(st, kInfiniteRadius, &trace);
    // Split the per-level assignments into visits (a new visit starts when a
    // deeper level appears in between) and check each visit enumerates a
    // contiguous run around its first value.
    std::map<int, std::vector<IntVector>> visits;
    std::map<int, bool> open;
    for (auto [level, value] : trace.nodes) {
      for (auto& [lv, o] : open)
        if (lv < level) o = false;  // deeper level was visited: visit closed
      if (!open.count(level) || !open[level]) {
        visits[level].emplace_back();
        open[level] = true;
      }
      visits[level].back().push_back(value);
    }
    for (auto& [level, vs] : visits)
      for (auto& run : vs) {
        IntVector sorted = run;
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t i = 1; i < sorted.size(); ++i)
          CHECK(sorted[i] == sorted[i - 1] + 1);
      }
  }
}

TEST_CASE("eils search basics") {
  SearchOutcome out =
      search_eils(Matrix::identity(2), Vector{0.7, -1.4}, 0.5);
  CHECK(out.found);
  CHECK(out.z_opt == IntVector{0, 0});  // only feasible point

  out = search_eils(Matrix::identity(2), Vector{1.2, 0.3}, 1.5);
  CHECK(out.found);
  CHECK(out.z_opt == IntVector{1, 0});

  // finite warm start below the best feasible objective: nothing found
  out = search_eils(Matrix::identity(2), Vector{5.0, 5.0}, 0.5, 1.0);
  CHECK(!out.found);
}

TEST_CASE("eils search equals brute force over the box") {
  Rng rng(107);
  int checked = 0;
  for (int trial = 0; trial < 30; ++trial) {
    int n = 2 + static_cast<int>(rng.uniform_int(0, 2));
    auto [p, truth] = gen_eils_with_truth(n, 1.0, rng.next());
    QrzReduction red = lll_reduce(p.A, p.y);
    SearchOutcome out = search_eils(red.R, red.ybar, p.alpha);
    BoxEnvelope env = box_envelope(red.R, p.alpha);
    auto [best, argbest] =
        oracle::brute_eils(red.R, red.ybar, p.alpha, env.lbar, env.ubar);
    REQUIRE(out.found);
    CHECK(out.beta_sq == doctest::Approx(best).epsilon(1e-9));
    ++checked;
    // every accepted point satisfies the constraint
    double c = 0.0;
    Vector rz(n, 0.0);
    for (int i = 0; i < n; ++i) {
      double s = 0.0;
      for (int j = i; j < n; ++j) s += red.R(i, j) * static_cast<double>(out.z_opt[j]);
      c += s * s;
    }
    CHECK(c <= p.alpha * p.alpha * (1 + 1e-9));
  }
  CHECK(checked == 30);
}
