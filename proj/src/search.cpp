#include "ils/search.hpp"

#include <cmath>

#include "ils/errors.hpp"
#include "ils/factor.hpp"
#include "ils/rounding.hpp"

namespace ils {

void SearchTrace::point_row(const IntVector& z) {
  std::vector<std::optional<long long>> row(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) row[i] = z[i];
  rows.push_back(std::move(row));
}

void SearchTrace::fail_row(int level, const IntVector& z) {
  std::vector<std::optional<long long>> row(z.size());
  for (std::size_t i = static_cast<std::size_t>(level) + 1; i < z.size(); ++i)
    row[i] = z[i];
  rows.push_back(std::move(row));
}

namespace {

void check_search_inputs(const Matrix& R, const Vector& ybar, double beta0) {
  std::size_t n = R.rows();
  if (R.cols() != n || ybar.size() != n) throw Error("search: shape mismatch");
  if (!has_positive_diagonal(R)) throw Error("search: R diagonal must be positive");
  if (!(beta0 > 0.0)) throw Error("search: beta0 must be positive");
}

}  // namespace

// The three searches share the depth-first skeleton: at a level, test the
// current integer against the remaining budget; descend on success, otherwise
// move up and take the next zig-zag value there. A valid point at the bottom
// shrinks the radius and the walk resumes one level up.

SearchOutcome search_standard(const Matrix& R, const Vector& ybar, double beta0,
                              SearchTrace* trace) {
  check_search_inputs(R, ybar, beta0);
  const int n = static_cast<int>(R.rows());
  SearchOutcome out;
  double beta2 = beta0 == kInfiniteRadius ? kInfiniteRadius : beta0 * beta0;

  IntVector z(n, 0), dlt(n, 0);
  Vector c(n, 0.0), partial(n, 0.0);

  auto enter = [&](int k) {
    double b = 0.0;
    for (int j = k + 1; j < n; ++j) b += R(k, j) * static_cast<double>(z[j]);
    c[k] = (ybar[k] - b) / R(k, k);
    z[k] = nint(c[k]);
    dlt[k] = sgn(c[k] - static_cast<double>(z[k]));
    ++out.nodes;
    if (trace) trace->note_node(k, z[k]);
  };
  auto enumerate = [&](int k) {
    z[k] += dlt[k];
    dlt[k] = -dlt[k] - sgn(static_cast<double>(dlt[k]));
    ++out.nodes;
    if (trace) trace->note_node(k, z[k]);
  };

  int k = n - 1;
  partial[k] = 0.0;
  enter(k);
  while (true) {
    double t = sq(R(k, k) * (static_cast<double>(z[k]) - c[k]));
    if (partial[k] + t > beta2) {
      if (trace) trace->fail_row(k, z);
      if (k == n - 1) break;
      ++k;
      enumerate(k);
    } else if (k > 0) {
      partial[k - 1] = partial[k] + t;
      --k;
      enter(k);
    } else {
      double obj = partial[0] + t;
      if (obj < beta2) {
        beta2 = obj;
        out.z_opt = z;
        out.found = true;
        out.beta_sq_history.push_back(obj);
        if (out.babai.empty()) out.babai = z;
        if (trace) trace->point_row(z);
      }
      if (n == 1) break;
      k = 1;
      enumerate(k);
    }
  }
  out.beta_sq = beta2;
  out.x_opt = out.z_opt;
  return out;
}

SearchOutcome search_quadratic(const LtdlState& st, double beta0,
                               SearchTrace* trace) {
  const int n = static_cast<int>(st.d.size());
  if (!(beta0 > 0.0)) throw Error("search: beta0 must be positive");
  SearchOutcome out;
  double beta2 = beta0 == kInfiniteRadius ? kInfiniteRadius : beta0 * beta0;

  IntVector z(n, 0), dlt(n, 0);
  Vector zbar(n, 0.0), partial(n, 0.0);

  auto enter = [&](int k) {
    double s = st.zhat[k];
    for (int i = k + 1; i < n; ++i)
      s += st.L(i, k) * (static_cast<double>(z[i]) - zbar[i]);
    zbar[k] = s;
    z[k] = nint(s);
    dlt[k] = sgn(s - static_cast<double>(z[k]));
    ++out.nodes;
    if (trace) trace->note_node(k, z[k]);
  };
  auto enumerate = [&](int k) {
    z[k] += dlt[k];
    dlt[k] = -dlt[k] - sgn(static_cast<double>(dlt[k]));
    ++out.nodes;
    if (trace) trace->note_node(k, z[k]);
  };

  int k = n - 1;
  partial[k] = 0.0;
  enter(k);
  while (true) {
    double t = sq(static_cast<double>(z[k]) - zbar[k]) / st.d[k];
    if (partial[k] + t > beta2) {
      if (trace) trace->fail_row(k, z);
      if (k == n - 1) break;
      ++k;
      enumerate(k);
    } else if (k > 0) {
      partial[k - 1] = partial[k] + t;
      --k;
      enter(k);
    } else {
      double obj = partial[0] + t;
      if (obj < beta2) {
        beta2 = obj;
        out.z_opt = z;
        out.found = true;
        out.beta_sq_history.push_back(obj);
        if (out.babai.empty()) out.babai = z;
        if (trace) trace->point_row(z);
      }
      if (n == 1) break;
      k = 1;
      enumerate(k);
    }
  }
  out.beta_sq = beta2;
  if (out.found) out.x_opt = st.uz.Zinv.mul_transpose(out.z_opt);  // x = Z^-T z
  return out;
}

SearchOutcome search_eils(const Matrix& R, const Vector& ybar, double alpha,
                          double beta0, SearchTrace* trace) {
  check_search_inputs(R, ybar, beta0);
  if (!(alpha > 0.0)) throw Error("search_eils: alpha must be positive");
  const int n = static_cast<int>(R.rows());
  SearchOutcome out;
  double beta2 = beta0 == kInfiniteRadius ? kInfiniteRadius : beta0 * beta0;

  IntVector z(n, 0), dlt(n, 0), lo(n, 0), hi(n, 0);
  Vector c(n, 0.0), partial(n, 0.0), b(n, 0.0), s(n, 0.0);
  std::vector<char> lbound(n, 0), ubound(n, 0);

  // Step 2: interval from the constraint, then the clamped zig-zag start.
  // Returns false when the interval is empty.
  auto enter = [&](int k) -> bool {
    lbound[k] = ubound[k] = 0;
    double root = std::sqrt(std::max(s[k], 0.0));
    lo[k] = static_cast<long long>(std::ceil((-root - b[k]) / R(k, k)));
    hi[k] = static_cast<long long>(std::floor((root - b[k]) / R(k, k)));
    if (hi[k] < lo[k]) return false;
    if (hi[k] == lo[k]) lbound[k] = ubound[k] = 1;
    c[k] = (ybar[k] - b[k]) / R(k, k);
    z[k] = nint(c[k]);
    if (z[k] <= lo[k]) {
      z[k] = lo[k];
      lbound[k] = 1;
      dlt[k] = 1;
    } else if (z[k] >= hi[k]) {
      z[k] = hi[k];
      ubound[k] = 1;
      dlt[k] = -1;
    } else {
      dlt[k] = sgn(c[k] - static_cast<double>(z[k]));
    }
    ++out.nodes;
    if (trace) trace->note_node(k, z[k]);
    return true;
  };
  // Step 6; returns false when the level is exhausted.
  auto enumerate = [&](int k) -> bool {
    if (lbound[k] && ubound[k]) return false;
    z[k] += dlt[k];
    ++out.nodes;
    if (trace) trace->note_node(k, z[k]);
    if (z[k] == lo[k]) {
      lbound[k] = 1;
      dlt[k] = -dlt[k] - sgn(static_cast<double>(dlt[k]));
    } else if (z[k] == hi[k]) {
      ubound[k] = 1;
      dlt[k] = -dlt[k] - sgn(static_cast<double>(dlt[k]));
    } else if (lbound[k]) {
      dlt[k] = 1;
    } else if (ubound[k]) {
      dlt[k] = -1;
    } else {
      dlt[k] = -dlt[k] - sgn(static_cast<double>(dlt[k]));
    }
    return true;
  };

  int k = n - 1;
  partial[k] = 0.0;
  b[k] = 0.0;
  // The constraint is closed; a 1e-12 relative slack keeps points lying
  // exactly on the boundary feasible through the chained s_k subtractions.
  s[k] = alpha * alpha * (1.0 + 1e-12);
  bool have_level = enter(k);
  while (true) {
    if (have_level) {
      double t = sq(R(k, k) * (static_cast<double>(z[k]) - c[k]));
      if (partial[k] + t > beta2) {
        have_level = false;  // fall through to the invalid-point step
      } else if (k > 0) {
        partial[k - 1] = partial[k] + t;
        double rb = R(k, k) * static_cast<double>(z[k]) + b[k];
        s[k - 1] = s[k] - rb * rb;
        double bb = 0.0;
        for (int j = k; j < n; ++j) bb += R(k - 1, j) * static_cast<double>(z[j]);
        b[k - 1] = bb;
        --k;
        have_level = enter(k);
        continue;
      } else {
        double obj = partial[0] + t;
        if (obj < beta2) {
          beta2 = obj;
          out.z_opt = z;
          out.found = true;
          out.beta_sq_history.push_back(obj);
          if (out.babai.empty()) out.babai = z;
          if (trace) trace->point_row(z);
        }
        if (n == 1) break;
        k = 1;
        have_level = enumerate(k);
        continue;
      }
    }
    // Step 4: invalid point at level k.
    if (trace) trace->fail_row(k, z);
    if (k == n - 1) break;
    ++k;
    have_level = enumerate(k);
  }
  out.beta_sq = beta2;
  out.x_opt = out.z_opt;
  return out;
}

std::pair<Matrix, Vector> quad_to_standard(const Matrix& W, const Vector& xhat) {
  LtdlFactors f = ltdl(W);
  const std::size_t n = f.d.size();
  // Columns of L^-1 by forward substitution; R = D^{-1/2} L^-T is upper
  // triangular with positive diagonal d_i^{-1/2}.
  Matrix Linv(n, n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    Vector e(n, 0.0);
    e[j] = 1.0;
    Vector col = solve_lower(f.L, e);
    for (std::size_t i = 0; i < n; ++i) Linv(i, j) = col[i];
  }
  Matrix R(n, n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double scale = 1.0 / std::sqrt(f.d[i]);
    for (std::size_t j = i; j < n; ++j) R(i, j) = scale * Linv(j, i);
  }
  return {R, matvec(R, xhat)};
}

double objective_standard(const Matrix& R, const Vector& ybar, const IntVector& z) {
  const std::size_t n = R.rows();
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double r = ybar[i];
    for (std::size_t j = i; j < n; ++j) r -= R(i, j) * static_cast<double>(z[j]);
    s += r * r;
  }
  return s;
}

double objective_quadratic(const LtdlState& st, const IntVector& z) {
  // sum_j (z_j - zbar_j)^2 / d_j with the conditional estimates unrolled
  // from the top level down.
  const int n = static_cast<int>(st.d.size());
  Vector zbar(n, 0.0);
  double s = 0.0;
  for (int k = n - 1; k >= 0; --k) {
    double v = st.zhat[k];
    for (int i = k + 1; i < n; ++i)
      v += st.L(i, k) * (static_cast<double>(z[i]) - zbar[i]);
    zbar[k] = v;
    s += sq(static_cast<double>(z[k]) - v) / st.d[k];
  }
  return s;
}

}  // namespace ils
