#include "ils/eils.hpp"

#include <cmath>

#include "ils/errors.hpp"
#include "ils/factor.hpp"
#include "ils/rounding.hpp"

namespace ils {

std::pair<long long, long long> box_bounds(const Matrix& R, double alpha, int k) {
  const std::size_t n = R.rows();
  Vector e(n, 0.0);
  e[k] = 1.0;
  Vector q = solve_transposed_upper(R, e);
  double radius = alpha * norm2(q);
  return {static_cast<long long>(std::ceil(-radius)),
          static_cast<long long>(std::floor(radius))};
}

BoxEnvelope box_envelope(const Matrix& R, double alpha) {
  BoxEnvelope env;
  const int n = static_cast<int>(R.rows());
  env.lbar.resize(n);
  env.ubar.resize(n);
  for (int k = 0; k < n; ++k) {
    auto [lo, hi] = box_bounds(R, alpha, k);
    env.lbar[k] = lo;
    env.ubar[k] = hi;
  }
  return env;
}

std::optional<long long> second_nearest_on_interval(double c, long long lo,
                                                    long long hi) {
  if (hi < lo || hi == lo) return std::nullopt;
  // Walk the zig-zag order around nint(c) and keep the second value that
  // falls inside [lo, hi]; the interval has >= 2 integers so it exists.
  long long z = nint(c);
  long long step = sgn(c - static_cast<double>(z));
  int inside = 0;
  while (true) {
    if (z >= lo && z <= hi) {
      if (++inside == 2) return z;
    }
    z += step;
    step = -step - sgn(static_cast<double>(step));
  }
}

namespace {

struct SwapMetric {
  bool usable = false;  // interval held at least one integer
  double value = 0.0;
  double rkk = 0.0;
};

SwapMetric clll_metric(const Matrix& R, const Vector& ybar, double alpha, int k) {
  SwapMetric m;
  m.rkk = R(k, k);
  auto [lo, hi] = box_bounds(R, alpha, k);
  double cbar = ybar[k] / R(k, k);
  if (hi < lo) return m;
  m.usable = true;
  if (auto z2 = second_nearest_on_interval(cbar, lo, hi)) {
    m.value = std::abs(R(k, k) * (static_cast<double>(*z2) - cbar));
  } else {
    // Single feasible integer: score the nearest one but keep the implicit
    // half-unit offset so a large diagonal still wins.
    double znear = static_cast<double>(std::clamp(nint(cbar), lo, hi));
    m.value = std::abs(R(k, k)) * std::max(std::abs(znear - cbar), 0.5);
  }
  return m;
}

}  // namespace

QrzReduction clll_reduce(const EilsProblem& p) {
  if (!(p.alpha > 0.0)) throw Error("clll: alpha must be positive");
  QrzReduction s;
  {
    QrFactors f = qr_householder(p.A, p.y);
    s.R = std::move(f.R);
    s.ybar = std::move(f.ybar);
    s.uz = Unimodular(s.R.rows());
    s.resid2 = f.resid2;
  }
  const int n = static_cast<int>(s.R.rows());
  const long long cap = 10LL * n * n * n;
  int k = 1;
  while (k < n) {
    for (int i = k - 1; i >= 0; --i) igt_upper(s, i, k);

    // Trial state with columns k-1, k exchanged; committed only on a win.
    QrzReduction trial;
    trial.R = s.R;
    trial.ybar = s.ybar;
    trial.uz = Unimodular(n);
    permute_adjacent(trial, k);

    SwapMetric cur = clll_metric(s.R, s.ybar, p.alpha, k);
    SwapMetric alt = clll_metric(trial.R, trial.ybar, p.alpha, k);
    bool commit = (cur.usable && alt.usable) ? (alt.value > cur.value)
                                             : (alt.rkk > cur.rkk);
    if (commit) {
      s.R = std::move(trial.R);
      s.ybar = std::move(trial.ybar);
      s.uz.apply_swap(k - 1, k);
      ++s.swap_count;
      if (s.swap_count > cap) throw NonTermination("clll swap cap exceeded");
      if (k > 1) --k;
    } else {
      ++k;
    }
  }
  return s;
}

SearchOutcome solve_eils(const EilsProblem& p, EilsStrategy strategy,
                         SearchTrace* trace, double beta0) {
  QrzReduction red = strategy == EilsStrategy::clll ? clll_reduce(p)
                                                    : lll_reduce(p.A, p.y);
  SearchOutcome out = search_eils(red.R, red.ybar, p.alpha, beta0, trace);
  if (out.found) out.x_opt = red.uz.Z.mul(out.z_opt);
  return out;
}

}  // namespace ils
