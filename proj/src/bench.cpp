#include "ils/bench.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <thread>

#include "ils/errors.hpp"
#include "ils/factor.hpp"
#include "ils/rng.hpp"
#include "ils/rounding.hpp"
#include "ils/search.hpp"

namespace ils {

namespace {

Matrix random_unit_lower(Rng& rng, int n) {
  Matrix L = Matrix::identity(n);
  for (int i = 1; i < n; ++i)
    for (int j = 0; j < i; ++j) L(i, j) = rng.gaussian();
  return L;
}

Matrix assemble_ltdl(const Matrix& L, const Vector& d) {
  const std::size_t n = d.size();
  Matrix W(n, n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = std::max(i, j); k < n; ++k) s += L(k, i) * d[k] * L(k, j);
      W(i, j) = s;
    }
  return W;
}

Matrix random_orthogonal(Rng& rng, int n) {
  Matrix A(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) A(i, j) = rng.gaussian();
  QrFactors f = qr_householder(A, Vector(n, 0.0));
  return f.Q1;
}

Matrix assemble_udu(const Matrix& U, const Vector& d) {
  const std::size_t n = d.size();
  Matrix W(n, n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += U(i, k) * d[k] * U(j, k);
      W(i, j) = s;
    }
  return symmetrize(W);
}

Vector random_xhat(Rng& rng, int n) {
  Vector x(n);
  for (int i = 0; i < n; ++i) x[i] = 100.0 * rng.gaussian();
  return x;
}

// Interior eigenvalues log-uniform between the fixed endpoints.
Vector spread_spectrum(Rng& rng, int n, double dlo, double dhi) {
  Vector d(n);
  d[0] = dlo;
  d[n - 1] = dhi;
  double llo = std::log(dlo), lhi = std::log(dhi);
  for (int i = 1; i + 1 < n; ++i) d[i] = std::exp(llo + (lhi - llo) * rng.uniform());
  return d;
}

}  // namespace

std::pair<Matrix, Vector> gen_case(const CaseSpec& spec) {
  const int c = spec.case_id;
  if (c < 1 || c > 9) throw InvalidCase("case " + std::to_string(c));
  int n = c == 8 ? 20 : spec.n;
  if (n < 1) throw InvalidCase("dimension " + std::to_string(n));
  if (c == 4 && n < 4) throw InvalidCase("case 4 needs n >= 4");
  if (c == 8 && (spec.n < 1 || spec.n > 62)) throw InvalidCase("case 8 exponent");
  Rng rng(spec.seed);

  switch (c) {
    case 1: {
      Matrix L = random_unit_lower(rng, n);
      Vector d(n);
      for (int i = 0; i < n; ++i) d[i] = rng.uniform();
      for (double& v : d) v = v > 0.0 ? v : 0.5;  // rand() in (0,1)
      return {assemble_ltdl(L, d), random_xhat(rng, n)};
    }
    case 2: {
      Matrix L = random_unit_lower(rng, n);
      Vector d(n);
      for (int i = 0; i < n; ++i) d[i] = 1.0 / static_cast<double>(n - i);
      return {assemble_ltdl(L, d), random_xhat(rng, n)};
    }
    case 3: {
      Matrix L = random_unit_lower(rng, n);
      Vector d(n);
      for (int i = 0; i < n; ++i) d[i] = 1.0 / static_cast<double>(i + 1);
      return {assemble_ltdl(L, d), random_xhat(rng, n)};
    }
    case 4: {
      Matrix L = random_unit_lower(rng, n);
      Vector d(n, 0.1);
      d[0] = d[1] = d[2] = 200.0;
      return {assemble_ltdl(L, d), random_xhat(rng, n)};
    }
    case 5: {
      Matrix U = random_orthogonal(rng, n);
      Vector d(n);
      for (int i = 0; i < n; ++i) d[i] = rng.uniform();
      for (double& v : d) v = v > 0.0 ? v : 0.5;
      return {assemble_udu(U, d), random_xhat(rng, n)};
    }
    case 6: {
      Matrix U = random_orthogonal(rng, n);
      double q = static_cast<double>(n) / 4.0;
      Vector d = spread_spectrum(rng, n, std::pow(2.0, -q), std::pow(2.0, q));
      return {assemble_udu(U, d), random_xhat(rng, n)};
    }
    case 7: {
      Matrix A(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) A(i, j) = rng.gaussian();
      Matrix W = symmetrize(matmul(transpose(A), A));
      return {W, random_xhat(rng, n)};
    }
    case 8: {
      int kexp = spec.n;  // kappa = 2^k, dimension fixed to 20
      Matrix U = random_orthogonal(rng, n);
      double q = static_cast<double>(kexp) / 2.0;
      Vector d = spread_spectrum(rng, n, std::pow(2.0, -q), std::pow(2.0, q));
      return {assemble_udu(U, d), random_xhat(rng, n)};
    }
    case 9: {
      int m = 2 * n;
      Matrix A(m, n);
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) A(i, j) = rng.gaussian();
      Vector x(n);
      for (int i = 0; i < n; ++i)
        x[i] = static_cast<double>(nint(100.0 * rng.gaussian()));
      double sig = std::sqrt(0.05);
      Vector y(m);
      for (int i = 0; i < m; ++i) {
        double s = sig * rng.gaussian();
        for (int j = 0; j < n; ++j) s += A(i, j) * x[j];
        y[i] = s;
      }
      // W = sigma^2 (A^T A)^-1 and xhat = (A^T A)^-1 A^T y through QR.
      QrFactors f = qr_householder(A, y);
      Vector xhat = solve_upper(f.R, f.ybar);
      Matrix Rinv(n, n, 0.0);
      for (int j = 0; j < n; ++j) {
        Vector e(n, 0.0);
        e[j] = 1.0;
        Vector col = solve_upper(f.R, e);
        for (int i = 0; i < n; ++i) Rinv(i, j) = col[i];
      }
      Matrix W = symmetrize(matmul(Rinv, transpose(Rinv)));
      for (double& v : W.data()) v *= 0.05;
      return {W, xhat};
    }
    default:
      throw InvalidCase("unreachable");
  }
}

std::pair<EilsProblem, IntVector> gen_eils_with_truth(int n, double sigma,
                                                      std::uint64_t seed) {
  if (!(sigma > 0.0)) throw Error("gen_eils: sigma must be positive");
  Rng rng(seed);
  EilsProblem p;
  p.A = Matrix(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) p.A(i, j) = rng.gaussian();
  IntVector x(n);
  for (int i = 0; i < n; ++i) x[i] = rng.uniform_int(-10, 10);
  Vector xr(n);
  for (int i = 0; i < n; ++i) xr[i] = static_cast<double>(x[i]);
  Vector ax = matvec(p.A, xr);
  p.y.resize(n);
  for (int i = 0; i < n; ++i) p.y[i] = ax[i] + sigma * rng.gaussian();
  p.alpha = norm2(ax);
  if (p.alpha == 0.0) p.alpha = 1.0;  // all-zero planted point
  return {p, x};
}

EilsProblem gen_eils(int n, double sigma, std::uint64_t seed) {
  return gen_eils_with_truth(n, sigma, seed).first;
}

double relative_backward_error(const Matrix& W, const Unimodular& uz,
                               const Matrix& L, const Vector& d) {
  const std::size_t n = d.size();
  Matrix M(n, n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = std::max(i, j); k < n; ++k) s += L(k, i) * d[k] * L(k, j);
      M(i, j) = s;
    }
  Matrix Zi = uz.Zinv.to_real();
  Matrix T = matmul(transpose(Zi), matmul(M, Zi));
  Matrix E(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) E(i, j) = W(i, j) - T(i, j);
  return spectral_norm_sym(E) / spectral_norm_sym(W);
}

double relative_backward_error(const Matrix& W, const IntMatrix& Z,
                               const Matrix& L, const Vector& d) {
  const std::size_t n = Z.order();
  long long det = Z.det_bareiss();
  if (det != 1 && det != -1)
    throw NonUnimodular("det = " + std::to_string(det));
  // Adjugate inverse: Zinv = adj(Z)/det, integer because |det| = 1.
  IntMatrix Zinv(n);
  std::vector<long long> minor((n - 1) * (n - 1));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      IntMatrix sub(n - 1);
      for (std::size_t r = 0, rr = 0; r < n; ++r) {
        if (r == j) continue;
        for (std::size_t c = 0, cc = 0; c < n; ++c) {
          if (c == i) continue;
          sub(rr, cc) = Z(r, c);
          ++cc;
        }
        ++rr;
      }
      long long cof = (n == 1) ? 1 : sub.det_bareiss();
      long long sign = ((i + j) % 2 == 0) ? 1 : -1;
      Zinv(i, j) = sign * cof * det;  // det = +-1
    }
  Unimodular uz;
  uz.Z = Z;
  uz.Zinv = Zinv;
  if (!uz.is_inverse_pair()) throw NonUnimodular("adjugate inverse check failed");
  return relative_backward_error(W, uz, L, d);
}

LtdlState reduce_quadratic_by_name(const std::string& method, const Matrix& W,
                                   const Vector& xhat) {
  if (method == "lambda") return lambda_reduce(W, xhat);
  if (method == "mreduction") return mreduction(W, xhat);
  if (method == "preduction") return preduction(W, xhat);
  if (method == "minreduction") return minreduction(W, xhat);
  if (method == "noreduction") return noreduction(W, xhat);
  throw Error("unknown reduction method: " + method);
}

namespace {

const std::vector<std::string> kAllMethods = {
    "lambda", "mreduction", "preduction", "minreduction", "noreduction"};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

struct Instance {
  int case_id, n;
  std::uint64_t seed;
};

template <typename Work>
void parallel_for(std::size_t count, int threads, Work&& work) {
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) work(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  int nt = std::min<std::size_t>(threads, count);
  for (int t = 0; t < nt; ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1))
        work(i);
    });
  for (auto& th : pool) th.join();
}

}  // namespace

std::vector<BenchRecord> run_bench(const BenchConfig& cfg) {
  std::vector<std::string> methods =
      cfg.methods.empty() ? kAllMethods : cfg.methods;
  std::vector<Instance> instances;
  for (int c : cfg.cases)
    for (int n = cfg.nmin; n <= cfg.nmax; ++n)
      for (int run = 0; run < cfg.runs; ++run)
        instances.push_back({c, n, mix_seed(cfg.seed, c, n, run)});

  std::vector<std::vector<BenchRecord>> slots(instances.size());
  parallel_for(instances.size(), cfg.threads, [&](std::size_t idx) {
    const Instance& in = instances[idx];
    std::vector<BenchRecord>& out = slots[idx];
    for (const std::string& method : methods) {
      BenchRecord rec;
      rec.case_id = std::to_string(in.case_id);
      rec.n = in.n;
      rec.seed = in.seed;
      rec.method = method;
      try {
        auto [W, xhat] = gen_case({in.case_id, in.n, in.seed});
        auto t0 = std::chrono::steady_clock::now();
        LtdlState st = reduce_quadratic_by_name(method, W, xhat);
        rec.reduce_s = seconds_since(t0);
        rec.rbe = relative_backward_error(W, st.uz, st.L, st.d);
        t0 = std::chrono::steady_clock::now();
        SearchOutcome res = search_quadratic(st);
        rec.search_s = seconds_since(t0);
        rec.nodes = res.nodes;
        rec.objective = res.beta_sq;
      } catch (const std::exception& e) {
        rec.status = e.what();
      }
      out.push_back(std::move(rec));
    }
  });

  std::vector<BenchRecord> records;
  for (auto& s : slots)
    for (auto& r : s) records.push_back(std::move(r));
  return records;
}

std::vector<BenchRecord> run_eils_bench(const EilsBenchConfig& cfg) {
  std::vector<Instance> instances;
  for (int n = cfg.nmin; n <= cfg.nmax; ++n)
    for (int run = 0; run < cfg.runs; ++run)
      instances.push_back({0, n, mix_seed(cfg.seed, 1000, n, run)});

  std::vector<std::vector<BenchRecord>> slots(instances.size());
  parallel_for(instances.size(), cfg.threads, [&](std::size_t idx) {
    const Instance& in = instances[idx];
    for (const char* method : {"lll", "clll"}) {
      BenchRecord rec;
      rec.case_id = "eils";
      rec.n = in.n;
      rec.seed = in.seed;
      rec.method = method;
      try {
        EilsProblem p = gen_eils(in.n, cfg.sigma, in.seed);
        auto t0 = std::chrono::steady_clock::now();
        QrzReduction red = method == std::string("clll") ? clll_reduce(p)
                                                         : lll_reduce(p.A, p.y);
        rec.reduce_s = seconds_since(t0);
        t0 = std::chrono::steady_clock::now();
        SearchOutcome res = search_eils(red.R, red.ybar, p.alpha);
        rec.search_s = seconds_since(t0);
        rec.nodes = res.nodes;
        rec.objective = res.found ? res.beta_sq : -1.0;
      } catch (const std::exception& e) {
        rec.status = e.what();
      }
      slots[idx].push_back(std::move(rec));
    }
  });

  std::vector<BenchRecord> records;
  for (auto& s : slots)
    for (auto& r : s) records.push_back(std::move(r));
  return records;
}

void write_csv(std::ostream& os, const std::vector<BenchRecord>& records) {
  os << "case,n,seed,method,reduce_s,search_s,nodes,rbe,objective,status\n";
  char buf[512];
  for (const BenchRecord& r : records) {
    std::snprintf(buf, sizeof buf, "%s,%d,%llu,%s,%.9f,%.9f,%llu,%.17g,%.17g,%s",
                  r.case_id.c_str(), r.n,
                  static_cast<unsigned long long>(r.seed), r.method.c_str(),
                  r.reduce_s, r.search_s, r.nodes, r.rbe, r.objective,
                  r.status.c_str());
    os << buf << '\n';
  }
}

int env_threads() {
  const char* v = std::getenv("ILS_THREADS");
  if (!v) return 1;
  int t = std::atoi(v);
  return t >= 1 ? t : 1;
}

}  // namespace ils
