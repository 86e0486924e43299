#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "ils/dense.hpp"
#include "ils/eils.hpp"
#include "ils/reduce_quadratic.hpp"

namespace ils {

// One simulation family. For case 8 the dimension is fixed to 20 and `n`
// carries the condition-number exponent k (kappa = 2^k); everywhere else `n`
// is the dimension.
struct CaseSpec {
  int case_id = 1;
  int n = 5;
  std::uint64_t seed = 0;
};

// Covariance matrix and real-valued estimate for the quadratic form.
std::pair<Matrix, Vector> gen_case(const CaseSpec& spec);

// Square Gaussian A, planted integer x with entries uniform on [-10, 10],
// y = A x + v with v ~ N(0, sigma^2 I), alpha = ||A x||.
EilsProblem gen_eils(int n, double sigma, std::uint64_t seed);
// Also exposes the planted point for tests.
std::pair<EilsProblem, IntVector> gen_eils_with_truth(int n, double sigma,
                                                      std::uint64_t seed);

// ||W - Z^-T L^T D L Z^-1||_2 / ||W||_2 with the exact integer inverse.
double relative_backward_error(const Matrix& W, const Unimodular& uz,
                               const Matrix& L, const Vector& d);
// Overload inverting Z exactly (adjugate over the integers, order <= 12);
// throws NonUnimodular when |det Z| != 1.
double relative_backward_error(const Matrix& W, const IntMatrix& Z,
                               const Matrix& L, const Vector& d);

LtdlState reduce_quadratic_by_name(const std::string& method, const Matrix& W,
                                   const Vector& xhat);

struct BenchConfig {
  std::vector<int> cases;
  int nmin = 5, nmax = 20;
  int runs = 1;
  std::uint64_t seed = 1;
  std::vector<std::string> methods;  // empty = all five reductions
  int threads = 1;                   // capped by ILS_THREADS at the CLI
};

struct BenchRecord {
  std::string case_id;
  int n = 0;
  std::uint64_t seed = 0;
  std::string method;
  double reduce_s = 0.0, search_s = 0.0;
  unsigned long long nodes = 0;
  double rbe = 0.0;
  double objective = 0.0;
  std::string status = "ok";  // error name when the instance failed
};

// One record per (case, n, run, method); deterministic given the seed, with
// per-instance streams split by hashing so thread count does not matter.
std::vector<BenchRecord> run_bench(const BenchConfig& cfg);

struct EilsBenchConfig {
  double sigma = 1.0;
  int nmin = 5, nmax = 8;
  int runs = 20;
  std::uint64_t seed = 1;
  int threads = 1;
};

std::vector<BenchRecord> run_eils_bench(const EilsBenchConfig& cfg);

// Header: case,n,seed,method,reduce_s,search_s,nodes,rbe,objective,status
void write_csv(std::ostream& os, const std::vector<BenchRecord>& records);

int env_threads();  // ILS_THREADS, default 1

}  // namespace ils
