#pragma once

#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "ils/dense.hpp"
#include "ils/reduce_quadratic.hpp"

namespace ils {

inline constexpr double kInfiniteRadius = std::numeric_limits<double>::infinity();

// Optional instrumentation. A node is one integer assignment at some level
// (fresh assignment after a downward move, or a re-enumeration step).
// A row is appended on every valid full point (all values) and on every
// invalid-level event (dashes, i.e. nullopt, at levels 1..k and the current
// values above); the search ends with an all-dash row. The row sequence is
// what the benchmark trace files serialize.
struct SearchTrace {
  bool capture_nodes = true;
  std::vector<std::pair<int, long long>> nodes;            // (level index, value)
  std::vector<std::vector<std::optional<long long>>> rows;

  void note_node(int level, long long value) {
    if (capture_nodes) nodes.emplace_back(level, value);
  }
  void point_row(const IntVector& z);
  void fail_row(int level, const IntVector& z);
};

struct SearchOutcome {
  IntVector z_opt;   // optimal point in reduced coordinates
  IntVector x_opt;   // original coordinates when a transformation is known
  IntVector babai;   // first full point found (reduced coordinates)
  double beta_sq = 0.0;                 // final squared radius
  unsigned long long nodes = 0;         // integer assignments
  bool found = false;
  std::vector<double> beta_sq_history;  // shrink sequence, strictly decreasing
};

// Depth-first Schnorr-Euchner enumeration of min ||ybar - R z||^2 over Z^n.
// R must be upper triangular with positive diagonal; beta0 is the initial
// radius (not squared), infinite by default.
SearchOutcome search_standard(const Matrix& R, const Vector& ybar,
                              double beta0 = kInfiniteRadius,
                              SearchTrace* trace = nullptr);

// Enumeration of min sum_j (z_j - zbar_j)^2 / d_j with
// zbar_j = zhat_j + sum_{i>j} l_ij (z_i - zbar_i); x_opt = Z^-T z_opt.
SearchOutcome search_quadratic(const LtdlState& st,
                               double beta0 = kInfiniteRadius,
                               SearchTrace* trace = nullptr);

// Ellipsoid-constrained enumeration: minimizes ||ybar - R z||^2 subject to
// ||R z||^2 <= alpha^2, clamping each level to its feasible interval.
// Infeasibility within the radius is reported as found = false.
SearchOutcome search_eils(const Matrix& R, const Vector& ybar, double alpha,
                          double beta0 = kInfiniteRadius,
                          SearchTrace* trace = nullptr);

// Bridge from the quadratic form to the standard form: with W = L^T D L,
// R = D^{-1/2} L^{-T} and ybar = R xhat satisfy
// ||ybar - R x||^2 = (x - xhat)^T W^-1 (x - xhat) for every x.
std::pair<Matrix, Vector> quad_to_standard(const Matrix& W, const Vector& xhat);

// Objective helpers (used by tests and the CLI result line).
double objective_standard(const Matrix& R, const Vector& ybar, const IntVector& z);
double objective_quadratic(const LtdlState& st, const IntVector& z);

}  // namespace ils
