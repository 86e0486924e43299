#pragma once

#include <optional>
#include <utility>

#include "ils/dense.hpp"
#include "ils/reduce_standard.hpp"
#include "ils/search.hpp"

namespace ils {

// min ||y - A x||^2 subject to ||A x||^2 <= alpha^2 over integer x.
struct EilsProblem {
  Matrix A;
  Vector y;
  double alpha = 0.0;
};

// Smallest axis-aligned integer box containing {z : ||R z|| <= alpha}.
struct BoxEnvelope {
  IntVector lbar, ubar;
};

// Interval of z_k over the constraint ellipsoid: solve R^T q = e_k, then
// ubar_k = floor(alpha ||q||), lbar_k = ceil(-alpha ||q||).
std::pair<long long, long long> box_bounds(const Matrix& R, double alpha, int k);
BoxEnvelope box_envelope(const Matrix& R, double alpha);

// Second-closest integer to c inside [lo, hi], ordered by distance with ties
// resolved by the nearest-integer magnitude rule and then zig-zag order.
// Empty when the interval holds fewer than two integers.
std::optional<long long> second_nearest_on_interval(double c, long long lo,
                                                    long long hi);

// Constrained LLL: at each column, size-reduce, then compare the current and
// column-swapped states by |r_kk (z_k - cbar_k)| where cbar_k = ybar_k/r_kk
// and z_k is the second nearest feasible integer on the (recomputed) box
// interval; commit the swap when the trial value is larger.
QrzReduction clll_reduce(const EilsProblem& p);

enum class EilsStrategy { lll, clll };

// Reduce with the chosen strategy, search with an infinite initial radius,
// and map the solution back through Z.
SearchOutcome solve_eils(const EilsProblem& p, EilsStrategy strategy,
                         SearchTrace* trace = nullptr,
                         double beta0 = kInfiniteRadius);

}  // namespace ils
