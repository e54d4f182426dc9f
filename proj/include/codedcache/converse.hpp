#pragma once

#include <cstdint>
#include <vector>

#include "codedcache/index_coding.hpp"
#include "codedcache/rational.hpp"
#include "codedcache/tradeoff_curve.hpp"

namespace codedcache {

/// x[t] = total length, over all files, of subfiles cached by exactly t users.
struct SubfileProfile {
  std::vector<Rational> x;

  static SubfileProfile from_split(const SubfileSplit& split);

  Rational total_length() const;
  /// Sum of t * x[t]: the aggregate cache occupancy.
  Rational cache_occupancy() const;
  /// x >= 0, total length >= N and occupancy <= K M.
  bool feasible(int files, const Rational& memory) const;
};

/// Averaged acyclic-set inequality: load >= sum_i coefficient[i] * x[i].
/// Closed form via the hockey-stick sum. Requires N >= K >= 1.
std::vector<Rational> aggregate_coefficients(int files, int users);

inline constexpr std::uint64_t kMaxAggregatedInequalities = 1'000'000;

/// Same coefficients by literally summing every (distinct demand, ordering) inequality.
/// Throws std::invalid_argument past kMaxAggregatedInequalities, and
/// std::logic_error if the per-subfile counts are not symmetric within a level.
std::vector<Rational> brute_force_aggregate(int files, int users);

/// Right side of the averaged inequality for a given profile.
Rational aggregated_value(const std::vector<Rational>& coefficients, const SubfileProfile& profile);

/// load >= intercept + slope * M + sum_i residual[i] * x[i], obtained by adding
/// nonnegative multiples of the two sum constraints so x[q-1] and x[q] cancel.
struct AffineBound {
  int q = 1;
  Rational intercept;
  Rational slope;
  std::vector<Rational> residual;
  Rational file_multiplier;
  Rational cache_multiplier;

  Rational affine_at(const Rational& memory) const { return intercept + slope * memory; }
  Rational value_at(const Rational& memory, const SubfileProfile& profile) const;
};

/// Carries out the elimination of x[q-1] and x[q] on explicit linear forms. Requires 1 <= q <= K.
AffineBound eliminate(int files, int users, int q);

/// Closed form (K+1)(i-q+1)(i-q) / (q N (q+1) (i+1)) of the residual coefficients.
Rational z_coefficient(int files, int users, int i, int q);

struct LowerBoundPoint {
  Rational value;
  /// Smallest maximizing q; 0 when every affine part is negative and the floor at zero applies.
  int q = 0;
};

LowerBoundPoint lower_bound_point(int files, int users, const Rational& memory);

/// max over q of the affine parts, floored at zero. Requires N >= K and 0 <= M <= N.
Rational lower_bound(int files, int users, const Rational& memory);

struct LpSolution {
  Rational value;
  SubfileProfile argmin;
};

/// Exact minimum of sum c_i x_i subject to sum x_i >= N, sum i x_i <= K M, x >= 0,
/// by enumerating every basic feasible point (at most two nonzero coordinates).
LpSolution lp_solve(int files, int users, const Rational& memory);
Rational lp_oracle(int files, int users, const Rational& memory);

/// {j N / (density K) : j = 0 .. density K}. Density 2 covers every corner and midpoint.
std::vector<Rational> memory_grid(int files, int users, int density = 2);

/// Piecewise-linear curve of lower_bound over [0, N].
TradeoffCurve converse_curve(int files, int users);

struct GridCheck {
  Rational memory;
  Rational lower_bound;
  Rational lp_oracle;
  Rational man_load;
  bool agree() const { return lower_bound == lp_oracle && lp_oracle == man_load; }
};

struct Theorem3Report {
  int files = 0;
  int users = 0;
  bool holds = true;
  std::vector<GridCheck> points;
  TradeoffCurve converse;
  TradeoffCurve achievable;
  bool curves_match = true;
};

/// lower_bound == lp_oracle == man_load on the grid, plus corner-for-corner curve equality.
/// Throws std::invalid_argument when N < K.
Theorem3Report verify_theorem3(int files, int users, int density = 2);

} // namespace codedcache
