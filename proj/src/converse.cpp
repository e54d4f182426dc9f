#include "codedcache/converse.hpp"

#include <algorithm>
#include <bit>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>

#include "codedcache/schemes.hpp"

namespace codedcache {

namespace {

void require_converse_range(int files, int users) {
  if (users < 1 || users > kMaxUsers) throw std::invalid_argument("K must lie in [1:" + std::to_string(kMaxUsers) + "]");
  if (files < users) throw std::invalid_argument("N<K unsupported for converse");
}

void require_memory(int files, const Rational& memory) {
  if (memory < Rational(0) || memory > Rational(files)) {
    throw std::invalid_argument("memory M = " + memory.str() + " outside [0, N]");
  }
}

// Linear form over x_0..x_K, M and a constant term.
struct LinearForm {
  std::vector<Rational> x;
  Rational memory;
  Rational constant;

  explicit LinearForm(int users) : x(static_cast<std::size_t>(users + 1)) {}

  LinearForm& add_scaled(const LinearForm& other, const Rational& factor) {
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += factor * other.x[i];
    memory += factor * other.memory;
    constant += factor * other.constant;
    return *this;
  }
};

} // namespace

SubfileProfile SubfileProfile::from_split(const SubfileSplit& split) {
  SubfileProfile p;
  p.x.assign(static_cast<std::size_t>(split.users + 1), Rational(0));
  for (const auto& row : split.lengths) {
    for (std::size_t mask = 0; mask < row.size(); ++mask) {
      p.x[static_cast<std::size_t>(std::popcount(mask))] += row[mask];
    }
  }
  return p;
}

Rational SubfileProfile::total_length() const {
  Rational total;
  for (const auto& v : x) total += v;
  return total;
}

Rational SubfileProfile::cache_occupancy() const {
  Rational total;
  for (std::size_t t = 0; t < x.size(); ++t) total += Rational(static_cast<std::int64_t>(t)) * x[t];
  return total;
}

bool SubfileProfile::feasible(int files, const Rational& memory) const {
  const int users = static_cast<int>(x.size()) - 1;
  return std::all_of(x.begin(), x.end(), [](const Rational& v) { return v.sign() >= 0; }) &&
         total_length() >= Rational(files) && cache_occupancy() <= Rational(users) * memory;
}

std::vector<Rational> aggregate_coefficients(int files, int users) {
  require_converse_range(files, users);
  std::vector<Rational> c;
  for (int i = 0; i <= users; ++i) {
    c.emplace_back(static_cast<std::int64_t>(hockey_stick(users, i)),
                   static_cast<std::int64_t>(binom(users, i)) * files);
  }
  return c;
}

std::vector<Rational> brute_force_aggregate(int files, int users) {
  require_converse_range(files, users);
  if (users > kMaxPermutationLength) throw std::invalid_argument("K too large for brute-force aggregation");
  const std::uint64_t inequalities = falling_factorial(files, users) * falling_factorial(users, users);
  if (inequalities > kMaxAggregatedInequalities) {
    throw std::invalid_argument("brute-force aggregation over " + std::to_string(inequalities) +
                                " inequalities exceeds the limit of " + std::to_string(kMaxAggregatedInequalities));
  }

  // count[j-1][mask]: how many inequalities contain |F_{j,W}|
  std::vector<std::vector<std::uint64_t>> count(static_cast<std::size_t>(files),
                                                std::vector<std::uint64_t>(std::size_t{1} << users, 0));
  const auto orderings = permutations_of(users);
  for (const auto& d : distinct_tuples(files, users)) {
    for (const auto& u : orderings) {
      for (const auto& key : lemma1_set(d, u).flatten()) {
        ++count[static_cast<std::size_t>(key.file - 1)][static_cast<std::size_t>(key.subset.mask())];
      }
    }
  }

  std::vector<Rational> c;
  for (int i = 0; i <= users; ++i) {
    std::set<std::uint64_t> seen;
    for (const auto& row : count) {
      for (UserSet w : subsets_of(UserSet::full(users), i)) seen.insert(row[static_cast<std::size_t>(w.mask())]);
    }
    if (seen.size() != 1) {
      throw std::logic_error("aggregated counts differ within level " + std::to_string(i));
    }
    c.emplace_back(static_cast<std::int64_t>(*seen.begin()), static_cast<std::int64_t>(inequalities));
  }
  return c;
}

Rational aggregated_value(const std::vector<Rational>& coefficients, const SubfileProfile& profile) {
  if (coefficients.size() != profile.x.size()) throw std::invalid_argument("coefficient/profile size mismatch");
  Rational total;
  for (std::size_t i = 0; i < coefficients.size(); ++i) total += coefficients[i] * profile.x[i];
  return total;
}

Rational AffineBound::value_at(const Rational& memory, const SubfileProfile& profile) const {
  return affine_at(memory) + aggregated_value(residual, profile);
}

AffineBound eliminate(int files, int users, int q) {
  require_converse_range(files, users);
  if (q < 1 || q > users) throw std::invalid_argument("q = " + std::to_string(q) + " outside [1:K]");
  const auto c = aggregate_coefficients(files, users);
  const auto lo = static_cast<std::size_t>(q - 1);
  const auto hi = static_cast<std::size_t>(q);

  // Multipliers a (file constraint) and b (cache constraint) must cancel both
  // coefficients:  c[q-1] - a + (q-1) b = 0  and  c[q] - a + q b = 0.
  const Rational b = c[lo] - c[hi];
  const Rational a = c[hi] + Rational(q) * b;
  if (a.sign() < 0 || b.sign() < 0) throw std::logic_error("elimination multipliers must be nonnegative");

  LinearForm bound(users);
  bound.x = c;
  // sum_i x_i - N >= 0
  LinearForm file_slack(users);
  for (auto& v : file_slack.x) v = Rational(1);
  file_slack.constant = Rational(-files);
  // K M - sum_i i x_i >= 0
  LinearForm cache_slack(users);
  for (std::size_t i = 0; i < cache_slack.x.size(); ++i) cache_slack.x[i] = Rational(-static_cast<std::int64_t>(i));
  cache_slack.memory = Rational(users);
  // Subtracting nonnegative multiples of nonnegative slacks keeps the inequality valid.
  bound.add_scaled(file_slack, -a).add_scaled(cache_slack, -b);

  if (!bound.x[lo].is_zero() || !bound.x[hi].is_zero()) throw std::logic_error("elimination left x[q-1] or x[q]");
  return AffineBound{q, bound.constant, bound.memory, bound.x, a, b};
}

Rational z_coefficient(int files, int users, int i, int q) {
  if (files < 1 || users < 1 || q < 1 || q > users || i < 0 || i > users) {
    throw std::invalid_argument("z_coefficient arguments out of range");
  }
  return Rational(static_cast<std::int64_t>(users + 1) * (i - q + 1) * (i - q),
                  static_cast<std::int64_t>(q) * files * (q + 1) * (i + 1));
}

LowerBoundPoint lower_bound_point(int files, int users, const Rational& memory) {
  require_converse_range(files, users);
  require_memory(files, memory);
  LowerBoundPoint best{Rational(0), 0};
  for (int q = 1; q <= users; ++q) {
    const Rational v = eliminate(files, users, q).affine_at(memory);
    if (v > best.value || (best.q == 0 && v == best.value)) best = {v, q};
  }
  if (best.value.sign() < 0) best = {Rational(0), 0};
  return best;
}

Rational lower_bound(int files, int users, const Rational& memory) {
  return lower_bound_point(files, users, memory).value;
}

LpSolution lp_solve(int files, int users, const Rational& memory) {
  require_converse_range(files, users);
  require_memory(files, memory);
  const auto c = aggregate_coefficients(files, users);
  const Rational N(files);
  const Rational budget = Rational(users) * memory;
  const auto dims = static_cast<std::size_t>(users + 1);

  std::optional<LpSolution> best;
  const auto consider = [&](std::vector<Rational> x) {
    SubfileProfile p{std::move(x)};
    if (!p.feasible(files, memory)) return;
    const Rational v = aggregated_value(c, p);
    if (!best || v < best->value) best = LpSolution{v, std::move(p)};
  };

  for (std::size_t t = 0; t < dims; ++t) {
    // file constraint tight
    std::vector<Rational> x(dims);
    x[t] = N;
    consider(x);
    // cache constraint tight
    if (t > 0) {
      x[t] = budget / Rational(static_cast<std::int64_t>(t));
      consider(x);
    }
  }
  for (std::size_t t1 = 0; t1 < dims; ++t1) {
    for (std::size_t t2 = t1 + 1; t2 < dims; ++t2) {
      // x1 + x2 = N and t1 x1 + t2 x2 = K M
      std::vector<Rational> x(dims);
      x[t2] = (budget - Rational(static_cast<std::int64_t>(t1)) * N) / Rational(static_cast<std::int64_t>(t2 - t1));
      x[t1] = N - x[t2];
      consider(x);
    }
  }
  if (!best) throw std::logic_error("no feasible vertex; x_0 = N should always qualify");
  return *best;
}

Rational lp_oracle(int files, int users, const Rational& memory) { return lp_solve(files, users, memory).value; }

std::vector<Rational> memory_grid(int files, int users, int density) {
  if (density < 1) throw std::invalid_argument("grid density must be positive");
  std::vector<Rational> grid;
  for (int j = 0; j <= density * users; ++j) grid.emplace_back(static_cast<std::int64_t>(j) * files, density * users);
  return grid;
}

TradeoffCurve converse_curve(int files, int users) {
  require_converse_range(files, users);
  std::vector<AffineBound> lines;
  for (int q = 1; q <= users; ++q) lines.push_back(eliminate(files, users, q));

  const Rational N(files);
  std::set<Rational> breaks{Rational(0), N};
  const auto keep = [&](const Rational& m) {
    if (m >= Rational(0) && m <= N) breaks.insert(m);
  };
  for (std::size_t a = 0; a < lines.size(); ++a) {
    if (!lines[a].slope.is_zero()) keep(-lines[a].intercept / lines[a].slope);
    for (std::size_t b = a + 1; b < lines.size(); ++b) {
      if (lines[a].slope != lines[b].slope) {
        keep((lines[b].intercept - lines[a].intercept) / (lines[a].slope - lines[b].slope));
      }
    }
  }
  std::vector<CurvePoint> points;
  for (const auto& m : breaks) points.push_back({m, lower_bound(files, users, m)});
  return TradeoffCurve(std::move(points));
}

Theorem3Report verify_theorem3(int files, int users, int density) {
  require_converse_range(files, users);
  Theorem3Report report;
  report.files = files;
  report.users = users;
  for (const auto& m : memory_grid(files, users, density)) {
    GridCheck g{m, lower_bound(files, users, m), lp_oracle(files, users, m), man_load(files, users, m)};
    report.holds = report.holds && g.agree();
    report.points.push_back(g);
  }
  report.converse = converse_curve(files, users);
  report.achievable = man_curve(files, users);
  report.curves_match = report.converse == report.achievable && report.converse.is_convex();
  report.holds = report.holds && report.curves_match;
  return report;
}

} // namespace codedcache
