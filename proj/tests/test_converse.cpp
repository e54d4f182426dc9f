#include <doctest.h>

#include "codedcache/converse.hpp"
#include "codedcache/schemes.hpp"
#include "oracles.hpp"

using namespace codedcache;

namespace {

std::vector<Rational> closed_form(int N, int K) {
  std::vector<Rational> c;
  for (int i = 0; i <= K; ++i) c.emplace_back(K - i, (i + 1) * N);
  return c;
}

} // namespace

TEST_CASE("aggregate coefficients") {
  CHECK(aggregate_coefficients(3, 3) == std::vector<Rational>{Rational(1), Rational(1, 3), Rational(1, 9), Rational(0)});
  for (int N = 1; N <= 8; ++N)
    for (int K = 1; K <= N; ++K) {
      const auto c = aggregate_coefficients(N, K);
      CHECK(c == closed_form(N, K));
      CHECK(c.back() == Rational(0));
    }
  CHECK(aggregate_coefficients(4, 3) == oracle::counted_coefficients(4, 3));
  CHECK_THROWS_AS(aggregate_coefficients(2, 3), std::invalid_argument);
}

TEST_CASE("brute-force aggregation matches the counted oracle and the closed form") {
  CHECK(brute_force_aggregate(3, 3) == std::vector<Rational>{Rational(1), Rational(1, 3), Rational(1, 9), Rational(0)});
  CHECK(brute_force_aggregate(2, 2) == std::vector<Rational>{Rational(1), Rational(1, 4), Rational(0)});
  for (auto [N, K] : {std::pair{1, 1}, std::pair{2, 1}, std::pair{2, 2}, std::pair{3, 1}, std::pair{3, 2},
                      std::pair{3, 3}, std::pair{4, 1}, std::pair{4, 2}, std::pair{4, 3}, std::pair{4, 4}}) {
    const auto brute = brute_force_aggregate(N, K);
    CHECK(brute == oracle::counted_coefficients(N, K));
    CHECK(brute == aggregate_coefficients(N, K));
  }
  CHECK_THROWS_AS(brute_force_aggregate(12, 7), std::invalid_argument);
}

TEST_CASE("each (d,u) inequality on a MAN split equals the aggregated right side") {
  for (int K = 1; K <= 4; ++K)
    for (int t = 0; t <= K; ++t) {
      const auto split = SubfileSplit::man(K, K, t);
      const auto profile = SubfileProfile::from_split(split);
      const Rational aggregated = aggregated_value(aggregate_coefficients(K, K), profile);
      const auto g = build_graph(split, distinct_tuples(K, K).front());
      const auto value = acyclic_bound_value(g, g.indices_of(lemma1_set(distinct_tuples(K, K).front(),
                                                                        permutations_of(K).back()).flatten()));
      CHECK(value == aggregated);
    }
}

TEST_CASE("profile constraints") {
  const auto p = SubfileProfile::from_split(SubfileSplit::man(3, 3, 1));
  CHECK(p.x == std::vector<Rational>{Rational(0), Rational(3), Rational(0), Rational(0)});
  CHECK(p.total_length() == Rational(3));
  CHECK(p.cache_occupancy() == Rational(3));
  CHECK(p.feasible(3, Rational(1)));
  CHECK_FALSE(p.feasible(3, Rational(1, 2)));
  CHECK(SubfileProfile::from_split(SubfileSplit::uniform(3, 3)).total_length() == Rational(3));
}

TEST_CASE("elimination") {
  SUBCASE("N=K=3") {
    const auto q1 = eliminate(3, 3, 1);
    CHECK(q1.intercept == Rational(3));
    CHECK(q1.slope == Rational(-2));
    CHECK(q1.residual == std::vector<Rational>{Rational(0), Rational(0), Rational(4, 9), Rational(1)});
    const auto q2 = eliminate(3, 3, 2);
    CHECK(q2.intercept == Rational(5, 3));
    CHECK(q2.slope == Rational(-2, 3));
    const auto q3 = eliminate(3, 3, 3);
    CHECK(q3.intercept == Rational(1));
    CHECK(q3.slope == Rational(-1, 3));
  }
  SUBCASE("hand re-derivation of the q=1 chain for N=K=3") {
    // n >= x0 + x1/3 + x2/9; x0 >= 3 - x1 - x2 - x3; -x1 >= 2 x2 + 3 x3 - 3M
    // => n >= 3 - 2/3 x1 - 8/9 x2 - x3 >= 3 - 2M + (4/3 - 8/9) x2 + (2 - 1) x3
    CHECK(Rational(4, 3) - Rational(8, 9) == Rational(4, 9));
    CHECK(eliminate(3, 3, 1).residual[2] == Rational(4, 3) - Rational(8, 9));
  }
  SUBCASE("general form and residuals against the closed form") {
    for (int N = 1; N <= 7; ++N)
      for (int K = 1; K <= N; ++K)
        for (int q = 1; q <= K; ++q) {
          const auto b = eliminate(N, K, q);
          CHECK(b.intercept == Rational(2 * K - q + 1, q + 1));
          CHECK(b.slope == Rational(-(K + 1) * K, N * q * (q + 1)));
          CHECK(b.file_multiplier.sign() > 0);
          CHECK(b.cache_multiplier.sign() > 0);
          for (int i = 0; i <= K; ++i) {
            CHECK(b.residual[i] == z_coefficient(N, K, i, q));
            CHECK(b.residual[i].sign() >= 0);
          }
          CHECK(b.residual[q - 1].is_zero());
          CHECK(b.residual[q].is_zero());
          CHECK(b.affine_at(Rational((q - 1) * N, K)) == Rational(K - q + 1, q));
          CHECK(b.affine_at(Rational(q * N, K)) == Rational(K - q, q + 1));
        }
  }
  SUBCASE("bound stays valid on feasible profiles") {
    // for any profile meeting both sum constraints, aggregated value >= affine + residual terms
    const auto c = aggregate_coefficients(4, 3);
    std::mt19937_64 rng(17);
    for (int iter = 0; iter < 300; ++iter) {
      SubfileProfile p;
      for (int t = 0; t <= 3; ++t) p.x.emplace_back(static_cast<std::int64_t>(rng() % 9), 2);
      if (p.total_length() < Rational(4)) continue;
      const Rational M = p.cache_occupancy() / Rational(3);
      if (M > Rational(4)) continue;
      for (int q = 1; q <= 3; ++q) CHECK(aggregated_value(c, p) >= eliminate(4, 3, q).value_at(M, p));
    }
  }
  CHECK_THROWS_AS(eliminate(3, 3, 0), std::invalid_argument);
  CHECK_THROWS_AS(eliminate(3, 3, 4), std::invalid_argument);
}

TEST_CASE("z coefficient") {
  CHECK(z_coefficient(3, 3, 2, 1) == Rational(4, 9));
  CHECK(z_coefficient(3, 3, 3, 1) == Rational(1));
  CHECK(z_coefficient(5, 4, 2, 2) == Rational(0));
  CHECK(z_coefficient(5, 4, 1, 2) == Rational(0));
  for (int K = 1; K <= 6; ++K)
    for (int q = 1; q <= K; ++q)
      for (int i = 0; i <= K; ++i) CHECK(z_coefficient(K + 1, K, i, q).sign() >= 0);
}

TEST_CASE("lower bound") {
  CHECK(lower_bound(3, 3, Rational(1)) == Rational(1));
  CHECK(lower_bound(3, 3, Rational(2)) == Rational(1, 3));
  CHECK(lower_bound(3, 3, Rational(0)) == Rational(3));
  CHECK(lower_bound(3, 3, Rational(3)) == Rational(0));
  for (int K = 1; K <= 6; ++K)
    for (int q = 1; q <= K; ++q) CHECK(lower_bound(K, K, Rational(q - 1)) == Rational(K - q + 1, q));
  for (int N = 1; N <= 6; ++N)
    for (int K = 1; K <= N; ++K)
      for (int t = 0; t <= K; ++t) CHECK(lower_bound(N, K, Rational(t * N, K)) == Rational(K - t, t + 1));
  // between corners 1 and 2 only q=2 is active
  CHECK(lower_bound_point(3, 3, Rational(3, 2)).q == 2);
  // at a corner two lines meet; the smaller q is reported
  CHECK(lower_bound_point(3, 3, Rational(1)).q == 1);
  CHECK_THROWS_AS(lower_bound(2, 3, Rational(1)), std::invalid_argument);
  CHECK_THROWS_AS(lower_bound(3, 3, Rational(4)), std::invalid_argument);
}

TEST_CASE("LP oracle") {
  const auto s = lp_solve(3, 3, Rational(1));
  CHECK(s.value == Rational(1));
  CHECK(s.argmin.x == std::vector<Rational>{Rational(0), Rational(3), Rational(0), Rational(0)});
  CHECK(lp_oracle(3, 3, Rational(0)) == Rational(3));
  CHECK(lp_solve(3, 3, Rational(0)).argmin.x[0] == Rational(3));
  for (const auto& M : memory_grid(5, 4)) CHECK(lp_oracle(5, 4, M) == man_load(5, 4, M));

  // the elimination multipliers form a dual certificate: for the active q,
  // every reduced cost is nonnegative and the dual objective meets the primal value
  for (int N = 1; N <= 5; ++N)
    for (int K = 1; K <= N; ++K)
      for (const auto& M : memory_grid(N, K, 4)) {
        const auto primal = lp_solve(N, K, M);
        CHECK(primal.argmin.feasible(N, M));
        CHECK(primal.value >= lower_bound(N, K, M));
        const int q = lower_bound_point(N, K, M).q;
        if (q == 0) continue;
        const auto b = eliminate(N, K, q);
        const Rational dual = b.file_multiplier * Rational(N) - b.cache_multiplier * Rational(K) * M;
        CHECK(dual == primal.value);
      }
}

TEST_CASE("memory grid") {
  const auto g = memory_grid(3, 3);
  CHECK(g.size() == 7);
  CHECK(g[1] == Rational(1, 2));
  CHECK(g.back() == Rational(3));
  CHECK_THROWS_AS(memory_grid(3, 3, 0), std::invalid_argument);
}

TEST_CASE("theorem verification") {
  const auto r33 = verify_theorem3(3, 3);
  CHECK(r33.holds);
  CHECK(r33.converse.corners() == std::vector<CurvePoint>{{Rational(0), Rational(3)},
                                                          {Rational(1), Rational(1)},
                                                          {Rational(2), Rational(1, 3)},
                                                          {Rational(3), Rational(0)}});
  const auto r44 = verify_theorem3(4, 4);
  CHECK(r44.holds);
  REQUIRE(r44.converse.corners().size() == 5);
  for (int t = 0; t <= 4; ++t) CHECK(r44.converse.corners()[t] == CurvePoint{Rational(t), Rational(4 - t, t + 1)});
  CHECK(verify_theorem3(5, 3).holds);
  CHECK(verify_theorem3(5, 3, 6).holds);
  CHECK(r33.converse.is_convex());
  CHECK_THROWS_AS(verify_theorem3(2, 3), std::invalid_argument);
}
