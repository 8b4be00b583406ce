#include <gtest/gtest.h>

#include <vector>

#include "fatflat/combinatorics.hpp"
#include "fatflat/errors.hpp"

using namespace fatflat;

namespace {

Integer count(int n, int delta, int m, int t) { return conditions_count({n, delta, m, t}); }

IntegerPolynomial poly(std::vector<long> coeffs) {
  std::vector<Rational> c;
  for (long x : coeffs) c.emplace_back(x);
  return IntegerPolynomial(c);
}

// Monomials of degree t in 4 + free variables with degree < m1 in the first
// two and degree < m2 in the next two.
std::int64_t brute_force_sum_of_powers(int m1, int m2, int free_vars, int t) {
  std::int64_t total = 0;
  for (int a = 0; a < m1 && a <= t; ++a) {
    for (int b = 0; b < m2 && a + b <= t; ++b) {
      const int rest = t - a - b;
      // (a+1) monomials in x0,x1 of degree a, (b+1) in x2,x3 of degree b.
      const std::int64_t tail = free_vars == 0 ? (rest == 0 ? 1 : 0) : to_int64(binomial(rest + free_vars - 1, free_vars - 1));
      total += static_cast<std::int64_t>(a + 1) * (b + 1) * tail;
    }
  }
  return total;
}

}  // namespace

TEST(Binomial, Values) {
  EXPECT_EQ(binomial(13, 3), 286);
  EXPECT_EQ(binomial(9, 0), 1);
  EXPECT_EQ(binomial(4, 7), 0);
  EXPECT_EQ(binomial(4, -1), 0);
  EXPECT_EQ(binomial(100, 50), Integer("100891344545564193334812497256"));
}

TEST(ConditionsCount, RecordedValues) {
  EXPECT_EQ(count(4, 2, 3, 13), 521);
  EXPECT_EQ(count(5, 3, 4, 21), 15506);
  EXPECT_EQ(count(3, 1, 1, 7), 8);
  EXPECT_EQ(count(3, 1, 3, 10), 58);
}

TEST(ConditionsCount, Preconditions) {
  EXPECT_THROW(count(3, 1, 4, 3), DomainError);
  EXPECT_THROW(count(3, 3, 1, 3), DomainError);
  EXPECT_THROW(count(3, 1, 0, 3), DomainError);
  EXPECT_THROW(count(3, -1, 1, 3), DomainError);
}

TEST(ConditionsCount, FullMultiplicityIdentity) {
  for (int n = 1; n <= 6; ++n) {
    for (int delta = 0; delta <= n - 1; ++delta) {
      for (int t = 1; t <= 12; ++t) {
        EXPECT_EQ(count(n, delta, t, t), binomial(t + n, n) - binomial(t + n - delta - 1, n - delta - 1))
            << n << " " << delta << " " << t;
      }
    }
  }
}

TEST(FatFlatHilbertPoly, LinesInP3ClosedForm) {
  for (int m = 1; m <= 6; ++m) {
    // m(m+1)(3t+5-2m)/6
    const IntegerPolynomial expected =
        IntegerPolynomial(std::vector<Rational>{Rational(m * (m + 1) * (5 - 2 * m), 6), Rational(m * (m + 1) * 3, 6)});
    EXPECT_EQ(fat_flat_hilbert_poly(3, 1, m), expected);
  }
}

TEST(FatFlatHilbertPoly, PointsAreConstant) {
  for (int n = 1; n <= 5; ++n) {
    for (int m = 1; m <= 5; ++m) {
      EXPECT_EQ(fat_flat_hilbert_poly(n, 0, m), IntegerPolynomial::constant(Rational(binomial(n + m - 1, n))));
    }
  }
}

TEST(FatFlatHilbertPoly, AgreesWithCountForTAtLeastM) {
  EXPECT_EQ(fat_flat_hilbert_poly(5, 3, 4).evaluate_integer(21), 15506);
  for (int n = 1; n <= 5; ++n) {
    for (int delta = 0; delta < n; ++delta) {
      for (int m = 1; m <= 4; ++m) {
        const auto p = fat_flat_hilbert_poly(n, delta, m);
        for (int t = m; t <= 12; ++t) EXPECT_EQ(p.evaluate_integer(t), count(n, delta, m, t));
      }
    }
  }
}

TEST(HVector, PowerIdeal) {
  EXPECT_EQ(power_ideal_hvector(2, 4), HVector({1, 2, 3, 4}));
  EXPECT_EQ(power_ideal_hvector(2, 1), HVector({1}));
  EXPECT_EQ(power_ideal_hvector(3, 2), HVector({1, 3}));
}

TEST(HVector, Convolution) {
  const HVector a({1, 2, 3, 4});
  EXPECT_EQ(hvector_convolve(a, a), HVector({1, 4, 10, 20, 25, 24, 16}));
  EXPECT_EQ(hvector_convolve(a, HVector({1})), a);
  EXPECT_EQ(hvector_convolve(HVector({1, 1}), HVector({1, 1})), HVector({1, 2, 1}));
  EXPECT_THROW(HVector({1, -1}), DomainError);
  EXPECT_EQ(HVector({3, 0, 0}).size(), 1u);
}

TEST(HVector, IntegrateTwice) {
  const auto f = hvector_integrate(HVector({1, 4, 10, 20, 25, 24, 16}), 2);
  const std::vector<Integer> expected{1, 6, 21, 56, 116, 200, 300, 400};
  EXPECT_EQ(f.values(8), expected);
  EXPECT_EQ(f.tail(), poly({-300, 100}));
  for (long t = f.polynomial_from(); t < 30; ++t) EXPECT_EQ(f.value(t), f.tail().evaluate_integer(t));
}

TEST(HVector, IntegrateSimple) {
  const auto once = hvector_integrate(HVector({1}), 1);
  for (long t = 0; t < 6; ++t) EXPECT_EQ(once.value(t), 1);
  const auto fat_line = hvector_integrate(HVector({1, 2, 3, 4}), 1);
  const std::vector<Integer> expected{1, 3, 6, 10, 10, 10, 10};
  EXPECT_EQ(fat_line.values(7), expected);
  EXPECT_EQ(fat_line.tail(), poly({10}));
  const auto none = hvector_integrate(HVector({1, 2}), 0);
  EXPECT_EQ(none.value(1), 2);
  EXPECT_EQ(none.value(2), 0);
}

TEST(HVector, IntegratedConvolutionMatchesMonomialCount) {
  for (int m1 = 1; m1 <= 3; ++m1) {
    for (int m2 = 1; m2 <= 3; ++m2) {
      for (int free_vars = 0; free_vars <= 1; ++free_vars) {
        const auto f = hvector_integrate(hvector_convolve(power_ideal_hvector(2, m1), power_ideal_hvector(2, m2)),
                                         free_vars);
        for (int t = 0; t <= 12; ++t) {
          EXPECT_EQ(f.value(t), brute_force_sum_of_powers(m1, m2, free_vars, t)) << m1 << m2 << free_vars << t;
        }
      }
    }
  }
}

TEST(PairwiseIntersection, RecordedValues) {
  EXPECT_EQ(pairwise_intersection_hp(5, 4, 4, 1), poly({-300, 100}));
  EXPECT_EQ(pairwise_intersection_hp(5, 4, 4, 1).evaluate_integer(21), 1800);
  EXPECT_EQ(pairwise_intersection_hp(5, 3, 3, 1).evaluate_integer(16), 516);
  EXPECT_EQ(pairwise_intersection_hp(4, 3, 3, 0).evaluate_integer(13), 36);
  EXPECT_EQ(pairwise_intersection_hp(4, 4, 4, 0).evaluate_integer(17), 100);
}

TEST(PairwiseIntersection, Unsupported) {
  EXPECT_THROW(pairwise_intersection_hp(6, 2, 2, 2), DomainError);
  EXPECT_THROW(pairwise_intersection_hp(5, 2, 2, 0), DomainError);
}

TEST(MayerVietoris, RecordedValues) {
  const std::vector<FlatComponent> planes(5, {2, 3});
  EXPECT_EQ(mayer_vietoris_value(4, planes, 13), 2245);
  const std::vector<FlatComponent> solids(6, {3, 4});
  EXPECT_EQ(mayer_vietoris_value(5, solids, 21), 66036);
  EXPECT_EQ(mayer_vietoris_polynomial(5, solids), poly({4506, -1480, 0, 10}));
  EXPECT_EQ(mayer_vietoris_value(5, std::vector<FlatComponent>(6, {3, 3}), 16), 20106);
  EXPECT_EQ(mayer_vietoris_value(4, std::vector<FlatComponent>(5, {2, 4}), 17), 5825);
}

TEST(MayerVietoris, DisjointIsPlainSum) {
  const std::vector<FlatComponent> lines{{1, 3}, {1, 3}, {1, 1}, {1, 2}};
  for (int t = 3; t <= 12; ++t) {
    Integer sum = 0;
    for (const auto& c : lines) sum += count(3, 1, c.multiplicity, t);
    EXPECT_EQ(mayer_vietoris_value(3, lines, t), sum);
  }
}

TEST(MayerVietoris, UnsupportedPatterns) {
  // Three planes of P^3 share a point.
  EXPECT_THROW(mayer_vietoris_polynomial(3, std::vector<FlatComponent>(3, {2, 1})), UnsupportedConfiguration);
  // A line and a plane in P^3 meet in a point: not a codimension-2 pair.
  EXPECT_THROW(mayer_vietoris_polynomial(3, std::vector<FlatComponent>{{1, 1}, {2, 1}}), UnsupportedConfiguration);
  EXPECT_THROW(mayer_vietoris_value(3, std::vector<FlatComponent>{{1, 4}}, 3), DomainError);
}

TEST(IntegerPolynomial, Printing) {
  EXPECT_EQ(poly({4506, -1480, 0, 10}).to_string(), "10t^3 - 1480t + 4506");
  EXPECT_EQ(poly({-300, 100}).to_string(), "100t - 300");
  EXPECT_EQ(IntegerPolynomial().to_string(), "0");
}
