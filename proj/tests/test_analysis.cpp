#include <gtest/gtest.h>

#include "fatflat/analysis.hpp"
#include "fatflat/errors.hpp"

using namespace fatflat;

namespace {

SchemeRecipe lines(std::vector<int> mults) { return SchemeRecipe::flats(3, 1, mults); }

std::pair<FatFlatScheme, FatFlatScheme> joint(const SchemeRecipe& x, const SchemeRecipe& z, std::uint64_t seed,
                                              const PrimeField& f) {
  RandomSource rng(seed);
  const std::vector<SchemeRecipe> recipes{x, z};
  auto s = realize_jointly(recipes, f, rng);
  return {std::move(s[0]), std::move(s[1])};
}

FatFlatScheme sample(const SchemeRecipe& r, std::uint64_t seed, const PrimeField& f) {
  RandomSource rng(seed);
  return realize(r, f, rng);
}

FatFlatScheme empty_in(int n) {
  FatFlatScheme s;
  s.ambient = n;
  return s;
}

}  // namespace

TEST(Unexpectedness, CaseSplit) {
  EXPECT_EQ(unexpectedness_value(0, -7), 0);
  EXPECT_EQ(unexpectedness_value(0, 3), 0);
  EXPECT_EQ(unexpectedness_value(1, -1), 2);
  const auto r = DimensionReport::make(0, -4, Method::RankInstance);
  EXPECT_EQ(r.u, 0);
  EXPECT_EQ(r.edim, 0);
  const auto s = DimensionReport::make(std::nullopt, 12, Method::FormulaOnly);
  EXPECT_FALSE(s.u.has_value());
  EXPECT_EQ(s.edim, 12);
}

TEST(VirtualDimension, LinesInP3) {
  const PrimeField f;
  const FatFlatScheme x = sample(lines({3, 3, 3, 3, 1, 1, 1, 1, 1}), 1, f);
  EXPECT_EQ(virtual_dimension(x, 10, 286, f), -1);
  EXPECT_EQ(virtual_dimension(empty_in(3), 10, 123, f), 123);
}

TEST(VirtualDimension, MeetingSolidsInP5) {
  const PrimeField f;
  const FatFlatScheme x = sample(SchemeRecipe{5, {ComponentRequest::flats(3, 3, 6)}}, 2, f);
  EXPECT_EQ(virtual_dimension(x, 16, 20349, f), 243);
  const FatFlatScheme y = sample(SchemeRecipe{5, {ComponentRequest::flats(3, 4, 6)}}, 2, f);
  EXPECT_EQ(virtual_dimension(y, 21, 65780, f), -256);
}

TEST(VirtualDimension, UnsupportedPieces) {
  const PrimeField f;
  const FatFlatScheme on_line = sample(SchemeRecipe{3, {ComponentRequest::points_on_line({2, 2})}}, 3, f);
  EXPECT_THROW(hilbert_value(on_line, 4, f), UnsupportedConfiguration);
  const FatFlatScheme curve = sample(SchemeRecipe{3, {ComponentRequest::normal_curve()}}, 3, f);
  EXPECT_THROW(hilbert_value(curve, 4, f), UnsupportedConfiguration);
  const FatFlatScheme planes = sample(SchemeRecipe{3, {ComponentRequest::flats(2, 1, 3)}}, 3, f);
  EXPECT_THROW(hilbert_value(planes, 4, f), UnsupportedConfiguration);
}

TEST(Unexpectedness, SingleFatFlatIsExpected) {
  const PrimeField f;
  for (int n = 2; n <= 4; ++n) {
    for (int delta = 0; delta <= n - 1; ++delta) {
      for (int m = 1; m <= 3; ++m) {
        for (int t = m; t <= 6; ++t) {
          const FatFlatScheme x = sample(SchemeRecipe{n, {ComponentRequest::flats(delta, m)}}, 4, f);
          const DimensionReport r = unexpectedness(x, empty_in(n), t, f);
          EXPECT_EQ(r.u, 0) << n << delta << m << t;
        }
      }
    }
  }
}

TEST(Unexpectedness, VeneroniImagesInP3AndP4) {
  const PrimeField f;
  const auto a = unexpectedness(sample(lines({4, 4, 4, 4}), 5, f), empty_in(3), 13, f);
  EXPECT_EQ(a.adim, 88);
  EXPECT_EQ(a.vdim, 80);
  EXPECT_EQ(a.u, 8);
  const auto b = unexpectedness(sample(SchemeRecipe{4, {ComponentRequest::flats(2, 3, 5)}}, 5, f), empty_in(4), 13, f);
  EXPECT_EQ(b.adim, 160);
  EXPECT_EQ(b.vdim, 135);
  EXPECT_EQ(b.u, 25);
}

TEST(Unexpectedness, QuadricsThroughLinesInP4) {
  const PrimeField f;
  const FatFlatScheme x = sample(SchemeRecipe{4, {ComponentRequest::flats(1, 2), ComponentRequest::flats(1, 1, 2)}}, 6, f);
  const auto r = unexpectedness(x, empty_in(4), 2, f);
  EXPECT_EQ(r.adim, 1);
  EXPECT_EQ(r.vdim, 0);
  EXPECT_EQ(r.u, 1);
  FatFlatScheme two = x;
  two.flats.pop_back();
  EXPECT_EQ(adim(two, 2, f).adim, 3);
}

TEST(Unexpectedness, ZEnteredByRank) {
  const PrimeField f;
  const auto [x, z] = joint(lines({3, 3, 3, 3, 1, 1, 1, 1}), lines({1}), 7, f);
  EXPECT_EQ(ideal_dimension(z, 10, f), 275);
  EXPECT_EQ(to_int64(hilbert_value(x, 10, f)), 276);
  const auto r = unexpectedness(x, z, 10, f);
  EXPECT_EQ(r.adim, 1);
  EXPECT_EQ(r.vdim, -1);
  EXPECT_EQ(r.u, 2);
}

TEST(ResidualCheck, SplitLines) {
  const PrimeField f;
  const auto [x, z] = joint(lines({3, 3, 3, 3, 1, 1, 1, 1}), lines({1}), 8, f);
  const ResidualCheck c = residual_unexpectedness_check(x, z, 10, f);
  EXPECT_EQ(c.union_report.u, 2);
  EXPECT_EQ(c.residual_report.u, 0);
  EXPECT_EQ(c.triple_report.u, 2);
  EXPECT_TRUE(c.inequality_holds);
  EXPECT_TRUE(c.consistent);
  EXPECT_EQ(c.verdict, Verdict::Unexpected);
}

TEST(ResidualCheck, QuadrupleLineAgainstTripleLines) {
  const PrimeField f;
  const auto [x, z] = joint(lines({4}), lines({3, 3, 3, 3, 3}), 9, f);
  const ResidualCheck c = residual_unexpectedness_check(x, z, 12, f);
  EXPECT_EQ(c.union_report.u, 6);
  EXPECT_TRUE(c.inequality_holds);
  EXPECT_TRUE(c.consistent);
}

TEST(ResidualCheck, EmptyXIsNotUnexpected) {
  const PrimeField f;
  const FatFlatScheme z = sample(lines({3, 3, 1}), 10, f);
  const ResidualCheck c = residual_unexpectedness_check(empty_in(3), z, 8, f);
  EXPECT_FALSE(c.inequality_holds);
  EXPECT_NE(c.verdict, Verdict::Unexpected);
}

TEST(ReplaceLine, ThresholdKeepsAdim) {
  const PrimeField f;
  const FatFlatScheme s = sample(lines({3, 3, 3, 3, 1, 1, 1, 1, 1}), 11, f);
  RandomSource rng(12);
  const FatFlatScheme triple = replace_line_with_fat_points(s, 0, std::vector<int>(9, 3), 10, f, rng);
  EXPECT_EQ(adim(triple, 10, f).adim, adim(s, 10, f).adim);
  const FatFlatScheme simple = replace_line_with_fat_points(s, 8, std::vector<int>(11, 1), 10, f, rng);
  EXPECT_EQ(adim(simple, 10, f).adim, 1);
  EXPECT_THROW(replace_line_with_fat_points(s, 0, std::vector<int>(8, 3), 10, f, rng), PreconditionError);
  EXPECT_THROW(replace_line_with_fat_points(s, 0, std::vector<int>(10, 4), 10, f, rng), PreconditionError);
  std::vector<int> mixed(9, 3);
  mixed.push_back(2);
  EXPECT_NO_THROW(replace_line_with_fat_points(s, 0, mixed, 10, f, rng));
}

TEST(ReplaceLine, SmallGrid) {
  const PrimeField f;
  for (int m = 1; m <= 3; ++m) {
    for (int t = m; t <= 7; ++t) {
      const FatFlatScheme s = sample(lines({m, 1}), 100 + t, f);
      RandomSource rng(t);
      const FatFlatScheme r = replace_line_with_fat_points(s, 0, std::vector<int>(t - m + 2, m), t, f, rng);
      EXPECT_EQ(adim(r, t, f).adim, adim(s, t, f).adim) << m << " " << t;
    }
  }
}

TEST(HilbertValueVersusRank, ExpectedRegime) {
  // Where the Hilbert function of the union has reached its polynomial the
  // rank equals H_X(t). The thresholds below were observed on these families.
  const PrimeField f;
  for (int a = 1; a <= 4; ++a) {
    for (int b = 1; b <= 4; ++b) {
      for (int t = a + b - 1; t <= a + b + 2; ++t) {
        const FatFlatScheme x = sample(lines({a, b}), 20 + a * b, f);
        EXPECT_EQ(static_cast<std::int64_t>(MonomialIndex(3, t).size()) - adim(x, t, f).adim,
                  to_int64(hilbert_value(x, t, f)))
            << a << b << t;
      }
    }
  }
  for (int a = 1; a <= 3; ++a) {
    for (int b = 1; b <= 3; ++b) {
      for (int n : {4, 5}) {
        const int t = a + b;
        const FatFlatScheme x = sample(SchemeRecipe{n, {ComponentRequest::flats(n - 2, a), ComponentRequest::flats(n - 2, b)}}, 30 + a + b, f);
        EXPECT_EQ(static_cast<std::int64_t>(MonomialIndex(n, t).size()) - adim(x, t, f).adim,
                  to_int64(hilbert_value(x, t, f)))
            << n << a << b << t;
      }
    }
  }
}

TEST(Certify, HighConfidenceLabelNeedsSeedsAndPrimes) {
  Triple tr{3, lines({3, 3, 3, 3, 1, 1, 1, 1, 1}), {}, 10};
  RunConfig weak;
  const auto a = certify(tr, weak);
  EXPECT_EQ(a.verdict, Verdict::Unexpected);
  EXPECT_EQ(a.label, "unexpected (instance)");
  RunConfig strong{{1, 2, 3}, {PrimeField::kDefaultPrime, PrimeField::kSecondaryPrime}, {}};
  const auto b = certify(tr, strong);
  EXPECT_EQ(b.report.adim, 1);
  EXPECT_EQ(b.report.vdim, -1);
  EXPECT_FALSE(b.instances_disagree);
  EXPECT_EQ(b.label, "unexpected (generic, high confidence)");
  EXPECT_EQ(b.report.manifest.seeds.size(), 3u);
}

TEST(Certify, ExpectedTriple) {
  Triple tr{3, lines({2, 2}), {}, 6};
  const auto c = certify(tr, RunConfig{});
  EXPECT_EQ(c.verdict, Verdict::Expected);
  EXPECT_EQ(c.report.u, 0);
}

TEST(ConeVerify, TwistedCubic) {
  const PrimeField f;
  RandomSource rng(13);
  const auto c = cone_verify(rational_normal_curve(3, f, rng), f, rng);
  EXPECT_EQ(c.adim, 1);
  EXPECT_EQ(c.vdim, 0);
  EXPECT_EQ(c.u, 1);
  EXPECT_EQ(c.order_along_apex, 3);
  EXPECT_TRUE(c.annihilated_by_apex_conditions);
  EXPECT_TRUE(c.vanishes_on_cone);
  EXPECT_EQ(c.verdict, Verdict::Unexpected);
}

TEST(ConeVerify, NormalQuartic) {
  const PrimeField f;
  RandomSource rng(14);
  const auto c = cone_verify(rational_normal_curve(4, f, rng), f, rng);
  EXPECT_EQ(c.adim, 1);
  EXPECT_EQ(c.vdim, -2);
  EXPECT_EQ(c.u, 3);
  EXPECT_EQ(c.order_along_apex, 4);
  EXPECT_TRUE(c.vanishes_on_cone);
  EXPECT_EQ(c.lines_checked * c.points_per_line, 1000);
}

TEST(ConeVerify, Preconditions) {
  const PrimeField f;
  RandomSource rng(15);
  DenseMatrix conic(4, 3);
  conic(0, 0) = 1;
  conic(1, 1) = 1;
  conic(2, 2) = 1;
  EXPECT_THROW(cone_verify(RationalCurve::from_forms(conic, f), f, rng), PreconditionError);
  EXPECT_THROW(cone_verify(rational_normal_curve(2, f, rng), f, rng), PreconditionError);
}
