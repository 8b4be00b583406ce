#include <gtest/gtest.h>

#include "fatflat/combinatorics.hpp"
#include "fatflat/errors.hpp"
#include "fatflat/report.hpp"

using namespace fatflat;
using nlohmann::json;

namespace {

json lines_spec(int t, std::vector<std::pair<int, int>> groups) {
  json comps = json::array();
  for (auto [m, c] : groups) comps.push_back({{"kind", "flat"}, {"dim", 1}, {"multiplicity", m}, {"count", c}});
  return {{"n", 3}, {"t", t}, {"components", comps}};
}

json analyze(const json& spec, std::vector<std::uint64_t> seeds = {1}) {
  AnalyzeOptions o;
  o.run.seeds = std::move(seeds);
  return analyze_document(parse_scheme_spec(spec), o);
}

}  // namespace

TEST(SchemeSpec, RejectsInvalidInput) {
  EXPECT_THROW(parse_scheme_spec(json::array()), DomainError);
  EXPECT_THROW(parse_scheme_spec({{"n", 3}}), DomainError);
  EXPECT_THROW(parse_scheme_spec({{"n", 3}, {"t", 2}, {"extra", 1}}), DomainError);
  EXPECT_THROW(parse_scheme_spec({{"n", 3}, {"t", 2}, {"components", {{{"kind", "blob"}}}}}), DomainError);
  EXPECT_THROW(parse_scheme_spec({{"n", 3}, {"t", 2}, {"components", {{{"kind", "flat"}, {"dim", 3}}}}}), DomainError);
  EXPECT_THROW(parse_scheme_spec({{"n", 3}, {"t", 2}, {"components", {{{"kind", "flat"}}}}}), DomainError);
  EXPECT_THROW(parse_scheme_spec({{"n", 3}, {"t", 2}, {"components", {{{"kind", "flat"}, {"dim", 1}, {"multiplicity", 0}}}}}),
               DomainError);
  EXPECT_THROW(parse_scheme_spec({{"n", 3}, {"t", 2}, {"components", {{{"kind", "named-base"}, {"multiplicities", {1, 1}}}}}}),
               DomainError);
  EXPECT_THROW(parse_scheme_spec({{"n", 3}, {"t", 2}, {"prime", 15}}), DomainError);
  EXPECT_THROW(parse_scheme_spec({{"n", 3}, {"t", 2}, {"components", {{{"kind", "fat-point"}, {"point", {1, 2}}}}}}),
               DomainError);
}

TEST(SchemeSpec, ExplicitDependentPointsAreInvalid) {
  const json spec{{"n", 3},
                  {"t", 2},
                  {"components", {{{"kind", "flat"}, {"dim", 1}, {"points", {{1, 2, 3, 4}, {2, 4, 6, 8}}}}}}};
  EXPECT_THROW(analyze(spec), DomainError);
}

TEST(Analyze, LineConfigurations) {
  const json a = analyze(lines_spec(10, {{3, 4}, {1, 5}}));
  EXPECT_EQ(a["report"]["adim"], 1);
  EXPECT_EQ(a["report"]["vdim"], -1);
  EXPECT_EQ(a["report"]["u"], 2);
  EXPECT_EQ(a["verdict"], "unexpected");
  EXPECT_EQ(a["columns"], 286);
}

TEST(Analyze, NamedBaseInP4) {
  const json spec{{"n", 4}, {"t", 13}, {"components", {{{"kind", "named-base"}, {"multiplicities", {3, 3, 3, 3, 3}}}}}};
  const json a = analyze(spec);
  EXPECT_EQ(a["report"]["adim"], 160);
  EXPECT_EQ(a["report"]["vdim"], 135);
  EXPECT_EQ(a["report"]["u"], 25);
}

TEST(Analyze, EmptySchemeGivesAllForms) {
  for (int n = 1; n <= 4; ++n) {
    for (int t = 0; t <= 6; ++t) {
      const json a = analyze({{"n", n}, {"t", t}, {"components", json::array()}});
      EXPECT_EQ(a["report"]["adim"].get<std::int64_t>(), to_int64(binomial(t + n, n)));
      EXPECT_EQ(a["report"]["u"], 0);
      EXPECT_EQ(a["verdict"], "expected");
    }
  }
}

TEST(Analyze, ResidualCheckWhenZPresent) {
  json spec = lines_spec(12, {{4, 1}});
  spec["z_components"] = {{{"kind", "flat"}, {"dim", 1}, {"multiplicity", 3}, {"count", 5}}};
  const json a = analyze(spec);
  EXPECT_EQ(a["residual_check"]["union"]["u"], 6);
  EXPECT_EQ(a["residual_check"]["inequality_holds"], true);
  EXPECT_GT(a["residual_check"]["triple"]["u"].get<int>(), 0);
}

TEST(Analyze, CapRefusesLargeSystems) {
  AnalyzeOptions o;
  o.cap = 100;
  EXPECT_THROW(analyze_document(parse_scheme_spec(lines_spec(10, {{1, 1}})), o), UnsupportedConfiguration);
}

TEST(Analyze, ByteIdenticalOnRerun) {
  const json spec = lines_spec(12, {{3, 6}, {2, 1}});
  EXPECT_EQ(analyze(spec, {3, 4}).dump(), analyze(spec, {3, 4}).dump());
}

TEST(Render, SuiteTableAndEscaping) {
  CaseResult r{"x1", "title", {{"a,b", "1", "1", true}, {"c\"d", "2", "3", false}}, {"gated step"}, 0.5};
  const json doc = suite_document({r}, SuiteOptions{}, false);
  EXPECT_EQ(doc["all_passed"], false);
  EXPECT_FALSE(doc["cases"][0].contains("seconds"));
  const std::string csv = render(doc, Format::Csv);
  EXPECT_EQ(csv,
            "case,check,expected,actual,status\n"
            "x1,\"a,b\",1,1,PASS\n"
            "x1,\"c\"\"d\",2,3,FAIL\n"
            "x1,gated step,,,SKIPPED\n");
  const std::string md = render(doc, Format::Markdown);
  EXPECT_NE(md.find("| case | check | expected | actual | status |"), std::string::npos);
  EXPECT_NE(md.find("| x1 | c\"d | 2 | 3 | FAIL |"), std::string::npos);
}

TEST(Render, FlattenedFields) {
  const json doc{{"a", {{"b", 1}, {"c", {2, 3}}}}, {"d", "x|y"}};
  EXPECT_EQ(render(doc, Format::Csv), "field,value\na.b,1\na.c[0],2\na.c[1],3\nd,x|y\n");
  EXPECT_EQ(render(doc, Format::Markdown), "| field | value |\n| --- | --- |\n| a.b | 1 |\n| a.c[0] | 2 |\n| a.c[1] | 3 |\n| d | x\\|y |\n");
  EXPECT_THROW(parse_format("xml"), DomainError);
}

TEST(Memory, EstimateIsQuadratic) {
  EXPECT_EQ(elimination_memory_estimate(1000), 4000000u);
  EXPECT_EQ(elimination_memory_estimate(-1), 0u);
}
