// Runs the thirteen acceptance criteria and prints one PASS/FAIL line each.
// Set FATFLAT_ACCEPTANCE_SKIP_EXTENDED=1 to skip the heavy degree-16 rank of
// criterion 7 (the line then reads SKIP). Exit status is 0 iff nothing failed.

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

#include "fatflat/combinatorics.hpp"
#include "fatflat/cremona.hpp"
#include "fatflat/errors.hpp"
#include "fatflat/interpolation.hpp"
#include "fatflat/report.hpp"
#include "fatflat/suite.hpp"

using namespace fatflat;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  bool skipped = false;
  std::string detail;
};

std::map<std::string, CaseResult> g_cases;  // reused by the determinism check

double since(Clock::time_point start) { return std::chrono::duration<double>(Clock::now() - start).count(); }

std::string seconds(double s) {
  std::ostringstream os;
  os.precision(2);
  os << std::fixed << s << " s";
  return os.str();
}

// Runs suite cases; fails on any mismatched check or when `limit` is exceeded.
Outcome cases(const std::vector<std::string>& ids, double limit, const SuiteOptions& opts = {}) {
  Outcome o;
  std::ostringstream detail;
  for (const std::string& id : ids) {
    CaseResult r = run_corpus_case(id, opts);
    for (const Check& c : r.checks) {
      if (!c.pass) {
        o.pass = false;
        detail << id << ": " << c.name << " expected " << c.expected << " got " << c.actual << "; ";
      }
    }
    if (r.seconds > limit) {
      o.pass = false;
      detail << id << " took " << seconds(r.seconds) << " (limit " << seconds(limit) << "); ";
    }
    detail << id << " " << r.checks.size() << " checks in " << seconds(r.seconds) << "; ";
    if (!opts.extended) g_cases[id] = std::move(r);
  }
  o.detail = detail.str();
  return o;
}

Outcome condition_count_ranks() {
  const PrimeField f;
  int checked = 0;
  for (int n = 1; n <= 5; ++n) {
    for (int delta = 0; delta <= n - 2; ++delta) {
      for (int m = 1; m <= 4; ++m) {
        for (int t = m; t <= 8; ++t) {
          RandomSource rng(static_cast<std::uint64_t>(1000 * n + 100 * delta + 10 * m + t));
          const Flat flat = random_flat(n, delta, f, rng);
          const ConditionBlock b = condition_rows_fat_flat(flat, m, t, f);
          const auto r = static_cast<std::int64_t>(rank(b.rows, f));
          const std::int64_t expected = to_int64(conditions_count({n, delta, m, t}));
          if (r != expected) {
            return {false, false,
                    "n=" + std::to_string(n) + " delta=" + std::to_string(delta) + " m=" + std::to_string(m) +
                        " t=" + std::to_string(t) + ": rank " + std::to_string(r) + " vs " + std::to_string(expected)};
          }
          ++checked;
        }
      }
    }
  }
  return {true, false, std::to_string(checked) + " (n, delta, m, t) cells"};
}

Outcome replacement_grid() {
  const PrimeField f;
  int checked = 0;
  for (int m = 1; m <= 6; ++m) {
    for (int t = m; t <= 12; ++t) {
      RandomSource rng(static_cast<std::uint64_t>(100 * m + t));
      const std::vector<int> mults{m, 1};
      const FatFlatScheme s = realize(SchemeRecipe::flats(3, 1, mults), f, rng);
      const FatFlatScheme r = replace_line_with_fat_points(s, 0, std::vector<int>(t - m + 2, m), t, f, rng);
      const auto before = adim(s, t, f).adim, after = adim(r, t, f).adim;
      if (before != after) {
        return {false, false,
                "m=" + std::to_string(m) + " t=" + std::to_string(t) + ": " + std::to_string(before) + " -> " +
                    std::to_string(after)};
      }
      ++checked;
    }
  }
  return {true, false, std::to_string(checked) + " (m, t) cells in P^3"};
}

Outcome veneroni_checks() {
  int pairs = 0;
  for (int n = 3; n <= 5; ++n) {
    std::vector<int> m(n + 1, 0);
    bool ok = true;
    std::function<void(std::size_t, int)> visit = [&](std::size_t pos, int left) {
      if (!ok) return;
      if (pos == m.size()) {
        for (int d = 0; d <= 30; ++d) {
          const VirtualSystem s{n, d, m, {}};
          VirtualSystem once;
          try {
            once = veneroni_transform(s);
          } catch (const NotEffective&) {
            continue;
          }
          try {
            if (veneroni_transform(once) != s) ok = false;
          } catch (const NotEffective&) {
            ok = false;
          }
          ++pairs;
        }
        return;
      }
      for (int k = 0; k <= left; ++k) {
        m[pos] = k;
        visit(pos + 1, left - k);
      }
      m[pos] = 0;
    };
    visit(0, 10);
    if (!ok) return {false, false, "involution failed in P^" + std::to_string(n)};
  }
  const PrimeField f;
  for (int n = 3; n <= 5; ++n) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      RandomSource rng(seed);
      const VeneroniBasis b = veneroni_map_basis(n, f, rng);
      if (b.forms.size() != static_cast<std::size_t>(n + 1)) {
        return {false, false, "basis size " + std::to_string(b.forms.size()) + " in P^" + std::to_string(n)};
      }
    }
  }
  return {true, false, std::to_string(pairs) + " effective systems round-trip; 15 bases of size n+1"};
}

Outcome determinism() {
  Outcome o;
  std::ostringstream detail;
  // Full non-extended suite, timed, compared with the cases run above.
  const auto start = Clock::now();
  const SuiteOptions opts;
  const std::vector<CaseResult> all = run_corpus_suite("", opts);
  const double suite_seconds = since(start);
  for (const CaseResult& r : all) {
    if (!r.passed()) {
      o.pass = false;
      detail << r.id << " failed; ";
    }
    const auto it = g_cases.find(r.id);
    if (it != g_cases.end() && to_json(it->second, false).dump() != to_json(r, false).dump()) {
      o.pass = false;
      detail << r.id << " differs between runs; ";
    }
  }
  if (suite_seconds > 900) {
    o.pass = false;
    detail << "suite took " << seconds(suite_seconds) << "; ";
  }
  const std::string doc1 = suite_document(all, opts, false).dump(2);
  const std::string doc2 = suite_document(run_corpus_suite("thm", opts), opts, false).dump(2);
  const std::string doc2b = suite_document(run_corpus_suite("thm", opts), opts, false).dump(2);
  if (doc2 != doc2b) {
    o.pass = false;
    detail << "suite document not reproducible; ";
  }

  // An analyze report rebuilt from its own manifest.
  const nlohmann::json spec_doc = {
      {"n", 3},
      {"t", 10},
      {"seed", 7},
      {"components",
       {{{"kind", "flat"}, {"dim", 1}, {"multiplicity", 3}, {"count", 4}},
        {{"kind", "flat"}, {"dim", 1}, {"multiplicity", 1}, {"count", 5}}}}};
  const SchemeSpec spec = parse_scheme_spec(spec_doc);
  AnalyzeOptions a;
  a.run.seeds = {7, 8, 9};
  a.run.primes = {PrimeField::kDefaultPrime, PrimeField::kSecondaryPrime};
  const nlohmann::json first = analyze_document(spec, a);
  AnalyzeOptions b;
  b.run.seeds = first.at("manifest").at("seeds").get<std::vector<std::uint64_t>>();
  b.run.primes = first.at("manifest").at("primes").get<std::vector<std::uint32_t>>();
  const nlohmann::json second = analyze_document(parse_scheme_spec(first.at("input")), b);
  if (first.dump(2) != second.dump(2)) {
    o.pass = false;
    detail << "analyze document not reproducible; ";
  }

  // A cone certificate.
  auto cone_doc = [] {
    const PrimeField f;
    RandomSource rng(3);
    RandomSource c = rng.derive(7);
    const RationalCurve curve = rational_normal_curve(4, f, c);
    return cone_document(cone_verify(curve, f, rng), "rnc", 3, f.prime(), true).dump(2);
  };
  if (cone_doc() != cone_doc()) {
    o.pass = false;
    detail << "cone document not reproducible; ";
  }
  detail << "suite of " << all.size() << " cases in " << seconds(suite_seconds) << " on "
         << std::max(1u, std::thread::hardware_concurrency()) << " core(s); " << doc1.size()
         << "-byte suite report; analyze and cone reports byte-identical";
  o.detail = detail.str();
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    std::string name;
    std::function<Outcome()> run;
  };
  const bool skip_extended = [] {
    const char* v = std::getenv("FATFLAT_ACCEPTANCE_SKIP_EXTENDED");
    return v != nullptr && std::string(v) == "1";
  }();

  const std::vector<Criterion> criteria{
      {1, "fat-flat condition counts equal ranks (n <= 5, m <= 4, t <= 8)",
       [] {
         const auto start = Clock::now();
         Outcome o = condition_count_ranks();
         const double s = since(start);
         if (s > 60) o.pass = false;
         o.detail += " in " + seconds(s);
         return o;
       }},
      {2, "four unexpected line configurations in P^3",
       [] { return cases({"thm3.5a", "thm3.5b", "thm3.5c", "thm3.5d"}, 30); }},
      {3, "cubo-cubic chain (3^4; 10)", [] { return cases({"ex3.8"}, 60); }},
      {4, "Veneroni image (13; 4^4)", [] { return cases({"ex4.2"}, 60); }},
      {5, "Veneroni image (13; 3^5) in P^4", [] { return cases({"ex4.3"}, 60); }},
      {6, "Veneroni image (17; 4^5) in P^4", [] { return cases({"ex4.4"}, 600); }},
      {7, "Veneroni image (16; 3^6) in P^5, with the degree-16 rank",
       [skip_extended] {
         Outcome o = cases({"ex4.5"}, 60);
         if (!o.pass) return o;
         if (skip_extended) {
           o.skipped = true;
           o.detail += "degree-16 rank skipped by FATFLAT_ACCEPTANCE_SKIP_EXTENDED";
           return o;
         }
         SuiteOptions ext;
         ext.extended = true;
         Outcome e = cases({"ex4.5"}, 900, ext);
         e.detail = o.detail + "extended: " + e.detail;
         return e;
       }},
      {8, "Veneroni image (21; 4^6) in P^5, arithmetic chain and degree-9 rank",
       [] { return cases({"ex4.6"}, 120); }},
      {9, "fixtures around the Todd and cubo-cubic correspondences", [] { return cases({"ex3.10"}, 300); }},
      {10, "replacing a fat line by collinear fat points keeps the rank",
       [] {
         const auto start = Clock::now();
         Outcome o = replacement_grid();
         const double s = since(start);
         if (s > 120) o.pass = false;
         o.detail += " in " + seconds(s);
         return o;
       }},
      {11, "cones over rational normal curves", [] { return cases({"cone-cubic", "cone-quartic"}, 30); }},
      {12, "Veneroni involution and map basis", veneroni_checks},
      {13, "determinism and full-suite time", determinism},
  };

  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto start = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, false, std::string("exception: ") + e.what()};
    }
    const char* status = !o.pass ? "FAIL" : o.skipped ? "SKIP" : "PASS";
    if (!o.pass) ++failed;
    std::cout << status << " " << c.id << " " << c.name << " [" << seconds(since(start)) << "] " << o.detail
              << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
