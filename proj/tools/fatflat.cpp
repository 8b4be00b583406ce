// fatflat command-line front end.
//
// Exit codes: 0 success, 1 invalid input or usage, 2 genericity failure,
// 3 out-of-scope configuration or non-effective system, 4 suite mismatch.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "fatflat/cremona.hpp"
#include "fatflat/errors.hpp"
#include "fatflat/report.hpp"
#include "fatflat/suite.hpp"

using namespace fatflat;
using nlohmann::json;

namespace {

struct Globals {
  std::vector<std::uint32_t> primes;
  std::uint64_t seed = 1;
  bool seed_given = false;
  int seeds = 1;
  unsigned threads = 1;
  std::string format = "json";
  std::string out;
  bool extended = false;
  std::int64_t cap = 25000;
  bool timing = false;
};

std::vector<std::uint64_t> seed_list(const Globals& g, std::uint64_t first) {
  std::vector<std::uint64_t> s;
  for (int i = 0; i < g.seeds; ++i) s.push_back(first + static_cast<std::uint64_t>(i));
  return s;
}

void emit(const std::string& text, const Globals& g) {
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(g.out);
  if (!f) throw DomainError("cannot write '" + g.out + "'");
  f << text;
}

std::string mib(std::uint64_t bytes) {
  std::ostringstream os;
  os << (bytes + (1u << 20) - 1) / (1u << 20) << " MiB";
  return os.str();
}

int run_analyze(const Globals& g, const std::string& path) {
  const SchemeSpec spec = load_scheme_spec(path);
  AnalyzeOptions opts;
  opts.cap = g.cap;
  opts.timing = g.timing;
  opts.run.elimination.threads = g.threads;
  if (!g.primes.empty()) {
    opts.run.primes = g.primes;
  } else if (spec.prime) {
    opts.run.primes = {*spec.prime};
  }
  opts.run.seeds = seed_list(g, g.seed_given || !spec.seed ? g.seed : *spec.seed);
  const auto start = std::chrono::steady_clock::now();
  json doc = analyze_document(spec, opts);
  if (g.timing) {
    doc["manifest"]["wall_clock_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  emit(render(doc, parse_format(g.format)), g);
  return 0;
}

int run_suite(const Globals& g, const std::string& filter) {
  SuiteOptions opts;
  opts.seed = g.seed;
  opts.prime = g.primes.empty() ? PrimeField::kDefaultPrime : g.primes.front();
  opts.elimination.threads = g.threads;
  opts.extended = g.extended;
  if (g.extended) {
    std::cerr << "extended run: the degree-16 elimination on P^5 has 20349 monomials; pivot storage is at most "
              << mib(elimination_memory_estimate(20349)) << " (about "
              << mib(elimination_memory_estimate(11583)) << " after the coordinate-flat reduction)\n";
  }
  const auto start = std::chrono::steady_clock::now();
  const std::vector<CaseResult> results = run_corpus_suite(filter, opts);
  if (results.empty()) throw DomainError("no case id starts with '" + filter + "'");
  json doc = suite_document(results, opts, g.timing);
  if (g.timing) {
    doc["manifest"]["wall_clock_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  emit(render(doc, parse_format(g.format)), g);
  for (const CaseResult& r : results) {
    std::cerr << (r.passed() ? "PASS " : "FAIL ") << r.id;
    if (!r.skipped.empty()) std::cerr << " (" << r.skipped.size() << " gated)";
    std::cerr << "\n";
  }
  return doc.at("all_passed").get<bool>() ? 0 : 4;
}

RationalCurve curve_from_file(const std::string& path, const PrimeField& field) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot read curve file '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw DomainError(std::string("curve file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("forms") || !doc.at("forms").is_array()) {
    throw DomainError("curve file needs a 'forms' array");
  }
  std::vector<std::vector<Residue>> rows;
  std::size_t width = 0;
  for (const json& f : doc.at("forms")) {
    std::vector<Residue> row;
    for (const json& c : f) {
      if (!c.is_number_integer() || c.get<std::int64_t>() < 0) throw DomainError("form coefficients must be non-negative integers");
      row.push_back(static_cast<Residue>(c.get<std::uint64_t>() % field.prime()));
    }
    if (width != 0 && row.size() != width) throw DomainError("forms must share one degree");
    width = row.size();
    rows.push_back(std::move(row));
  }
  return RationalCurve::from_forms(DenseMatrix::from_rows(rows, width), field);
}

int run_cone(const Globals& g, const std::string& curve_arg, int n, bool print_form) {
  const std::uint32_t prime = g.primes.empty() ? PrimeField::kDefaultPrime : g.primes.front();
  const PrimeField field(prime);
  RandomSource rng(g.seed);
  std::optional<RationalCurve> curve;
  if (curve_arg == "rnc") {
    if (n < 3 || n > 5) {
      throw PreconditionError("built-in rational normal curves need 3 <= n <= 5 (the cone needs 1 <= e <= n-2)");
    }
    RandomSource c = rng.derive(7);
    curve = rational_normal_curve(n, field, c);
  } else {
    curve = curve_from_file(curve_arg, field);
  }
  const ConeCertificate cert = cone_verify(*curve, field, rng);
  emit(render(cone_document(cert, curve_arg, g.seed, prime, print_form), parse_format(g.format)), g);
  return 0;
}

int run_veneroni(const Globals& g, int n, int degree, const std::vector<int>& mults, bool involution, bool check) {
  const VirtualSystem vs{n, degree, mults, {}};
  vs.validate();
  if (n < 3 || n > 5) throw PreconditionError("Veneroni maps are provided for 3 <= n <= 5");
  const VirtualSystem image = veneroni_transform(vs);
  std::cout << vs.to_string() << " -> " << image.to_string() << "\n";
  if (involution) {
    const VirtualSystem back = veneroni_transform(image);
    std::cout << image.to_string() << " -> " << back.to_string() << "  round trip "
              << (back == vs ? "equal" : "DIFFERENT") << "\n";
    if (back != vs) return 4;
  }
  if (check) {
    const std::uint32_t prime = g.primes.empty() ? PrimeField::kDefaultPrime : g.primes.front();
    const PrimeField field(prime);
    RandomSource rng(g.seed);
    EliminationOptions opts;
    opts.threads = g.threads;
    const InvarianceReport r = check_dimension_invariance(vs, field, rng, g.cap, opts);
    if (r.skipped) {
      std::cout << "invariance check skipped: " << r.reason << "\n";
    } else {
      std::cout << "adim " << vs.to_string() << " = " << *r.source_adim << ", adim " << image.to_string() << " = "
                << *r.target_adim << "  " << (r.agree() ? "agree" : "DISAGREE") << "\n";
      if (!r.agree()) return 4;
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fatflat: dimensions of linear systems through fat flats"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--prime", g.primes, "Prime modulus (repeatable; analyze uses every prime given)")
      ->envname("FATFLAT_PRIME")
      ->delimiter(',');
  app.add_option("--seed", g.seed, "Base seed")->envname("FATFLAT_SEED")->each([&](const std::string&) {
    g.seed_given = true;
  });
  app.add_option("--seeds", g.seeds, "Number of consecutive seeds starting at --seed")
      ->envname("FATFLAT_SEEDS")
      ->check(CLI::PositiveNumber);
  app.add_option("--threads", g.threads, "Elimination worker threads (0 = all cores)")->envname("FATFLAT_THREADS");
  app.add_option("--format", g.format, "Output format")
      ->envname("FATFLAT_FORMAT")
      ->check(CLI::IsMember({"json", "csv", "md", "markdown"}));
  app.add_option("--out", g.out, "Write the report to a file instead of stdout")->envname("FATFLAT_OUT");
  app.add_flag("--extended", g.extended, "Include the heavy gated rank checks")->envname("FATFLAT_EXTENDED");
  app.add_option("--cap", g.cap, "Largest monomial count accepted")->envname("FATFLAT_CAP");
  app.add_flag("--timing", g.timing, "Record wall-clock times (reports are then not byte-identical)")
      ->envname("FATFLAT_TIMING");

  std::string spec_path;
  auto* analyze = app.add_subcommand("analyze", "Analyze a scheme spec (JSON)");
  analyze->add_option("spec", spec_path, "Spec file")->required()->check(CLI::ExistingFile);

  std::string filter;
  auto* suite = app.add_subcommand("paper-suite", "Run the regression corpus of worked examples");
  suite->add_option("--filter", filter, "Only case ids starting with this prefix");
  bool list = false;
  suite->add_flag("--list", list, "List case ids and exit");

  std::string curve = "rnc";
  int cone_n = 3;
  bool print_form = false;
  auto* cone = app.add_subcommand("cone-verify", "Cone over a rational curve from a general flat");
  cone->add_option("--curve", curve, "'rnc' or a JSON file with 'forms'");
  cone->add_option("--n", cone_n, "Ambient dimension for --curve rnc");
  cone->add_flag("--print-form", print_form, "Include the cone form's coefficients");

  int vn = 3, degree = 0;
  std::vector<int> mults;
  bool involution = false, check = false;
  auto* ven = app.add_subcommand("veneroni", "Transform a system through the Veneroni map");
  ven->add_option("--n", vn, "Ambient dimension (3..5)")->required();
  ven->add_option("--degree", degree, "Degree d")->required();
  ven->add_option("--mults", mults, "n+1 base multiplicities")->required();
  ven->add_flag("--involution", involution, "Apply the map twice and compare");
  ven->add_flag("--check", check, "Compare adim of both systems by rank (subject to --cap)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*analyze) return run_analyze(g, spec_path);
    if (*suite) {
      if (list) {
        for (const CaseInfo& c : corpus_cases()) std::cout << c.id << "  " << c.title << "\n";
        return 0;
      }
      return run_suite(g, filter);
    }
    if (*cone) return run_cone(g, curve, cone_n, print_form);
    if (*ven) return run_veneroni(g, vn, degree, mults, involution, check);
  } catch (const GenericityFailure& e) {
    std::cerr << "genericity failure: " << e.what() << "\n";
    return 2;
  } catch (const UnsupportedConfiguration& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return 3;
  } catch (const NotEffective& e) {
    std::cerr << "not effective: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
