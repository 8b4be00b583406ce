#include "fatflat/report.hpp"

#include <fstream>
#include <sstream>

#include "fatflat/combinatorics.hpp"
#include "fatflat/errors.hpp"

namespace fatflat {

using nlohmann::json;

namespace {

// ---- spec parsing ----------------------------------------------------------

bool non_negative(const json& v) { return v.is_number_integer() && (v.is_number_unsigned() || v.get<std::int64_t>() >= 0); }

int get_int(const json& obj, const char* key, int fallback, const std::string& where) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number_integer()) throw DomainError(where + ": '" + key + "' must be an integer");
  return v.get<int>();
}

std::vector<int> get_int_list(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) return {};
  const json& v = obj.at(key);
  if (!v.is_array()) throw DomainError(where + ": '" + key + "' must be an array of integers");
  std::vector<int> out;
  for (const json& e : v) {
    if (!e.is_number_integer()) throw DomainError(where + ": '" + key + "' must be an array of integers");
    out.push_back(e.get<int>());
  }
  return out;
}

std::vector<std::uint64_t> coordinates(const json& v, const std::string& where) {
  if (!v.is_array()) throw DomainError(where + ": coordinates must be an array");
  std::vector<std::uint64_t> out;
  for (const json& e : v) {
    if (!non_negative(e)) {
      throw DomainError(where + ": coordinates must be non-negative integers");
    }
    out.push_back(e.get<std::uint64_t>());
  }
  return out;
}

std::vector<std::vector<std::uint64_t>> coordinate_rows(const json& v, const std::string& where) {
  if (!v.is_array()) throw DomainError(where + ": expected an array of coordinate arrays");
  std::vector<std::vector<std::uint64_t>> out;
  for (const json& row : v) out.push_back(coordinates(row, where));
  return out;
}

ComponentSpec parse_component(const json& c, int n, const std::string& where) {
  if (!c.is_object()) throw DomainError(where + ": component must be an object");
  if (!c.contains("kind") || !c.at("kind").is_string()) throw DomainError(where + ": missing 'kind'");
  static const std::vector<std::string> known{"kind",  "dim",    "multiplicity",   "count",
                                              "multiplicities", "points", "point", "forms"};
  for (const auto& [key, _] : c.items()) {
    if (std::ranges::find(known, key) == known.end()) throw DomainError(where + ": unknown field '" + key + "'");
  }
  const std::string kind = c.at("kind").get<std::string>();
  ComponentSpec s;
  s.multiplicity = get_int(c, "multiplicity", 1, where);
  s.count = get_int(c, "count", 1, where);
  s.multiplicities = get_int_list(c, "multiplicities", where);
  if (c.contains("points")) s.points = coordinate_rows(c.at("points"), where);
  if (c.contains("point")) s.point = coordinates(c.at("point"), where);
  if (c.contains("forms")) s.forms = coordinate_rows(c.at("forms"), where);
  if (s.multiplicity < 1) throw DomainError(where + ": multiplicity must be at least 1");
  if (s.count < 0) throw DomainError(where + ": count must be non-negative");
  for (int m : s.multiplicities) {
    if (m < 0) throw DomainError(where + ": multiplicities must be non-negative");
  }

  if (kind == "flat") {
    s.kind = ComponentSpec::Kind::Flat;
    if (!c.contains("dim")) throw DomainError(where + ": flat needs 'dim'");
    s.dim = get_int(c, "dim", 0, where);
    if (s.dim < 0 || s.dim >= n) throw DomainError(where + ": flat dimension must lie in [0, n)");
    if (!s.points.empty()) {
      if (static_cast<int>(s.points.size()) != s.dim + 1) throw DomainError(where + ": a flat of dim d needs d+1 points");
      for (const auto& p : s.points) {
        if (static_cast<int>(p.size()) != n + 1) throw DomainError(where + ": points need n+1 coordinates");
      }
      s.count = 1;
    }
  } else if (kind == "fat-points-on-line") {
    s.kind = ComponentSpec::Kind::FatPointsOnLine;
    if (s.multiplicities.empty()) throw DomainError(where + ": fat-points-on-line needs 'multiplicities'");
    for (int m : s.multiplicities) {
      if (m < 1) throw DomainError(where + ": point multiplicities must be at least 1");
    }
  } else if (kind == "fat-point") {
    s.kind = ComponentSpec::Kind::FatPoint;
    if (!s.point.empty()) {
      if (static_cast<int>(s.point.size()) != n + 1) throw DomainError(where + ": point needs n+1 coordinates");
      s.count = 1;
    }
  } else if (kind == "rational-curve") {
    s.kind = ComponentSpec::Kind::RationalCurve;
    if (!s.forms.empty()) {
      if (static_cast<int>(s.forms.size()) != n + 1) throw DomainError(where + ": a curve needs n+1 forms");
      for (const auto& f : s.forms) {
        if (f.size() != s.forms.front().size() || f.size() < 2) {
          throw DomainError(where + ": forms must share one degree e >= 1");
        }
      }
    }
  } else if (kind == "named-base") {
    s.kind = ComponentSpec::Kind::NamedBase;
    if (static_cast<int>(s.multiplicities.size()) != n + 1) {
      throw DomainError(where + ": named-base needs n+1 multiplicities");
    }
    if (n < 3) throw DomainError(where + ": named-base needs n >= 3");
  } else {
    throw DomainError(where + ": unknown kind '" + kind + "'");
  }
  return s;
}

std::vector<ComponentSpec> parse_components(const json& doc, const char* key, int n) {
  std::vector<ComponentSpec> out;
  if (!doc.contains(key)) return out;
  const json& list = doc.at(key);
  if (!list.is_array()) throw DomainError(std::string("'") + key + "' must be an array");
  for (std::size_t i = 0; i < list.size(); ++i) {
    out.push_back(parse_component(list[i], n, std::string(key) + "[" + std::to_string(i) + "]"));
  }
  return out;
}

// ---- realization -------------------------------------------------------------

SchemeRecipe recipe_from_specs(const std::vector<ComponentSpec>& comps, int n) {
  SchemeRecipe r;
  r.ambient = n;
  for (const ComponentSpec& c : comps) {
    if (c.is_explicit()) continue;
    switch (c.kind) {
      case ComponentSpec::Kind::Flat:
        r.components.push_back(ComponentRequest::flats(c.dim, c.multiplicity, c.count));
        break;
      case ComponentSpec::Kind::FatPoint:
        r.components.push_back(ComponentRequest::flats(0, c.multiplicity, c.count));
        break;
      case ComponentSpec::Kind::FatPointsOnLine:
        r.components.push_back(ComponentRequest::points_on_line(c.multiplicities));
        break;
      case ComponentSpec::Kind::RationalCurve:
        for (int i = 0; i < c.count; ++i) r.components.push_back(ComponentRequest::normal_curve());
        break;
      case ComponentSpec::Kind::NamedBase:
        for (int m : c.multiplicities) {
          if (m > 0) r.components.push_back(ComponentRequest::flats(n - 2, m, 1));
        }
        break;
    }
  }
  return r;
}

DenseMatrix reduced(const std::vector<std::vector<std::uint64_t>>& rows, const PrimeField& field) {
  DenseMatrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = static_cast<Residue>(rows[i][j] % field.prime());
  }
  return m;
}

void append_explicit(FatFlatScheme& scheme, const std::vector<ComponentSpec>& comps, const PrimeField& field) {
  for (const ComponentSpec& c : comps) {
    if (!c.is_explicit()) continue;
    if (c.kind == ComponentSpec::Kind::Flat) {
      try {
        scheme.flats.push_back({Flat::from_points(reduced(c.points, field), field), c.multiplicity});
      } catch (const GenericityFailure&) {
        throw DomainError("explicit flat points are dependent mod " + std::to_string(field.prime()));
      }
    } else if (c.kind == ComponentSpec::Kind::FatPoint) {
      const DenseMatrix p = reduced({c.point}, field);
      scheme.points.push_back({std::vector<Residue>(p.row(0).begin(), p.row(0).end()), c.multiplicity, std::nullopt});
    } else if (c.kind == ComponentSpec::Kind::RationalCurve) {
      scheme.curves.push_back(RationalCurve::from_forms(reduced(c.forms, field), field));
    }
  }
}

// ---- rendering -----------------------------------------------------------------

std::string scalar_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void flatten(const json& v, const std::string& path, std::vector<std::pair<std::string, std::string>>& out) {
  if (v.is_object()) {
    for (const auto& [k, child] : v.items()) flatten(child, path.empty() ? k : path + "." + k, out);
  } else if (v.is_array()) {
    for (std::size_t i = 0; i < v.size(); ++i) flatten(v[i], path + "[" + std::to_string(i) + "]", out);
  } else {
    out.emplace_back(path, scalar_text(v));
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return out + "\"";
}

std::string md_field(const std::string& s) {
  std::string out;
  for (char ch : s) out += ch == '|' ? std::string("\\|") : std::string(1, ch);
  return out;
}

std::string render_table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows,
                         Format format) {
  std::ostringstream os;
  if (format == Format::Csv) {
    auto line = [&](const std::vector<std::string>& r) {
      for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << csv_field(r[i]);
      os << "\n";
    };
    line(header);
    for (const auto& r : rows) line(r);
  } else {
    auto line = [&](const std::vector<std::string>& r) {
      os << "|";
      for (const auto& f : r) os << " " << md_field(f) << " |";
      os << "\n";
    };
    line(header);
    os << "|";
    for (std::size_t i = 0; i < header.size(); ++i) os << " --- |";
    os << "\n";
    for (const auto& r : rows) line(r);
  }
  return os.str();
}

json manifest_json(const Manifest& m) {
  json comps = json::array();
  for (const ComponentRank& c : m.components) {
    comps.push_back({{"label", c.label}, {"rows", c.rows}, {"rank_increment", c.rank_increment}});
  }
  return {{"seeds", m.seeds}, {"primes", m.primes}, {"components", comps}, {"note", m.note}};
}

json tool_json() { return {{"name", "fatflat"}, {"version", kToolVersion}}; }

}  // namespace

SchemeSpec parse_scheme_spec(const json& doc) {
  if (!doc.is_object()) throw DomainError("spec must be a JSON object");
  static const std::vector<std::string> known{"n", "t", "prime", "seed", "components", "z_components"};
  for (const auto& [key, _] : doc.items()) {
    if (std::ranges::find(known, key) == known.end()) throw DomainError("unknown top-level field '" + key + "'");
  }
  if (!doc.contains("n") || !doc.contains("t")) throw DomainError("spec needs 'n' and 't'");
  SchemeSpec s;
  s.n = get_int(doc, "n", 0, "spec");
  s.t = get_int(doc, "t", 0, "spec");
  if (s.n < 1) throw DomainError("n must be at least 1");
  if (s.t < 0) throw DomainError("t must be non-negative");
  if (doc.contains("prime")) {
    const json& p = doc.at("prime");
    if (!non_negative(p) || p.get<std::uint64_t>() > 0xffffffffu) throw DomainError("prime must be a 32-bit integer");
    s.prime = p.get<std::uint32_t>();
    PrimeField check(*s.prime);  // validates primality and size
    (void)check;
  }
  if (doc.contains("seed")) {
    if (!non_negative(doc.at("seed"))) throw DomainError("seed must be a non-negative integer");
    s.seed = doc.at("seed").get<std::uint64_t>();
  }
  s.components = parse_components(doc, "components", s.n);
  s.z_components = parse_components(doc, "z_components", s.n);
  s.source = doc;
  return s;
}

SchemeSpec load_scheme_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot read spec file '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw DomainError("spec '" + path + "' is not valid JSON: " + e.what());
  }
  return parse_scheme_spec(doc);
}

std::pair<FatFlatScheme, FatFlatScheme> realize_spec(const SchemeSpec& spec, const PrimeField& field,
                                                     RandomSource& rng) {
  const std::vector<SchemeRecipe> recipes{recipe_from_specs(spec.components, spec.n), recipe_from_specs(spec.z_components, spec.n)};
  auto schemes = realize_jointly(recipes, field, rng);
  append_explicit(schemes[0], spec.components, field);
  append_explicit(schemes[1], spec.z_components, field);
  schemes[0].validate(field);
  schemes[1].validate(field);
  return {std::move(schemes[0]), std::move(schemes[1])};
}

std::uint64_t elimination_memory_estimate(std::int64_t columns) {
  const auto c = static_cast<std::uint64_t>(std::max<std::int64_t>(columns, 0));
  return c * c * sizeof(Residue);
}

json to_json(const DimensionReport& r) {
  return {{"adim", r.adim ? json(*r.adim) : json(nullptr)},
          {"vdim", r.vdim},
          {"edim", r.edim},
          {"u", r.u ? json(*r.u) : json(nullptr)},
          {"method", to_string(r.method)},
          {"manifest", manifest_json(r.manifest)}};
}

json to_json(const ConeCertificate& c, bool include_form) {
  json out{{"n", c.n},
           {"degree", c.degree},
           {"adim", c.adim},
           {"vdim", c.vdim},
           {"u", c.u},
           {"order_along_apex", c.order_along_apex},
           {"annihilated_by_apex_conditions", c.annihilated_by_apex_conditions},
           {"lines_checked", c.lines_checked},
           {"points_per_line", c.points_per_line},
           {"vanishes_on_cone", c.vanishes_on_cone},
           {"verdict", to_string(c.verdict)},
           {"manifest", manifest_json(c.manifest)}};
  if (include_form && c.form) {
    out["form"] = {{"n", c.form->n}, {"t", c.form->t}, {"coefficients", c.form->coefficients},
                   {"monomial_order", "graded lex, x0^t first"}};
  }
  return out;
}

json to_json(const CaseResult& r, bool timing) {
  json checks = json::array();
  for (const Check& c : r.checks) {
    checks.push_back({{"name", c.name}, {"expected", c.expected}, {"actual", c.actual}, {"pass", c.pass}});
  }
  json out{{"id", r.id}, {"title", r.title}, {"checks", checks}, {"skipped", r.skipped}, {"passed", r.passed()}};
  if (timing) out["seconds"] = r.seconds;
  return out;
}

json analyze_document(const SchemeSpec& spec, const AnalyzeOptions& options) {
  const std::int64_t columns = to_int64(binomial(spec.t + spec.n, spec.n));
  if (columns > options.cap) {
    throw UnsupportedConfiguration("degree-" + std::to_string(spec.t) + " forms on P^" + std::to_string(spec.n) +
                                   " have " + std::to_string(columns) + " monomials, above the cap " +
                                   std::to_string(options.cap));
  }
  const RunConfig& run = options.run;
  if (run.seeds.empty() || run.primes.empty()) throw DomainError("need at least one seed and one prime");

  std::vector<DimensionReport> instances;
  json per_instance = json::array();
  json residual;
  for (const std::uint32_t p : run.primes) {
    const PrimeField field(p);
    for (const std::uint64_t seed : run.seeds) {
      RandomSource rng(seed);
      const auto [x, z] = realize_spec(spec, field, rng);
      DimensionReport r = unexpectedness(x, z, spec.t, field, run.elimination);
      per_instance.push_back({{"prime", p}, {"seed", seed}, {"adim", *r.adim}, {"vdim", r.vdim}, {"u", *r.u}});
      instances.push_back(std::move(r));
      if (residual.is_null() && !z.empty()) {
        ResidualCheck rc;
        try {
          rc = residual_unexpectedness_check(x, z, spec.t, field, run.elimination);
        } catch (const UnsupportedConfiguration& e) {
          residual = {{"prime", p}, {"seed", seed}, {"skipped", e.what()}};
          continue;
        }
        residual = {{"prime", p},
                    {"seed", seed},
                    {"union", to_json(rc.union_report)},
                    {"residual", to_json(rc.residual_report)},
                    {"triple", to_json(rc.triple_report)},
                    {"verdict", to_string(rc.verdict)},
                    {"inequality_holds", rc.inequality_holds},
                    {"consistent", rc.consistent}};
      }
    }
  }
  const UnexpectednessCertificate cert = combine_instances(std::move(instances), run);

  json doc{{"command", "analyze"},
           {"tool", tool_json()},
           {"input", spec.source},
           {"columns", columns},
           {"report", to_json(cert.report)},
           {"verdict", to_string(cert.verdict)},
           {"label", cert.label},
           {"caveat", cert.caveat},
           {"instances_disagree", cert.instances_disagree},
           {"instances", per_instance},
           {"manifest", {{"seeds", run.seeds}, {"primes", run.primes}, {"tool_version", kToolVersion}}}};
  if (!residual.is_null()) doc["residual_check"] = residual;
  return doc;
}

json suite_document(const std::vector<CaseResult>& results, const SuiteOptions& options, bool timing) {
  json cases = json::array();
  std::size_t checks = 0, failed = 0, skipped = 0;
  for (const CaseResult& r : results) {
    cases.push_back(to_json(r, timing));
    checks += r.checks.size();
    skipped += r.skipped.size();
    for (const Check& c : r.checks) failed += c.pass ? 0 : 1;
  }
  return {{"command", "paper-suite"},
          {"tool", tool_json()},
          {"cases", cases},
          {"summary", {{"cases", results.size()}, {"checks", checks}, {"failed", failed}, {"skipped", skipped}}},
          {"all_passed", failed == 0},
          {"manifest",
           {{"seeds", {options.seed}},
            {"primes", {options.prime}},
            {"extended", options.extended},
            {"tool_version", kToolVersion}}}};
}

json cone_document(const ConeCertificate& cert, const std::string& curve, std::uint64_t seed, std::uint32_t prime,
                   bool include_form) {
  json doc{{"command", "cone-verify"},
           {"tool", tool_json()},
           {"input", {{"curve", curve}, {"n", cert.n}}},
           {"certificate", to_json(cert, include_form)}};
  doc["certificate"]["manifest"]["seeds"] = {seed};
  doc["certificate"]["manifest"]["primes"] = {prime};
  return doc;
}

Format parse_format(const std::string& name) {
  if (name == "json") return Format::Json;
  if (name == "csv") return Format::Csv;
  if (name == "md" || name == "markdown") return Format::Markdown;
  throw DomainError("unknown format '" + name + "' (json, csv, md)");
}

std::string render(const json& doc, Format format) {
  if (format == Format::Json) return doc.dump(2) + "\n";
  if (doc.contains("cases")) {
    std::vector<std::vector<std::string>> rows;
    for (const json& c : doc.at("cases")) {
      for (const json& ch : c.at("checks")) {
        rows.push_back({c.at("id").get<std::string>(), ch.at("name").get<std::string>(),
                        ch.at("expected").get<std::string>(), ch.at("actual").get<std::string>(),
                        ch.at("pass").get<bool>() ? "PASS" : "FAIL"});
      }
      for (const json& s : c.at("skipped")) {
        rows.push_back({c.at("id").get<std::string>(), s.get<std::string>(), "", "", "SKIPPED"});
      }
    }
    return render_table({"case", "check", "expected", "actual", "status"}, rows, format);
  }
  std::vector<std::pair<std::string, std::string>> leaves;
  flatten(doc, "", leaves);
  std::vector<std::vector<std::string>> rows;
  for (auto& [k, v] : leaves) rows.push_back({k, v});
  return render_table({"field", "value"}, rows, format);
}

}  // namespace fatflat
