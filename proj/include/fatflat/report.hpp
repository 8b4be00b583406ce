#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "fatflat/analysis.hpp"
#include "fatflat/geometry.hpp"
#include "fatflat/suite.hpp"

namespace fatflat {

inline constexpr const char* kToolVersion = "1.0.0";

/// One entry of `components` / `z_components` in a scheme spec file.
struct ComponentSpec {
  enum class Kind { Flat, FatPointsOnLine, FatPoint, RationalCurve, NamedBase };
  Kind kind = Kind::Flat;
  int dim = 0;
  int multiplicity = 1;
  int count = 1;
  std::vector<int> multiplicities;                  // fat-points-on-line, named-base
  std::vector<std::vector<std::uint64_t>> points;   // explicit flat: dim+1 spanning points
  std::vector<std::uint64_t> point;                 // explicit fat point
  std::vector<std::vector<std::uint64_t>> forms;    // explicit curve: n+1 binary forms

  bool is_explicit() const { return !points.empty() || !point.empty() || !forms.empty(); }
};

struct SchemeSpec {
  int n = 0;
  int t = 0;
  std::optional<std::uint32_t> prime;
  std::optional<std::uint64_t> seed;
  std::vector<ComponentSpec> components;
  std::vector<ComponentSpec> z_components;
  nlohmann::json source;  // the parsed document, echoed in reports
};

/// Throws DomainError describing the first problem found.
SchemeSpec parse_scheme_spec(const nlohmann::json& doc);
SchemeSpec load_scheme_spec(const std::string& path);

/// X and Z for one (prime, seed): random components are sampled jointly,
/// explicit ones are reduced mod p and appended. Both schemes are validated.
std::pair<FatFlatScheme, FatFlatScheme> realize_spec(const SchemeSpec& spec, const PrimeField& field,
                                                     RandomSource& rng);

struct AnalyzeOptions {
  RunConfig run;
  /// Refuse systems with more monomials than this (UnsupportedConfiguration).
  std::int64_t cap = 25000;
  bool timing = false;
};

/// Bytes held by the pivot rows of an elimination over `columns` columns.
std::uint64_t elimination_memory_estimate(std::int64_t columns);

nlohmann::json to_json(const DimensionReport& report);
nlohmann::json to_json(const ConeCertificate& cert, bool include_form);
nlohmann::json to_json(const CaseResult& result, bool timing);

/// Runs the certificate over seeds x primes and, when Z is present, the
/// residual comparison for Z' = Z. Keys are sorted; wall-clock only with timing.
nlohmann::json analyze_document(const SchemeSpec& spec, const AnalyzeOptions& options);
nlohmann::json suite_document(const std::vector<CaseResult>& results, const SuiteOptions& options, bool timing);
nlohmann::json cone_document(const ConeCertificate& cert, const std::string& curve, std::uint64_t seed,
                             std::uint32_t prime, bool include_form);

enum class Format { Json, Csv, Markdown };
Format parse_format(const std::string& name);

/// Suite documents render as one row per check; everything else as a
/// path/value table of the scalar leaves.
std::string render(const nlohmann::json& doc, Format format);

}  // namespace fatflat
