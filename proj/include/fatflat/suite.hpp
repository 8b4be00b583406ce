#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fatflat/analysis.hpp"
#include "fatflat/field.hpp"
#include "fatflat/matrix.hpp"

namespace fatflat {

/// One recorded value compared with the computed one.
struct Check {
  std::string name;
  std::string expected;
  std::string actual;
  bool pass = false;
};

struct CaseResult {
  std::string id;
  std::string title;
  std::vector<Check> checks;
  std::vector<std::string> skipped;  // gated steps with the reason
  double seconds = 0;

  bool passed() const;
};

struct SuiteOptions {
  std::uint64_t seed = 1;
  std::uint32_t prime = PrimeField::kDefaultPrime;
  EliminationOptions elimination{};
  bool extended = false;
};

struct CaseInfo {
  std::string id;
  std::string title;
};

/// Every case of the regression corpus, sorted by id.
const std::vector<CaseInfo>& corpus_cases();

/// Throws DomainError for an unknown id.
CaseResult run_corpus_case(const std::string& id, const SuiteOptions& options);

/// Cases whose id starts with `filter` (all when empty), sorted by id.
std::vector<CaseResult> run_corpus_suite(const std::string& filter, const SuiteOptions& options);

}  // namespace fatflat
