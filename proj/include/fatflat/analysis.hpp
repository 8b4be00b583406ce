#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fatflat/combinatorics.hpp"
#include "fatflat/field.hpp"
#include "fatflat/geometry.hpp"
#include "fatflat/interpolation.hpp"

namespace fatflat {

enum class Method { RankInstance, TransferredViaCorrespondence, FormulaOnly };
std::string to_string(Method m);

/// Where a number came from: seeds and primes of the instances and, for rank
/// results, the row count and rank increment of every component block.
struct Manifest {
  std::vector<std::uint64_t> seeds;
  std::vector<std::uint32_t> primes;
  std::vector<ComponentRank> components;
  std::string note;
};

/// u = 0 when adim = 0, else adim - vdim.
std::int64_t unexpectedness_value(std::int64_t adim, std::int64_t vdim);

struct DimensionReport {
  std::optional<std::int64_t> adim;  // absent only for formula-only reports
  std::int64_t vdim = 0;
  std::int64_t edim = 0;
  std::optional<std::int64_t> u;
  Method method = Method::RankInstance;
  Manifest manifest;

  static DimensionReport make(std::optional<std::int64_t> adim, std::int64_t vdim, Method method, Manifest manifest = {});
};

/// H_X(t) for a scheme of fat flats and free fat points, using the meet
/// pattern of the flats as realized. Points on host lines and curves raise
/// UnsupportedConfiguration. Requires t >= every multiplicity.
Integer hilbert_value(const FatFlatScheme& x, int t, const PrimeField& field);

/// dim [I_Z]_t - H_X(t).
std::int64_t virtual_dimension(const FatFlatScheme& x, int t, std::int64_t dim_iz_t, const PrimeField& field);

/// dim [I_Z]_t by rank, or binom(t+n, n) when Z is empty.
std::int64_t ideal_dimension(const FatFlatScheme& z, int t, const PrimeField& field, EliminationOptions options = {});

/// Instance report for (X, Z, t): adim on X + Z, vdim from dim [I_Z]_t and H_X(t).
DimensionReport unexpectedness(const FatFlatScheme& x, const FatFlatScheme& z, int t, const PrimeField& field,
                               EliminationOptions options = {});

/// A triple to be sampled: X and Z as recipes in one ambient space.
struct Triple {
  int n = 3;
  SchemeRecipe x;
  SchemeRecipe z;
  int t = 0;
};

struct RunConfig {
  std::vector<std::uint64_t> seeds{1};
  std::vector<std::uint32_t> primes{PrimeField::kDefaultPrime};
  EliminationOptions elimination{};
};

enum class Verdict { Unexpected, Expected, Inconclusive };
std::string to_string(Verdict v);

struct UnexpectednessCertificate {
  DimensionReport report;
  Verdict verdict = Verdict::Inconclusive;
  /// "unexpected (generic, high confidence)", "transferred", "instance only", ...
  std::string label;
  std::string caveat;
  /// Set when the instances disagreed; the report then carries the smallest adim.
  bool instances_disagree = false;
};

/// Realizes X and Z jointly for every (prime, seed) and reports the smallest
/// adim seen (each instance bounds the general value from above).
UnexpectednessCertificate certify(const Triple& triple, const RunConfig& config);
/// Certificate from per-instance reports, one per (prime, seed) of `config`
/// (used when the schemes are not sampled from recipes alone).
UnexpectednessCertificate combine_instances(std::vector<DimensionReport> instances, const RunConfig& config);

/// The caveat attached to rank-instance results.
extern const char* const kGenericityCaveat;

/// Compares u(X+Z', 0, t) with u(Z', 0, t) and, independently, computes
/// u(X, Z', t). When the first exceeds the second the triple (X, Z', t) is
/// reported unexpected; `consistent` records whether u(X, Z', t) > 0 agrees.
struct ResidualCheck {
  DimensionReport union_report;     // (X + Z', 0, t)
  DimensionReport residual_report;  // (Z', 0, t)
  DimensionReport triple_report;    // (X, Z', t)
  Verdict verdict = Verdict::Inconclusive;
  bool inequality_holds = false;
  bool consistent = true;
};
ResidualCheck residual_unexpectedness_check(const FatFlatScheme& x, const FatFlatScheme& zprime, int t,
                                            const PrimeField& field, EliminationOptions options = {});

/// Replaces the fat line `line_index` of Z (multiplicity m') by fat points on
/// it with the given multiplicities. At least t - m' + 2 of them must equal m'
/// and none may exceed m'; otherwise PreconditionError.
FatFlatScheme replace_line_with_fat_points(const FatFlatScheme& z, std::size_t line_index,
                                           const std::vector<int>& multiplicities, int t, const PrimeField& field,
                                           RandomSource& rng);

/// Cone construction check for a nondegenerate rational curve C of degree d in
/// P^n (n >= 3): a general flat L of dimension n - 3 and the system of degree-d
/// forms through C with multiplicity d along L.
struct ConeCertificate {
  int n = 0;
  int degree = 0;
  std::int64_t adim = 0;
  std::int64_t vdim = 0;
  std::int64_t u = 0;
  int order_along_apex = -1;
  bool annihilated_by_apex_conditions = false;
  int lines_checked = 0;
  int points_per_line = 0;
  bool vanishes_on_cone = false;
  std::optional<FormVector> form;
  Verdict verdict = Verdict::Inconclusive;
  Manifest manifest;
};
ConeCertificate cone_verify(const RationalCurve& curve, const PrimeField& field, RandomSource& rng,
                            int lines = 20, int points_per_line = 50);

}  // namespace fatflat
