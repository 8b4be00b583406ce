#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "fatflat/combinatorics.hpp"
#include "fatflat/field.hpp"
#include "fatflat/matrix.hpp"

namespace fatflat {

/// Seeded generator. Equal seeds give equal streams on every platform: the
/// engine and seed_seq are fully specified by the standard, and residues are
/// drawn by rejection instead of through a library distribution.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t next() { return engine_(); }
  Residue residue(const PrimeField& field);
  Residue nonzero_residue(const PrimeField& field);
  std::vector<Residue> vector(std::size_t length, const PrimeField& field);

  /// Independent stream keyed by (seed, stream); does not advance this one.
  RandomSource derive(std::uint64_t stream) const;

 private:
  RandomSource(std::uint64_t seed, std::uint64_t stream);
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

/// Projective linear subspace of P^n, given by dim+1 spanning points together
/// with n-dim independent linear forms cutting it out.
class Flat {
 public:
  /// `points` has one point per row, n+1 columns. Throws GenericityFailure if
  /// the points are dependent.
  static Flat from_points(const DenseMatrix& points, const PrimeField& field);
  /// Span of e_0, ..., e_dim.
  static Flat standard(int n, int dim, const PrimeField& field);

  int ambient() const { return static_cast<int>(basis_.cols()) - 1; }
  int dim() const { return static_cast<int>(basis_.rows()) - 1; }
  std::uint32_t prime() const { return prime_; }
  const DenseMatrix& basis() const { return basis_; }
  const DenseMatrix& equations() const { return equations_; }

  bool contains(std::span<const Residue> point, const PrimeField& field) const;

 private:
  Flat(DenseMatrix basis, DenseMatrix equations, std::uint32_t prime)
      : basis_(std::move(basis)), equations_(std::move(equations)), prime_(prime) {}
  DenseMatrix basis_;
  DenseMatrix equations_;
  std::uint32_t prime_;
};

constexpr int kMaxSamplingAttempts = 16;

Flat random_flat(int n, int dim, const PrimeField& field, RandomSource& rng);

/// -1 when the flats are disjoint.
int flat_meet_dim(const Flat& a, const Flat& b, const PrimeField& field);
/// Dimension of a ∩ b ∩ c (-1 when empty).
int flat_meet_dim(const Flat& a, const Flat& b, const Flat& c, const PrimeField& field);

/// Invertible matrix B whose first dim+1 columns are the basis points of the
/// flat; the substitution x = B y sends the flat to {y_{dim+1} = ... = y_n = 0}.
/// The remaining columns are the first unit vectors that complete the basis.
DenseMatrix standardizing_frame(const Flat& flat, const PrimeField& field);

/// Change of coordinates M (= B^{-1}) carrying the flat onto the standard
/// coordinate flat {x_{dim+1} = ... = x_n = 0}.
DenseMatrix coordinate_change_to_standard(const Flat& flat, const PrimeField& field);

/// Curve of P^n parameterized by n+1 binary forms of degree e in (s, u).
class RationalCurve {
 public:
  /// forms(j, k) is the coefficient of s^(e-k) u^k in the j-th coordinate.
  /// Throws DomainError if the forms share a factor (or all vanish).
  static RationalCurve from_forms(DenseMatrix forms, const PrimeField& field);

  int ambient() const { return static_cast<int>(forms_.rows()) - 1; }
  int degree() const { return static_cast<int>(forms_.cols()) - 1; }
  const DenseMatrix& forms() const { return forms_; }

  std::vector<Residue> point_at(Residue s, Residue u, const PrimeField& field) const;
  /// Not contained in a hyperplane (coefficient matrix of full rank n+1).
  bool nondegenerate(const PrimeField& field) const;

 private:
  explicit RationalCurve(DenseMatrix forms) : forms_(std::move(forms)) {}
  DenseMatrix forms_;
};

/// Degree-n rational normal curve in random coordinates; requires n >= 2.
RationalCurve rational_normal_curve(int n, const PrimeField& field, RandomSource& rng);

/// The line through the two basis points of `line`, parameterized linearly.
RationalCurve line_as_curve(const Flat& line, const PrimeField& field);

struct FatFlat {
  Flat flat;
  int multiplicity = 1;
};

struct FatPoint {
  std::vector<Residue> point;
  int multiplicity = 1;
  /// Index into FatFlatScheme::host_lines.
  std::optional<std::size_t> host_line;
};

/// A formal sum of fat flats, fat points and rational curves of one P^n.
struct FatFlatScheme {
  int ambient = 0;
  std::vector<FatFlat> flats;
  std::vector<FatPoint> points;
  std::vector<Flat> host_lines;
  std::vector<RationalCurve> curves;

  bool empty() const { return flats.empty() && points.empty() && curves.empty(); }
  int max_multiplicity() const;
  /// Checks multiplicities, ambient dimensions and point/host-line incidences.
  void validate(const PrimeField& field) const;
  /// Union with the host-line indices of `other` rebased.
  FatFlatScheme merged_with(const FatFlatScheme& other) const;
  std::vector<FlatComponent> flat_components() const;
};

/// `count` distinct points on a line (requires count <= p), each of
/// multiplicity m. Host-line references are left unset.
std::vector<FatPoint> sample_fat_points_on_line(const Flat& line, int count, int m, const PrimeField& field,
                                                RandomSource& rng);

/// What to sample: a family of general flats, a set of fat points on a fresh
/// general line, or a rational normal curve.
struct ComponentRequest {
  enum class Kind { Flat, PointsOnLine, RationalNormalCurve };
  Kind kind = Kind::Flat;
  int dim = 1;
  int multiplicity = 1;
  int count = 1;
  /// PointsOnLine: one multiplicity per point.
  std::vector<int> point_multiplicities;

  static ComponentRequest flats(int dim, int multiplicity, int count = 1) {
    return {Kind::Flat, dim, multiplicity, count, {}};
  }
  static ComponentRequest points_on_line(std::vector<int> multiplicities) {
    return {Kind::PointsOnLine, 1, 0, 1, std::move(multiplicities)};
  }
  static ComponentRequest normal_curve() { return {Kind::RationalNormalCurve, 1, 1, 1, {}}; }
};

struct SchemeRecipe {
  int ambient = 0;
  std::vector<ComponentRequest> components;

  /// r general flats of one dimension, one per multiplicity.
  static SchemeRecipe flats(int n, int dim, std::span<const int> multiplicities);
  bool empty() const { return components.empty(); }
  /// Flat components only; throws UnsupportedConfiguration for anything else.
  std::vector<FlatComponent> flat_components() const;
};

/// Samples every recipe from one stream so the results are jointly general:
/// each new flat (component or host line) is checked against all earlier ones
/// for the generic pairwise meet dimension and resampled on failure.
std::vector<FatFlatScheme> realize_jointly(std::span<const SchemeRecipe> recipes, const PrimeField& field,
                                           RandomSource& rng);
FatFlatScheme realize(const SchemeRecipe& recipe, const PrimeField& field, RandomSource& rng);

/// Pairwise meet dimensions of the flat components as actually sampled.
IntersectionPattern intersection_pattern(const FatFlatScheme& scheme, const PrimeField& field);

}  // namespace fatflat
