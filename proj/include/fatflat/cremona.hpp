#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fatflat/field.hpp"
#include "fatflat/geometry.hpp"
#include "fatflat/interpolation.hpp"

namespace fatflat {

/// An extra fat line (or flat) outside the base locus, kept by name only.
struct ExtraComponent {
  std::string name;
  int multiplicity = 0;
  friend bool operator==(const ExtraComponent&, const ExtraComponent&) = default;
};

/// d H - m_1 Pi_1 - ... - m_{n+1} Pi_{n+1} against the n+1 codimension-2 base
/// flats of a Veneroni map of P^n, plus optional extra components.
struct VirtualSystem {
  int n = 3;
  int degree = 0;
  std::vector<int> base_multiplicities;
  std::vector<ExtraComponent> extra;

  /// Throws DomainError unless there are n+1 nonnegative multiplicities and degree >= 0.
  void validate() const;
  std::string to_string() const;
  friend bool operator==(const VirtualSystem&, const VirtualSystem&) = default;
};

/// Image under the Veneroni map: d' = n d - (n-1) sum m, m'_i = d - sum_{j != i} m_j.
/// Throws NotEffective when a value would be negative, DomainError when the
/// system carries extra components.
VirtualSystem veneroni_transform(const VirtualSystem& vs);

/// A class a H - sum b_i Pi_i, used to expand the transformation symbolically.
struct DivisorClass {
  std::int64_t h = 0;
  std::vector<std::int64_t> pi;  // coefficients of -Pi_i
  friend bool operator==(const DivisorClass&, const DivisorClass&) = default;
};

/// Expands d H' - sum m_j Pi'_j with H' = n H - sum Pi_i and
/// Pi'_j = (n-1) H - sum_{i != j} Pi_i. No effectivity check.
DivisorClass veneroni_pullback_class(const VirtualSystem& vs);

struct VeneroniBasis {
  std::vector<FormVector> forms;  // degree-n forms, n+1 of them
  std::vector<Flat> base;         // the n+1 codimension-2 flats
};

/// Degree-n forms through n+1 general codimension-2 flats (3 <= n <= 5).
/// Throws GenericityFailure when the system does not have dimension n+1.
VeneroniBasis veneroni_map_basis(int n, const PrimeField& field, RandomSource& rng);
/// Same, for explicitly given base flats.
VeneroniBasis veneroni_map_basis(int n, std::vector<Flat> base, const PrimeField& field);

/// Degree plus the multiset of line multiplicities of a system of P^3.
struct Signature {
  int degree = 0;
  std::vector<int> multiplicities;  // sorted descending

  static Signature of(int degree, std::vector<int> multiplicities);
  std::string to_string() const;
  friend bool operator==(const Signature&, const Signature&) = default;
};

struct NamedCorrespondence {
  std::string name;
  int n = 3;
  Signature source;
  Signature target;
};

/// The recorded correspondences, in a fixed order.
const std::vector<NamedCorrespondence>& named_correspondences();

/// Looks the input up in the recorded table ("todd") or, for "cubo-cubic",
/// delegates to veneroni_transform with n = 3 on the first four multiplicities.
/// Throws UnsupportedConfiguration for anything not recorded.
Signature apply_named_correspondence(const std::string& name, const Signature& input);

struct InvarianceReport {
  VirtualSystem source;
  VirtualSystem target;
  std::optional<std::int64_t> source_adim;
  std::optional<std::int64_t> target_adim;
  bool skipped = false;
  std::string reason;

  bool agree() const { return !skipped && source_adim == target_adim; }
};

/// adim of both systems (realized as fat flats on independent general
/// configurations). Skips with a reason when either has more than `cap` monomials.
InvarianceReport check_dimension_invariance(const VirtualSystem& vs, const PrimeField& field, RandomSource& rng,
                                            std::int64_t cap = 6000, EliminationOptions options = {});

/// The fat-flat scheme of a virtual system: base multiplicities on n+1
/// general codimension-2 flats (zero multiplicities dropped).
SchemeRecipe recipe_of(const VirtualSystem& vs);

}  // namespace fatflat
