#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fatflat/polynomial.hpp"

namespace fatflat {

/// binom(a, b) with the convention binom(a, b) = 0 for b < 0 or a < b.
Integer binomial(long a, long b);

/// Checked narrowing for values that are known to be small in practice.
std::int64_t to_int64(const Integer& value);

struct ConditionCountQuery {
  int n = 0;      // ambient dimension
  int delta = 0;  // dimension of the flat
  int m = 1;      // multiplicity
  int t = 0;      // degree
};

/// Number of independent conditions that vanishing to order m along a
/// delta-dimensional flat of P^n imposes on forms of degree t (t >= m >= 1):
///   sum_{0 <= i < m} binom(t-i+delta, delta) * binom(i+n-delta-1, n-delta-1).
Integer conditions_count(const ConditionCountQuery& q);

/// The same count as a polynomial in t; agrees with conditions_count for t >= m.
IntegerPolynomial fat_flat_hilbert_poly(int n, int delta, int m);

/// Finite sequence of nonnegative integers with a nonzero last entry (or empty).
class HVector {
 public:
  HVector() = default;
  explicit HVector(std::vector<std::int64_t> entries);

  const std::vector<std::int64_t>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  std::int64_t operator[](std::size_t i) const { return i < entries_.size() ? entries_[i] : 0; }
  std::int64_t sum() const;

  friend bool operator==(const HVector&, const HVector&) = default;

 private:
  std::vector<std::int64_t> entries_;
};

/// h-vector of k[x_1..x_codim] / (x_1..x_codim)^m: binom(k+codim-1, codim-1) for k < m.
HVector power_ideal_hvector(int codim, int m);

/// Product of the generating polynomials (h-vector of a tensor product).
HVector hvector_convolve(const HVector& a, const HVector& b);

/// Result of "integrating" an h-vector `times` times: the Hilbert function of a
/// ring whose artinian reduction has that h-vector and whose Krull dimension is
/// `times`.
class IntegratedHilbertFunction {
 public:
  IntegratedHilbertFunction(HVector h, int times);

  /// Iterated partial sums at t (0 for t < 0).
  Integer value(long t) const;
  /// First `count` values, starting at t = 0.
  std::vector<Integer> values(std::size_t count) const;
  /// Hilbert polynomial: sum_k h_k binom(t-k+times-1, times-1); zero when times = 0.
  const IntegerPolynomial& tail() const { return tail_; }
  /// value(t) == tail()(t) for every t >= polynomial_from().
  long polynomial_from() const { return from_; }

 private:
  HVector h_;
  int times_;
  IntegerPolynomial tail_;
  long from_;
};

IntegratedHilbertFunction hvector_integrate(const HVector& h, int times);

/// Hilbert polynomial of R / (I_{P1}^{m1} + I_{P2}^{m2}) for two codimension-2
/// flats of P^n meeting properly in a flat of dimension meet_dim = n - 4 (0 or 1).
IntegerPolynomial pairwise_intersection_hp(int n, int m1, int m2, int meet_dim);

struct FlatComponent {
  int dim = 0;
  int multiplicity = 1;
};

/// Pairwise meet dimensions (-1 for empty) and whether every triple
/// intersection is empty.
struct IntersectionPattern {
  std::vector<std::vector<int>> pair_meet;
  bool triples_empty = true;
};

/// Dimension of the intersection of general flats of dimensions a and b in P^n.
int generic_meet_dim(int n, int a, int b);
IntersectionPattern generic_pattern(int n, std::span<const FlatComponent> components);

/// Hilbert polynomial of the union of fat flats, sum of the single-flat
/// polynomials minus one pair correction per unordered meeting pair. Only
/// codimension-2 pairs meeting properly in a point or a line are modeled;
/// anything else that meets, or a nonempty triple intersection, raises
/// UnsupportedConfiguration.
IntegerPolynomial mayer_vietoris_polynomial(int n, std::span<const FlatComponent> components,
                                            const IntersectionPattern& pattern);
IntegerPolynomial mayer_vietoris_polynomial(int n, std::span<const FlatComponent> components);

/// Value at t of the general-position polynomial; requires t >= every multiplicity.
Integer mayer_vietoris_value(int n, std::span<const FlatComponent> components, int t);

}  // namespace fatflat
