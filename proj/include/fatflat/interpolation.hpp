#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fatflat/field.hpp"
#include "fatflat/geometry.hpp"
#include "fatflat/matrix.hpp"

namespace fatflat {

/// Degree-t monomials in x_0..x_n, graded-lex: x_0^t first, x_n^t last.
class MonomialIndex {
 public:
  MonomialIndex(int n, int t);

  int ambient() const { return n_; }
  int degree() const { return t_; }
  std::size_t size() const { return size_; }

  std::span<const std::uint8_t> exponents(std::size_t index) const {
    return {exps_.data() + index * (n_ + 1), static_cast<std::size_t>(n_ + 1)};
  }
  /// Position of an exponent vector of total degree t; throws DomainError otherwise.
  std::size_t index(std::span<const std::uint8_t> exponents) const;
  std::size_t index(std::span<const int> exponents) const;

 private:
  int n_;
  int t_;
  std::size_t size_;
  std::vector<std::uint8_t> exps_;
};

/// A block of condition rows tagged with the component that produced it.
struct ConditionBlock {
  std::string label;
  DenseMatrix rows;  // cols = binom(t+n, n)
};

/// Vanishing to order >= m along the flat: after x = B y (B the standardizing
/// frame), every y-monomial whose transverse degree is below m has a zero
/// coefficient. One row per such monomial, expressed in the x-monomial basis.
ConditionBlock condition_rows_fat_flat(const Flat& flat, int m, int t, const PrimeField& field);

/// Order >= m at a point (the zero-dimensional case of the above).
ConditionBlock condition_rows_fat_point(std::span<const Residue> point, int m, int t, const PrimeField& field);

/// Containment of a rational curve of degree e: the composite binary form of
/// degree t*e vanishes identically, one row per coefficient.
ConditionBlock condition_rows_curve(const RationalCurve& curve, int t, const PrimeField& field);

/// All condition blocks of a scheme, in order flats, points, curves.
std::vector<ConditionBlock> condition_blocks(const FatFlatScheme& scheme, int t, const PrimeField& field);

struct ComponentRank {
  std::string label;
  std::size_t rows = 0;
  /// Rank added by this block on top of the blocks before it.
  std::size_t rank_increment = 0;
};

struct AdimResult {
  std::int64_t adim = 0;
  std::size_t columns = 0;
  std::vector<ComponentRank> components;
};

/// binom(t+n, n) minus the rank of all condition rows. Blocks are generated
/// and eliminated one at a time, so only the echelon form stays resident.
AdimResult adim(const FatFlatScheme& scheme, int t, const PrimeField& field, EliminationOptions options = {});

/// Coefficient vector of a nonzero degree-t form in the graded-lex basis.
struct FormVector {
  int n = 0;
  int t = 0;
  std::vector<Residue> coefficients;

  Residue evaluate(std::span<const Residue> point, const PrimeField& field) const;
};

/// Basis (reduced echelon, deterministic) of the degree-t part of the ideal.
std::vector<FormVector> kernel_basis_system(const FatFlatScheme& scheme, int t, const PrimeField& field,
                                            EliminationOptions options = {});

/// Largest m with every order-m fat-flat condition annihilating the form.
int vanishing_order_along_flat(const FormVector& form, const Flat& flat, const PrimeField& field);

/// Exact check that every row of the block annihilates v.
bool annihilates(const DenseMatrix& rows, std::span<const Residue> v, const PrimeField& field);

}  // namespace fatflat
