#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "fatflat/field.hpp"

namespace fatflat {

/// Row-major matrix of residues. Entries are expected to lie in [0, p) for the
/// field they are used with; `reduced_in` checks that.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<Residue> data);

  static DenseMatrix identity(std::size_t n);
  static DenseMatrix from_rows(const std::vector<std::vector<Residue>>& rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Residue& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Residue operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<Residue> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const Residue> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  void append_row(std::span<const Residue> row);

  const std::vector<Residue>& data() const { return data_; }
  bool reduced_in(const PrimeField& field) const;

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Residue> data_;
};

DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b, const PrimeField& field);
std::vector<Residue> multiply(const DenseMatrix& a, std::span<const Residue> v, const PrimeField& field);
Residue dot(std::span<const Residue> a, std::span<const Residue> b, const PrimeField& field);

struct EliminationOptions {
  /// Worker threads for the batch reduction; 0 means hardware concurrency.
  unsigned threads = 1;
  /// Upper bound on the bytes of row accumulators kept hot per batch.
  std::size_t batch_bytes = std::size_t{1} << 20;
};

/// Incremental row echelon form over a prime field.
///
/// Rows are buffered and reduced in batches against the stored pivot rows,
/// which are kept in semi-echelon form (each pivot row is zero left of its
/// pivot and normalized to 1 there). Only independent rows are retained, so
/// memory is rank * cols residues plus one batch of 64-bit accumulators.
///
/// Results do not depend on the thread count: every row is reduced by the same
/// sequence of operations, threads only split the batch.
class EchelonBasis {
 public:
  EchelonBasis(std::size_t cols, const PrimeField& field, EliminationOptions options = {});

  std::size_t cols() const { return cols_; }
  const PrimeField& field() const { return field_; }

  /// Queues a row. Throws DimensionMismatch on a wrong length.
  void add_row(std::span<const Residue> row);
  void add_rows(const DenseMatrix& rows);

  /// Processes any queued rows.
  void flush();

  std::size_t rank();

  /// True if `v` lies in the row span (flushes first).
  bool contains(std::span<const Residue> v);

  /// Right kernel of the accumulated rows: cols - rank vectors, one per
  /// non-pivot column, in reduced echelon form (the free column carries 1,
  /// other free columns 0). Ordered by free column.
  std::vector<std::vector<Residue>> kernel();

  /// Pivot columns in ascending order.
  std::vector<std::size_t> pivot_columns();

 private:
  void reduce_batch();
  void reduce_rows_against_pivots(std::size_t begin, std::size_t end);
  void absorb_reduced_row(std::uint64_t* acc);
  std::vector<Residue> reduced_echelon() const;

  std::size_t cols_;
  PrimeField field_;
  EliminationOptions options_;
  std::size_t batch_capacity_;

  std::vector<Residue> pivot_rows_;      // rank * cols, in insertion order
  std::vector<std::size_t> pivot_col_;   // pivot column of each stored row
  std::vector<std::size_t> order_;       // stored rows sorted by pivot column
  std::vector<std::uint64_t> batch_;     // batch_capacity_ * cols accumulators
  std::size_t queued_ = 0;
};

std::size_t rank(const DenseMatrix& matrix, const PrimeField& field, EliminationOptions options = {});

/// Rank of a stream of rows. `next` is called until it returns false; each call
/// fills the provided buffer (already sized to `cols`) with the next row.
template <class RowGenerator>
std::size_t rank_streaming(RowGenerator&& next, std::size_t cols, const PrimeField& field,
                           EliminationOptions options = {}) {
  EchelonBasis basis(cols, field, options);
  std::vector<Residue> buffer(cols);
  while (next(buffer)) basis.add_row(buffer);
  return basis.rank();
}

/// Rank of rows given as a range of spans/vectors.
template <class RowRange>
std::size_t rank_of_rows(const RowRange& rows, std::size_t cols, const PrimeField& field,
                         EliminationOptions options = {}) {
  EchelonBasis basis(cols, field, options);
  for (const auto& r : rows) basis.add_row(std::span<const Residue>(r.data(), r.size()));
  return basis.rank();
}

std::vector<std::vector<Residue>> kernel_basis(const DenseMatrix& matrix, const PrimeField& field,
                                               EliminationOptions options = {});

/// Inverse of a square matrix; throws DomainError when singular.
DenseMatrix inverse(const DenseMatrix& matrix, const PrimeField& field);

}  // namespace fatflat
