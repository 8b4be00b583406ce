#include "fatflat/matrix.hpp"

#include <algorithm>
#include <string>
#include <thread>

#include "fatflat/errors.hpp"

namespace fatflat {

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<Residue> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_) {
    throw DimensionMismatch("matrix data has " + std::to_string(data_.size()) + " entries, expected " +
                            std::to_string(rows_ * cols_));
  }
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

DenseMatrix DenseMatrix::from_rows(const std::vector<std::vector<Residue>>& rows, std::size_t cols) {
  DenseMatrix m(0, cols);
  for (const auto& r : rows) m.append_row(r);
  return m;
}

void DenseMatrix::append_row(std::span<const Residue> row) {
  if (row.size() != cols_) {
    throw DimensionMismatch("row of length " + std::to_string(row.size()) + " appended to matrix with " +
                            std::to_string(cols_) + " columns");
  }
  data_.insert(data_.end(), row.begin(), row.end());
  ++rows_;
}

bool DenseMatrix::reduced_in(const PrimeField& field) const {
  return std::all_of(data_.begin(), data_.end(), [&](Residue x) { return x < field.prime(); });
}

DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b, const PrimeField& field) {
  if (a.cols() != b.rows()) throw DimensionMismatch("matrix product with incompatible shapes");
  const std::uint64_t lazy = field.lazy_modulus();
  DenseMatrix out(a.rows(), b.cols());
  std::vector<std::uint64_t> acc(b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    std::fill(acc.begin(), acc.end(), 0);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Residue c = a(i, k);
      if (c == 0) continue;
      const auto brow = b.row(k);
      for (std::size_t j = 0; j < b.cols(); ++j) acc[j] = lazy_fma(acc[j], c, brow[j], lazy);
    }
    for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) = field.reduce(acc[j]);
  }
  return out;
}

std::vector<Residue> multiply(const DenseMatrix& a, std::span<const Residue> v, const PrimeField& field) {
  if (a.cols() != v.size()) throw DimensionMismatch("matrix-vector product with incompatible shapes");
  std::vector<Residue> out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) out[i] = dot(a.row(i), v, field);
  return out;
}

Residue dot(std::span<const Residue> a, std::span<const Residue> b, const PrimeField& field) {
  if (a.size() != b.size()) throw DimensionMismatch("dot product of vectors with different lengths");
  const std::uint64_t lazy = field.lazy_modulus();
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) acc = lazy_fma(acc, a[i], b[i], lazy);
  return field.reduce(acc);
}

// ---------------------------------------------------------------------------

EchelonBasis::EchelonBasis(std::size_t cols, const PrimeField& field, EliminationOptions options)
    : cols_(cols), field_(field), options_(options) {
  if (options_.threads == 0) options_.threads = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t row_bytes = std::max<std::size_t>(1, cols_) * sizeof(std::uint64_t);
  batch_capacity_ = std::clamp<std::size_t>(options_.batch_bytes / row_bytes, 4, 256);
  batch_capacity_ = std::max<std::size_t>(batch_capacity_, options_.threads);
}

void EchelonBasis::add_row(std::span<const Residue> row) {
  if (row.size() != cols_) {
    throw DimensionMismatch("row of length " + std::to_string(row.size()) + " fed to echelon basis with " +
                            std::to_string(cols_) + " columns");
  }
  if (cols_ == 0) return;
  if (batch_.empty()) batch_.resize(batch_capacity_ * cols_);
  std::uint64_t* dst = batch_.data() + queued_ * cols_;
  const std::uint32_t p = field_.prime();
  for (std::size_t j = 0; j < cols_; ++j) dst[j] = row[j] < p ? row[j] : row[j] % p;
  if (++queued_ == batch_capacity_) reduce_batch();
}

void EchelonBasis::add_rows(const DenseMatrix& rows) {
  for (std::size_t i = 0; i < rows.rows(); ++i) add_row(rows.row(i));
}

void EchelonBasis::flush() {
  if (queued_ != 0) reduce_batch();
}

std::size_t EchelonBasis::rank() {
  flush();
  return pivot_col_.size();
}

void EchelonBasis::reduce_rows_against_pivots(std::size_t begin, std::size_t end) {
  const std::uint32_t p = field_.prime();
  const std::uint64_t lazy = field_.lazy_modulus();
  for (const std::size_t idx : order_) {
    const std::size_t col = pivot_col_[idx];
    const Residue* pivot = pivot_rows_.data() + idx * cols_;
    for (std::size_t r = begin; r < end; ++r) {
      std::uint64_t* acc = batch_.data() + r * cols_;
      const Residue c = field_.reduce(acc[col]);
      if (c == 0) continue;
      const std::uint32_t factor = p - c;
      for (std::size_t j = col; j < cols_; ++j) acc[j] = lazy_fma(acc[j], factor, pivot[j], lazy);
    }
  }
}

void EchelonBasis::absorb_reduced_row(std::uint64_t* acc) {
  std::size_t lead = cols_;
  for (std::size_t j = 0; j < cols_; ++j) {
    acc[j] = field_.reduce(acc[j]);
    if (lead == cols_ && acc[j] != 0) lead = j;
  }
  if (lead == cols_) return;
  const Residue scale = field_.inv(static_cast<Residue>(acc[lead]));
  const std::size_t idx = pivot_col_.size();
  pivot_rows_.resize((idx + 1) * cols_);
  Residue* dst = pivot_rows_.data() + idx * cols_;
  for (std::size_t j = 0; j < lead; ++j) dst[j] = 0;
  for (std::size_t j = lead; j < cols_; ++j) dst[j] = field_.mul(static_cast<Residue>(acc[j]), scale);
  pivot_col_.push_back(lead);
  const auto pos = std::lower_bound(order_.begin(), order_.end(), lead,
                                    [&](std::size_t i, std::size_t c) { return pivot_col_[i] < c; });
  order_.insert(pos, idx);
}

void EchelonBasis::reduce_batch() {
  const std::size_t count = queued_;
  queued_ = 0;
  const unsigned threads = std::min<unsigned>(options_.threads, static_cast<unsigned>(count));
  if (threads <= 1 || order_.empty()) {
    reduce_rows_against_pivots(0, count);
  } else {
    std::vector<std::jthread> workers;
    const std::size_t chunk = (count + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      const std::size_t begin = t * chunk;
      const std::size_t end = std::min(count, begin + chunk);
      if (begin >= end) break;
      workers.emplace_back([this, begin, end] { reduce_rows_against_pivots(begin, end); });
    }
  }

  // Rows of this batch that became pivots still have to be eliminated from the
  // later rows of the same batch.
  const std::uint32_t p = field_.prime();
  const std::uint64_t lazy = field_.lazy_modulus();
  std::vector<std::size_t> fresh;
  for (std::size_t r = 0; r < count; ++r) {
    std::uint64_t* acc = batch_.data() + r * cols_;
    for (const std::size_t idx : fresh) {
      const std::size_t col = pivot_col_[idx];
      const Residue c = field_.reduce(acc[col]);
      if (c == 0) continue;
      const Residue* pivot = pivot_rows_.data() + idx * cols_;
      const std::uint32_t factor = p - c;
      for (std::size_t j = col; j < cols_; ++j) acc[j] = lazy_fma(acc[j], factor, pivot[j], lazy);
    }
    const std::size_t before = pivot_col_.size();
    absorb_reduced_row(acc);
    if (pivot_col_.size() != before) {
      fresh.push_back(before);
      std::sort(fresh.begin(), fresh.end(),
                [&](std::size_t a, std::size_t b) { return pivot_col_[a] < pivot_col_[b]; });
    }
  }
}

bool EchelonBasis::contains(std::span<const Residue> v) {
  if (v.size() != cols_) throw DimensionMismatch("membership test with vector of wrong length");
  flush();
  const std::uint32_t p = field_.prime();
  const std::uint64_t lazy = field_.lazy_modulus();
  std::vector<std::uint64_t> acc(v.begin(), v.end());
  for (const std::size_t idx : order_) {
    const std::size_t col = pivot_col_[idx];
    const Residue c = field_.reduce(acc[col]);
    if (c == 0) continue;
    const Residue* pivot = pivot_rows_.data() + idx * cols_;
    for (std::size_t j = col; j < cols_; ++j) acc[j] = lazy_fma(acc[j], p - c, pivot[j], lazy);
  }
  return std::all_of(acc.begin(), acc.end(), [&](std::uint64_t x) { return field_.reduce(x) == 0; });
}

std::vector<std::size_t> EchelonBasis::pivot_columns() {
  flush();
  std::vector<std::size_t> cols;
  cols.reserve(order_.size());
  for (const std::size_t idx : order_) cols.push_back(pivot_col_[idx]);
  return cols;
}

// Rows sorted by pivot column with every pivot column cleared above and below.
std::vector<Residue> EchelonBasis::reduced_echelon() const {
  const std::size_t r = order_.size();
  const std::uint32_t p = field_.prime();
  std::vector<Residue> rref(r * cols_);
  for (std::size_t i = 0; i < r; ++i) {
    std::copy_n(pivot_rows_.data() + order_[i] * cols_, cols_, rref.data() + i * cols_);
  }
  for (std::size_t i = r; i-- > 0;) {
    const std::size_t col = pivot_col_[order_[i]];
    const Residue* pivot = rref.data() + i * cols_;
    for (std::size_t k = 0; k < i; ++k) {
      Residue* row = rref.data() + k * cols_;
      const Residue c = row[col];
      if (c == 0) continue;
      const Residue factor = p - c;
      for (std::size_t j = col; j < cols_; ++j) {
        row[j] = field_.add(row[j], field_.mul(factor, pivot[j]));
      }
    }
  }
  return rref;
}

std::vector<std::vector<Residue>> EchelonBasis::kernel() {
  flush();
  const std::vector<Residue> rref = reduced_echelon();
  std::vector<bool> is_pivot(cols_, false);
  for (const std::size_t idx : order_) is_pivot[pivot_col_[idx]] = true;
  std::vector<std::vector<Residue>> basis;
  for (std::size_t f = 0; f < cols_; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Residue> v(cols_, 0);
    v[f] = 1;
    for (std::size_t i = 0; i < order_.size(); ++i) {
      v[pivot_col_[order_[i]]] = field_.neg(rref[i * cols_ + f]);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

std::size_t rank(const DenseMatrix& matrix, const PrimeField& field, EliminationOptions options) {
  EchelonBasis basis(matrix.cols(), field, options);
  basis.add_rows(matrix);
  return basis.rank();
}

std::vector<std::vector<Residue>> kernel_basis(const DenseMatrix& matrix, const PrimeField& field,
                                               EliminationOptions options) {
  EchelonBasis basis(matrix.cols(), field, options);
  basis.add_rows(matrix);
  return basis.kernel();
}

DenseMatrix inverse(const DenseMatrix& matrix, const PrimeField& field) {
  const std::size_t n = matrix.rows();
  if (matrix.cols() != n) throw DimensionMismatch("inverse of a non-square matrix");
  DenseMatrix a = matrix;
  DenseMatrix inv = DenseMatrix::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a(piv, col) == 0) ++piv;
    if (piv == n) throw DomainError("matrix is singular");
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(piv, j), a(col, j));
        std::swap(inv(piv, j), inv(col, j));
      }
    }
    const Residue s = field.inv(a(col, col));
    for (std::size_t j = 0; j < n; ++j) {
      a(col, j) = field.mul(a(col, j), s);
      inv(col, j) = field.mul(inv(col, j), s);
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a(r, col) == 0) continue;
      const Residue f = field.neg(a(r, col));
      for (std::size_t j = 0; j < n; ++j) {
        a(r, j) = field.add(a(r, j), field.mul(f, a(col, j)));
        inv(r, j) = field.add(inv(r, j), field.mul(f, inv(col, j)));
      }
    }
  }
  return inv;
}

}  // namespace fatflat
