#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "grlie/exactalg/rings.hpp"

namespace grlie {

/// Dense matrix over F_p, row-major.
class MatrixFp {
 public:
  MatrixFp(std::uint32_t p, std::size_t rows, std::size_t cols)
      : field_(p), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  MatrixFp(std::uint32_t p, std::size_t cols, const std::vector<std::vector<std::int64_t>>& rows)
      : MatrixFp(p, rows.size(), cols) {
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].size() != cols) throw InputError("ragged matrix row");
      for (std::size_t c = 0; c < cols; ++c) at(r, c) = field_.from_int(rows[r][c]);
    }
  }

  std::uint32_t p() const { return field_.p; }
  const PrimeField& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  std::uint32_t& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  std::uint32_t at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const std::uint32_t> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<std::uint32_t> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }

  void push_row(std::span<const std::uint32_t> v) {
    data_.insert(data_.end(), v.begin(), v.end());
    ++rows_;
  }

  bool operator==(const MatrixFp& o) const {
    return field_.p == o.field_.p && rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

 private:
  PrimeField field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::uint32_t> data_;
};

/// Incrementally built row space over F_p in row-echelon form.
///
/// Pivot rows are normalized (pivot entry 1, zeros left of the pivot). Reduction
/// accumulates in uint32 without per-step modular reduction; only the entry
/// about to be eliminated is reduced, so the inner loop is a plain axpy.
class FpRowSpace {
 public:
  FpRowSpace(std::uint32_t p, std::size_t cols)
      : field_(p), cols_(cols), pivot_row_(cols, kNone) {
    if (p > 46337) throw InputError("FpRowSpace supports primes below 46337");
    // Each axpy adds at most (p-1)^2; flush before uint32 could overflow.
    const std::uint64_t step = static_cast<std::uint64_t>(p - 1) * (p - 1);
    flush_every_ = step == 0 ? 1u << 30 : static_cast<std::uint32_t>((0xFFFFFFFFull - p) / step);
  }

  std::uint32_t p() const { return field_.p; }
  std::size_t cols() const { return cols_; }
  std::size_t rank() const { return rows_.size(); }
  /// Echelon basis rows in insertion order (leading entry 1, not back-reduced).
  const std::vector<std::vector<std::uint32_t>>& echelon_rows() const { return rows_; }

  /// Inserts v; returns true when v was independent of the current span.
  bool insert(std::span<const std::uint32_t> v) {
    std::vector<std::uint32_t> w(v.begin(), v.end());
    std::size_t lead = reduce_in_place(w);
    if (lead == cols_) return false;
    std::uint32_t inv = field_.inv(w[lead]);
    for (std::size_t c = lead; c < cols_; ++c) w[c] = field_.mul(w[c], inv);
    pivot_row_[lead] = rows_.size();
    pivots_.push_back(lead);
    rows_.push_back(std::move(w));
    return true;
  }

  bool contains(std::span<const std::uint32_t> v) const {
    std::vector<std::uint32_t> w(v.begin(), v.end());
    return reduce_in_place(w) == cols_;
  }

  /// Reduces v modulo the span (entries end in [0,p)); returns first nonzero column or cols().
  std::size_t reduce_in_place(std::vector<std::uint32_t>& w) const {
    const std::uint32_t p = field_.p;
    std::uint32_t since_flush = 0;
    std::size_t lead = cols_;
    for (std::size_t c = 0; c < cols_; ++c) {
      std::uint32_t x = w[c] % p;
      w[c] = x;
      if (x == 0) continue;
      std::size_t r = pivot_row_[c];
      if (r == kNone) {
        if (lead == cols_) lead = c;
        continue;
      }
      if (since_flush == flush_every_) {
        for (std::size_t k = c; k < cols_; ++k) w[k] %= p;
        since_flush = 0;
      }
      const std::uint32_t f = p - x;
      const std::uint32_t* src = rows_[r].data();
      std::uint32_t* dst = w.data();
      for (std::size_t k = c; k < cols_; ++k) dst[k] += f * src[k];
      ++since_flush;
      w[c] = 0;
    }
    return lead;
  }

  /// Reduced row-echelon basis, rows ordered by pivot column.
  MatrixFp rref() const {
    std::vector<std::size_t> order(pivots_);
    std::sort(order.begin(), order.end());
    std::vector<std::vector<std::uint32_t>> rows;
    rows.reserve(order.size());
    for (std::size_t c : order) rows.push_back(rows_[pivot_row_[c]]);
    // Back-substitute from the last pivot upwards.
    for (std::size_t i = rows.size(); i-- > 0;) {
      for (std::size_t k = 0; k < i; ++k) {
        std::uint32_t f = rows[k][order[i]];
        if (f == 0) continue;
        for (std::size_t c = order[i]; c < cols_; ++c)
          rows[k][c] = field_.sub(rows[k][c], field_.mul(f, rows[i][c]));
      }
    }
    MatrixFp m(field_.p, 0, cols_);
    for (auto& r : rows) m.push_row(r);
    return m;
  }

  const std::vector<std::size_t>& pivot_columns() const { return pivots_; }

 private:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  PrimeField field_;
  std::size_t cols_;
  std::uint32_t flush_every_;
  std::vector<std::size_t> pivot_row_;
  std::vector<std::size_t> pivots_;
  std::vector<std::vector<std::uint32_t>> rows_;
};

inline MatrixFp fp_rowspace(const MatrixFp& m) {
  FpRowSpace rs(m.p(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) rs.insert(m.row(r));
  return rs.rref();
}

inline std::size_t fp_rank(const MatrixFp& m) {
  FpRowSpace rs(m.p(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) rs.insert(m.row(r));
  return rs.rank();
}

}  // namespace grlie
