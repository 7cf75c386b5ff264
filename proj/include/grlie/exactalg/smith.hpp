#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "grlie/exactalg/rings.hpp"

namespace grlie {

/// Dense integer matrix with arbitrary-precision entries.
class MatrixZ {
 public:
  MatrixZ(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  MatrixZ(std::size_t cols, const std::vector<std::vector<std::int64_t>>& rows)
      : MatrixZ(rows.size(), cols) {
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].size() != cols) throw InputError("ragged matrix row");
      for (std::size_t c = 0; c < cols; ++c) at(r, c) = rows[r][c];
    }
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  BigInt& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const BigInt& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<BigInt> data_;
};

/// Invariant factors of m: the nonzero diagonal of its Smith normal form,
/// d_1 | d_2 | ... | d_k. The cokernel is sum Z/d_i plus Z^(cols - k).
///
/// Elementary-operation reduction; the pivot at each stage is the entry of
/// smallest absolute value in the remaining block.
inline std::vector<BigInt> smith_normal_form(MatrixZ m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<BigInt> diag;
  std::size_t t = 0;
  while (t < rows && t < cols) {
    // Locate the smallest nonzero entry in the block [t.., t..].
    std::size_t pr = rows, pc = cols;
    BigInt best;
    for (std::size_t r = t; r < rows; ++r)
      for (std::size_t c = t; c < cols; ++c) {
        const BigInt& v = m.at(r, c);
        if (v == 0) continue;
        BigInt a = abs(v);
        if (pr == rows || a < best) {
          best = a;
          pr = r;
          pc = c;
          if (best == 1) goto found;
        }
      }
  found:
    if (pr == rows) break;
    if (pr != t)
      for (std::size_t c = 0; c < cols; ++c) std::swap(m.at(t, c), m.at(pr, c));
    if (pc != t)
      for (std::size_t r = 0; r < rows; ++r) std::swap(m.at(r, t), m.at(r, pc));

    bool dirty = false;
    // Clear column t below the pivot, leaving remainders.
    for (std::size_t r = t + 1; r < rows; ++r) {
      if (m.at(r, t) == 0) continue;
      BigInt q = m.at(r, t) / m.at(t, t);
      for (std::size_t c = t; c < cols; ++c) m.at(r, c) -= q * m.at(t, c);
      if (m.at(r, t) != 0) dirty = true;
    }
    // Clear row t right of the pivot.
    for (std::size_t c = t + 1; c < cols; ++c) {
      if (m.at(t, c) == 0) continue;
      BigInt q = m.at(t, c) / m.at(t, t);
      for (std::size_t r = t; r < rows; ++r) m.at(r, c) -= q * m.at(r, t);
      if (m.at(t, c) != 0) dirty = true;
    }
    if (dirty) continue;  // a smaller remainder exists; re-pivot

    // Divisibility: the pivot must divide the rest of the block.
    bool divides = true;
    for (std::size_t r = t + 1; r < rows && divides; ++r)
      for (std::size_t c = t + 1; c < cols; ++c)
        if (m.at(r, c) % m.at(t, t) != 0) {
          for (std::size_t k = t; k < cols; ++k) m.at(t, k) += m.at(r, k);
          divides = false;
          break;
        }
    if (!divides) continue;

    diag.push_back(abs(m.at(t, t)));
    ++t;
  }
  return diag;
}

}  // namespace grlie
