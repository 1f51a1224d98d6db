#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "hermpic/error.hpp"

namespace hermpic {

using Int = std::int64_t;
using Vec = std::vector<Int>;

// Overflow-checked primitives. Group presentations in this library are small,
// but Smith reduction can inflate transform entries, so every product and sum
// on the elimination paths goes through these.
inline Int checked_add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) fail(Errc::overflow, "integer addition overflow");
  return r;
}
inline Int checked_sub(Int a, Int b) {
  Int r;
  if (__builtin_sub_overflow(a, b, &r)) fail(Errc::overflow, "integer subtraction overflow");
  return r;
}
inline Int checked_mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) fail(Errc::overflow, "integer multiplication overflow");
  return r;
}

/// Floor division and the matching non-negative remainder for m > 0.
inline Int floor_div(Int a, Int m) {
  Int q = a / m;
  if ((a % m != 0) && ((a < 0) != (m < 0))) --q;
  return q;
}
inline Int mod_floor(Int a, Int m) {
  Int r = a % m;
  return r < 0 ? r + m : r;
}

struct Bezout {
  Int g, x, y;  // g = x*a + y*b, g >= 0
};

inline Bezout extended_gcd(Int a, Int b) {
  Int old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    Int q = old_r / r;
    Int tmp = checked_sub(old_r, checked_mul(q, r));
    old_r = r;
    r = tmp;
    tmp = checked_sub(old_s, checked_mul(q, s));
    old_s = s;
    s = tmp;
    tmp = checked_sub(old_t, checked_mul(q, t));
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

/// Dense row-major integer matrix.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols, Int fill = 0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  IntMatrix(std::initializer_list<std::initializer_list<Int>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) fail(Errc::invalid_input, "ragged matrix literal");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }
  static IntMatrix from_rows(const std::vector<Vec>& rows, std::size_t cols_if_empty = 0) {
    IntMatrix m(rows.size(), rows.empty() ? cols_if_empty : rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols_) fail(Errc::invalid_input, "ragged matrix rows");
      std::copy(rows[i].begin(), rows[i].end(), m.data_.begin() + static_cast<std::ptrdiff_t>(i * m.cols_));
    }
    return m;
  }
  static IntMatrix from_columns(const std::vector<Vec>& cols, std::size_t rows_if_empty = 0) {
    IntMatrix m(cols.empty() ? rows_if_empty : cols.front().size(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != m.rows_) fail(Errc::invalid_input, "ragged matrix columns");
      for (std::size_t i = 0; i < m.rows_; ++i) m(i, j) = cols[j][i];
    }
    return m;
  }

  [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
  [[nodiscard]] bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  Int& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  Int operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  [[nodiscard]] std::span<const Int> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }
  [[nodiscard]] Vec column(std::size_t j) const {
    Vec v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }
  [[nodiscard]] std::vector<Vec> columns() const {
    std::vector<Vec> out;
    out.reserve(cols_);
    for (std::size_t j = 0; j < cols_; ++j) out.push_back(column(j));
    return out;
  }
  [[nodiscard]] std::vector<Vec> row_vectors() const {
    std::vector<Vec> out;
    for (std::size_t i = 0; i < rows_; ++i) out.emplace_back(row(i).begin(), row(i).end());
    return out;
  }

  [[nodiscard]] IntMatrix transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  // Elementary operations used by the normal-form routines.
  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }
  /// row[dst] += k * row[src]
  void add_row(std::size_t dst, std::size_t src, Int k) {
    if (k == 0) return;
    for (std::size_t j = 0; j < cols_; ++j)
      (*this)(dst, j) = checked_add((*this)(dst, j), checked_mul(k, (*this)(src, j)));
  }
  /// col[dst] += k * col[src]
  void add_col(std::size_t dst, std::size_t src, Int k) {
    if (k == 0) return;
    for (std::size_t i = 0; i < rows_; ++i)
      (*this)(i, dst) = checked_add((*this)(i, dst), checked_mul(k, (*this)(i, src)));
  }
  void negate_row(std::size_t i) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = -(*this)(i, j);
  }
  void negate_col(std::size_t j) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = -(*this)(i, j);
  }

  [[nodiscard]] IntMatrix select_rows(const std::vector<std::size_t>& idx) const {
    IntMatrix m(idx.size(), cols_);
    for (std::size_t r = 0; r < idx.size(); ++r)
      for (std::size_t j = 0; j < cols_; ++j) m(r, j) = (*this)(idx[r], j);
    return m;
  }
  [[nodiscard]] IntMatrix select_cols(const std::vector<std::size_t>& idx) const {
    IntMatrix m(rows_, idx.size());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t c = 0; c < idx.size(); ++c) m(i, c) = (*this)(i, idx[c]);
    return m;
  }

  /// [this | other]
  [[nodiscard]] IntMatrix hconcat(const IntMatrix& other) const {
    if (other.rows_ != rows_) fail(Errc::internal, "hconcat row mismatch");
    IntMatrix m(rows_, cols_ + other.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j);
      for (std::size_t j = 0; j < other.cols_; ++j) m(i, cols_ + j) = other(i, j);
    }
    return m;
  }

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.rows_) fail(Errc::internal, "matrix product dimension mismatch");
    IntMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        Int aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          c(i, j) = checked_add(c(i, j), checked_mul(aik, b(k, j)));
      }
    return c;
  }
  friend Vec operator*(const IntMatrix& a, const Vec& v) {
    if (a.cols_ != v.size()) fail(Errc::internal, "matrix-vector dimension mismatch");
    Vec out(a.rows_, 0);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k)
        out[i] = checked_add(out[i], checked_mul(a(i, k), v[k]));
    return out;
  }
  friend IntMatrix operator+(IntMatrix a, const IntMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) fail(Errc::internal, "matrix sum dimension mismatch");
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] = checked_add(a.data_[i], b.data_[i]);
    return a;
  }
  friend IntMatrix operator-(IntMatrix a, const IntMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) fail(Errc::internal, "matrix difference dimension mismatch");
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] = checked_sub(a.data_[i], b.data_[i]);
    return a;
  }
  friend bool operator==(const IntMatrix& a, const IntMatrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  Vec data_;
};

/// Determinant by fraction-free Bareiss elimination; used to certify
/// unimodularity of transforms.
inline Int determinant(IntMatrix m) {
  const std::size_t n = m.rows();
  if (n != m.cols()) fail(Errc::internal, "determinant of non-square matrix");
  if (n == 0) return 1;
  Int sign = 1;
  Int prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      m.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        __int128 v = static_cast<__int128>(m(i, j)) * m(k, k) - static_cast<__int128>(m(i, k)) * m(k, j);
        v /= prev;
        if (v > INT64_MAX || v < INT64_MIN) fail(Errc::overflow, "determinant overflow");
        m(i, j) = static_cast<Int>(v);
      }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

}  // namespace hermpic
