#pragma once

#include <cstdlib>
#include <optional>
#include <vector>

#include "hermpic/matrix.hpp"

namespace hermpic {

/// Result of Smith reduction: left * input * right == diag(diagonal).
/// `left_inverse` is maintained alongside `left` so callers can lift
/// quotient generators back without inverting.
struct SmithForm {
  IntMatrix left;
  IntMatrix left_inverse;
  IntMatrix right;
  Vec diagonal;  // length min(rows, cols); d1 | d2 | ...; zeros last

  [[nodiscard]] std::size_t rank() const {
    std::size_t r = 0;
    while (r < diagonal.size() && diagonal[r] != 0) ++r;
    return r;
  }
};

namespace detail {

struct SmithWork {
  IntMatrix a, u, uinv, v;

  void row_add(std::size_t dst, std::size_t src, Int k) {
    a.add_row(dst, src, k);
    u.add_row(dst, src, k);
    uinv.add_col(src, dst, -k);
  }
  void row_swap(std::size_t x, std::size_t y) {
    a.swap_rows(x, y);
    u.swap_rows(x, y);
    uinv.swap_cols(x, y);
  }
  void row_negate(std::size_t i) {
    a.negate_row(i);
    u.negate_row(i);
    uinv.negate_col(i);
  }
  void col_add(std::size_t dst, std::size_t src, Int k) {
    a.add_col(dst, src, k);
    v.add_col(dst, src, k);
  }
  void col_swap(std::size_t x, std::size_t y) {
    a.swap_cols(x, y);
    v.swap_cols(x, y);
  }

  // Moves the smallest nonzero entry of the trailing block to (t, t).
  bool pivot_block(std::size_t t) {
    std::size_t bi = 0, bj = 0;
    Int best = 0;
    for (std::size_t i = t; i < a.rows(); ++i)
      for (std::size_t j = t; j < a.cols(); ++j) {
        Int x = std::llabs(a(i, j));
        if (x != 0 && (best == 0 || x < best)) {
          best = x;
          bi = i;
          bj = j;
        }
      }
    if (best == 0) return false;
    row_swap(t, bi);
    col_swap(t, bj);
    return true;
  }

  // Moves the smallest nonzero entry of row t / column t to (t, t).
  void pivot_cross(std::size_t t) {
    Int best = std::llabs(a(t, t));
    std::size_t bi = t, bj = t;
    for (std::size_t i = t + 1; i < a.rows(); ++i) {
      Int x = std::llabs(a(i, t));
      if (x != 0 && (best == 0 || x < best)) {
        best = x;
        bi = i;
        bj = t;
      }
    }
    for (std::size_t j = t + 1; j < a.cols(); ++j) {
      Int x = std::llabs(a(t, j));
      if (x != 0 && (best == 0 || x < best)) {
        best = x;
        bi = t;
        bj = j;
      }
    }
    row_swap(t, bi);
    col_swap(t, bj);
  }
};

}  // namespace detail

/// Smith normal form with unimodular transforms.
inline SmithForm smith_normal_form(const IntMatrix& m) {
  detail::SmithWork w{m, IntMatrix::identity(m.rows()), IntMatrix::identity(m.rows()),
                      IntMatrix::identity(m.cols())};
  const std::size_t limit = std::min(m.rows(), m.cols());
  for (std::size_t t = 0; t < limit; ++t) {
    if (!w.pivot_block(t)) break;
    for (;;) {
      bool clean = true;
      const Int p = w.a(t, t);
      for (std::size_t i = t + 1; i < w.a.rows(); ++i) {
        if (w.a(i, t) == 0) continue;
        w.row_add(i, t, -(w.a(i, t) / p));
        if (w.a(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < w.a.cols(); ++j) {
        if (w.a(t, j) == 0) continue;
        w.col_add(j, t, -(w.a(t, j) / p));
        if (w.a(t, j) != 0) clean = false;
      }
      if (!clean) {
        w.pivot_cross(t);
        continue;
      }
      // Row and column are clear; enforce divisibility of the trailing block.
      std::size_t bad = 0;
      for (std::size_t i = t + 1; i < w.a.rows() && bad == 0; ++i)
        for (std::size_t j = t + 1; j < w.a.cols(); ++j)
          if (w.a(i, j) % p != 0) {
            bad = i;
            break;
          }
      if (bad == 0) break;
      w.row_add(t, bad, 1);
    }
    if (w.a(t, t) < 0) w.row_negate(t);
  }
  SmithForm out{std::move(w.u), std::move(w.uinv), std::move(w.v), Vec(limit, 0)};
  for (std::size_t t = 0; t < limit; ++t) out.diagonal[t] = w.a(t, t);
  return out;
}

/// Basis (as columns) of the integer kernel {x : m x = 0}.
inline std::vector<Vec> kernel_basis(const IntMatrix& m) {
  SmithForm s = smith_normal_form(m);
  std::vector<Vec> basis;
  for (std::size_t j = s.rank(); j < m.cols(); ++j) basis.push_back(s.right.column(j));
  return basis;
}

/// Some integer solution of m x = v, or nullopt when none exists.
inline std::optional<Vec> solve_integer(const IntMatrix& m, const Vec& v) {
  if (v.size() != m.rows()) fail(Errc::internal, "solve_integer: dimension mismatch");
  SmithForm s = smith_normal_form(m);
  Vec w = s.left * v;
  const std::size_t r = s.rank();
  Vec y(m.cols(), 0);
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i < r) {
      if (w[i] % s.diagonal[i] != 0) return std::nullopt;
      y[i] = w[i] / s.diagonal[i];
    } else if (w[i] != 0) {
      return std::nullopt;
    }
  }
  return s.right * y;
}

/// Column-style Hermite normal form: the returned columns span the same
/// lattice as the input columns, are in echelon form (pivot rows strictly
/// increasing, zeros above each pivot), pivots are positive, and entries to
/// the left of a pivot are reduced into [0, pivot).
struct HermiteForm {
  IntMatrix basis;                 // rows x rank
  std::vector<std::size_t> pivot;  // pivot row of each basis column
};

inline HermiteForm hermite_normal_form(const IntMatrix& m) {
  IntMatrix a = m;
  std::vector<std::size_t> pivots;
  std::size_t c = 0;
  for (std::size_t i = 0; i < a.rows() && c < a.cols(); ++i) {
    // Euclid across columns c.. until only column c is nonzero in row i.
    for (;;) {
      std::size_t best = a.cols();
      for (std::size_t j = c; j < a.cols(); ++j)
        if (a(i, j) != 0 && (best == a.cols() || std::llabs(a(i, j)) < std::llabs(a(i, best)))) best = j;
      if (best == a.cols()) break;
      a.swap_cols(c, best);
      bool clean = true;
      for (std::size_t j = c + 1; j < a.cols(); ++j) {
        if (a(i, j) == 0) continue;
        a.add_col(j, c, -(a(i, j) / a(i, c)));
        if (a(i, j) != 0) clean = false;
      }
      if (clean) break;
    }
    if (a(i, c) == 0) continue;
    if (a(i, c) < 0) a.negate_col(c);
    for (std::size_t j = 0; j < c; ++j) a.add_col(j, c, -floor_div(a(i, j), a(i, c)));
    pivots.push_back(i);
    ++c;
  }
  std::vector<std::size_t> keep(c);
  for (std::size_t j = 0; j < c; ++j) keep[j] = j;
  return {a.select_cols(keep), pivots};
}

/// Whether v lies in the lattice spanned by the columns of an HNF basis.
inline bool in_lattice(const HermiteForm& h, Vec v) {
  std::size_t next = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (next < h.pivot.size() && h.pivot[next] == i) {
      const Int p = h.basis(i, next);
      if (v[i] % p != 0) return false;
      const Int q = v[i] / p;
      for (std::size_t r = i; r < v.size(); ++r)
        v[r] = checked_sub(v[r], checked_mul(q, h.basis(r, next)));
      ++next;
    } else if (v[i] != 0) {
      return false;
    }
  }
  return true;
}

}  // namespace hermpic
