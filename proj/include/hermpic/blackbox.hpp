#pragma once

// Structure of a finite abelian group given only by its multiplication on
// element indices 0..n-1.

#include <cstddef>
#include <functional>
#include <vector>

#include "hermpic/abgrp.hpp"

namespace hermpic {

struct FiniteAbelianStructure {
  AbGroup group;
  std::vector<std::size_t> generators;  // element index of each normalized generator
  std::vector<Vec> coords;              // coords[x] = discrete log of element x
  std::vector<Int> orders;              // orders[x] = order of element x
};

namespace detail {

inline std::vector<Int> prime_divisors(Int n) {
  std::vector<Int> ps;
  for (Int p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      ps.push_back(p);
      while (n % p == 0) n /= p;
    }
  if (n > 1) ps.push_back(n);
  return ps;
}

template <class Mul>
std::size_t power(std::size_t x, Int k, std::size_t identity, Mul& mul) {
  std::size_t r = identity;
  while (k > 0) {
    if (k & 1) r = mul(r, x);
    x = mul(x, x);
    k >>= 1;
  }
  return r;
}

}  // namespace detail

/// `mul(x, y)` returns the index of x*y. `act`, if given, is the index map
/// of an involutive automorphism and becomes the action of the result.
/// Generators are chosen greedily (largest order outside the span so far,
/// ties to the smallest index), the resulting presentation is normalized.
template <class Mul>
FiniteAbelianStructure analyze_finite_abelian(std::size_t n, std::size_t identity, Mul mul,
                                              const std::function<std::size_t(std::size_t)>& act = {}) {
  if (n == 0 || identity >= n) fail(Errc::internal, "black-box group needs a valid identity");
  const Int order = static_cast<Int>(n);
  const auto primes = detail::prime_divisors(order);

  std::vector<Int> orders(n);
  for (std::size_t x = 0; x < n; ++x) {
    Int m = order;
    for (Int p : primes)
      while (m % p == 0 && detail::power(x, m / p, identity, mul) == identity) m /= p;
    orders[x] = m;
  }

  // Greedy span extension, recording coordinates in the chosen generators.
  std::vector<std::size_t> chosen;
  std::vector<Int> rel_order;
  std::vector<Vec> rel_tail;  // g_i^{m_i} expressed in earlier generators
  std::vector<Vec> pres(n);   // presentation coordinates, empty = not yet spanned
  std::vector<std::size_t> span{identity};
  pres[identity] = {};
  std::vector<char> in_span(n, 0);
  in_span[identity] = 1;

  while (span.size() < n) {
    std::size_t g = n;
    for (std::size_t x = 0; x < n; ++x)
      if (!in_span[x] && (g == n || orders[x] > orders[g])) g = x;
    const std::size_t i = chosen.size();
    chosen.push_back(g);
    for (std::size_t x : span) pres[x].push_back(0);
    // Smallest m with g^m in the current span.
    Int m = 1;
    std::size_t cur = g;
    while (!in_span[cur]) {
      cur = mul(cur, g);
      ++m;
    }
    rel_order.push_back(m);
    rel_tail.push_back(pres[cur]);
    const std::size_t old = span.size();
    std::size_t gk = identity;
    for (Int k = 1; k < m; ++k) {
      gk = mul(gk, g);
      for (std::size_t s = 0; s < old; ++s) {
        const std::size_t y = mul(gk, span[s]);
        Vec c = pres[span[s]];
        c[i] = k;
        pres[y] = std::move(c);
        in_span[y] = 1;
        span.push_back(y);
      }
    }
  }

  const std::size_t s = chosen.size();
  std::vector<Vec> rels;
  for (std::size_t i = 0; i < s; ++i) {
    Vec r(s, 0);
    for (std::size_t j = 0; j < rel_tail[i].size(); ++j) r[j] = -rel_tail[i][j];
    r[i] = checked_add(r[i], rel_order[i]);
    rels.push_back(std::move(r));
  }
  for (auto& v : pres) v.resize(s, 0);

  std::optional<IntMatrix> action;
  if (act) {
    IntMatrix a(s, s);
    for (std::size_t j = 0; j < s; ++j) {
      const Vec& c = pres[act(chosen[j])];
      for (std::size_t i = 0; i < s; ++i) a(i, j) = c[i];
    }
    action = std::move(a);
  }
  Normalized nz = normalize_presentation(s, IntMatrix::from_columns(rels, s), action);

  FiniteAbelianStructure out{nz.group, {}, std::vector<Vec>(n), std::move(orders)};
  for (std::size_t x = 0; x < n; ++x) out.coords[x] = nz.group.reduce(nz.to_group * pres[x]);
  for (std::size_t j = 0; j < nz.group.ngens(); ++j) {
    std::size_t e = identity;
    for (std::size_t i = 0; i < s; ++i)
      e = mul(e, detail::power(chosen[i], mod_floor(nz.from_group(i, j), out.orders[chosen[i]]), identity, mul));
    out.generators.push_back(e);
  }
  return out;
}

}  // namespace hermpic
