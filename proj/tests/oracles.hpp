#pragma once

// Independent reference computations shared by the unit tests and the
// acceptance runner. Nothing here goes through the Smith form machinery.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "hermpic/hermpic.hpp"

namespace hermpic {

// Readable values in test failure messages.
inline void PrintTo(const AbGroup& g, std::ostream* os) { *os << g.to_string(); }
inline void PrintTo(const RingElement& e, std::ostream* os) {
  *os << "(";
  for (std::size_t i = 0; i < e.c.size(); ++i) *os << (i ? "," : "") << e.c[i];
  *os << ")";
}

}  // namespace hermpic

namespace oracle {

using hermpic::Int;
using hermpic::Vec;

inline Int kronecker(Int d, Int n) {
  // (d / n) for n >= 1
  Int result = 1;
  while (n % 2 == 0) {
    n /= 2;
    if (d % 2 == 0) return 0;
    const Int r = ((d % 8) + 8) % 8;
    if (r == 3 || r == 5) result = -result;
  }
  Int a = ((d % n) + n) % n;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      if (n % 8 == 3 || n % 8 == 5) result = -result;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

inline bool squarefree(Int n) {
  for (Int p = 2; p * p <= n; ++p)
    if (n % (p * p) == 0) return false;
  return true;
}

inline bool is_fundamental(Int d) {
  const Int m = -d;
  if (d % 4 == -3 || d % 4 == 1) return squarefree(m);
  if (d % 4 != 0) return false;
  const Int q = m / 4;
  return (q % 4 == 1 || q % 4 == 2) && squarefree(q);  // -q = 2,3 mod 4
}

inline Int units_count(Int d) { return d == -3 ? 6 : (d == -4 ? 4 : 2); }

/// Writes d = f^2 d0 with d0 fundamental.
inline std::pair<Int, Int> fundamental_part(Int d) {
  Int f = 1;
  for (Int k = 1; k * k <= -d; ++k)
    if (d % (k * k) == 0 && is_fundamental(d / (k * k))) f = k;
  return {d / (f * f), f};
}

/// Class number from the analytic formula for d0 and the conductor formula.
inline Int class_number_analytic(Int d) {
  auto [d0, f] = fundamental_part(d);
  Int s = 0;
  for (Int a = 1; a < -d0; ++a) s += kronecker(d0, a) * a;
  const Int h0 = -s * units_count(d0) / (2 * -d0);
  Int num = h0 * units_count(d);
  Int rest = f;
  for (Int p = 2; p <= rest; ++p) {
    if (rest % p != 0) continue;
    Int pe = 1;
    while (rest % p == 0) {
      rest /= p;
      pe *= p;
    }
    num *= (pe / p) * (p - kronecker(d0, p));
  }
  return num / units_count(d0);
}

/// Counts reduced primitive triples (a,b,c) with b^2 - 4ac = d.
inline Int class_number_by_triples(Int d) {
  Int count = 0;
  for (Int a = 1; 3 * a * a <= -d; ++a)
    for (Int b = -a + 1; b <= a; ++b) {
      const Int num = b * b - d;
      if (num % (4 * a) != 0) continue;
      const Int c = num / (4 * a);
      if (c < a) continue;
      if (a == c && b < 0) continue;
      if (std::gcd(std::gcd(a, b < 0 ? -b : b), c) != 1) continue;
      ++count;
    }
  return count;
}

/// A finite C2-module given as a product of cyclic groups Z/n_i with an
/// integer action matrix, before any normalization.
struct RawModule {
  Vec moduli;
  hermpic::IntMatrix action;  // column convention, x -> action * x
};

inline Vec raw_apply(const RawModule& m, const Vec& x) {
  Vec y(m.moduli.size(), 0);
  for (std::size_t i = 0; i < y.size(); ++i) {
    Int s = 0;
    for (std::size_t j = 0; j < y.size(); ++j) s += m.action(i, j) * x[j];
    y[i] = ((s % m.moduli[i]) + m.moduli[i]) % m.moduli[i];
  }
  return y;
}

inline std::vector<Vec> raw_elements(const RawModule& m) {
  std::vector<Vec> out{Vec(m.moduli.size(), 0)};
  for (std::size_t i = 0; i < m.moduli.size(); ++i) {
    std::vector<Vec> next;
    for (const Vec& v : out)
      for (Int t = 0; t < m.moduli[i]; ++t) {
        Vec w = v;
        w[i] = t;
        next.push_back(std::move(w));
      }
    out = std::move(next);
  }
  return out;
}

struct TateCounts {
  Int h0 = 0;  // |fixed| / |norms|
  Int h1 = 0;  // |norm kernel| / |coboundaries|
  Int fixed = 0;
  Int twisted = 0;
};

inline TateCounts tate_by_enumeration(const RawModule& m) {
  std::set<Vec> fixed, norms, nker, cob;
  Int twisted = 0;
  for (const Vec& x : raw_elements(m)) {
    const Vec ax = raw_apply(m, x);
    Vec n(x.size()), c(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      n[i] = (x[i] + ax[i]) % m.moduli[i];
      c[i] = ((x[i] - ax[i]) % m.moduli[i] + m.moduli[i]) % m.moduli[i];
    }
    if (ax == x) fixed.insert(x);
    norms.insert(n);
    cob.insert(c);
    if (std::all_of(n.begin(), n.end(), [](Int v) { return v == 0; })) {
      nker.insert(x);
      ++twisted;
    }
  }
  return {static_cast<Int>(fixed.size() / norms.size()), static_cast<Int>(nker.size() / cob.size()),
          static_cast<Int>(fixed.size()), twisted};
}

/// Random finite C2-module of order <= max_order, assembled from blocks
/// Z/n (trivial), Z/n (sign), Z/n + Z/n (swap) and Z/n with x -> u x for a
/// square root u of 1.
inline RawModule random_module(std::mt19937_64& rng, Int max_order) {
  Vec moduli;
  std::vector<std::vector<std::pair<std::size_t, Int>>> cols;  // sparse action columns
  Int order = 1;
  std::uniform_int_distribution<int> kind(0, 3);
  const int blocks = std::uniform_int_distribution<int>(1, 4)(rng);
  for (int b = 0; b < blocks; ++b) {
    const int k = kind(rng);
    const Int budget = max_order / order;
    if (budget < 2) break;
    const Int cap = k == 2 ? static_cast<Int>(std::sqrt(static_cast<double>(budget))) : budget;
    if (cap < 2) continue;
    const Int n = std::uniform_int_distribution<Int>(2, std::min<Int>(cap, 40))(rng);
    const std::size_t i = moduli.size();
    if (k == 2) {
      moduli.push_back(n);
      moduli.push_back(n);
      cols.push_back({{i + 1, 1}});
      cols.push_back({{i, 1}});
      order *= n * n;
      continue;
    }
    Int u = 1;
    if (k == 1) u = n - 1;
    if (k == 3) {
      std::vector<Int> roots;
      for (Int t = 1; t < n; ++t)
        if ((t * t) % n == 1) roots.push_back(t);
      u = roots[std::uniform_int_distribution<std::size_t>(0, roots.size() - 1)(rng)];
    }
    moduli.push_back(n);
    cols.push_back({{i, u}});
    order *= n;
  }
  if (moduli.empty()) {
    moduli.push_back(2);
    cols.push_back({{0, 1}});
  }
  hermpic::IntMatrix a(moduli.size(), moduli.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (auto [i, v] : cols[j]) a(i, j) = v;
  return {moduli, a};
}

/// The same module in normal form, after a random unimodular change of
/// coordinates.
inline hermpic::AbGroup normalized(const RawModule& m, std::mt19937_64& rng) {
  const std::size_t n = m.moduli.size();
  hermpic::IntMatrix p = hermpic::IntMatrix::identity(n), pinv = hermpic::IntMatrix::identity(n);
  if (n > 1) {
    std::uniform_int_distribution<std::size_t> idx(0, n - 1);
    std::uniform_int_distribution<Int> coef(-2, 2);
    for (int step = 0; step < 6; ++step) {
      const std::size_t i = idx(rng), j = idx(rng);
      if (i == j) continue;
      const Int c = coef(rng);
      // p <- E p with E = I + c e_ij; pinv <- pinv E^{-1}
      for (std::size_t k = 0; k < n; ++k) p(i, k) += c * p(j, k);
      for (std::size_t k = 0; k < n; ++k) pinv(k, j) -= c * pinv(k, i);
    }
  }
  hermpic::IntMatrix rel(n, n);
  for (std::size_t i = 0; i < n; ++i) rel(i, i) = m.moduli[i];
  return hermpic::normalize_presentation(n, p * rel, p * m.action * pinv).group;
}

/// Rings with involution used by the oracle-equivalence checks; all finite,
/// each of size at most 10^4.
inline const std::vector<std::string>& finite_ring_corpus() {
  static const std::vector<std::string> rings = {
      // trivial involution
      "finite:zmod2", "finite:zmod3", "finite:zmod4", "finite:zmod5", "finite:zmod7", "finite:zmod8", "finite:zmod9",
      "finite:zmod12", "finite:zmod15", "finite:zmod16", "finite:zmod21", "finite:zmod25", "finite:zmod27",
      "finite:zmod32", "finite:zmod60", "finite:zmod100", "finite:zmod1000", "finite:gf4", "finite:gf8", "finite:gf9",
      "finite:gf25", "finite:gf2^4", "finite:gf3^3", "finite:zmod4*gf9", "finite:zmod8*zmod9*zmod5",
      // Frobenius
      "finite:gf4:frob", "finite:gf9:frob", "finite:gf25:frob", "finite:gf49:frob", "finite:gf2^4:frob",
      "finite:gf3^4:frob", "finite:gf121:frob", "finite:gf4*gf9:frob", "finite:gf2^6:frob",
      // swap
      "finite:zmod2*zmod2:swap", "finite:zmod3*zmod3:swap", "finite:zmod5*zmod5:swap", "finite:zmod7*zmod7:swap",
      "finite:zmod8*zmod8:swap", "finite:zmod9*zmod9:swap", "finite:zmod25*zmod25:swap", "finite:gf4*gf4:swap",
      "finite:gf9*gf9:swap", "finite:zmod4*zmod4*zmod3*zmod3:swap", "finite:zmod100*zmod100:swap",
      // mixed
      R"({"type":"finite","factors":[{"kind":"zmod","n":5},{"kind":"gf","p":3,"k":2}],"perm":[0,1],"frob":[0,1]})",
      R"({"type":"finite","factors":[{"kind":"gf","p":2,"k":2},{"kind":"gf","p":2,"k":2},{"kind":"zmod","n":9}],"perm":[1,0,2]})",
      R"({"type":"finite","factors":[{"kind":"gf","p":3,"k":2},{"kind":"gf","p":3,"k":2}],"perm":[1,0],"frob":[1,1]})",
  };
  return rings;
}

}  // namespace oracle
