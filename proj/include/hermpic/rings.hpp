#pragma once

// Commutative rings with involution: finite products of Z/p^e and finite
// fields, and imaginary quadratic orders.

#include <algorithm>
#include <compare>
#include <cstdlib>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "hermpic/matrix.hpp"

namespace hermpic {

inline constexpr Int kMaxFieldSize = Int{1} << 16;

/// Enumeration cap; HERMPIC_CAP overrides the default of 2^20.
inline std::size_t enumeration_cap() {
  if (const char* env = std::getenv("HERMPIC_CAP")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return std::size_t{1} << 20;
}

enum class Involution { trivial, conjugation };

inline std::string involution_name(Involution i) { return i == Involution::trivial ? "trivial" : "conj"; }

struct FactorSpec {
  enum class Kind { zmod, gf };
  Kind kind = Kind::zmod;
  Int n = 0;  // zmod modulus
  Int p = 0;  // gf characteristic
  int k = 0;  // gf degree

  static FactorSpec zmod(Int n) { return {Kind::zmod, n, 0, 0}; }
  static FactorSpec gf(Int p, int k) { return {Kind::gf, 0, p, k}; }
  friend bool operator==(const FactorSpec&, const FactorSpec&) = default;
};

struct RingDescription {
  enum class Type { finite, imquad };
  Type type = Type::finite;
  std::vector<FactorSpec> factors;
  std::vector<std::size_t> perm;  // empty means identity
  std::vector<Int> frob;          // empty means all zero
  Int disc = 0;
  Involution involution = Involution::trivial;
  friend bool operator==(const RingDescription&, const RingDescription&) = default;
};

/// Ring elements: per-factor codes for finite rings, (a, b) = a + b*w for
/// imaginary quadratic orders with w = (D + sqrt D) / 2.
struct RingElement {
  Vec c;
  friend auto operator<=>(const RingElement&, const RingElement&) = default;
  friend bool operator==(const RingElement&, const RingElement&) = default;
};

inline bool is_prime(Int n) {
  if (n < 2) return false;
  for (Int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// Arithmetic tables for GF(p^k). Elements are coded as c0 + c1 p + ... for
/// the residue c0 + c1 x + ... modulo the lexicographically least monic
/// irreducible polynomial of degree k; `generator` is the least code of a
/// multiplicative generator.
struct GFTable {
  Int p = 0;
  int k = 0;
  Int q = 0;
  Vec modulus;  // coefficients of the defining polynomial, low to high, monic
  Int generator = 0;
  Vec exp;  // exp[i] = generator^i, i < q - 1
  Vec log;  // log[x] for x != 0

  [[nodiscard]] Int add(Int a, Int b) const {
    Int r = 0, place = 1;
    for (int i = 0; i < k; ++i) {
      r += ((a % p + b % p) % p) * place;
      a /= p;
      b /= p;
      place *= p;
    }
    return r;
  }
  [[nodiscard]] Int neg(Int a) const {
    Int r = 0, place = 1;
    for (int i = 0; i < k; ++i) {
      r += ((p - a % p) % p) * place;
      a /= p;
      place *= p;
    }
    return r;
  }
  [[nodiscard]] Int mul(Int a, Int b) const {
    if (a == 0 || b == 0) return 0;
    return exp[static_cast<std::size_t>((log[static_cast<std::size_t>(a)] + log[static_cast<std::size_t>(b)]) % (q - 1))];
  }
  [[nodiscard]] Int inverse(Int a) const {
    return exp[static_cast<std::size_t>((q - 1 - log[static_cast<std::size_t>(a)]) % (q - 1))];
  }
  /// x -> x^(p^f)
  [[nodiscard]] Int frobenius(Int a, Int f) const {
    if (a == 0 || f == 0) return a;
    Int e = log[static_cast<std::size_t>(a)];
    for (Int i = 0; i < f; ++i) e = e * p % (q - 1);
    return exp[static_cast<std::size_t>(e)];
  }
};

namespace detail {

using Poly = std::vector<Int>;  // low to high

inline Poly decode_poly(Int code, Int p, int len) {
  Poly r(static_cast<std::size_t>(len));
  for (auto& c : r) {
    c = code % p;
    code /= p;
  }
  return r;
}

inline Int encode_poly(const Poly& f, Int p) {
  Int code = 0;
  for (std::size_t i = f.size(); i-- > 0;) code = code * p + f[i];
  return code;
}

// Remainder of f modulo the monic polynomial g over F_p.
inline Poly poly_mod(Poly f, const Poly& g, Int p) {
  const std::size_t dg = g.size() - 1;
  for (std::size_t i = f.size(); i-- > dg;) {
    const Int c = f[i] % p;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= dg; ++j) f[i - dg + j] = mod_floor(f[i - dg + j] - c * g[j], p);
  }
  f.resize(dg);
  return f;
}

inline bool is_irreducible(const Poly& f, Int p) {
  const int k = static_cast<int>(f.size()) - 1;
  for (int d = 1; d <= k / 2; ++d) {
    Int count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (Int code = 0; code < count; ++code) {
      Poly g = decode_poly(code, p, d);
      g.push_back(1);
      Poly r = poly_mod(f, g, p);
      if (std::all_of(r.begin(), r.end(), [](Int c) { return c == 0; })) return false;
    }
  }
  return true;
}

inline std::shared_ptr<const GFTable> build_gf_table(Int p, int k) {
  auto t = std::make_shared<GFTable>();
  t->p = p;
  t->k = k;
  t->q = 1;
  for (int i = 0; i < k; ++i) t->q *= p;
  Int count = t->q;
  for (Int code = 0; code < count; ++code) {
    Poly f = decode_poly(code, p, k);
    f.push_back(1);
    if (is_irreducible(f, p)) {
      t->modulus = f;
      break;
    }
  }
  auto polymul = [&](Int a, Int b) {
    Poly x = decode_poly(a, p, k), y = decode_poly(b, p, k), z(static_cast<std::size_t>(2 * k), 0);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) z[static_cast<std::size_t>(i + j)] = (z[static_cast<std::size_t>(i + j)] + x[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(j)]) % p;
    return encode_poly(poly_mod(z, t->modulus, p), p);
  };
  const Int q = t->q;
  for (Int g = 1; g < q; ++g) {
    Vec e{1};
    Int cur = g;
    while (cur != 1) {
      e.push_back(cur);
      cur = polymul(cur, g);
    }
    if (static_cast<Int>(e.size()) == q - 1) {
      t->generator = g;
      t->exp = std::move(e);
      break;
    }
  }
  t->log.assign(static_cast<std::size_t>(q), 0);
  for (Int i = 0; i < q - 1; ++i) t->log[static_cast<std::size_t>(t->exp[static_cast<std::size_t>(i)])] = i;
  return t;
}

}  // namespace detail

/// Shared, immutable GF(p^k) tables, built on first use.
inline std::shared_ptr<const GFTable> gf_table(Int p, int k) {
  if (!is_prime(p)) fail(Errc::invalid_input, "GF characteristic " + std::to_string(p) + " is not prime");
  if (k < 1) fail(Errc::invalid_input, "GF degree must be >= 1");
  Int q = 1;
  for (int i = 0; i < k; ++i) {
    q *= p;
    if (q > kMaxFieldSize)
      fail(Errc::unsupported, "GF(" + std::to_string(p) + "^" + std::to_string(k) + ") exceeds the field size limit 2^16");
  }
  static std::mutex mu;
  static std::map<std::pair<Int, int>, std::shared_ptr<const GFTable>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[{p, k}];
  if (!slot) slot = detail::build_gf_table(p, k);
  return slot;
}

/// One local factor of a finite product after normalization: Z/p^e or GF(p^k).
struct LocalFactor {
  FactorSpec::Kind kind = FactorSpec::Kind::zmod;
  Int p = 0;
  int exponent = 1;  // e for Z/p^e, k for GF(p^k)
  Int size = 0;
  std::shared_ptr<const GFTable> gf;

  [[nodiscard]] std::string label() const {
    return kind == FactorSpec::Kind::zmod ? "Z/" + std::to_string(size)
                                          : "GF(" + std::to_string(p) + "^" + std::to_string(exponent) + ")";
  }
  [[nodiscard]] FactorSpec spec() const {
    return kind == FactorSpec::Kind::zmod ? FactorSpec::zmod(size) : FactorSpec::gf(p, exponent);
  }
};

struct SpecWithAction {
  std::vector<std::string> components;
  std::vector<std::size_t> action;

  void validate() const {
    if (action.size() != components.size()) fail(Errc::invalid_input, "spectrum action has the wrong length");
    for (std::size_t i = 0; i < action.size(); ++i)
      if (action[i] >= action.size() || action[action[i]] != i)
        fail(Errc::invalid_input, "spectrum action is not an involution at component " + std::to_string(i));
  }
  friend bool operator==(const SpecWithAction&, const SpecWithAction&) = default;
};

class Ring {
 public:
  /// Validates `d` and builds the normalized ring.
  static Ring validate(const RingDescription& d) {
    Ring r;
    auto impl = std::make_shared<Impl>();
    if (d.type == RingDescription::Type::imquad) {
      if (d.disc > 0) fail(Errc::unsupported, "unsupported: infinite unit group (discriminant " + std::to_string(d.disc) + " > 0)");
      if (d.disc == 0 || (mod_floor(d.disc, 4) != 0 && mod_floor(d.disc, 4) != 1))
        fail(Errc::invalid_input, "invalid discriminant " + std::to_string(d.disc) + " (need D < 0, D = 0 or 1 mod 4)");
      impl->desc = d;
      impl->desc.factors.clear();
      impl->desc.perm.clear();
      impl->desc.frob.clear();
    } else {
      normalize_finite(d, *impl);
    }
    r.impl_ = std::move(impl);
    return r;
  }

  [[nodiscard]] bool is_finite() const { return impl_->desc.type == RingDescription::Type::finite; }
  [[nodiscard]] bool is_imquad() const { return !is_finite(); }
  [[nodiscard]] const RingDescription& description() const { return impl_->desc; }
  [[nodiscard]] const std::vector<LocalFactor>& factors() const { return impl_->factors; }
  [[nodiscard]] const std::vector<std::size_t>& perm() const { return impl_->desc.perm; }
  [[nodiscard]] const Vec& frob() const { return impl_->desc.frob; }
  [[nodiscard]] Int disc() const { return impl_->desc.disc; }
  [[nodiscard]] Involution involution() const { return impl_->desc.involution; }
  /// Whether the involution is the identity map.
  [[nodiscard]] bool has_trivial_involution() const {
    if (is_imquad()) return involution() == Involution::trivial;
    for (std::size_t i = 0; i < perm().size(); ++i)
      if (perm()[i] != i || frob()[i] != 0) return false;
    return true;
  }

  friend bool operator==(const Ring& a, const Ring& b) { return a.description() == b.description(); }

  [[nodiscard]] Int size() const {
    if (is_imquad()) fail(Errc::infinite_ring, "imaginary quadratic order is infinite");
    Int n = 1;
    for (const auto& f : factors()) {
      if (__builtin_mul_overflow(n, f.size, &n)) fail(Errc::cap_exceeded, "ring size overflows");
    }
    return n;
  }

  [[nodiscard]] RingElement zero() const { return {Vec(arity(), 0)}; }
  [[nodiscard]] RingElement one() const {
    RingElement e = zero();
    if (is_imquad())
      e.c[0] = 1;
    else
      for (auto& c : e.c) c = 1;
    return e;
  }
  [[nodiscard]] RingElement from_int(Int v) const {
    RingElement e = zero();
    if (is_imquad()) {
      e.c[0] = v;
      return e;
    }
    for (std::size_t i = 0; i < factors().size(); ++i) {
      const auto& f = factors()[i];
      e.c[i] = mod_floor(v, f.p);
      if (f.kind == FactorSpec::Kind::zmod) e.c[i] = mod_floor(v, f.size);
    }
    return e;
  }

  /// Checks that `e` is a valid canonical element encoding.
  void check_element(const RingElement& e) const {
    if (e.c.size() != arity())
      fail(Errc::not_an_element, "element has " + std::to_string(e.c.size()) + " components, ring needs " +
                                     std::to_string(arity()));
    if (is_finite())
      for (std::size_t i = 0; i < e.c.size(); ++i)
        if (e.c[i] < 0 || e.c[i] >= factors()[i].size)
          fail(Errc::not_an_element, "component " + std::to_string(i) + " = " + std::to_string(e.c[i]) +
                                         " outside [0, " + std::to_string(factors()[i].size) + ")");
  }

  [[nodiscard]] RingElement add(const RingElement& a, const RingElement& b) const {
    RingElement r = zero();
    if (is_imquad()) {
      r.c = {checked_add(a.c[0], b.c[0]), checked_add(a.c[1], b.c[1])};
      return r;
    }
    for (std::size_t i = 0; i < r.c.size(); ++i) {
      const auto& f = factors()[i];
      r.c[i] = f.kind == FactorSpec::Kind::zmod ? (a.c[i] + b.c[i]) % f.size : f.gf->add(a.c[i], b.c[i]);
    }
    return r;
  }
  [[nodiscard]] RingElement neg(const RingElement& a) const {
    RingElement r = zero();
    if (is_imquad()) {
      r.c = {-a.c[0], -a.c[1]};
      return r;
    }
    for (std::size_t i = 0; i < r.c.size(); ++i) {
      const auto& f = factors()[i];
      r.c[i] = f.kind == FactorSpec::Kind::zmod ? (f.size - a.c[i]) % f.size : f.gf->neg(a.c[i]);
    }
    return r;
  }
  [[nodiscard]] RingElement sub(const RingElement& a, const RingElement& b) const { return add(a, neg(b)); }
  [[nodiscard]] RingElement mul(const RingElement& a, const RingElement& b) const {
    RingElement r = zero();
    if (is_imquad()) {
      // w^2 = D w - (D^2 - D)/4
      const Int d = disc();
      const Int w2c = -(d * d - d) / 4;
      const Int bd = checked_mul(a.c[1], b.c[1]);
      r.c[0] = checked_add(checked_mul(a.c[0], b.c[0]), checked_mul(bd, w2c));
      r.c[1] = checked_add(checked_add(checked_mul(a.c[0], b.c[1]), checked_mul(a.c[1], b.c[0])), checked_mul(bd, d));
      return r;
    }
    for (std::size_t i = 0; i < r.c.size(); ++i) {
      const auto& f = factors()[i];
      r.c[i] = f.kind == FactorSpec::Kind::zmod
                   ? static_cast<Int>(static_cast<__int128>(a.c[i]) * b.c[i] % f.size)
                   : f.gf->mul(a.c[i], b.c[i]);
    }
    return r;
  }
  [[nodiscard]] RingElement pow(RingElement a, Int k) const {
    RingElement r = one();
    while (k > 0) {
      if (k & 1) r = mul(r, a);
      a = mul(a, a);
      k >>= 1;
    }
    return r;
  }

  /// The involution.
  [[nodiscard]] RingElement lambda(const RingElement& a) const {
    if (is_imquad()) {
      if (involution() == Involution::trivial) return a;
      // conj(a + b w) = (a + b D) - b w
      return {{checked_add(a.c[0], checked_mul(a.c[1], disc())), -a.c[1]}};
    }
    RingElement r = zero();
    for (std::size_t i = 0; i < r.c.size(); ++i) {
      const auto& f = factors()[i];
      const Int x = a.c[perm()[i]];
      r.c[i] = f.kind == FactorSpec::Kind::zmod ? x : f.gf->frobenius(x, frob()[i]);
    }
    return r;
  }

  /// Norm of an imaginary quadratic element, a^2 + a b D + b^2 (D^2 - D)/4.
  [[nodiscard]] Int quadratic_norm(const RingElement& a) const {
    const Int d = disc();
    return checked_add(checked_add(checked_mul(a.c[0], a.c[0]), checked_mul(checked_mul(a.c[0], a.c[1]), d)),
                       checked_mul(checked_mul(a.c[1], a.c[1]), (d * d - d) / 4));
  }

  [[nodiscard]] bool is_unit(const RingElement& a) const {
    if (is_imquad()) return quadratic_norm(a) == 1;
    for (std::size_t i = 0; i < a.c.size(); ++i) {
      const auto& f = factors()[i];
      if (f.kind == FactorSpec::Kind::zmod ? a.c[i] % f.p == 0 : a.c[i] == 0) return false;
    }
    return true;
  }
  [[nodiscard]] RingElement inverse(const RingElement& a) const {
    if (!is_unit(a)) fail(Errc::non_unit, element_to_string(a) + " is not a unit");
    if (is_imquad()) {
      // Norm 1: the inverse is the conjugate.
      return {{checked_add(a.c[0], checked_mul(a.c[1], disc())), -a.c[1]}};
    }
    RingElement r = zero();
    for (std::size_t i = 0; i < r.c.size(); ++i) {
      const auto& f = factors()[i];
      r.c[i] = f.kind == FactorSpec::Kind::zmod ? mod_floor(extended_gcd(a.c[i], f.size).x, f.size)
                                                : f.gf->inverse(a.c[i]);
    }
    return r;
  }

  /// Mixed-radix index of an element, factor 0 most significant.
  [[nodiscard]] Int encode(const RingElement& a) const {
    Int code = 0;
    for (std::size_t i = 0; i < a.c.size(); ++i) code = code * factors()[i].size + a.c[i];
    return code;
  }
  [[nodiscard]] RingElement decode(Int code) const {
    RingElement r = zero();
    for (std::size_t i = r.c.size(); i-- > 0;) {
      r.c[i] = code % factors()[i].size;
      code /= factors()[i].size;
    }
    return r;
  }

  /// All elements in ascending encoding order.
  [[nodiscard]] std::vector<RingElement> elements(std::size_t cap = enumeration_cap()) const {
    if (is_imquad()) fail(Errc::infinite_ring, "cannot enumerate the infinite ring " + to_string());
    const Int n = size();
    if (static_cast<std::size_t>(n) > cap)
      fail(Errc::cap_exceeded, "ring of size " + std::to_string(n) + " exceeds cap " + std::to_string(cap));
    std::vector<RingElement> out;
    out.reserve(static_cast<std::size_t>(n));
    for (Int i = 0; i < n; ++i) out.push_back(decode(i));
    return out;
  }

  /// Units in ascending encoding order (finite rings only).
  [[nodiscard]] std::vector<RingElement> units(std::size_t cap = enumeration_cap()) const {
    if (is_imquad()) fail(Errc::infinite_ring, "units of an imaginary quadratic order are not enumerated here");
    const Int n = size();
    if (static_cast<std::size_t>(n) > cap)
      fail(Errc::cap_exceeded, "ring of size " + std::to_string(n) + " exceeds cap " + std::to_string(cap));
    std::vector<std::vector<Int>> per;
    for (const auto& f : factors()) {
      std::vector<Int> u;
      for (Int x = 0; x < f.size; ++x)
        if (f.kind == FactorSpec::Kind::zmod ? x % f.p != 0 : x != 0) u.push_back(x);
      per.push_back(std::move(u));
    }
    std::vector<RingElement> out{RingElement{}};
    for (const auto& u : per) {
      std::vector<RingElement> next;
      next.reserve(out.size() * u.size());
      for (const auto& e : out)
        for (Int x : u) {
          RingElement f = e;
          f.c.push_back(x);
          next.push_back(std::move(f));
        }
      out = std::move(next);
    }
    return out;
  }

  [[nodiscard]] SpecWithAction spec_components() const {
    SpecWithAction s;
    if (is_imquad()) {
      s.components = {"Spec O(" + std::to_string(disc()) + ")"};
      s.action = {0};
      return s;
    }
    for (std::size_t i = 0; i < factors().size(); ++i) s.components.push_back(factors()[i].label() + "#" + std::to_string(i));
    s.action = perm();
    return s;
  }

  [[nodiscard]] std::string element_to_string(const RingElement& a) const {
    if (is_imquad()) {
      std::string s = std::to_string(a.c[0]);
      if (a.c[1] != 0) s += (a.c[1] < 0 ? "-" : "+") + std::to_string(std::llabs(a.c[1])) + "w";
      return s;
    }
    if (a.c.size() == 1) return std::to_string(a.c[0]);
    std::string s = "(";
    for (std::size_t i = 0; i < a.c.size(); ++i) s += (i ? "," : "") + std::to_string(a.c[i]);
    return s + ")";
  }

  [[nodiscard]] std::string to_string() const {
    if (is_imquad()) return "O(" + std::to_string(disc()) + ") with " + involution_name(involution()) + " involution";
    std::string s;
    for (std::size_t i = 0; i < factors().size(); ++i) s += (i ? " x " : "") + factors()[i].label();
    std::string inv;
    for (std::size_t i = 0; i < perm().size(); ++i) {
      if (perm()[i] > i) inv += " swap(" + std::to_string(i) + "," + std::to_string(perm()[i]) + ")";
      if (frob()[i] != 0) inv += " frob" + std::to_string(i) + "^" + std::to_string(frob()[i]);
    }
    return s + (inv.empty() ? " trivial" : inv);
  }

 private:
  struct Impl {
    RingDescription desc;
    std::vector<LocalFactor> factors;
  };

  [[nodiscard]] std::size_t arity() const { return is_imquad() ? 2 : factors().size(); }

  static std::vector<std::pair<Int, int>> factor_prime_powers(Int n) {
    std::vector<std::pair<Int, int>> out;
    for (Int p = 2; p * p <= n; ++p) {
      if (n % p != 0) continue;
      int e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
  }

  static void normalize_finite(const RingDescription& d, Impl& impl) {
    const std::size_t m = d.factors.size();
    if (m == 0) fail(Errc::invalid_input, "finite ring needs at least one factor");
    std::vector<std::size_t> perm = d.perm;
    if (perm.empty()) {
      perm.resize(m);
      std::iota(perm.begin(), perm.end(), std::size_t{0});
    }
    Vec frob = d.frob.empty() ? Vec(m, 0) : d.frob;
    if (perm.size() != m) fail(Errc::invalid_input, "perm has length " + std::to_string(perm.size()) + ", expected " + std::to_string(m));
    if (frob.size() != m) fail(Errc::invalid_input, "frob has length " + std::to_string(frob.size()) + ", expected " + std::to_string(m));
    for (std::size_t i = 0; i < m; ++i) {
      if (perm[i] >= m || perm[perm[i]] != i)
        fail(Errc::invalid_input, "perm is not an involution: perm[" + std::to_string(i) + "] = " + std::to_string(perm[i]));
      if (!(d.factors[i] == d.factors[perm[i]]))
        fail(Errc::invalid_input, "perm identifies non-isomorphic factors " + std::to_string(i) + " and " + std::to_string(perm[i]));
    }
    // Expand into local factors.
    struct Piece {
      LocalFactor f;
      std::size_t origin, slot;
      Int frob;
    };
    std::vector<Piece> pieces;
    std::vector<std::vector<std::size_t>> by_origin(m);
    for (std::size_t i = 0; i < m; ++i) {
      const FactorSpec& s = d.factors[i];
      if (s.kind == FactorSpec::Kind::zmod) {
        if (s.n < 2) fail(Errc::invalid_input, "Zmod modulus must be >= 2, got " + std::to_string(s.n));
        if (frob[i] != 0) fail(Errc::invalid_input, "Zmod factor " + std::to_string(i) + " has nonzero frob " + std::to_string(frob[i]));
        std::size_t slot = 0;
        for (auto [p, e] : factor_prime_powers(s.n)) {
          Int size = 1;
          for (int j = 0; j < e; ++j) size *= p;
          by_origin[i].push_back(pieces.size());
          pieces.push_back({LocalFactor{FactorSpec::Kind::zmod, p, e, size, nullptr}, i, slot++, 0});
        }
      } else {
        // A prime-power base q = r^m is read as GF(r, m k); frob counts powers of q.
        auto pp = factor_prime_powers(s.p);
        if (s.p < 2 || pp.size() != 1 || s.k < 1)
          fail(Errc::invalid_input, "GF(" + std::to_string(s.p) + "," + std::to_string(s.k) + ") is not a finite field");
        const Int r = pp[0].first;
        const int m = pp[0].second;
        const int k = m * s.k;
        auto t = gf_table(r, k);
        const Int f = mod_floor(checked_mul(frob[i], m), k);
        const Int g = mod_floor(checked_mul(frob[perm[i]], m), k);
        if ((f + g) % k != 0)
          fail(Errc::invalid_input, "automorphism order > 2: factor " + std::to_string(i) + " has frob " +
                                        std::to_string(frob[i]) + ", its partner " + std::to_string(perm[i]) +
                                        " has frob " + std::to_string(frob[perm[i]]) + " (sum must vanish mod " +
                                        std::to_string(s.k) + ")");
        by_origin[i].push_back(pieces.size());
        pieces.push_back({LocalFactor{FactorSpec::Kind::gf, r, k, t->q, t}, i, 0, f});
      }
    }
    std::vector<std::size_t> order(pieces.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      const auto& x = pieces[a].f;
      const auto& y = pieces[b].f;
      return std::tuple(x.p, static_cast<int>(x.kind), x.exponent) < std::tuple(y.p, static_cast<int>(y.kind), y.exponent);
    });
    std::vector<std::size_t> pos(pieces.size());
    for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;
    impl.desc = RingDescription{};
    impl.desc.type = RingDescription::Type::finite;
    for (std::size_t i = 0; i < order.size(); ++i) {
      const Piece& pc = pieces[order[i]];
      impl.factors.push_back(pc.f);
      impl.desc.factors.push_back(pc.f.spec());
      const std::size_t partner = by_origin[perm[pc.origin]][pc.slot];
      impl.desc.perm.push_back(pos[partner]);
      impl.desc.frob.push_back(pc.frob);
    }
  }

  std::shared_ptr<const Impl> impl_;
};

/// Product ring r x s (both finite).
inline Ring product(const Ring& r, const Ring& s) {
  if (!r.is_finite() || !s.is_finite()) fail(Errc::infinite_ring, "products are only formed of finite rings");
  RingDescription d = r.description();
  const std::size_t off = d.factors.size();
  for (std::size_t i = 0; i < s.factors().size(); ++i) {
    d.factors.push_back(s.description().factors[i]);
    d.perm.push_back(s.perm()[i] + off);
    d.frob.push_back(s.frob()[i]);
  }
  return Ring::validate(d);
}

inline Ring imquad_ring(Int disc, Involution inv) {
  RingDescription d;
  d.type = RingDescription::Type::imquad;
  d.disc = disc;
  d.involution = inv;
  return Ring::validate(d);
}

inline Ring finite_ring(std::vector<FactorSpec> factors, std::vector<std::size_t> perm = {}, Vec frob = {}) {
  RingDescription d;
  d.factors = std::move(factors);
  d.perm = std::move(perm);
  d.frob = std::move(frob);
  return Ring::validate(d);
}

}  // namespace hermpic
