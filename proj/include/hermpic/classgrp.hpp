#pragma once

// Class groups of imaginary quadratic orders via reduced primitive binary
// quadratic forms under composition.

#include <cmath>
#include <compare>
#include <map>
#include <string>
#include <vector>

#include "hermpic/abgrp.hpp"
#include "hermpic/blackbox.hpp"
#include "hermpic/rings.hpp"

namespace hermpic {

inline constexpr Int kDefaultDiscBound = 1'000'000;

struct Form {
  Int a = 0, b = 0, c = 0;

  [[nodiscard]] Int disc() const { return checked_sub(checked_mul(b, b), checked_mul(checked_mul(4, a), c)); }
  [[nodiscard]] bool is_reduced() const {
    const Int ab = b < 0 ? -b : b;
    return ab <= a && a <= c && !((ab == a || a == c) && b < 0);
  }
  [[nodiscard]] std::string to_string() const {
    return "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")";
  }
  friend auto operator<=>(const Form&, const Form&) = default;
  friend bool operator==(const Form&, const Form&) = default;
};

inline void check_discriminant(Int d, Int bound = kDefaultDiscBound) {
  if (d >= 0 || (mod_floor(d, 4) != 0 && mod_floor(d, 4) != 1))
    fail(Errc::invalid_input, "invalid discriminant " + std::to_string(d) + " (need D < 0, D = 0 or 1 mod 4)");
  if (-d > bound) fail(Errc::bound_exceeded, "|D| = " + std::to_string(-d) + " exceeds bound " + std::to_string(bound));
}

namespace detail {

// c from (b^2 - D) / 4a, exact.
inline Int third_coefficient(Int a, Int b, Int d) {
  const __int128 num = static_cast<__int128>(b) * b - d;
  const __int128 den = static_cast<__int128>(4) * a;
  if (num % den != 0) fail(Errc::internal, "form coefficients inconsistent with discriminant");
  const __int128 c = num / den;
  if (c > INT64_MAX || c < INT64_MIN) fail(Errc::overflow, "form coefficient overflow");
  return static_cast<Int>(c);
}

}  // namespace detail

/// Reduction of a positive definite form to the reduced representative of
/// its class.
inline Form reduce(Form f) {
  const Int d = f.disc();
  if (f.a <= 0 || d >= 0) fail(Errc::invalid_input, "form " + f.to_string() + " is not positive definite");
  for (;;) {
    if (!(-f.a < f.b && f.b <= f.a)) {
      const Int two_a = 2 * f.a;
      const Int q = floor_div(f.a - f.b, two_a);
      f.b = checked_add(f.b, checked_mul(two_a, q));
      f.c = detail::third_coefficient(f.a, f.b, d);
    }
    if (f.a > f.c) {
      f = {f.c, -f.b, f.a};
      continue;
    }
    if (f.a == f.c && f.b < 0) f.b = -f.b;
    return f;
  }
}

/// Composition of two forms of equal discriminant, reduced.
inline Form compose(Form f1, Form f2) {
  const Int d = f1.disc();
  if (f2.disc() != d)
    fail(Errc::discriminant_mismatch, f1.to_string() + " has discriminant " + std::to_string(d) + ", " +
                                          f2.to_string() + " has " + std::to_string(f2.disc()));
  if (f1.a > f2.a) std::swap(f1, f2);
  const Int s = (f1.b + f2.b) / 2;
  const Int n = f2.b - s;
  Int y1, dd;
  if (f2.a % f1.a == 0) {
    y1 = 0;
    dd = f1.a;
  } else {
    const Bezout e = extended_gcd(f2.a, f1.a);
    y1 = e.x;
    dd = e.g;
  }
  Int x2, y2, d1;
  if (s % dd == 0) {
    y2 = -1;
    x2 = 0;
    d1 = dd;
  } else {
    const Bezout e = extended_gcd(s, dd);
    x2 = e.x;
    y2 = -e.y;
    d1 = e.g;
  }
  const Int v1 = f1.a / d1;
  const Int v2 = f2.a / d1;
  const __int128 rr = static_cast<__int128>(y1) * y2 * n - static_cast<__int128>(x2) * f2.c;
  Int r = static_cast<Int>(((rr % v1) + v1) % v1);
  const Int b3 = checked_add(f2.b, checked_mul(checked_mul(2, v2), r));
  const Int a3 = checked_mul(v1, v2);
  return reduce({a3, b3, detail::third_coefficient(a3, b3, d)});
}

inline Form principal_form(Int d) {
  const Int b = mod_floor(d, 2);
  return {1, b, detail::third_coefficient(1, b, d)};
}

inline Form inverse(const Form& f) { return reduce({f.a, -f.b, f.c}); }

/// One reduced primitive form per class, ordered by a, then b.
inline std::vector<Form> reduced_forms(Int d, Int bound = kDefaultDiscBound) {
  check_discriminant(d, bound);
  std::vector<Form> out;
  const Int amax = static_cast<Int>(std::sqrt(static_cast<double>(-d) / 3.0)) + 1;
  for (Int a = 1; a <= amax; ++a)
    for (Int b = -a + 1; b <= a; ++b) {
      if (mod_floor(b - d, 2) != 0) continue;
      const __int128 num = static_cast<__int128>(b) * b - d;
      if (num % (4 * a) != 0) continue;
      const Int c = static_cast<Int>(num / (4 * a));
      if (c < a) continue;
      if (a == c && b < 0) continue;
      if (std::gcd(std::gcd(a, b < 0 ? -b : b), c) != 1) continue;
      out.push_back({a, b, c});
    }
  return out;
}

struct ClassGroupData {
  Int disc = 0;
  Involution involution = Involution::trivial;
  AbGroup group;                     // action: inversion (conj) or identity (trivial)
  std::vector<Form> forms;           // reduced forms, ascending
  std::vector<Vec> coords;           // coords[i] = class of forms[i]
  std::vector<std::size_t> generators;  // form index per generator
  std::map<Form, std::size_t> index;

  [[nodiscard]] Vec coords_of(const Form& f) const {
    if (f.disc() != disc)
      fail(Errc::discriminant_mismatch, f.to_string() + " does not have discriminant " + std::to_string(disc));
    return coords[index.at(reduce(f))];
  }
  [[nodiscard]] const Form& form_of(const Vec& x) const {
    const Vec r = group.reduce(x);
    for (std::size_t i = 0; i < coords.size(); ++i)
      if (coords[i] == r) return forms[i];
    fail(Errc::internal, "class coordinates with no form");
  }
};

inline ClassGroupData class_group(Int d, Involution inv, Int bound = kDefaultDiscBound) {
  ClassGroupData cg;
  cg.disc = d;
  cg.involution = inv;
  cg.forms = reduced_forms(d, bound);
  for (std::size_t i = 0; i < cg.forms.size(); ++i) cg.index[cg.forms[i]] = i;
  auto mul = [&](std::size_t x, std::size_t y) { return cg.index.at(compose(cg.forms[x], cg.forms[y])); };
  std::function<std::size_t(std::size_t)> act;
  if (inv == Involution::conjugation)
    act = [&](std::size_t x) { return cg.index.at(inverse(cg.forms[x])); };
  else
    act = [](std::size_t x) { return x; };
  FiniteAbelianStructure s = analyze_finite_abelian(cg.forms.size(), cg.index.at(principal_form(d)), mul, act);
  cg.group = std::move(s.group);
  cg.coords = std::move(s.coords);
  cg.generators = std::move(s.generators);
  return cg;
}

inline ClassGroupData class_group(const Ring& r) {
  if (!r.is_imquad()) fail(Errc::unsupported, "class groups are computed for imaginary quadratic orders");
  return class_group(r.disc(), r.involution());
}

/// {x : lambda(x) = -x}
inline Subgroup twisted_fixed_classes(const ClassGroupData& cg) { return fixed_and_twisted(cg.group).twisted; }

}  // namespace hermpic
