#pragma once

// Rank-one lambda-hermitian forms, their isomorphism classes, and the
// hermitian Picard group.

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hermpic/abgrp.hpp"
#include "hermpic/classgrp.hpp"
#include "hermpic/rings.hpp"
#include "hermpic/units.hpp"

namespace hermpic {

/// An invertible module with a nondegenerate hermitian pairing. For finite
/// rings the module is free of rank one (`module` empty) and the pairing is
/// (x, y) -> x * value * lambda(y). For imaginary quadratic orders `module`
/// is the reduced form of the ideal class and the pairing is `value` times
/// the canonical ideal pairing.
struct HermitianLine {
  Ring ring;
  std::optional<Form> module;
  RingElement value;
};

namespace detail {

inline void check_class_twisted(const ClassGroupData& cg, const Form& f) {
  const Vec x = cg.coords_of(f);
  if (!cg.group.is_zero(cg.group.add(cg.group.act(x), x)))
    fail(Errc::class_not_twisted, "class of " + f.to_string() + " is not in the twisted fixed classes");
}

}  // namespace detail

inline HermitianLine make_form(const Ring& r, std::optional<Form> module, const RingElement& a) {
  r.check_element(a);
  if (!r.is_unit(a)) fail(Errc::non_unit, "form value " + r.element_to_string(a) + " is not a unit");
  if (r.lambda(a) != a) fail(Errc::not_fixed, "form value " + r.element_to_string(a) + " is not fixed by the involution");
  if (r.is_finite()) {
    if (module) fail(Errc::invalid_input, "modules over finite rings are free; got ideal class " + module->to_string());
    return {r, std::nullopt, a};
  }
  Form f = module ? *module : principal_form(r.disc());
  if (f.disc() != r.disc())
    fail(Errc::discriminant_mismatch, f.to_string() + " does not have discriminant " + std::to_string(r.disc()));
  if (f.a <= 0 || std::gcd(std::gcd(f.a, f.b < 0 ? -f.b : f.b), f.c) != 1)
    fail(Errc::invalid_input, f.to_string() + " is not primitive positive definite");
  f = reduce(f);
  detail::check_class_twisted(class_group(r), f);
  return {r, f, a};
}

struct IsoResult {
  bool isomorphic = false;
  std::optional<RingElement> witness;  // x with x * lambda(x) * psi.value = phi.value
};

/// Isomorphism test by ascending witness search over units, cross-checked
/// against the norm quotient.
inline IsoResult isomorphic(const UnitGroupData& u, const NormQuotientData& nq, const HermitianLine& phi,
                            const HermitianLine& psi) {
  if (!(phi.ring == psi.ring) || !(phi.ring == u.ring)) fail(Errc::ring_mismatch, "forms live over different rings");
  IsoResult res;
  if (phi.module != psi.module) return res;
  const Ring& r = phi.ring;
  for (const RingElement& x : u.units)
    if (r.mul(r.mul(x, r.lambda(x)), psi.value) == phi.value) {
      res.isomorphic = true;
      res.witness = x;
      break;
    }
  const bool formula = nq.classify(u, phi.value) == nq.classify(u, psi.value);
  if (formula != res.isomorphic) fail(Errc::internal, "witness search and norm quotient disagree");
  return res;
}

inline IsoResult isomorphic(const HermitianLine& phi, const HermitianLine& psi) {
  if (!(phi.ring == psi.ring)) fail(Errc::ring_mismatch, "forms live over different rings");
  UnitGroupData u = unit_group(phi.ring);
  return isomorphic(u, norm_fixed_quotient(u), phi, psi);
}

inline HermitianLine tensor(const HermitianLine& phi, const HermitianLine& psi) {
  if (!(phi.ring == psi.ring)) fail(Errc::ring_mismatch, "forms live over different rings");
  HermitianLine out{phi.ring, std::nullopt, phi.ring.mul(phi.value, psi.value)};
  if (phi.module && psi.module) out.module = compose(*phi.module, *psi.module);
  return out;
}

inline HermitianLine unit_form(const Ring& r) {
  return {r, r.is_imquad() ? std::optional<Form>(principal_form(r.disc())) : std::nullopt, r.one()};
}

struct BruteForcePicH {
  AbGroup group;
  std::vector<std::vector<RingElement>> classes;  // fixed units grouped by a ~ x lambda(x) a
};

/// Fixed units modulo norms by direct enumeration; no exact sequence used.
inline BruteForcePicH pich_bruteforce(const Ring& r, std::size_t cap = enumeration_cap()) {
  if (!r.is_finite()) fail(Errc::infinite_ring, "brute force needs a finite ring");
  const std::vector<RingElement> units = r.units(cap);
  std::vector<RingElement> fixed;
  std::set<RingElement> norms;
  for (const RingElement& x : units) {
    if (r.lambda(x) == x) fixed.push_back(x);
    norms.insert(r.mul(x, r.lambda(x)));
  }
  BruteForcePicH out;
  std::set<RingElement> seen;
  std::vector<Int> orders;
  for (const RingElement& a : fixed) {
    if (seen.count(a)) continue;
    std::vector<RingElement> cls;
    for (const RingElement& n : norms) {
      RingElement b = r.mul(a, n);
      seen.insert(b);
      cls.push_back(std::move(b));
    }
    std::sort(cls.begin(), cls.end());
    Int k = 1;
    for (RingElement p = a; !norms.count(p); p = r.mul(p, a)) ++k;
    orders.push_back(k);
    out.classes.push_back(std::move(cls));
  }
  out.group = group_from_element_orders(orders);
  return out;
}

struct PicHData {
  Ring ring;
  UnitGroupData units;
  NormQuotientData kernel;                // fixed units / norms
  std::optional<ClassGroupData> classes;  // imaginary quadratic orders only
  Subgroup twisted;                       // twisted fixed classes
  DirectSum sum;                          // kernel + twisted, via the ideal-pairing section
  std::vector<HermitianLine> generators;
  std::optional<AbGroup> oracle;          // brute-force value for finite rings
  std::vector<std::string> warnings;

  [[nodiscard]] const AbGroup& group() const { return sum.group; }

  [[nodiscard]] HermitianLine line_of(const Vec& x) const {
    const Vec k = sum.proj1.apply(x);
    const Vec q = sum.proj2.apply(x);
    RingElement v = ring.one();
    for (std::size_t i = 0; i < k.size(); ++i) v = ring.mul(v, ring.pow(kernel.representatives[i], k[i]));
    HermitianLine line{ring, std::nullopt, v};
    if (classes) line.module = classes->form_of(twisted.inclusion.apply(q));
    return line;
  }

  [[nodiscard]] Vec classify(const HermitianLine& line) const {
    if (!(line.ring == ring)) fail(Errc::ring_mismatch, "form lives over a different ring");
    const Vec k = kernel.classify(units, line.value);
    Vec q = twisted.group.zero();
    if (classes) {
      const Form f = line.module ? *line.module : principal_form(ring.disc());
      auto y = lift_through(twisted.inclusion, classes->coords_of(f));
      if (!y) fail(Errc::class_not_twisted, "class of " + f.to_string() + " is not twisted fixed");
      q = *y;
    }
    return group().add(sum.inj1.apply(k), sum.inj2.apply(q));
  }
};

inline std::string section_description(const Ring& r) {
  if (r.is_finite()) return "free module R with pairing (x,y) -> x a lambda(y)";
  if (r.involution() == Involution::conjugation) return "ideal I with pairing (x,y) -> a x conj(y) / N(I)";
  return "ideal I with pairing (x,y) -> a x y / alpha, where I^2 = alpha R";
}

struct PicHOptions {
  bool oracle = false;  // report the brute-force value and cross-check
};

inline PicHData pich(const Ring& r, PicHOptions opt = {}) {
  UnitGroupData u = unit_group(r);
  NormQuotientData nq = norm_fixed_quotient(u);
  std::optional<ClassGroupData> cg;
  Subgroup tw{AbGroup{}, GroupHom::zero(AbGroup{}, AbGroup{})};
  if (r.is_imquad()) {
    cg = class_group(r);
    tw = twisted_fixed_classes(*cg);
  }
  AbGroup q_plain(tw.group.torsion(), tw.group.rank());
  tw.inclusion = GroupHom(q_plain, tw.inclusion.target(), tw.inclusion.matrix());
  tw.group = q_plain;
  DirectSum sum = direct_sum(nq.group, tw.group);
  PicHData out{r, std::move(u), std::move(nq), std::move(cg), std::move(tw), std::move(sum), {}, std::nullopt, {}};
  for (std::size_t j = 0; j < out.group().ngens(); ++j) out.generators.push_back(out.line_of(out.group().generator(j)));
  if (r.is_finite()) {
    try {
      out.oracle = pich_bruteforce(r).group;
      if (!out.oracle->isomorphic(out.group()))
        out.warnings.push_back("formula value " + out.group().to_string() + " disagrees with brute force " +
                               out.oracle->to_string());
    } catch (const Error& e) {
      if (opt.oracle || e.code() != Errc::cap_exceeded) throw;
      out.warnings.push_back(std::string("brute-force check skipped: ") + e.what());
    }
  } else if (opt.oracle) {
    fail(Errc::infinite_ring, "the brute-force path needs a finite ring");
  }
  return out;
}

struct FiveTermReport {
  std::vector<std::string> objects;  // names of the chain's objects, zeros included
  std::vector<GroupHom> chain;
  ExactnessReport exactness;
};

/// 0 -> herm. units -> units -> fixed units -> Pic^h -> Pic -> im(N) -> 0
inline FiveTermReport verify_five_term(const PicHData& ph) {
  const AbGroup& ug = ph.units.group;
  const IntMatrix id = IntMatrix::identity(ug.ngens());
  Subgroup herm = hermitian_units(ph.units);
  const Subgroup& fixed = ph.kernel.fixed;
  GroupHom norm = factor_through(GroupHom(ug, ug, ug.action() + id), fixed.inclusion);
  GroupHom to_pich = compose(ph.sum.inj1, ph.kernel.projection);

  AbGroup cl = ph.classes ? ph.classes->group : AbGroup{};
  GroupHom forget = compose(ph.twisted.inclusion, ph.sum.proj2);
  forget = GroupHom(ph.group(), cl, forget.matrix());
  GroupHom cl_norm(cl, cl, cl.action() + IntMatrix::identity(cl.ngens()));
  Subgroup im = image(cl_norm);
  GroupHom onto_image = factor_through(cl_norm, im.inclusion);

  FiveTermReport rep;
  rep.objects = {"0", "hermitian units", "units", "fixed units", "Pic^h", "Pic", "image of norm on Pic", "0"};
  rep.chain = {GroupHom::zero(AbGroup{}, herm.group),
               herm.inclusion,
               norm,
               to_pich,
               forget,
               onto_image,
               GroupHom::zero(im.group, AbGroup{})};
  rep.exactness = check_exact(rep.chain);
  return rep;
}

inline FiveTermReport verify_five_term(const Ring& r) { return verify_five_term(pich(r)); }

struct ProductCheck {
  bool holds = false;
  AbGroup product;  // Pic^h(r x s)
  AbGroup sum;      // Pic^h(r) + Pic^h(s)
};

inline ProductCheck product_formula_check(const Ring& r, const Ring& s) {
  ProductCheck c;
  c.product = pich(product(r, s)).group();
  c.sum = direct_sum(pich(r).group(), pich(s).group()).group;
  c.holds = c.product.isomorphic(c.sum);
  return c;
}

}  // namespace hermpic
