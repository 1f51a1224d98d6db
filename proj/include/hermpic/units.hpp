#pragma once

// Unit groups with the induced involution, the norm u -> u * lambda(u), the
// quotient of fixed units by norms, and the hermitian units.

#include <map>
#include <string>
#include <vector>

#include "hermpic/abgrp.hpp"
#include "hermpic/blackbox.hpp"
#include "hermpic/rings.hpp"

namespace hermpic {

struct UnitGroupData {
  Ring ring;
  AbGroup group;                         // with the action induced by lambda
  std::vector<RingElement> embed;        // image of each generator
  std::vector<RingElement> units;        // all units, ascending
  std::vector<Vec> log;                  // log[i] = coordinates of units[i]
  std::map<RingElement, std::size_t> index;

  [[nodiscard]] Vec log_of(const RingElement& u) const {
    auto it = index.find(u);
    if (it == index.end()) fail(Errc::non_unit, ring.element_to_string(u) + " is not a unit");
    return log[it->second];
  }
  [[nodiscard]] RingElement exp_of(const Vec& x) const {
    Vec r = group.reduce(x);
    RingElement u = ring.one();
    for (std::size_t i = 0; i < r.size(); ++i) u = ring.mul(u, ring.pow(embed[i], r[i]));
    return u;
  }
};

namespace detail {

inline UnitGroupData imquad_units(const Ring& r) {
  // Roots of unity by discriminant: -4 -> <i>, i = 2 + w; -3 -> <zeta6>, zeta6 = 2 + w.
  const Int d = r.disc();
  RingElement gen{{-1, 0}};
  Int n = 2;
  if (d == -4 || d == -3) {
    gen = RingElement{{2, 1}};
    n = d == -4 ? 4 : 6;
  }
  UnitGroupData u{r, AbGroup{}, {}, {}, {}, {}};
  // Conjugation inverts roots of unity; -1 is real.
  const bool conj = r.involution() == Involution::conjugation;
  u.group = AbGroup({n}, 0, IntMatrix{{conj ? n - 1 : 1}});
  u.embed = {gen};
  std::vector<std::pair<RingElement, Int>> all;
  RingElement cur = r.one();
  for (Int k = 0; k < n; ++k) {
    all.emplace_back(cur, k);
    cur = r.mul(cur, gen);
  }
  std::sort(all.begin(), all.end());
  for (auto& [e, k] : all) {
    u.index[e] = u.units.size();
    u.units.push_back(e);
    u.log.push_back({k});
  }
  return u;
}

}  // namespace detail

inline UnitGroupData unit_group(const Ring& r) {
  if (r.is_imquad()) return detail::imquad_units(r);
  UnitGroupData u{r, AbGroup{}, {}, r.units(), {}, {}};
  for (std::size_t i = 0; i < u.units.size(); ++i) u.index[u.units[i]] = i;
  auto idx = [&](const RingElement& e) { return u.index.at(e); };
  auto mul = [&](std::size_t a, std::size_t b) { return idx(r.mul(u.units[a], u.units[b])); };
  std::function<std::size_t(std::size_t)> act = [&](std::size_t a) { return idx(r.lambda(u.units[a])); };
  FiniteAbelianStructure s = analyze_finite_abelian(u.units.size(), idx(r.one()), mul, act);
  u.group = std::move(s.group);
  for (std::size_t g : s.generators) u.embed.push_back(u.units[g]);
  u.log = std::move(s.coords);
  return u;
}

struct NormQuotientData {
  AbGroup group;                   // fixed units / norms
  Subgroup fixed;                  // fixed units inside the unit group
  GroupHom projection;             // fixed -> group
  std::vector<RingElement> representatives;  // least unit in each generator's class

  /// Class of a fixed unit.
  [[nodiscard]] Vec classify(const UnitGroupData& u, const RingElement& a) const {
    const Vec x = u.log_of(a);
    if (!u.group.equal(u.group.act(x), x)) fail(Errc::not_fixed, u.ring.element_to_string(a) + " is not fixed by the involution");
    auto y = lift_through(fixed.inclusion, x);
    if (!y) fail(Errc::internal, "fixed unit outside the fixed subgroup");
    return projection.apply(*y);
  }
};

inline NormQuotientData norm_fixed_quotient(const UnitGroupData& u) {
  const AbGroup& g = u.group;
  const IntMatrix id = IntMatrix::identity(g.ngens());
  Subgroup fixed = fixed_and_twisted(g).fixed;
  GroupHom norm_into_fixed = factor_through(GroupHom(g, g, g.action() + id), fixed.inclusion);
  Quotient q = quotient(fixed.group, norm_into_fixed.matrix().columns());
  NormQuotientData out{AbGroup(q.group.torsion(), q.group.rank()), std::move(fixed), q.projection, {}};
  out.projection = GroupHom(out.fixed.group, out.group, q.projection.matrix());
  out.representatives.assign(out.group.ngens(), RingElement{});
  std::vector<char> found(out.group.ngens(), 0);
  std::size_t missing = out.group.ngens();
  for (const RingElement& a : u.units) {
    if (missing == 0) break;
    if (u.ring.lambda(a) != a) continue;
    const Vec c = out.classify(u, a);
    for (std::size_t j = 0; j < c.size(); ++j)
      if (!found[j] && c == out.group.generator(j)) {
        out.representatives[j] = a;
        found[j] = 1;
        --missing;
      }
  }
  if (missing != 0) fail(Errc::internal, "no unit represents a norm-quotient generator");
  return out;
}

inline NormQuotientData norm_fixed_quotient(const Ring& r) { return norm_fixed_quotient(unit_group(r)); }

/// {u : u * lambda(u) = 1}
inline Subgroup hermitian_units(const UnitGroupData& u) { return fixed_and_twisted(u.group).twisted; }

inline Subgroup hermitian_units(const Ring& r) { return hermitian_units(unit_group(r)); }

}  // namespace hermpic
