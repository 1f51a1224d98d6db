#pragma once

// Poincare Picard groups of discrete rings: the hermitian part plus the
// group of sign-equivariant integer functions on the spectrum.

#include <optional>
#include <string>
#include <vector>

#include "hermpic/abgrp.hpp"
#include "hermpic/hermforms.hpp"
#include "hermpic/rings.hpp"

namespace hermpic {

struct EquivariantSignFunctions {
  SpecWithAction spec;
  AbGroup group;            // free, rank = number of free orbits
  std::vector<Vec> basis;   // basis[j][c] = value of the j-th basis function on component c

  /// Function attached to coordinates x.
  [[nodiscard]] Vec function_of(const Vec& x) const {
    Vec f(spec.components.size(), 0);
    for (std::size_t j = 0; j < basis.size(); ++j)
      for (std::size_t c = 0; c < f.size(); ++c) f[c] = checked_add(f[c], checked_mul(x.at(j), basis[j][c]));
    return f;
  }
};

/// Functions f with f(lambda c) = -f(c); basis: +1 on the smaller component
/// of each free orbit, -1 on its partner.
inline EquivariantSignFunctions equivariant_sign_functions(const SpecWithAction& x) {
  x.validate();
  EquivariantSignFunctions out{x, AbGroup{}, {}};
  for (std::size_t c = 0; c < x.action.size(); ++c)
    if (x.action[c] > c) {
      Vec f(x.action.size(), 0);
      f[c] = 1;
      f[x.action[c]] = -1;
      out.basis.push_back(std::move(f));
    }
  out.group = AbGroup::free(out.basis.size());
  return out;
}

struct PicPData {
  PicHData hermitian;
  EquivariantSignFunctions shift;
  DirectSum total;  // hermitian + shift

  struct Element {
    HermitianLine form;
    Vec degree;  // component -> integer
  };
  [[nodiscard]] Element element(const Vec& x) const {
    return {hermitian.line_of(total.proj1.apply(x)), shift.function_of(total.proj2.apply(x))};
  }
};

inline PicPData pic_p(const Ring& r) {
  PicHData h = pich(r);
  EquivariantSignFunctions s = equivariant_sign_functions(r.spec_components());
  DirectSum t = direct_sum(h.group(), s.group);
  return {std::move(h), std::move(s), std::move(t)};
}

enum class ExtensionVerdict { determined, ambiguous, split_by_witness };

inline std::string verdict_name(ExtensionVerdict v) {
  switch (v) {
    case ExtensionVerdict::determined: return "determined";
    case ExtensionVerdict::ambiguous: return "extension-ambiguous";
    case ExtensionVerdict::split_by_witness: return "split-by-witness";
  }
  return "unknown";
}

struct ExtensionResult {
  AbGroup kernel;
  AbGroup quotient;
  ExtensionVerdict verdict = ExtensionVerdict::ambiguous;
  std::optional<AbGroup> middle;
};

/// Middle term of 0 -> k -> ? -> q -> 0. Without a witness the middle is
/// reported only when every extension is split; a witness gives, for each
/// torsion generator of q, the class in k of n times a chosen lift.
inline ExtensionResult resolve_extension(const AbGroup& k, const AbGroup& q,
                                         const std::optional<std::vector<Vec>>& witness = std::nullopt) {
  ExtensionResult out{k, q, ExtensionVerdict::ambiguous, std::nullopt};
  if (witness) {
    const Extension e = extension_from_classes(k, q, *witness);
    bool zero = true;
    for (const Vec& w : *witness) zero = zero && k.is_zero(w);
    out.verdict = zero ? ExtensionVerdict::split_by_witness : ExtensionVerdict::determined;
    out.middle = e.middle;
    return out;
  }
  if (extensions_split_automatically(k, q)) {
    out.verdict = ExtensionVerdict::determined;
    out.middle = direct_sum(k, q).group;
  }
  return out;
}

/// 0 -> fixed units / norms -> Pic^p(R^s) -> Pic(R)^{-lambda} -> 0
inline ExtensionResult borel_symmetric_pieces(const Ring& r,
                                              const std::optional<std::vector<Vec>>& witness = std::nullopt) {
  PicHData h = pich(r);
  return resolve_extension(h.kernel.group, h.twisted.group, witness);
}

}  // namespace hermpic
