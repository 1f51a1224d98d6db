#pragma once

// Long exact sequence solving with one unknown term, the H^1 correction
// term, involutive Brauer kernels and the Saltman criterion.

#include <optional>
#include <string>
#include <vector>

#include "hermpic/abgrp.hpp"
#include "hermpic/pnpic.hpp"
#include "hermpic/rings.hpp"

namespace hermpic {

struct Provenance {
  std::string kind;    // reference | trivial | derived
  std::string anchor;  // what the value reproduces, or the oracle used
};

struct ScenarioObject {
  std::string name;
  std::optional<AbGroup> group;  // empty for the unknown slot
  Provenance provenance;
};

struct ScenarioMap {
  enum class Kind { matrix, zero, derived };
  Kind kind = Kind::derived;
  IntMatrix matrix;
  Provenance provenance;
};

enum class UnknownKind { none, cokernel, kernel, extension };

inline std::string unknown_kind_name(UnknownKind k) {
  switch (k) {
    case UnknownKind::none: return "none";
    case UnknownKind::cokernel: return "cokernel";
    case UnknownKind::kernel: return "kernel";
    case UnknownKind::extension: return "extension";
  }
  return "unknown";
}

/// The cokernel of `map` (which must be the last map) injects into the
/// next, unlisted term of the sequence.
struct LowerBound {
  std::size_t map = 0;
  std::string embeds_into;
};

/// A stretch G0 -> G1 -> ... -> Gn of a long exact sequence; maps[i] goes
/// from objects[i] to objects[i + 1].
struct Scenario {
  std::string name;
  std::string description;
  std::vector<ScenarioObject> objects;
  std::vector<ScenarioMap> maps;
  UnknownKind unknown_kind = UnknownKind::none;
  std::size_t unknown = 0;
  std::optional<std::vector<Vec>> witness;  // extension classes, see resolve_extension
  std::vector<LowerBound> lower_bounds;
};

struct LowerBoundReport {
  AbGroup group;
  std::string embeds_into;
  bool verified = false;
};

struct ScenarioResult {
  std::string name;
  std::vector<std::string> names;
  std::vector<std::optional<AbGroup>> objects;  // solved chain; the unknown may stay empty when ambiguous
  std::optional<AbGroup> unknown;
  std::optional<ExtensionResult> extension;
  ExactnessReport precheck;  // junctions between known maps
  ExactnessReport full;      // whole chain after solving (empty when unresolved)
  std::vector<LowerBoundReport> lower_bounds;
};

namespace detail {

inline std::string junction_text(const std::vector<ScenarioObject>& objs, const JunctionReport& j) {
  std::string w;
  if (j.witness)
    for (std::size_t i = 0; i < j.witness->size(); ++i) w += (i ? "," : "") + std::to_string((*j.witness)[i]);
  return "not exact at " + objs[j.object_index].name + ": " + j.detail + " [" + w + "]";
}

}  // namespace detail

inline ScenarioResult run_scenario(const Scenario& s) {
  const std::size_t n = s.objects.size();
  if (n == 0) fail(Errc::invalid_input, "scenario " + s.name + " has no objects");
  if (s.maps.size() + 1 != n)
    fail(Errc::invalid_input, "scenario " + s.name + " needs exactly one map between consecutive objects");
  const bool has_unknown = s.unknown_kind != UnknownKind::none;
  const std::size_t u = s.unknown;
  std::size_t unknown_count = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (!s.objects[i].group) {
      ++unknown_count;
      if (!has_unknown || i != u) fail(Errc::invalid_input, "object " + s.objects[i].name + " has no group");
    }
  if (has_unknown && (u >= n || s.objects[u].group)) fail(Errc::invalid_input, "unknown slot does not name an object without a group");
  if (unknown_count > 1) fail(Errc::invalid_input, "at most one unknown term is allowed");

  auto adjacent = [&](std::size_t m) { return has_unknown && (m + 1 == u || m == u); };
  std::vector<std::optional<GroupHom>> homs(s.maps.size());
  for (std::size_t m = 0; m < s.maps.size(); ++m) {
    const ScenarioMap& mp = s.maps[m];
    if (mp.kind == ScenarioMap::Kind::derived) {
      if (!adjacent(m))
        fail(Errc::underdetermined, "map " + std::to_string(m) + " (" + s.objects[m].name + " -> " +
                                        s.objects[m + 1].name + ") is neither given nor next to the unknown");
      continue;
    }
    if (adjacent(m)) {
      // Only a zero map may touch the unknown from the determined side.
      if (mp.kind != ScenarioMap::Kind::zero)
        fail(Errc::underdetermined, "a map touching the unknown term may only be declared zero");
      continue;
    }
    const AbGroup& src = *s.objects[m].group;
    const AbGroup& dst = *s.objects[m + 1].group;
    homs[m] = mp.kind == ScenarioMap::Kind::zero ? GroupHom::zero(src, dst) : GroupHom(src, dst, mp.matrix);
  }

  ScenarioResult res;
  res.name = s.name;
  for (const auto& o : s.objects) {
    res.names.push_back(o.name);
    res.objects.push_back(o.group);
  }

  // Exactness of the known portion.
  std::vector<GroupHom> run;
  std::size_t run_start = 0;
  auto flush = [&]() {
    if (run.size() >= 2) {
      ExactnessReport r = check_exact(run);
      for (auto& j : r.junctions) {
        j.object_index += run_start;
        if (!j.exact) fail(Errc::inconsistent, detail::junction_text(s.objects, j));
        res.precheck.junctions.push_back(j);
      }
    }
    run.clear();
  };
  for (std::size_t m = 0; m < homs.size(); ++m) {
    if (!homs[m]) {
      flush();
      run_start = m + 1;
      continue;
    }
    if (run.empty()) run_start = m;
    run.push_back(*homs[m]);
  }
  flush();

  auto is_zero_map = [&](std::size_t m) { return s.maps[m].kind == ScenarioMap::Kind::zero; };
  std::vector<std::optional<GroupHom>> full = homs;
  if (s.unknown_kind == UnknownKind::cokernel) {
    if (u < 2 || !homs[u - 2] || s.maps[u - 1].kind != ScenarioMap::Kind::derived)
      fail(Errc::underdetermined, "a cokernel unknown needs a given map two steps before it");
    if (u + 1 < n && !is_zero_map(u))
      fail(Errc::underdetermined, "a cokernel unknown must be last or followed by a zero map");
    Quotient q = cokernel(*homs[u - 2]);
    res.unknown = q.group;
    full[u - 1] = q.projection;
    if (u + 1 < n) full[u] = GroupHom::zero(q.group, *s.objects[u + 1].group);
  } else if (s.unknown_kind == UnknownKind::kernel) {
    if (u + 2 >= n || !homs[u + 1] || s.maps[u].kind != ScenarioMap::Kind::derived)
      fail(Errc::underdetermined, "a kernel unknown needs a given map right after its successor");
    if (u > 0 && !is_zero_map(u - 1))
      fail(Errc::underdetermined, "a kernel unknown must be first or preceded by a zero map");
    Subgroup k = kernel(*homs[u + 1]);
    res.unknown = k.group;
    full[u] = k.inclusion;
    if (u > 0) full[u - 1] = GroupHom::zero(*s.objects[u - 1].group, k.group);
  } else if (s.unknown_kind == UnknownKind::extension) {
    if (u < 2 || u + 2 >= n || !homs[u - 2] || !homs[u + 1] || s.maps[u - 1].kind != ScenarioMap::Kind::derived ||
        s.maps[u].kind != ScenarioMap::Kind::derived)
      fail(Errc::underdetermined, "an extension unknown needs given maps on both sides of its neighbours");
    Quotient left = cokernel(*homs[u - 2]);
    Subgroup right = kernel(*homs[u + 1]);
    res.extension = resolve_extension(left.group, right.group, s.witness);
    if (res.extension->middle) {
      const Extension e = extension_from_classes(
          left.group, right.group,
          s.witness ? *s.witness : std::vector<Vec>(right.group.torsion().size(), left.group.zero()));
      res.unknown = e.middle;
      full[u - 1] = compose(e.inclusion, left.projection);
      full[u] = compose(right.inclusion, e.projection);
    }
  }
  if (res.unknown) res.objects[u] = res.unknown;

  const bool resolved = !has_unknown || res.unknown.has_value();
  if (resolved && !full.empty()) {
    std::vector<GroupHom> chain;
    for (auto& h : full) chain.push_back(*h);
    res.full = check_exact(chain);
    for (const auto& j : res.full.junctions)
      if (!j.exact) fail(Errc::internal, "solved chain " + detail::junction_text(s.objects, j));
  }

  for (const LowerBound& lb : s.lower_bounds) {
    if (lb.map + 1 != s.maps.size())
      fail(Errc::invalid_input, "a lower bound must use the last map of the chain");
    if (!full[lb.map]) fail(Errc::underdetermined, "lower bound map is not determined");
    res.lower_bounds.push_back({cokernel(*full[lb.map]).group, lb.embeds_into, resolved});
  }
  return res;
}

enum class H1Mode { trivial_action, reduced };

/// Correction term for a finite spectrum: (Z/2)^components under the
/// trivial action; in the reduced case, orbit-constant integer functions
/// modulo {f + f o lambda}.
inline AbGroup h1_extra_junk(const SpecWithAction& x, H1Mode mode) {
  x.validate();
  const std::size_t nc = x.components.size();
  if (mode == H1Mode::trivial_action) return AbGroup(Vec(nc, 2), 0);
  std::vector<std::size_t> orbit(nc);
  std::size_t no = 0;
  for (std::size_t c = 0; c < nc; ++c)
    if (x.action[c] >= c) {
      orbit[c] = no;
      orbit[x.action[c]] = no;
      ++no;
    }
  const AbGroup lattice = AbGroup::free(no);
  std::vector<Vec> gens;
  for (std::size_t c = 0; c < nc; ++c) {
    // f = indicator of c; f + f o lambda is 2 on a fixed component, 1 on a free orbit.
    Vec g(no, 0);
    g[orbit[c]] = x.action[c] == c ? 2 : 1;
    gens.push_back(std::move(g));
  }
  const AbGroup q = quotient(lattice, gens).group;
  return AbGroup(q.torsion(), q.rank());
}

/// Kernel of the comparison map from the Poincare Brauer group to the
/// correction term.
inline Subgroup br_prime_kernel(const AbGroup& brp, const GroupHom& h1_map) {
  if (!h1_map.source().isomorphic(brp) || !(h1_map.source().action() == brp.action()))
    fail(Errc::source_mismatch, "comparison map starts at " + h1_map.source().to_string() + ", not " + brp.to_string());
  return kernel(h1_map);
}

enum class SaltmanMode { trivial_action, galois };

struct SaltmanResult {
  bool holds = false;
  Vec certificate;  // 2 cls, or norm(cls)
};

inline SaltmanResult saltman_check(const AbGroup& b, const Vec& cls, SaltmanMode mode,
                                   const std::optional<GroupHom>& norm = std::nullopt) {
  if (cls.size() != b.ngens())
    fail(Errc::not_an_element, "class has " + std::to_string(cls.size()) + " coordinates, group has " +
                                   std::to_string(b.ngens()));
  SaltmanResult r;
  if (mode == SaltmanMode::trivial_action) {
    r.certificate = b.scale(2, cls);
  } else {
    if (!norm) fail(Errc::missing_norm, "the Galois criterion needs a norm map");
    if (!norm->source().isomorphic(b)) fail(Errc::source_mismatch, "norm map does not start at the class group");
    r.certificate = norm->apply(cls);
  }
  const AbGroup& t = mode == SaltmanMode::trivial_action ? b : norm->target();
  r.holds = t.is_zero(r.certificate);
  return r;
}

}  // namespace hermpic
