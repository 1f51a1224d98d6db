#pragma once

// Built-in scenarios. The group inputs are data, not algorithm constants.

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hermpic {

inline const std::vector<std::pair<std::string_view, std::string_view>>& builtin_scenario_sources() {
  static const std::vector<std::pair<std::string_view, std::string_view>> sources = {
      {"algclosed-char-ne-2", R"sc({
  "name": "algclosed-char-ne-2",
  "description": "Poincare Brauer group of an algebraically closed field, char != 2, trivial involution",
  "chain": [
    {"object": "pi_0 pic(k)", "group": {"torsion": [], "rank": 1},
     "provenance": {"kind": "reference", "anchor": "Picard group of a field is Z"}},
    {"map": [[1], [2]],
     "provenance": {"kind": "reference", "anchor": "image of the shift class is (2,-1); the mu_2 coordinate -1 is written 1"}},
    {"object": "pi_0 pic(Mod_k(Sp^C2))", "group": {"torsion": [2], "rank": 1},
     "provenance": {"kind": "reference", "anchor": "mu_2(k) x Z in torsion-first order"}},
    {"map": "derived"},
    {"object": "Br^p(k)", "unknown": "cokernel"},
    {"map": "zero"},
    {"object": "pi_0 br(k^e)", "group": {"torsion": [], "rank": 0},
     "provenance": {"kind": "reference", "anchor": "Brauer group of the enveloping algebra vanishes"}}
  ]
})sc"},
      {"algclosed-char-2", R"sc({
  "name": "algclosed-char-2",
  "description": "Poincare Brauer group of an algebraically closed field of characteristic 2",
  "chain": [
    {"object": "pi_0 pic(k)", "group": {"torsion": [], "rank": 1},
     "provenance": {"kind": "reference", "anchor": "Picard group of a field is Z"}},
    {"map": [[2], [1]],
     "provenance": {"kind": "reference", "anchor": "n -> (2n, n) in characteristic 2"}},
    {"object": "pi_0 pic(Mod_k(Sp^C2))", "group": {"torsion": [], "rank": 2},
     "provenance": {"kind": "reference", "anchor": "Z x Z in characteristic 2"}},
    {"map": "derived"},
    {"object": "Br^p(k)", "unknown": "cokernel"},
    {"map": "zero"},
    {"object": "pi_0 br(k^e)", "group": {"torsion": [], "rank": 0},
     "provenance": {"kind": "reference", "anchor": "Brauer group of the enveloping algebra vanishes"}}
  ]
})sc"},
      {"split-quadratic", R"sc({
  "name": "split-quadratic",
  "description": "Poincare Brauer group of k x k with the swap involution",
  "chain": [
    {"object": "pi_0 Pic(k x k)", "group": {"torsion": [], "rank": 2},
     "provenance": {"kind": "reference", "anchor": "Picard group of k x k is Z^2"}},
    {"map": [[1, 1]],
     "provenance": {"kind": "reference", "anchor": "connecting map (n, m) -> n + m"}},
    {"object": "pi_0 pic(k)", "group": {"torsion": [], "rank": 1},
     "provenance": {"kind": "reference", "anchor": "Picard group of a field is Z"}},
    {"map": "derived"},
    {"object": "Br^p(k x k)", "unknown": "cokernel"}
  ]
})sc"},
      {"sphere", R"sc({
  "name": "sphere",
  "description": "Poincare Brauer group of the universal Poincare sphere",
  "chain": [
    {"object": "pi_1 pic(S)", "group": {"torsion": [2], "rank": 0},
     "provenance": {"kind": "reference", "anchor": "units of the sphere"}},
    {"map": "zero",
     "provenance": {"kind": "trivial", "anchor": "the next map is injective"}},
    {"object": "pi_0 pic(S)", "group": {"torsion": [], "rank": 1},
     "provenance": {"kind": "reference", "anchor": "Picard group of the sphere is Z"}},
    {"map": [[2], [1]],
     "provenance": {"kind": "reference", "anchor": "1 -> (2, 1), the norm of the shift"}},
    {"object": "pi_0 pic(S^C2-modules)", "group": {"torsion": [], "rank": 2},
     "provenance": {"kind": "reference", "anchor": "rank two lattice of representation sphere shifts"}},
    {"map": "derived"},
    {"object": "Br^p(S^u)", "unknown": "cokernel"}
  ]
})sc"},
      {"unit-picp", R"sc({
  "name": "unit-picp",
  "description": "Poincare Picard group of the universal Poincare sphere",
  "chain": [
    {"object": "pi_0(S)^x", "group": {"torsion": [2], "rank": 0},
     "provenance": {"kind": "reference", "anchor": "units of the sphere"}},
    {"map": [[1], [1]],
     "provenance": {"kind": "reference", "anchor": "the norm map is nontrivial"}},
    {"object": "pi_0(S_hC2 + S)^x", "group": {"torsion": [2, 2], "rank": 0},
     "provenance": {"kind": "reference", "anchor": "units of the genuine fixed points"}},
    {"map": "derived"},
    {"object": "Pic^p(S^u)", "unknown": "cokernel"},
    {"map": "zero",
     "provenance": {"kind": "reference", "anchor": "underlying line bundles of Poincare objects are 2-torsion, so the forgetful map vanishes"}},
    {"object": "pi_0 pic(S)", "group": {"torsion": [], "rank": 1},
     "provenance": {"kind": "reference", "anchor": "Picard group of the sphere is Z"}}
  ]
})sc"},
      {"kr", R"sc({
  "name": "kr",
  "description": "Poincare Picard group of Atiyah real K-theory, with the Picard-to-Brauer lower bound",
  "chain": [
    {"object": "pi_0(KU)^x", "group": {"torsion": [2], "rank": 0},
     "provenance": {"kind": "reference", "anchor": "units of KU"}},
    {"map": "zero",
     "provenance": {"kind": "reference", "anchor": "norm on units is zero"}},
    {"object": "pi_0(KO)^x", "group": {"torsion": [2], "rank": 0},
     "provenance": {"kind": "reference", "anchor": "units of KO"}},
    {"map": "derived"},
    {"object": "Pic^p(KR)", "unknown": "extension"},
    {"map": "derived"},
    {"object": "Pic(KU)", "group": {"torsion": [2], "rank": 0},
     "provenance": {"kind": "reference", "anchor": "Picard group of KU"}},
    {"map": "zero",
     "provenance": {"kind": "reference", "anchor": "norm on Picard groups is zero"}},
    {"object": "Pic(KO)", "group": {"torsion": [8], "rank": 0},
     "provenance": {"kind": "reference", "anchor": "Picard group of KO"}}
  ],
  "witness": [[0]],
  "lower_bounds": [{"cokernel_of_map": 3, "embeds_into": "pi_0 pnbr(KR)"}]
})sc"},
  };
  return sources;
}

}  // namespace hermpic
