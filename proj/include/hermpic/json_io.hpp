#pragma once

// JSON encodings of groups, homomorphisms, rings, elements, forms and
// scenarios, plus the compact ring syntax used on the command line.

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hermpic/abgrp.hpp"
#include "hermpic/brauer.hpp"
#include "hermpic/classgrp.hpp"
#include "hermpic/hermforms.hpp"
#include "hermpic/rings.hpp"

namespace hermpic {

using json = nlohmann::json;

inline json parse_json(const std::string& text, const std::string& what = "input") {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail(Errc::parse_error, "malformed JSON in " + what + " at byte " + std::to_string(e.byte));
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::invalid_input, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace detail {

template <class T>
T get_field(const json& j, const char* key, const T& fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    fail(Errc::invalid_input, std::string("field '") + key + "' has the wrong type");
  }
}

template <class T>
T get_required(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(Errc::invalid_input, std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    fail(Errc::invalid_input, std::string("field '") + key + "' has the wrong type");
  }
}

inline IntMatrix matrix_from_json(const json& j, std::size_t rows, std::size_t cols, const std::string& what) {
  if (!j.is_array()) fail(Errc::invalid_input, what + " must be an array of rows");
  if (rows == 0) {
    if (!j.empty()) fail(Errc::invalid_input, what + " must be [] for a zero-generator target");
    return IntMatrix(0, cols);
  }
  if (j.size() != rows) fail(Errc::invalid_input, what + " has " + std::to_string(j.size()) + " rows, expected " + std::to_string(rows));
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols)
      fail(Errc::invalid_input, what + " row " + std::to_string(i) + " must have " + std::to_string(cols) + " entries");
    for (std::size_t k = 0; k < cols; ++k) {
      if (!j[i][k].is_number_integer()) fail(Errc::invalid_input, what + " entries must be integers");
      m(i, k) = j[i][k].get<Int>();
    }
  }
  return m;
}

}  // namespace detail

inline json matrix_to_json(const IntMatrix& m) {
  json a = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(Vec(m.row(i).begin(), m.row(i).end()));
  return a;
}

inline json to_json(const AbGroup& g) {
  json j{{"torsion", g.torsion()}, {"rank", g.rank()}};
  if (!g.has_identity_action()) j["action"] = matrix_to_json(g.action());
  return j;
}

inline AbGroup group_from_json(const json& j) {
  if (!j.is_object()) fail(Errc::invalid_input, "a group must be a JSON object");
  const Vec torsion = detail::get_field<Vec>(j, "torsion", {});
  const Int rank = detail::get_field<Int>(j, "rank", 0);
  if (rank < 0) fail(Errc::invalid_input, "rank must be non-negative");
  std::optional<IntMatrix> action;
  const std::size_t n = torsion.size() + static_cast<std::size_t>(rank);
  if (j.contains("action")) action = detail::matrix_from_json(j["action"], n, n, "action");
  return AbGroup(torsion, static_cast<std::size_t>(rank), action);
}

inline json to_json(const GroupHom& h) {
  return {{"source", to_json(h.source())}, {"target", to_json(h.target())}, {"matrix", matrix_to_json(h.matrix())}};
}

inline GroupHom hom_from_json(const json& j) {
  AbGroup s = group_from_json(detail::get_required<json>(j, "source"));
  AbGroup t = group_from_json(detail::get_required<json>(j, "target"));
  IntMatrix m = detail::matrix_from_json(detail::get_required<json>(j, "matrix"), t.ngens(), s.ngens(), "matrix");
  return GroupHom(std::move(s), std::move(t), std::move(m));
}

inline json to_json(const RingDescription& d) {
  if (d.type == RingDescription::Type::imquad)
    return {{"type", "imquad"}, {"disc", d.disc}, {"involution", involution_name(d.involution)}};
  json f = json::array();
  for (const auto& s : d.factors) {
    if (s.kind == FactorSpec::Kind::zmod)
      f.push_back({{"kind", "zmod"}, {"n", s.n}});
    else
      f.push_back({{"kind", "gf"}, {"p", s.p}, {"k", s.k}});
  }
  return {{"type", "finite"}, {"factors", f}, {"perm", d.perm}, {"frob", d.frob}};
}

inline json to_json(const Ring& r) { return to_json(r.description()); }

inline Involution involution_from_string(const std::string& s) {
  if (s == "conj" || s == "conjugation") return Involution::conjugation;
  if (s == "trivial") return Involution::trivial;
  fail(Errc::invalid_input, "unknown involution '" + s + "' (expected conj or trivial)");
}

inline RingDescription ring_description_from_json(const json& j) {
  if (!j.is_object()) fail(Errc::invalid_input, "a ring must be a JSON object");
  RingDescription d;
  const std::string type = detail::get_required<std::string>(j, "type");
  if (type == "imquad" || type == "quadratic") {
    d.type = RingDescription::Type::imquad;
    d.disc = detail::get_required<Int>(j, "disc");
    d.involution = involution_from_string(detail::get_field<std::string>(j, "involution", "conj"));
    return d;
  }
  if (type == "realquad") fail(Errc::unsupported, "unsupported: infinite unit group (real quadratic order)");
  if (type != "finite") fail(Errc::invalid_input, "unknown ring type '" + type + "'");
  const json factors = detail::get_required<json>(j, "factors");
  if (!factors.is_array()) fail(Errc::invalid_input, "factors must be an array");
  for (const json& f : factors) {
    const std::string kind = detail::get_required<std::string>(f, "kind");
    if (kind == "zmod")
      d.factors.push_back(FactorSpec::zmod(detail::get_required<Int>(f, "n")));
    else if (kind == "gf")
      d.factors.push_back(FactorSpec::gf(detail::get_required<Int>(f, "p"), detail::get_field<int>(f, "k", 1)));
    else
      fail(Errc::invalid_input, "unknown factor kind '" + kind + "'");
  }
  for (Int p : detail::get_field<Vec>(j, "perm", {})) {
    if (p < 0) fail(Errc::invalid_input, "perm entries must be non-negative");
    d.perm.push_back(static_cast<std::size_t>(p));
  }
  d.frob = detail::get_field<Vec>(j, "frob", {});
  return d;
}

/// Compact syntax: imquad:D[:conj|trivial] or
/// finite:F1*F2*...[:trivial|swap|frob] with factors zmodN, gfQ or gfP^K.
/// `swap` exchanges factors 0<->1, 2<->3, ...; `frob` gives every field
/// factor the Frobenius of order two.
inline RingDescription ring_description_from_shorthand(const std::string& s) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
  auto to_int = [&](const std::string& t) -> Int {
    try {
      std::size_t pos = 0;
      const Int v = std::stoll(t, &pos);
      if (pos != t.size()) throw std::invalid_argument(t);
      return v;
    } catch (const std::exception&) {
      fail(Errc::invalid_input, "bad number '" + t + "' in ring '" + s + "'");
    }
  };
  RingDescription d;
  if (parts.size() >= 2 && parts[0] == "imquad") {
    if (parts.size() > 3) fail(Errc::invalid_input, "ring '" + s + "': expected imquad:D[:inv]");
    d.type = RingDescription::Type::imquad;
    d.disc = to_int(parts[1]);
    d.involution = parts.size() == 3 ? involution_from_string(parts[2]) : Involution::conjugation;
    return d;
  }
  if (parts.size() < 2 || parts.size() > 3 || parts[0] != "finite")
    fail(Errc::invalid_input, "unrecognized ring '" + s + "'");
  std::stringstream fs(parts[1]);
  for (std::string f; std::getline(fs, f, '*');) {
    if (f.rfind("zmod", 0) == 0) {
      d.factors.push_back(FactorSpec::zmod(to_int(f.substr(4))));
    } else if (f.rfind("gf", 0) == 0) {
      const std::string body = f.substr(2);
      const auto caret = body.find('^');
      if (caret == std::string::npos) {
        // gfQ with Q = p^k
        const Int q = to_int(body);
        if (q > kMaxFieldSize) fail(Errc::invalid_input, "GF(" + body + ") exceeds the field size limit");
        Int p = 2;
        while (p < q && q % p != 0) ++p;
        int k = 0;
        Int rest = q;
        while (q > 1 && rest % p == 0) {
          rest /= p;
          ++k;
        }
        if (q < 2 || rest != 1) fail(Errc::invalid_input, "GF(" + body + ") is not a finite field");
        d.factors.push_back(FactorSpec::gf(p, k));
      } else {
        d.factors.push_back(FactorSpec::gf(to_int(body.substr(0, caret)), static_cast<int>(to_int(body.substr(caret + 1)))));
      }
    } else {
      fail(Errc::invalid_input, "unknown factor '" + f + "' in ring '" + s + "'");
    }
  }
  const std::string inv = parts.size() == 3 ? parts[2] : "trivial";
  const std::size_t m = d.factors.size();
  d.perm.resize(m);
  d.frob.assign(m, 0);
  for (std::size_t i = 0; i < m; ++i) d.perm[i] = i;
  if (inv == "swap") {
    if (m % 2 != 0) fail(Errc::invalid_input, "swap needs an even number of factors");
    for (std::size_t i = 0; i < m; i += 2) std::swap(d.perm[i], d.perm[i + 1]);
  } else if (inv == "frob") {
    for (std::size_t i = 0; i < m; ++i) {
      const FactorSpec& f = d.factors[i];
      if (f.kind != FactorSpec::Kind::gf || f.k % 2 != 0)
        fail(Errc::invalid_input, "frob needs field factors of even degree");
      d.frob[i] = f.k / 2;
    }
  } else if (inv != "trivial") {
    fail(Errc::invalid_input, "unknown involution '" + inv + "' in ring '" + s + "'");
  }
  return d;
}

/// A ring given as shorthand, inline JSON, or a path to a JSON file.
inline Ring load_ring(const std::string& arg) {
  if (arg.rfind("imquad:", 0) == 0 || arg.rfind("finite:", 0) == 0) return Ring::validate(ring_description_from_shorthand(arg));
  const std::string text = !arg.empty() && arg.front() == '{' ? arg : read_file(arg);
  return Ring::validate(ring_description_from_json(parse_json(text, arg.front() == '{' ? "ring" : arg)));
}

inline json to_json(const Ring& r, const RingElement& e) {
  if (r.is_finite() && e.c.size() == 1) return e.c[0];
  return e.c;
}

inline RingElement element_from_json(const Ring& r, const json& j) {
  RingElement e;
  if (j.is_number_integer()) {
    e = r.is_imquad() || r.factors().size() != 1 ? r.from_int(j.get<Int>()) : RingElement{{j.get<Int>()}};
  } else if (j.is_array()) {
    for (const json& x : j) {
      if (!x.is_number_integer()) fail(Errc::not_an_element, "element entries must be integers");
      e.c.push_back(x.get<Int>());
    }
  } else {
    fail(Errc::not_an_element, "an element must be an integer or an array of integers");
  }
  r.check_element(e);
  return e;
}

inline json to_json(const Form& f) { return json::array({f.a, f.b, f.c}); }

inline Form form_from_json(const json& j) {
  if (!j.is_array() || j.size() != 3) fail(Errc::invalid_input, "a form is an array [a,b,c]");
  return {j[0].get<Int>(), j[1].get<Int>(), j[2].get<Int>()};
}

inline json to_json(const HermitianLine& l) {
  return {{"module", l.module ? to_json(*l.module) : json("free")}, {"value", to_json(l.ring, l.value)}};
}

inline json to_json(const Provenance& p) { return {{"kind", p.kind}, {"anchor", p.anchor}}; }

inline Provenance provenance_from_json(const json& j) {
  if (j.is_null()) return {};
  if (j.is_string()) return {j.get<std::string>(), ""};
  Provenance p{detail::get_field<std::string>(j, "kind", ""), detail::get_field<std::string>(j, "anchor", "")};
  if (!p.kind.empty() && p.kind != "reference" && p.kind != "trivial" && p.kind != "derived")
    fail(Errc::invalid_input, "provenance kind must be reference, trivial or derived");
  return p;
}

/// Scenario JSON: {"name", "description", "chain": [object, map, object,
/// ...], "witness", "lower_bounds"}. Objects are {"object": name, "group"}
/// or {"object": name, "unknown": "cokernel"|"kernel"|"extension"}; maps
/// are {"map": [[...]]}, {"map": "zero"} or {"map": "derived"}.
inline Scenario scenario_from_json(const json& j) {
  Scenario s;
  s.name = detail::get_required<std::string>(j, "name");
  s.description = detail::get_field<std::string>(j, "description", "");
  const json chain = detail::get_required<json>(j, "chain");
  if (!chain.is_array() || chain.size() % 2 == 0)
    fail(Errc::invalid_input, "chain must alternate objects and maps, starting and ending with an object");
  for (std::size_t i = 0; i < chain.size(); ++i) {
    const json& e = chain[i];
    const Provenance prov = provenance_from_json(e.value("provenance", json()));
    if (i % 2 == 0) {
      ScenarioObject o{detail::get_required<std::string>(e, "object"), std::nullopt, prov};
      if (e.contains("unknown")) {
        const std::string k = e["unknown"].get<std::string>();
        if (s.unknown_kind != UnknownKind::none) fail(Errc::invalid_input, "at most one unknown term is allowed");
        s.unknown_kind = k == "cokernel"    ? UnknownKind::cokernel
                         : k == "kernel"    ? UnknownKind::kernel
                         : k == "extension" ? UnknownKind::extension
                                            : (fail(Errc::invalid_input, "unknown kind '" + k + "'"), UnknownKind::none);
        s.unknown = s.objects.size();
      } else {
        o.group = group_from_json(detail::get_required<json>(e, "group"));
      }
      s.objects.push_back(std::move(o));
    } else {
      ScenarioMap m;
      m.provenance = prov;
      const json v = e.value("map", json("derived"));
      if (v.is_string()) {
        const std::string k = v.get<std::string>();
        if (k == "zero")
          m.kind = ScenarioMap::Kind::zero;
        else if (k == "derived")
          m.kind = ScenarioMap::Kind::derived;
        else
          fail(Errc::invalid_input, "map must be a matrix, \"zero\" or \"derived\"");
      } else {
        m.kind = ScenarioMap::Kind::matrix;
        const ScenarioObject& src = s.objects.back();
        const json& dst = chain[i + 1];
        if (!src.group || dst.contains("unknown"))
          fail(Errc::underdetermined, "a map touching the unknown term cannot be given as a matrix");
        const AbGroup t = group_from_json(detail::get_required<json>(dst, "group"));
        m.matrix = detail::matrix_from_json(v, t.ngens(), src.group->ngens(), "map matrix");
      }
      s.maps.push_back(std::move(m));
    }
  }
  if (j.contains("witness")) {
    std::vector<Vec> w;
    for (const json& c : j["witness"]) w.push_back(c.get<Vec>());
    s.witness = std::move(w);
  }
  if (j.contains("lower_bounds"))
    for (const json& lb : j["lower_bounds"])
      s.lower_bounds.push_back({detail::get_required<std::size_t>(lb, "cokernel_of_map"),
                                detail::get_required<std::string>(lb, "embeds_into")});
  return s;
}

inline json to_json(const ExactnessReport& r, const std::vector<std::string>& names) {
  json a = json::array();
  for (const auto& j : r.junctions) {
    json e{{"object", names.at(j.object_index)}, {"exact", j.exact}};
    if (j.witness) e["witness"] = *j.witness;
    if (!j.detail.empty()) e["detail"] = j.detail;
    a.push_back(std::move(e));
  }
  return a;
}

}  // namespace hermpic
