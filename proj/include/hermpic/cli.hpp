#pragma once

// Command-line front end. `run_cli` is the whole program minus process
// plumbing, so tests and the corpus runner call it in-process.

#include <fnmatch.h>

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "hermpic/hermpic.hpp"

namespace hermpic {

namespace cli_detail {

inline std::string join(const std::vector<std::string>& v, const std::string& sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
  return s;
}

inline std::string elements_text(const Ring& r, const std::vector<RingElement>& es) {
  std::vector<std::string> v;
  for (const auto& e : es) v.push_back(r.element_to_string(e));
  return v.empty() ? "-" : join(v, ", ");
}

inline json elements_json(const Ring& r, const std::vector<RingElement>& es) {
  json a = json::array();
  for (const auto& e : es) a.push_back(to_json(r, e));
  return a;
}

inline std::string matrix_text(const IntMatrix& m) {
  std::vector<std::string> rows;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    std::vector<std::string> row;
    for (Int x : m.row(i)) row.push_back(std::to_string(x));
    rows.push_back("[" + join(row, " ") + "]");
  }
  return join(rows, " ");
}

inline std::string group_text(const AbGroup& g) {
  return g.has_identity_action() ? g.to_string() : g.to_string() + "  (action " + matrix_text(g.action()) + ")";
}

inline std::string line_text(const HermitianLine& l) {
  return "(" + (l.module ? l.module->to_string() : std::string("R")) + ", " + l.ring.element_to_string(l.value) + ")";
}

struct Output {
  json data;
  std::string text;
  int status = 0;
};

inline Output cmd_units(const Ring& r) {
  UnitGroupData u = unit_group(r);
  NormQuotientData nq = norm_fixed_quotient(u);
  Subgroup h = hermitian_units(u);
  Output o;
  o.data = {{"ring", to_json(r)},
            {"group", to_json(u.group)},
            {"generators", elements_json(r, u.embed)},
            {"unit_count", u.units.size()},
            {"norm_quotient", {{"group", to_json(nq.group)}, {"representatives", elements_json(r, nq.representatives)}}},
            {"hermitian_units", to_json(h.group)}};
  o.text = "ring: " + r.to_string() + "\nunits: " + group_text(u.group) + "  generators " + elements_text(r, u.embed) +
           "\nfixed units / norms: " + nq.group.to_string() + "  representatives " +
           elements_text(r, nq.representatives) + "\nhermitian units: " + h.group.to_string() + "\n";
  return o;
}

inline json pich_json(const PicHData& ph) {
  json forms = json::array();
  if (ph.classes)
    for (std::size_t j = 0; j < ph.twisted.group.ngens(); ++j)
      forms.push_back(to_json(ph.classes->form_of(ph.twisted.inclusion.apply(ph.twisted.group.generator(j)))));
  json gens = json::array();
  for (const auto& l : ph.generators) gens.push_back(to_json(l));
  return {{"group", to_json(ph.group())},
          {"primary", primary_factors(ph.group())},
          {"kernel", {{"group", to_json(ph.kernel.group)}, {"representatives", elements_json(ph.ring, ph.kernel.representatives)}}},
          {"quotient", {{"group", to_json(ph.twisted.group)}, {"forms", forms}}},
          {"generators", gens},
          {"section", section_description(ph.ring)},
          {"warnings", ph.warnings}};
}

inline Output cmd_pich(const Ring& r, bool oracle) {
  PicHData ph = pich(r, {oracle});
  Output o;
  o.data = pich_json(ph);
  o.data["ring"] = to_json(r);
  if (oracle) {
    const bool agree = ph.oracle->isomorphic(ph.group());
    o.data["group"] = to_json(*ph.oracle);
    o.data["primary"] = primary_factors(*ph.oracle);
    o.data["cross_check"] = {{"formula", to_json(ph.group())}, {"bruteforce", to_json(*ph.oracle)}, {"agree", agree}};
    if (!agree) o.status = 1;
  }
  std::vector<std::string> gens;
  for (const auto& l : ph.generators) gens.push_back(line_text(l));
  o.text = "ring: " + r.to_string() + "\nPic^h: " + (oracle ? ph.oracle->to_string() : ph.group().to_string()) +
           "\n  kernel (fixed units / norms): " + ph.kernel.group.to_string() +
           "\n  quotient (twisted fixed classes): " + ph.twisted.group.to_string() +
           "\n  generators: " + (gens.empty() ? "-" : join(gens, ", ")) + "\n  section: " + section_description(r) + "\n";
  if (ph.oracle) o.text += "  brute force: " + ph.oracle->to_string() + "\n";
  for (const auto& w : ph.warnings) o.text += "warning: " + w + "\n";
  return o;
}

inline json extension_json(const ExtensionResult& e) {
  return {{"kernel", to_json(e.kernel)},
          {"quotient", to_json(e.quotient)},
          {"verdict", verdict_name(e.verdict)},
          {"middle", e.middle ? to_json(*e.middle) : json(nullptr)}};
}

inline Output cmd_picp(const Ring& r) {
  PicPData p = pic_p(r);
  ExtensionResult borel = resolve_extension(p.hermitian.kernel.group, p.hermitian.twisted.group);
  json elems = json::array();
  for (std::size_t j = 0; j < p.total.group.ngens(); ++j) {
    auto e = p.element(p.total.group.generator(j));
    elems.push_back({{"form", to_json(e.form)}, {"degree", e.degree}});
  }
  Output o;
  o.data = {{"ring", to_json(r)},
            {"hermitian", pich_json(p.hermitian)},
            {"shift_rank", p.shift.group.rank()},
            {"total", to_json(p.total.group)},
            {"components", p.shift.spec.components},
            {"component_action", p.shift.spec.action},
            {"elements", elems},
            {"borel", extension_json(borel)}};
  o.text = "ring: " + r.to_string() + "\nPic^p: " + p.total.group.to_string() +
           "\n  hermitian part: " + p.hermitian.group().to_string() +
           "\n  shift rank: " + std::to_string(p.shift.group.rank()) + "\n  components: " + join(p.shift.spec.components, ", ") +
           "\nsymmetric pieces: kernel " + borel.kernel.to_string() + ", quotient " + borel.quotient.to_string() + ", " +
           verdict_name(borel.verdict) + (borel.middle ? " middle " + borel.middle->to_string() : std::string()) + "\n";
  return o;
}

inline Output cmd_classgroup(Int disc, const std::string& inv) {
  ClassGroupData cg = class_group(disc, involution_from_string(inv));
  Subgroup tw = twisted_fixed_classes(cg);
  json forms = json::array(), gens = json::array();
  std::vector<std::string> ftext;
  for (const auto& f : cg.forms) {
    forms.push_back(to_json(f));
    ftext.push_back(f.to_string());
  }
  for (std::size_t g : cg.generators) gens.push_back(to_json(cg.forms[g]));
  Output o;
  o.data = {{"disc", disc},
            {"involution", involution_name(cg.involution)},
            {"class_number", cg.forms.size()},
            {"group", to_json(cg.group)},
            {"forms", forms},
            {"generators", gens},
            {"twisted", to_json(AbGroup(tw.group.torsion(), tw.group.rank()))}};
  o.text = "discriminant " + std::to_string(disc) + ", " + involution_name(cg.involution) + " involution\nclass number: " +
           std::to_string(cg.forms.size()) + "\nclass group: " + group_text(cg.group) + "\nreduced forms: " +
           join(ftext, " ") + "\ntwisted fixed classes: " + tw.group.to_string() + "\n";
  return o;
}

inline Output cmd_tate(const std::string& arg) {
  const std::string text = !arg.empty() && arg.front() == '{' ? arg : read_file(arg);
  AbGroup m = group_from_json(parse_json(text, "group"));
  TateCohomology t = tate_cohomology(m);
  FixedTwisted ft = fixed_and_twisted(m);
  Output o;
  o.data = {{"module", to_json(m)},
            {"h0", to_json(t.h0)},
            {"h1", to_json(t.h1)},
            {"fixed", to_json(AbGroup(ft.fixed.group.torsion(), ft.fixed.group.rank()))},
            {"twisted", to_json(AbGroup(ft.twisted.group.torsion(), ft.twisted.group.rank()))}};
  o.text = "module: " + group_text(m) + "\nH^0: " + t.h0.to_string() + "\nH^1: " + t.h1.to_string() +
           "\nfixed: " + ft.fixed.group.to_string() + "\ntwisted: " + ft.twisted.group.to_string() + "\n";
  return o;
}

inline Output scenario_output(const Scenario& s) {
  ScenarioResult r = run_scenario(s);
  json chain = json::array();
  for (std::size_t i = 0; i < r.names.size(); ++i)
    chain.push_back({{"object", r.names[i]}, {"group", r.objects[i] ? to_json(*r.objects[i]) : json(nullptr)}});
  json bounds = json::array();
  for (const auto& lb : r.lower_bounds)
    bounds.push_back({{"group", to_json(lb.group)}, {"embeds_into", lb.embeds_into}, {"verified", lb.verified}});
  Output o;
  o.data = {{"name", r.name},
            {"unknown_kind", unknown_kind_name(s.unknown_kind)},
            {"unknown", r.unknown ? to_json(*r.unknown) : json(nullptr)},
            {"chain", chain},
            {"precheck", to_json(r.precheck, r.names)},
            {"exact", r.full.exact() && !r.full.junctions.empty()},
            {"lower_bounds", bounds}};
  if (r.extension) o.data["extension"] = extension_json(*r.extension);
  o.text = "scenario " + r.name + (s.description.empty() ? "" : ": " + s.description) + "\n";
  for (std::size_t i = 0; i < r.names.size(); ++i)
    o.text += "  " + r.names[i] + " = " + (r.objects[i] ? r.objects[i]->to_string() : "?") +
              (s.unknown_kind != UnknownKind::none && i == s.unknown ? "   <- " + unknown_kind_name(s.unknown_kind) : "") + "\n";
  o.text += "result: " + (r.unknown ? r.unknown->to_string() : std::string("unresolved")) + "\n";
  if (r.extension) o.text += "extension: " + verdict_name(r.extension->verdict) + "\n";
  for (const auto& lb : r.lower_bounds)
    o.text += "lower bound: " + lb.group.to_string() + " embeds into " + lb.embeds_into + (lb.verified ? "" : " (unverified)") + "\n";
  return o;
}

inline Output cmd_verify(const Ring& r, const std::string& with) {
  PicHData ph = pich(r);
  FiveTermReport ft = verify_five_term(ph);
  Output o;
  const bool exact = ft.exactness.exact();
  const bool agree = !ph.oracle || ph.oracle->isomorphic(ph.group());
  o.data = {{"ring", to_json(r)},
            {"five_term", {{"objects", ft.objects}, {"junctions", to_json(ft.exactness, ft.objects)}}},
            {"exact", exact},
            {"oracle", {{"formula", to_json(ph.group())},
                        {"bruteforce", ph.oracle ? to_json(*ph.oracle) : json(nullptr)},
                        {"agree", ph.oracle ? json(agree) : json(nullptr)}}}};
  o.text = "ring: " + r.to_string() + "\nfive-term sequence: " + (exact ? "exact" : "NOT exact") + "\n";
  for (const auto& j : ft.exactness.junctions)
    o.text += "  at " + ft.objects[j.object_index] + ": " + (j.exact ? "exact" : "fails, " + j.detail) + "\n";
  o.text += "Pic^h formula " + ph.group().to_string() +
            (ph.oracle ? ", brute force " + ph.oracle->to_string() + (agree ? " (agree)" : " (DISAGREE)") : "") + "\n";
  bool product_ok = true;
  if (!with.empty()) {
    Ring s = load_ring(with);
    ProductCheck pc = product_formula_check(r, s);
    product_ok = pc.holds;
    o.data["product"] = {{"with", to_json(s)}, {"product", to_json(pc.product)}, {"sum", to_json(pc.sum)}, {"holds", pc.holds}};
    o.text += "product formula with " + s.to_string() + ": " + pc.product.to_string() + " vs " + pc.sum.to_string() +
              (pc.holds ? " (holds)" : " (FAILS)") + "\n";
  }
  o.status = exact && agree && product_ok ? 0 : 1;
  return o;
}

}  // namespace cli_detail

inline Scenario builtin_scenario(const std::string& name) {
  for (const auto& [n, src] : builtin_scenario_sources())
    if (n == name) return scenario_from_json(parse_json(std::string(src), "builtin scenario " + name));
  fail(Errc::invalid_input, "no builtin scenario named '" + name + "'");
}

inline std::vector<std::string> builtin_scenario_names() {
  std::vector<std::string> v;
  for (const auto& [n, src] : builtin_scenario_sources()) v.emplace_back(n);
  return v;
}

struct CorpusEntryResult {
  std::string id;
  bool passed = false;
  Provenance provenance;
  json diff;  // JSON patch from expected to actual
  std::string error;
};

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

inline std::vector<CorpusEntryResult> run_corpus(const std::string& dir, const std::string& filter) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) fail(Errc::invalid_input, "missing corpus directory " + dir);
  std::vector<json> entries;
  for (const auto& p : fs::directory_iterator(dir)) {
    if (p.path().extension() != ".json") continue;
    json e = parse_json(read_file(p.path().string()), p.path().string());
    const std::string id = detail::get_required<std::string>(e, "id");
    if (!filter.empty() && fnmatch(filter.c_str(), id.c_str(), 0) != 0) continue;
    entries.push_back(std::move(e));
  }
  std::sort(entries.begin(), entries.end(), [](const json& a, const json& b) { return a["id"] < b["id"]; });
  std::vector<CorpusEntryResult> results(entries.size());
  std::atomic<std::size_t> next{0};
  auto work = [&]() {
    for (std::size_t i; (i = next++) < entries.size();) {
      const json& e = entries[i];
      CorpusEntryResult& r = results[i];
      r.id = e["id"].get<std::string>();
      try {
        r.provenance = provenance_from_json(e.value("provenance", json()));
        std::vector<std::string> cmd = detail::get_required<std::vector<std::string>>(e, "command");
        if (std::find(cmd.begin(), cmd.end(), "--json") == cmd.end()) cmd.push_back("--json");
        std::ostringstream o, er;
        const int status = run_cli(cmd, o, er);
        const json actual = parse_json(o.str(), "output of " + r.id);
        r.diff = json::diff(e.at("expected"), actual);
        const int want = e.value("exit", 0);
        r.passed = r.diff.empty() && status == want;
        if (status != want) r.error = "exit status " + std::to_string(status) + ", expected " + std::to_string(want);
      } catch (const std::exception& ex) {
        r.error = ex.what();
      }
    }
  };
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < std::min<std::size_t>(hw, entries.size()); ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  return results;
}

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"hermitian and Poincare Picard groups of rings with involution"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "machine-readable output")->configurable(false);

  std::string ring;
  auto add_ring = [&](CLI::App* sub) {
    sub->add_option("ring,--ring", ring, "ring: imquad:D[:inv], finite:F*G[:inv], JSON text, or a JSON file");
    sub->add_flag("--json", as_json, "machine-readable output");
  };
  auto* units = app.add_subcommand("units", "unit group, norm quotient and hermitian units");
  add_ring(units);
  auto* ph = app.add_subcommand("pich", "hermitian Picard group");
  add_ring(ph);
  bool oracle = false;
  ph->add_flag("--oracle", oracle, "use and cross-check the brute-force path");
  auto* pp = app.add_subcommand("picp", "Poincare Picard group");
  add_ring(pp);
  auto* cg = app.add_subcommand("classgroup", "class group of an imaginary quadratic order");
  Int disc = 0;
  std::string inv = "conj";
  cg->add_option("--disc", disc, "discriminant D < 0")->required();
  cg->add_option("--involution", inv, "conj or trivial");
  cg->add_flag("--json", as_json, "machine-readable output");
  auto* tate = app.add_subcommand("tate", "Tate cohomology of a C2-module");
  std::string group;
  tate->add_option("--group,group", group, "group JSON text or file")->required();
  tate->add_flag("--json", as_json, "machine-readable output");
  auto* sc = app.add_subcommand("scenario", "solve a long exact sequence scenario");
  std::string name, file;
  bool list = false;
  sc->add_option("--name", name, "builtin scenario");
  sc->add_option("--file", file, "scenario JSON file");
  sc->add_flag("--list", list, "list builtin scenarios");
  sc->add_flag("--json", as_json, "machine-readable output");
  auto* ver = app.add_subcommand("verify", "five-term exactness, oracle and product checks");
  add_ring(ver);
  std::string with;
  ver->add_option("--with", with, "second ring for the product formula");
  auto* co = app.add_subcommand("corpus", "re-run the example corpus");
  std::string dir = "corpus", filter;
  co->add_option("--dir", dir, "corpus directory");
  co->add_option("--filter", filter, "glob on entry ids");
  co->add_flag("--json", as_json, "machine-readable output");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    cli_detail::Output o;
    auto need_ring = [&]() {
      if (ring.empty()) fail(Errc::invalid_input, "missing ring argument");
      return load_ring(ring);
    };
    if (*units) {
      o = cli_detail::cmd_units(need_ring());
    } else if (*ph) {
      o = cli_detail::cmd_pich(need_ring(), oracle);
    } else if (*pp) {
      o = cli_detail::cmd_picp(need_ring());
    } else if (*cg) {
      o = cli_detail::cmd_classgroup(disc, inv);
    } else if (*tate) {
      o = cli_detail::cmd_tate(group);
    } else if (*sc) {
      if (list) {
        o.data = builtin_scenario_names();
        o.text = cli_detail::join(builtin_scenario_names(), "\n") + "\n";
      } else if (!name.empty() == !file.empty()) {
        fail(Errc::invalid_input, "give exactly one of --name and --file");
      } else {
        o = cli_detail::scenario_output(!name.empty() ? builtin_scenario(name)
                                                      : scenario_from_json(parse_json(read_file(file), file)));
      }
    } else if (*ver) {
      o = cli_detail::cmd_verify(need_ring(), with);
    } else if (*co) {
      auto results = run_corpus(dir, filter);
      json entries = json::array();
      std::size_t passed = 0;
      for (const auto& r : results) {
        passed += r.passed ? 1 : 0;
        json e{{"id", r.id}, {"status", r.passed ? "pass" : "fail"}, {"provenance", to_json(r.provenance)}};
        if (!r.diff.empty()) e["diff"] = r.diff;
        if (!r.error.empty()) e["error"] = r.error;
        entries.push_back(std::move(e));
        o.text += std::string(r.passed ? "PASS " : "FAIL ") + r.id + "  [" + r.provenance.kind +
                  (r.provenance.anchor.empty() ? "" : ": " + r.provenance.anchor) + "]\n";
        if (!r.error.empty()) o.text += "     " + r.error + "\n";
        if (!r.diff.empty()) o.text += "     diff " + r.diff.dump() + "\n";
      }
      o.data = {{"entries", entries}, {"passed", passed}, {"failed", results.size() - passed}};
      o.text += std::to_string(passed) + "/" + std::to_string(results.size()) + " corpus entries pass\n";
      o.status = passed == results.size() ? 0 : 1;
    }
    out << (as_json ? o.data.dump(2) + "\n" : o.text);
    return o.status;
  } catch (const Error& e) {
    if (as_json)
      out << json{{"error", {{"code", std::string(errc_name(e.code()))}, {"message", e.what()}}}}.dump(2) << "\n";
    err << "error: " << e.what() << "\n";
    return is_input_error(e.code()) ? 2 : 1;
  }
}

}  // namespace hermpic
