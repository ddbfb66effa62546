#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include "sipp/arith.hpp"
#include "sipp/cech.hpp"
#include "sipp/descent.hpp"
#include "sipp/error.hpp"
#include "sipp/json_io.hpp"
#include "sipp/monad.hpp"
#include "sipp/rep.hpp"
#include "sipp/sheaf.hpp"
#include "sipp/topology.hpp"

using namespace sipp;

namespace {

struct Options {
  std::string group, subgroup, subgroup2, ambient, gset, coeff, module, sigma;
  std::string json_out, emit_complex, out;
  std::optional<unsigned> p;
  std::optional<std::int64_t> ell, q;
  int max_degree = 3;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  bool allow_non_sipp = false;
  bool fault_inject = false;
};

// Text and JSON reports built side by side.
struct Report {
  std::ostringstream text;
  json data = json::object();
  bool ok = true;

  void line(const std::string& s) { text << s << '\n'; }
};

std::string diagnostic(const Error& e, const PermGroup& g) {
  std::string s(errc_name(e.code()));
  if (e.witnesses().empty()) return s + ": " + e.what();
  s += "(";
  for (std::size_t i = 0; i < e.witnesses().size(); ++i) {
    if (i) s += ",";
    Elem w = e.witnesses()[i];
    s += w < g.order() ? g.name(w) : std::to_string(w);
  }
  return s + ")";
}

GroupPtr load_group(const Options& o) {
  if (o.group.empty()) throw Error(Errc::ParseError, "--group is required");
  return parse_group(read_json_file(o.group));
}

Subgroup load_subgroup(const std::string& path, const GroupPtr& g, const char* flag) {
  if (path.empty()) throw Error(Errc::ParseError, std::string(flag) + " is required");
  return parse_subgroup(read_json_file(path), g);
}

Subgroup ambient_or_whole(const Options& o, const GroupPtr& g) {
  return o.ambient.empty() ? Subgroup::whole(g) : load_subgroup(o.ambient, g, "--ambient");
}

unsigned require_prime(const std::optional<unsigned>& p, const char* flag) {
  if (!p) throw Error(Errc::ParseError, std::string(flag) + " is required");
  if (!is_prime(*p)) throw Error(Errc::NotPrime, std::to_string(*p) + " is not prime");
  return *p;
}

void cmd_orbits(const Options& o, Report& r) {
  auto g = load_group(o);
  GSetPtr x;
  if (!o.gset.empty())
    x = parse_gset(read_json_file(o.gset), g);
  else if (!o.subgroup.empty())
    x = coset_gset(load_subgroup(o.subgroup, g, "--subgroup")).set;
  else
    throw Error(Errc::ParseError, "--gset or --subgroup is required");
  auto orbits = orbit_decomposition(*x);
  r.line("points: " + std::to_string(x->size()) + ", orbits: " + std::to_string(orbits.size()));
  r.line("representative  size  stabilizer_order");
  json rows = json::array();
  for (const auto& orb : orbits) {
    r.line(std::to_string(orb.representative) + "  " + std::to_string(orb.points.size()) + "  " +
           std::to_string(orb.stabilizer.order()));
    rows.push_back({{"representative", orb.representative},
                    {"size", orb.points.size()},
                    {"stabilizer_order", orb.stabilizer.order()}});
  }
  r.data["orbits"] = rows;
}

void cmd_mackey(const Options& o, Report& r) {
  auto g = load_group(o);
  Subgroup k1 = load_subgroup(o.subgroup, g, "--subgroup");
  Subgroup k2 = load_subgroup(o.subgroup2, g, "--subgroup2");
  Subgroup h = ambient_or_whole(o, g);
  auto m = mackey_decomposition(k1, k2, h);
  json parts = json::array();
  r.line("t  |K1^t ∩ K2|  part_size");
  for (std::size_t i = 0; i < m.representatives.size(); ++i) {
    Elem t = m.representatives[i];
    r.line(g->name(t) + "  " + std::to_string(m.parts[i].subgroup.order()) + "  " +
           std::to_string(m.parts[i].set->size()));
    parts.push_back({{"t", g->name(t)}, {"intersection_order", m.parts[i].subgroup.order()},
                     {"size", m.parts[i].set->size()}});
  }
  bool bij = m.iso.is_isomorphism() && m.fiber.set->size() == m.coproduct.set->size();
  r.line(std::string("bijection: ") + (bij ? "OK" : "FAILED"));
  r.data["parts"] = parts;
  r.data["bijection"] = bij;
  r.ok = bij;
}

void cmd_cover_check(const Options& o, Report& r) {
  auto g = load_group(o);
  unsigned p = require_prime(o.p, "-p");
  Subgroup k = load_subgroup(o.subgroup, g, "--subgroup");
  Subgroup h = ambient_or_whole(o, g);
  if (!k.is_subgroup_of(h)) throw Error(Errc::NotASubgroupOf, "--subgroup is not inside --ambient");
  GMap alpha = beta_map(coset_gset(k), coset_gset(h), PermGroup::identity());
  auto w = is_sipp_cover(alpha, p);
  r.line("cover G/K -> G/H, [H:K] = " + std::to_string(h.order() / k.order()) + ", p = " + std::to_string(p));
  r.line(std::string("sipp-cover: ") + (w.is_cover ? "yes" : "no"));
  r.data["index"] = h.order() / k.order();
  r.data["is_cover"] = w.is_cover;
  r.data["uncovered"] = w.uncovered;
  r.ok = w.is_cover;
}

void cmd_sheaf_check(const Options& o, Report& r) {
  auto g = load_group(o);
  unsigned p = require_prime(o.p, "-p");
  Subgroup k = load_subgroup(o.subgroup, g, "--subgroup");
  Subgroup h = ambient_or_whole(o, g);
  AbelianGroupSpec a = o.coeff.empty() ? AbelianGroupSpec::cyclic(2) : parse_abelian_group(read_json_file(o.coeff));
  if (!a.is_finite()) throw Error(Errc::PreconditionViolated, "sheaf-check tabulates values and needs a finite A");
  GMap alpha = beta_map(coset_gset(k), coset_gset(h), PermGroup::identity());
  auto diagram = cover_diagram(alpha);
  bool cover = is_sipp_cover(alpha, p).is_cover;
  bool sheaf = check_sheaf_condition(constant_sheaf_table(a, p, diagram.objects, diagram.maps), alpha);
  Coproduct parts = coproduct({alpha.source(), alpha.target()});
  std::vector<GSetPtr> objs{parts.set, alpha.source(), alpha.target(), GSet::empty(g)};
  bool additive = check_additivity(constant_sheaf_table(a, p, objs, parts.inclusions), parts);
  bool presheaf_additive = check_additivity(constant_presheaf_table(a, objs, parts.inclusions), parts);
  r.line("coefficients: " + a.to_string() + ", p = " + std::to_string(p));
  r.line(std::string("sipp-cover: ") + (cover ? "yes" : "no"));
  r.line(std::string("constant sheaf equalizer: ") + (sheaf ? "OK" : "FAILED"));
  r.line(std::string("constant sheaf additivity: ") + (additive ? "OK" : "FAILED"));
  r.line(std::string("constant presheaf additivity: ") + (presheaf_additive ? "OK" : "fails (expected)"));
  r.data["is_cover"] = cover;
  r.data["equalizer"] = sheaf;
  r.data["additivity"] = additive;
  r.data["presheaf_additivity"] = presheaf_additive;
  r.ok = sheaf && additive;
}

void cmd_cech(const Options& o, Report& r) {
  auto g = load_group(o);
  Subgroup h = load_subgroup(o.subgroup, g, "--subgroup");
  AbelianGroupSpec a;
  unsigned p = 0;
  if (o.q) {
    auto pp = prime_power(static_cast<std::uint64_t>(*o.q));
    if (!pp) throw Error(Errc::NotPrime, std::to_string(*o.q) + " is not a prime power");
    p = o.p ? require_prime(o.p, "-p") : static_cast<unsigned>(pp->first);
    a = AbelianGroupSpec::units_of_field(*o.q);
  } else {
    p = require_prime(o.p, "-p");
    a = o.coeff.empty() ? AbelianGroupSpec::integers() : parse_abelian_group(read_json_file(o.coeff));
  }
  CechOptions opts;
  opts.max_degree = o.max_degree;
  opts.allow_non_sipp = o.allow_non_sipp;
  CechComplex c = cech_complex(h, p, opts);
  if (!o.emit_complex.empty()) write_json_file(o.emit_complex, complex_to_json(c));
  auto hs = cohomology(c, a);
  r.line("cover G/H -> G/G, |H| = " + std::to_string(h.order()) + ", p = " + std::to_string(p) +
         ", coefficients " + a.to_string() + (c.is_sipp() ? "" : " (not a sipp-cover)"));
  std::string sizes;
  json js = json::array();
  for (int n = 0; n <= c.max_degree(); ++n) {
    sizes += (n ? "," : "") + std::to_string(c.basis_size(n));
    js.push_back(c.basis_size(n));
  }
  r.line("basis sizes: (" + sizes + ")");
  json groups = json::array();
  for (std::size_t n = 0; n < hs.size(); ++n) {
    std::string label = n == 1 ? "  Ker(T(G)->T(H))" : n == 2 ? "  obstruction group" : "";
    r.line("H^" + std::to_string(n) + " = " + hs[n].to_string() + label);
    groups.push_back({{"degree", n}, {"rank", hs[n].rank}, {"torsion", hs[n].torsion}, {"text", hs[n].to_string()}});
  }
  r.data["basis_sizes"] = js;
  r.data["cohomology"] = groups;
  r.data["sipp"] = c.is_sipp();
}

void cmd_descent(const Options& o, Report& r) {
  auto g = load_group(o);
  Subgroup h = load_subgroup(o.subgroup, g, "--subgroup");
  if (!o.ell) throw Error(Errc::ParseError, "--char is required");
  const std::int64_t l = *o.ell;
  check_field(l);
  Subgroup G = Subgroup::whole(g);
  CosetSpace cs = coset_gset(h);
  CosetSpace top = coset_gset(G);
  std::vector<KModule> inputs;
  if (!o.module.empty()) {
    inputs.push_back(parse_kmodule(read_json_file(o.module), G));
  } else {
    std::mt19937_64 rng(o.seed);
    const std::size_t n = o.trials ? o.trials : 10;
    for (std::size_t i = 0; i < n; ++i)
      inputs.push_back(random_module(G, l, std::uniform_int_distribution<int>(1, 4)(rng), rng));
  }
  std::size_t ok = 0;
  for (const auto& v : inputs) {
    Representation rv = iota_inverse(top, v);
    auto sol = solve_descent(canonical_datum(to_point(cs.set), rv));
    bool iso = find_isomorphism(iota_equiv(top, sol.v), v, o.seed).has_value();
    if (iso) ++ok;
  }
  r.line("cover G/H -> G/G, [G:H] = " + std::to_string(h.index()) + ", char " + std::to_string(l));
  r.line("descent round trips: " + std::to_string(ok) + "/" + std::to_string(inputs.size()));
  r.data["round_trips"] = ok;
  r.data["total"] = inputs.size();
  r.ok = ok == inputs.size();
}

void cmd_extend(const Options& o, Report& r) {
  auto g = load_group(o);
  Subgroup h = load_subgroup(o.subgroup, g, "--subgroup");
  if (o.module.empty() || o.sigma.empty()) throw Error(Errc::ParseError, "--module and --sigma are required");
  KModule w = parse_kmodule(read_json_file(o.module), h);
  if (o.ell && *o.ell != w.field()) throw Error(Errc::FieldMismatch, "--char differs from the module's field");
  SigmaFamily s{h, w, parse_sigma(read_json_file(o.sigma), *g, w.field())};
  try {
    Extension e = extend_representation(s);
    r.line("extension: OK (dim " + std::to_string(e.v.dim()) + ", field " + std::to_string(e.v.field()) + ")");
    r.data["module"] = kmodule_to_json(e.v);
    if (!o.out.empty()) write_json_file(o.out, kmodule_to_json(e.v));
  } catch (const Error& e) {
    r.line(diagnostic(e, *g));
    r.data["error"] = errc_name(e.code());
    json w_names = json::array();
    for (auto x : e.witnesses()) w_names.push_back(g->name(x));
    r.data["witnesses"] = w_names;
    r.ok = false;
  }
}

void cmd_monad_check(const Options& o, Report& r) {
  auto g = load_group(o);
  Subgroup h = load_subgroup(o.subgroup, g, "--subgroup");
  if (!o.ell) throw Error(Errc::ParseError, "--char is required");
  check_field(*o.ell);
  const std::size_t trials = o.trials ? o.trials : 50;
  auto tally = monad_suite(h, *o.ell, trials, o.seed, o.fault_inject);
  json checks = json::array();
  for (const auto& t : tally) {
    bool pass = t.passed == t.total;
    r.line(std::string(pass ? "ok   " : "FAIL ") + t.name + " " + std::to_string(t.passed) + "/" +
           std::to_string(t.total));
    checks.push_back({{"name", t.name}, {"passed", t.passed}, {"total", t.total}});
    r.ok = r.ok && pass;
  }
  r.line(std::string("monad-check: ") + (r.ok ? "pass" : "fail"));
  r.data["checks"] = checks;
}

void cmd_axioms(const Options& o, Report& r) {
  auto g = load_group(o);
  unsigned p = require_prime(o.p, "-p");
  std::mt19937_64 rng(o.seed);
  auto inst = random_axiom_instances(g, p, o.trials ? o.trials : 25, rng);
  auto rep = verify_topology_axioms(inst);
  std::map<std::string, std::pair<std::size_t, std::size_t>> by_axiom;
  for (const auto& res : rep.results) {
    auto& [pass, total] = by_axiom[res.axiom];
    ++total;
    if (res.passed) ++pass;
  }
  json rows = json::object();
  for (const auto& [name, pt] : by_axiom) {
    r.line(name + ": " + std::to_string(pt.first) + "/" + std::to_string(pt.second));
    rows[name] = {{"passed", pt.first}, {"total", pt.second}};
  }
  r.data["axioms"] = rows;
  r.ok = rep.all_passed();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Computations on the sipp topology of finite G-sets"};
  app.require_subcommand(1);
  Options o;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--group", o.group, "Group JSON file");
    sub->add_option("--subgroup", o.subgroup, "Subgroup JSON file");
    sub->add_option("--subgroup2", o.subgroup2, "Second subgroup JSON file");
    sub->add_option("--ambient", o.ambient, "Ambient subgroup JSON file");
    sub->add_option("--gset", o.gset, "G-set JSON file");
    sub->add_option("-p", o.p, "Topology prime");
    sub->add_option("--char", o.ell, "Field characteristic");
    sub->add_option("-q", o.q, "Prime power; coefficients Z/(q-1)");
    sub->add_option("--coeff", o.coeff, "Coefficient group JSON file");
    sub->add_option("--max-degree", o.max_degree, "Highest Čech degree built");
    sub->add_option("--seed", o.seed, "Seed for randomized checks");
    sub->add_option("--trials", o.trials, "Number of random instances");
    sub->add_option("--json-out", o.json_out, "Write the report as JSON");
    sub->add_option("--emit-complex", o.emit_complex, "Write the cochain complex as JSON");
    sub->add_option("--module", o.module, "Module JSON file");
    sub->add_option("--sigma", o.sigma, "σ-family JSON file");
    sub->add_option("--out", o.out, "Output file");
    sub->add_flag("--allow-non-sipp", o.allow_non_sipp, "Build complexes for covers that are not sipp");
    sub->add_flag("--fault-inject", o.fault_inject, "Corrupt μ before checking");
  };
  std::vector<std::pair<std::string, void (*)(const Options&, Report&)>> commands = {
      {"orbits", cmd_orbits},   {"mackey", cmd_mackey},   {"cover-check", cmd_cover_check},
      {"sheaf-check", cmd_sheaf_check}, {"cech", cmd_cech}, {"descent", cmd_descent},
      {"extend", cmd_extend},   {"monad-check", cmd_monad_check}, {"axioms", cmd_axioms}};
  for (const auto& [name, fn] : commands) common(app.add_subcommand(name));

  CLI11_PARSE(app, argc, argv);

  Report r;
  std::string chosen = app.get_subcommands().front()->get_name();
  try {
    for (const auto& [name, fn] : commands)
      if (name == chosen) fn(o, r);
  } catch (const Error& e) {
    r.line(std::string("error: ") + e.what());
    r.data["error"] = errc_name(e.code());
    r.ok = false;
  }
  r.data["command"] = chosen;
  r.data["ok"] = r.ok;
  std::cout << r.text.str();
  if (!o.json_out.empty()) {
    r.data["text"] = r.text.str();
    try {
      write_json_file(o.json_out, r.data);
    } catch (const Error& e) {
      std::cerr << e.what() << '\n';
      return 2;
    }
  }
  return r.ok ? EXIT_SUCCESS : EXIT_FAILURE;
}
