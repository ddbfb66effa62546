#include "sipp/json_io.hpp"

#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "sipp/error.hpp"

namespace sipp {

namespace {

template <class Fn>
auto parsing(const char* what, Fn&& fn) {
  try {
    return fn();
  } catch (const json::exception& e) {
    throw Error(Errc::ParseError, std::string(what) + ": " + e.what());
  }
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(Errc::ParseError, std::string("missing key \"") + key + "\"");
  return j.at(key);
}

std::vector<Permutation> parse_permutations(const json& j, std::size_t degree) {
  std::vector<Permutation> out;
  for (const auto& g : j) {
    auto im = g.get<std::vector<Point>>();
    if (im.size() != degree) throw Error(Errc::DegreeMismatch, "generator of the wrong degree");
    out.emplace_back(std::move(im));
  }
  return out;
}

}  // namespace

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::ParseError, "cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(Errc::ParseError, path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::ParseError, "cannot write " + path.string());
  out << j.dump(2) << '\n';
}

GroupPtr parse_group(const json& j) {
  return parsing("group", [&] {
    auto degree = field(j, "degree").get<std::size_t>();
    return group_closure(parse_permutations(field(j, "generators"), degree), degree);
  });
}

json group_to_json(const PermGroup& g) {
  json gens = json::array();
  for (const auto& p : g.generators()) gens.push_back(p.images());
  return {{"degree", g.degree()}, {"generators", gens}};
}

Subgroup parse_subgroup(const json& j, const GroupPtr& g) {
  return parsing("subgroup", [&] {
    return Subgroup::generated_by(g, parse_permutations(field(j, "generators"), g->degree()));
  });
}

json subgroup_to_json(const Subgroup& h) {
  json gens = json::array();
  for (Elem e : h.generators()) gens.push_back(h.group().element(e).images());
  return {{"generators", gens}};
}

Elem parse_element(const std::string& key, const PermGroup& g) {
  if (!key.empty() && key.front() == '(') {
    std::vector<std::vector<Point>> cycles;
    std::size_t i = 0;
    while (i < key.size()) {
      if (key[i] != '(') throw Error(Errc::ParseError, "bad cycle notation \"" + key + "\"");
      auto close = key.find(')', i);
      if (close == std::string::npos) throw Error(Errc::ParseError, "unclosed cycle in \"" + key + "\"");
      std::istringstream body(key.substr(i + 1, close - i - 1));
      std::vector<Point> cycle;
      long long x;
      while (body >> x) {
        if (x < 0) throw Error(Errc::ParseError, "negative point in \"" + key + "\"");
        cycle.push_back(static_cast<Point>(x));
      }
      if (!body.eof()) throw Error(Errc::ParseError, "bad cycle notation \"" + key + "\"");
      if (!cycle.empty()) cycles.push_back(std::move(cycle));
      i = close + 1;
    }
    return g.index_or_throw(Permutation::from_cycles(g.degree(), cycles));
  }
  std::size_t used = 0;
  unsigned long v = 0;
  try {
    v = std::stoul(key, &used);
  } catch (const std::exception&) {
    throw Error(Errc::ParseError, "bad element key \"" + key + "\"");
  }
  if (used != key.size()) throw Error(Errc::ParseError, "bad element key \"" + key + "\"");
  g.check_element(static_cast<Elem>(v));
  return static_cast<Elem>(v);
}

GSetPtr parse_gset(const json& j, const GroupPtr& g) {
  return parsing("gset", [&] {
    auto size = field(j, "size").get<std::size_t>();
    auto action = field(j, "action_generators").get<std::vector<std::vector<Point>>>();
    std::vector<std::string> labels;
    if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
    return GSet::from_generator_action(g, size, action, std::move(labels));
  });
}

json gset_to_json(const GSet& x) {
  json act = json::array();
  for (Elem s : x.group().generator_elements()) act.push_back(x.action(s));
  return {{"size", x.size()}, {"action_generators", act}};
}

GMap parse_gmap(const json& j, const GSetPtr& source, const GSetPtr& target) {
  return parsing("gmap", [&] { return GMap(source, target, field(j, "points").get<std::vector<Point>>()); });
}

AbelianGroupSpec parse_abelian_group(const json& j) {
  return parsing("coefficient group", [&] {
    auto f = field(j, "invariant_factors").get<std::vector<std::int64_t>>();
    for (auto d : f)
      if (d < 0) throw Error(Errc::ParseError, "negative invariant factor");
    return AbelianGroupSpec::normalized(std::move(f));
  });
}

json abelian_group_to_json(const AbelianGroupSpec& a) { return {{"invariant_factors", a.invariant_factors}}; }

FpMatrix parse_matrix(const json& j, std::int64_t p) {
  return parsing("matrix", [&] {
    auto rows = j.get<std::vector<std::vector<std::int64_t>>>();
    const auto r = static_cast<Eigen::Index>(rows.size());
    const auto c = r == 0 ? Eigen::Index{0} : static_cast<Eigen::Index>(rows[0].size());
    FpMatrix m(p, r, c);
    for (Eigen::Index i = 0; i < r; ++i) {
      if (static_cast<Eigen::Index>(rows[i].size()) != c) throw Error(Errc::ParseError, "ragged matrix");
      for (Eigen::Index k = 0; k < c; ++k) m.set(i, k, rows[i][k]);
    }
    return m;
  });
}

json matrix_to_json(const FpMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    rows.push_back(row);
  }
  return rows;
}

KModule parse_kmodule(const json& j, const Subgroup& h) {
  return parsing("module", [&] {
    const auto p = field(j, "field").get<std::int64_t>();
    check_field(p);
    const auto d = field(j, "dim").get<Eigen::Index>();
    const PermGroup& G = h.group();
    std::vector<std::pair<Elem, FpMatrix>> given;
    for (const auto& [key, m] : field(j, "matrices").items()) {
      Elem g = parse_element(key, G);
      if (!h.contains(g)) throw Error(Errc::ElementNotInGroup, G.name(g) + " is not in the subgroup", {g});
      given.emplace_back(g, parse_matrix(m, p));
    }
    return KModule::from_generators(h, p, d, given);
  });
}

json kmodule_to_json(const KModule& w) {
  json m = json::object();
  for (std::size_t i = 0; i < w.matrices().size(); ++i)
    m[std::to_string(w.group().elements()[i])] = matrix_to_json(w.matrices()[i]);
  return {{"field", w.field()}, {"dim", w.dim()}, {"matrices", m}};
}

std::vector<FpMatrix> parse_sigma(const json& j, const PermGroup& g, std::int64_t p) {
  return parsing("sigma", [&] {
    std::vector<std::optional<FpMatrix>> s(g.order());
    for (const auto& [key, m] : field(j, "sigma").items()) s[parse_element(key, g)] = parse_matrix(m, p);
    std::vector<FpMatrix> out;
    for (Elem e = 0; e < g.order(); ++e) {
      if (!s[e]) throw Error(Errc::ParseError, "sigma is missing element " + g.name(e), {e});
      out.push_back(std::move(*s[e]));
    }
    return out;
  });
}

json sigma_to_json(const std::vector<FpMatrix>& sigma) {
  json m = json::object();
  for (std::size_t i = 0; i < sigma.size(); ++i) m[std::to_string(i)] = matrix_to_json(sigma[i]);
  return {{"sigma", m}};
}

Representation parse_representation(const json& j, const GSetPtr& x) {
  return parsing("representation", [&] {
    const auto p = field(j, "field").get<std::int64_t>();
    check_field(p);
    auto dims = field(j, "dims").get<std::vector<Eigen::Index>>();
    const PermGroup& G = x->group();
    std::map<Elem, std::vector<FpMatrix>> given;
    for (const auto& [key, per_point] : field(j, "transitions").items()) {
      std::vector<FpMatrix> t;
      for (const auto& m : per_point) t.push_back(parse_matrix(m, p));
      given[parse_element(key, G)] = std::move(t);
    }
    if (given.size() == G.order()) {
      std::vector<std::vector<FpMatrix>> all;
      for (auto& [g, t] : given) all.push_back(std::move(t));
      return Representation(x, p, std::move(dims), std::move(all));
    }
    std::vector<std::vector<FpMatrix>> gens;
    for (Elem s : G.generator_elements()) {
      auto it = given.find(s);
      if (it == given.end()) throw Error(Errc::ParseError, "transitions missing for generator " + G.name(s), {s});
      gens.push_back(it->second);
    }
    return Representation::from_generators(x, p, std::move(dims), gens);
  });
}

json representation_to_json(const Representation& v) {
  json t = json::object();
  for (Elem s : v.set().group().generator_elements()) {
    json per_point = json::array();
    for (const auto& m : v.transitions()[s]) per_point.push_back(matrix_to_json(m));
    t[std::to_string(s)] = per_point;
  }
  return {{"field", v.field()}, {"dims", v.dims()}, {"transitions", t}};
}

json complex_to_json(const CechComplex& c) {
  json degrees = json::array();
  const auto& cx = c.complex();
  for (std::size_t n = 0; n < cx.basis_sizes.size(); ++n) {
    json entry = {{"basis_size", cx.basis_sizes[n]}};
    json reps = json::array();
    for (const auto& t : c.basis_representatives(static_cast<int>(n))) reps.push_back(t);
    entry["basis"] = reps;
    if (n < cx.differentials.size()) {
      json rows = json::array();
      const auto& d = cx.differentials[n];
      for (Eigen::Index i = 0; i < d.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index k = 0; k < d.cols(); ++k) row.push_back(d(i, k));
        rows.push_back(row);
      }
      entry["differential"] = rows;
    }
    degrees.push_back(entry);
  }
  return {{"degrees", degrees}};
}

}  // namespace sipp
