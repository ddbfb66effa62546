#include "sipp/sheaf.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "sipp/error.hpp"

namespace sipp {

AbelianGroupSpec AbelianGroupSpec::normalized(std::vector<std::int64_t> factors) {
  std::vector<std::int64_t> out;
  for (auto d : factors) {
    if (d < 0) d = -d;
    if (d != 1) out.push_back(d);
  }
  std::sort(out.begin(), out.end(), [](std::int64_t a, std::int64_t b) {
    if (a == 0) return false;
    if (b == 0) return true;
    return a < b;
  });
  return {out};
}

bool AbelianGroupSpec::is_finite() const {
  return std::find(invariant_factors.begin(), invariant_factors.end(), 0) == invariant_factors.end();
}

std::optional<std::int64_t> AbelianGroupSpec::order() const {
  if (!is_finite()) return std::nullopt;
  std::int64_t n = 1;
  for (auto d : invariant_factors) n *= d;
  return n;
}

std::string AbelianGroupSpec::to_string() const {
  if (invariant_factors.empty()) return "0";
  std::ostringstream os;
  for (std::size_t i = 0; i < invariant_factors.size(); ++i) {
    if (i) os << " + ";
    if (invariant_factors[i] == 0)
      os << "Z";
    else
      os << "Z/" << invariant_factors[i];
  }
  return os.str();
}

AbelianGroupSpec power(const AbelianGroupSpec& a, std::size_t m) {
  std::vector<std::int64_t> f;
  for (std::size_t i = 0; i < m; ++i) f.insert(f.end(), a.invariant_factors.begin(), a.invariant_factors.end());
  return AbelianGroupSpec::normalized(std::move(f));
}

BarSet bar(const GSetPtr& x, unsigned p) {
  BarSet b{x, p, {}, std::vector<std::int64_t>(x->size(), -1)};
  OrbitLabels lab = orbit_labels(*x);
  std::vector<std::int64_t> comp(lab.representatives.size(), -1);
  for (std::size_t o = 0; o < lab.representatives.size(); ++o) {
    std::size_t st = x->group().order() / lab.sizes[o];
    if (st % p == 0) {
      comp[o] = static_cast<std::int64_t>(b.orbits.size());
      b.orbits.push_back(lab.representatives[o]);
    }
  }
  for (Point pt = 0; pt < x->size(); ++pt) b.component_of[pt] = comp[lab.orbit_of[pt]];
  return b;
}

std::vector<std::size_t> bar_map(const GMap& alpha, const BarSet& source, const BarSet& target) {
  std::vector<std::size_t> out;
  for (Point rep : source.orbits) {
    std::int64_t c = target.component_of[alpha(rep)];
    if (c < 0) throw Error(Errc::PreconditionViolated, "bar is not functorial along this map");
    out.push_back(static_cast<std::size_t>(c));
  }
  return out;
}

AbelianGroupSpec constant_sheaf_value(const GSetPtr& x, const AbelianGroupSpec& a, unsigned p) {
  return power(a, bar(x, p).size());
}

IntMatrix constant_sheaf_restriction(const GMap& alpha, unsigned p) {
  BarSet s = bar(alpha.source(), p);
  BarSet t = bar(alpha.target(), p);
  auto m = bar_map(alpha, s, t);
  IntMatrix r = IntMatrix::Zero(static_cast<Eigen::Index>(s.size()), static_cast<Eigen::Index>(t.size()));
  for (std::size_t i = 0; i < m.size(); ++i) r(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(m[i])) = 1;
  return r;
}

std::optional<std::size_t> PresheafTable::value_size(const GSetPtr& x) const {
  for (const auto& v : values)
    if (same_gset(v.object, x)) return v.size;
  return std::nullopt;
}

const std::vector<std::size_t>* PresheafTable::restriction(const GMap& f) const {
  for (const auto& r : restrictions)
    if (r.map == f) return &r.function;
  return nullptr;
}

void PresheafTable::add_value(GSetPtr x, std::size_t size) {
  if (!value_size(x)) values.push_back({std::move(x), size});
}

void PresheafTable::add_restriction(GMap f, std::vector<std::size_t> function) {
  if (!restriction(f)) restrictions.push_back({std::move(f), std::move(function)});
}

bool PresheafTable::is_functorial() const {
  for (const auto& r : restrictions) {
    auto ss = value_size(r.map.source());
    auto ts = value_size(r.map.target());
    if (!ss || !ts || r.function.size() != *ts) return false;
    for (auto v : r.function)
      if (v >= *ss) return false;
    if (r.map == identity_map(r.map.source())) {
      for (std::size_t i = 0; i < r.function.size(); ++i)
        if (r.function[i] != i) return false;
    }
  }
  for (const auto& f : restrictions)
    for (const auto& g : restrictions) {
      if (!same_gset(f.map.target(), g.map.source())) continue;
      const auto* gf = restriction(compose(g.map, f.map));
      if (!gf) continue;
      for (std::size_t w = 0; w < g.function.size(); ++w)
        if ((*gf)[w] != f.function[g.function[w]]) return false;
    }
  return true;
}

namespace {

void require_finite(const AbelianGroupSpec& a) {
  if (!a.is_finite()) throw Error(Errc::PreconditionViolated, "tabulated presheaves need a finite coefficient group");
}

std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < e; ++i) r *= b;
  return r;
}

}  // namespace

PresheafTable constant_sheaf_table(const AbelianGroupSpec& a, unsigned p, const std::vector<GSetPtr>& objects,
                                   const std::vector<GMap>& maps) {
  require_finite(a);
  const auto n = static_cast<std::size_t>(*a.order());
  PresheafTable t;
  for (const auto& x : objects) t.add_value(x, ipow(n, bar(x, p).size()));
  for (const auto& f : maps) {
    BarSet s = bar(f.source(), p);
    BarSet tg = bar(f.target(), p);
    auto bm = bar_map(f, s, tg);
    std::size_t count = ipow(n, tg.size());
    std::vector<std::size_t> fn(count);
    std::vector<std::size_t> digits(tg.size());
    for (std::size_t e = 0; e < count; ++e) {
      std::size_t r = e;
      for (std::size_t j = 0; j < tg.size(); ++j) {
        digits[j] = r % n;
        r /= n;
      }
      std::size_t out = 0;
      for (std::size_t i = s.size(); i-- > 0;) out = out * n + digits[bm[i]];
      fn[e] = out;
    }
    t.add_value(f.source(), ipow(n, s.size()));
    t.add_value(f.target(), count);
    t.add_restriction(f, std::move(fn));
  }
  return t;
}

PresheafTable constant_presheaf_table(const AbelianGroupSpec& a, const std::vector<GSetPtr>& objects,
                                      const std::vector<GMap>& maps) {
  require_finite(a);
  const auto n = static_cast<std::size_t>(*a.order());
  PresheafTable t;
  for (const auto& x : objects) t.add_value(x, n);
  std::vector<std::size_t> id(n);
  for (std::size_t i = 0; i < n; ++i) id[i] = i;
  for (const auto& f : maps) {
    t.add_value(f.source(), n);
    t.add_value(f.target(), n);
    t.add_restriction(f, id);
  }
  return t;
}

std::vector<GMap> equivariant_maps(const GSetPtr& x, const GSetPtr& z) {
  const PermGroup& G = x->group();
  auto orbits = orbit_decomposition(*x);
  std::vector<std::vector<Point>> choices;
  for (const auto& o : orbits) {
    std::vector<Point> c;
    for (Point y = 0; y < z->size(); ++y) {
      bool ok = true;
      for (Elem s : o.stabilizer.generators())
        if (z->act(s, y) != y) {
          ok = false;
          break;
        }
      if (ok) c.push_back(y);
    }
    choices.push_back(std::move(c));
  }
  // transversal[x] = element carrying the orbit representative to x
  std::vector<Elem> transversal(x->size(), 0);
  std::vector<std::size_t> orbit_of(x->size(), 0);
  for (std::size_t i = 0; i < orbits.size(); ++i) {
    std::vector<bool> done(x->size(), false);
    for (Elem g = 0; g < G.order(); ++g) {
      Point y = x->act(g, orbits[i].representative);
      if (!done[y]) {
        done[y] = true;
        transversal[y] = g;
        orbit_of[y] = i;
      }
    }
  }
  std::vector<GMap> out;
  for (const auto& c : choices)
    if (c.empty()) return out;
  std::vector<std::size_t> idx(orbits.size(), 0);
  while (true) {
    std::vector<Point> pts(x->size());
    for (Point y = 0; y < x->size(); ++y) pts[y] = z->act(transversal[y], choices[orbit_of[y]][idx[orbit_of[y]]]);
    out.emplace_back(x, z, std::move(pts));
    std::size_t k = 0;
    while (k < idx.size()) {
      if (++idx[k] < choices[k].size()) break;
      idx[k] = 0;
      ++k;
    }
    if (k == idx.size()) break;
  }
  return out;
}

PresheafTable represented_presheaf_table(const GSetPtr& z, const std::vector<GSetPtr>& objects,
                                         const std::vector<GMap>& maps) {
  PresheafTable t;
  std::vector<std::pair<GSetPtr, std::map<std::vector<Point>, std::size_t>>> homs;
  auto hom_index = [&](const GSetPtr& x) -> std::map<std::vector<Point>, std::size_t>& {
    for (auto& h : homs)
      if (same_gset(h.first, x)) return h.second;
    std::map<std::vector<Point>, std::size_t> m;
    for (const auto& f : equivariant_maps(x, z)) m.emplace(f.points(), m.size());
    t.add_value(x, m.size());
    homs.emplace_back(x, std::move(m));
    return homs.back().second;
  };
  for (const auto& x : objects) hom_index(x);
  for (const auto& f : maps) {
    auto& src = hom_index(f.source());
    auto& tgt = hom_index(f.target());
    std::vector<std::size_t> fn(tgt.size());
    for (const auto& [pts, j] : tgt) {
      std::vector<Point> comp(f.source()->size());
      for (Point s = 0; s < comp.size(); ++s) comp[s] = pts[f(s)];
      fn[j] = src.at(comp);
    }
    t.add_restriction(f, std::move(fn));
  }
  return t;
}

CoverDiagram cover_diagram(const GMap& alpha) {
  FiberProduct fp = fiber_product(alpha, alpha);
  return {{alpha.source(), alpha.target(), fp.set}, {alpha, fp.pr1, fp.pr2}};
}

bool check_sheaf_condition(const PresheafTable& presheaf, const GMap& cover) {
  FiberProduct fp = fiber_product(cover, cover);
  auto px = presheaf.value_size(cover.target());
  auto pu = presheaf.value_size(cover.source());
  auto pu2 = presheaf.value_size(fp.set);
  const auto* ra = presheaf.restriction(cover);
  const auto* r1 = presheaf.restriction(fp.pr1);
  const auto* r2 = presheaf.restriction(fp.pr2);
  if (!px || !pu || !pu2 || !ra || !r1 || !r2)
    throw Error(Errc::MissingEvaluation, "presheaf lacks values on U, X, U×U or restrictions along α, pr1, pr2");
  std::vector<bool> in_image(*pu, false);
  for (std::size_t s = 0; s < *px; ++s) {
    if (in_image[(*ra)[s]]) return false;
    in_image[(*ra)[s]] = true;
  }
  for (std::size_t t = 0; t < *pu; ++t) {
    bool equalized = (*r1)[t] == (*r2)[t];
    if (equalized != in_image[t]) return false;
  }
  return true;
}

bool check_additivity(const PresheafTable& presheaf, const Coproduct& parts) {
  auto whole = presheaf.value_size(parts.set);
  if (!whole) throw Error(Errc::MissingEvaluation, "no value on the coproduct");
  std::vector<const std::vector<std::size_t>*> res;
  std::vector<std::size_t> sizes;
  for (const auto& inc : parts.inclusions) {
    auto s = presheaf.value_size(inc.source());
    const auto* r = presheaf.restriction(inc);
    if (!s || !r) throw Error(Errc::MissingEvaluation, "no value or restriction on a summand");
    sizes.push_back(*s);
    res.push_back(r);
  }
  for (const auto& v : presheaf.values)
    if (v.object->size() == 0 && v.size != 1) return false;
  std::size_t product = 1;
  for (auto s : sizes) product *= s;
  if (product != *whole) return false;
  std::map<std::vector<std::size_t>, std::size_t> seen;
  for (std::size_t e = 0; e < *whole; ++e) {
    std::vector<std::size_t> key;
    for (const auto* r : res) key.push_back((*r)[e]);
    if (!seen.emplace(std::move(key), e).second) return false;
  }
  return true;
}

}  // namespace sipp
