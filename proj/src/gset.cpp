#include "sipp/gset.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "sipp/error.hpp"

namespace sipp {

namespace {

bool is_bijection(const std::vector<Point>& v, std::size_t n) {
  if (v.size() != n) return false;
  std::vector<bool> seen(n, false);
  for (Point x : v) {
    if (x >= n || seen[x]) return false;
    seen[x] = true;
  }
  return true;
}

}  // namespace

GSet::GSet(GroupPtr group, std::size_t size, std::vector<std::vector<Point>> action,
           std::vector<std::string> labels)
    : group_(std::move(group)), size_(size), action_(std::move(action)), labels_(std::move(labels)) {
  const PermGroup& G = *group_;
  if (action_.size() != G.order()) throw Error(Errc::InvalidAction, "need one permutation per group element");
  if (!labels_.empty() && labels_.size() != size_) throw Error(Errc::InvalidAction, "label count differs from size");
  for (const auto& a : action_)
    if (!is_bijection(a, size_)) throw Error(Errc::InvalidAction, "element does not act bijectively");
  for (Point x = 0; x < size_; ++x)
    if (action_[PermGroup::identity()][x] != x) throw Error(Errc::InvalidAction, "identity acts nontrivially");
  // Generators generate, so s(gx) = (sg)x for all s, g makes the action a homomorphism.
  for (Elem s : G.generator_elements())
    for (Elem g = 0; g < G.order(); ++g) {
      const auto& sg = action_[G.mul(s, g)];
      const auto& as = action_[s];
      const auto& ag = action_[g];
      for (Point x = 0; x < size_; ++x)
        if (sg[x] != as[ag[x]]) throw Error(Errc::InvalidAction, "action is not a homomorphism");
    }
}

GSetPtr GSet::from_generator_action(GroupPtr group, std::size_t size,
                                    const std::vector<std::vector<Point>>& generator_action,
                                    std::vector<std::string> labels) {
  const PermGroup& G = *group;
  if (generator_action.size() != G.generators().size())
    throw Error(Errc::InvalidAction, "need one permutation per generator");
  for (const auto& a : generator_action)
    if (!is_bijection(a, size)) throw Error(Errc::InvalidAction, "generator does not act bijectively");
  std::vector<std::vector<Point>> action(G.order());
  std::vector<Point> id(size);
  std::iota(id.begin(), id.end(), Point{0});
  action[PermGroup::identity()] = id;
  for (Elem g : G.bfs_order()) {
    if (g == PermGroup::identity()) continue;
    const auto& s = generator_action[G.tree_gen(g)];
    const auto& par = action[G.tree_parent(g)];
    std::vector<Point> a(size);
    for (Point x = 0; x < size; ++x) a[x] = s[par[x]];
    action[g] = std::move(a);
  }
  return std::make_shared<const GSet>(std::move(group), size, std::move(action), std::move(labels));
}

GSetPtr GSet::empty(GroupPtr group) {
  std::vector<std::vector<Point>> action(group->order());
  return std::make_shared<const GSet>(std::move(group), 0, std::move(action));
}

GSetPtr GSet::regular(GroupPtr group) {
  const PermGroup& G = *group;
  std::vector<std::vector<Point>> action(G.order(), std::vector<Point>(G.order()));
  std::vector<std::string> labels;
  for (Elem g = 0; g < G.order(); ++g) {
    labels.push_back(G.name(g));
    for (Elem x = 0; x < G.order(); ++x) action[g][x] = G.mul(g, x);
  }
  return std::make_shared<const GSet>(std::move(group), G.order(), std::move(action), std::move(labels));
}

std::string GSet::label(Point x) const {
  if (labels_.empty()) return std::to_string(x);
  return labels_[x];
}

bool same_gset(const GSet& a, const GSet& b) {
  if (&a == &b) return true;
  if (a.group_ptr() != b.group_ptr() || a.size() != b.size()) return false;
  for (Elem s : a.group().generator_elements())
    if (a.action(s) != b.action(s)) return false;
  return true;
}

OrbitLabels orbit_labels(const GSet& x) {
  OrbitLabels out;
  out.orbit_of.assign(x.size(), UINT32_MAX);
  const auto& gens = x.group().generator_elements();
  std::vector<Point> queue;
  for (Point start = 0; start < x.size(); ++start) {
    if (out.orbit_of[start] != UINT32_MAX) continue;
    auto id = static_cast<std::uint32_t>(out.representatives.size());
    out.representatives.push_back(start);
    queue.assign(1, start);
    out.orbit_of[start] = id;
    for (std::size_t head = 0; head < queue.size(); ++head)
      for (Elem s : gens) {
        Point y = x.act(s, queue[head]);
        if (out.orbit_of[y] == UINT32_MAX) {
          out.orbit_of[y] = id;
          queue.push_back(y);
        }
      }
    out.sizes.push_back(queue.size());
  }
  return out;
}

Subgroup stabilizer(const GSet& x, Point pt) {
  std::vector<Elem> st;
  for (Elem g = 0; g < x.group().order(); ++g)
    if (x.act(g, pt) == pt) st.push_back(g);
  return Subgroup::from_elements(x.group_ptr(), std::move(st));
}

std::vector<Orbit> orbit_decomposition(const GSet& x) {
  OrbitLabels lab = orbit_labels(x);
  std::vector<Orbit> out(lab.representatives.size());
  for (Point p = 0; p < x.size(); ++p) out[lab.orbit_of[p]].points.push_back(p);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i].representative = lab.representatives[i];
    out[i].stabilizer = stabilizer(x, out[i].representative);
  }
  return out;
}

bool is_equivariant(const GSet& source, const GSet& target, std::span<const Point> points) {
  if (source.group_ptr() != target.group_ptr() || points.size() != source.size()) return false;
  for (Point p : points)
    if (p >= target.size()) return false;
  for (Elem g = 0; g < source.group().order(); ++g)
    for (Point x = 0; x < source.size(); ++x)
      if (points[source.act(g, x)] != target.act(g, points[x])) return false;
  return true;
}

GMap::GMap(GSetPtr source, GSetPtr target, std::vector<Point> points)
    : source_(std::move(source)), target_(std::move(target)), points_(std::move(points)) {
  if (source_->group_ptr() != target_->group_ptr()) throw Error(Errc::NotEquivariant, "different groups");
  if (points_.size() != source_->size()) throw Error(Errc::NotEquivariant, "point map has wrong length");
  for (Point p : points_)
    if (p >= target_->size()) throw Error(Errc::NotEquivariant, "point map leaves the target");
  for (Elem s : source_->group().generator_elements())
    for (Point x = 0; x < source_->size(); ++x)
      if (points_[source_->act(s, x)] != target_->act(s, points_[x]))
        throw Error(Errc::NotEquivariant, "fails at point " + std::to_string(x));
}

bool GMap::is_injective() const {
  std::vector<bool> hit(target_->size(), false);
  for (Point p : points_) {
    if (hit[p]) return false;
    hit[p] = true;
  }
  return true;
}

bool GMap::is_surjective() const {
  std::vector<bool> hit(target_->size(), false);
  for (Point p : points_) hit[p] = true;
  return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

std::vector<Point> GMap::fiber(Point y) const {
  std::vector<Point> out;
  for (Point x = 0; x < points_.size(); ++x)
    if (points_[x] == y) out.push_back(x);
  return out;
}

bool operator==(const GMap& a, const GMap& b) {
  return same_gset(a.source(), b.source()) && same_gset(a.target(), b.target()) && a.points() == b.points();
}

GMap identity_map(const GSetPtr& x) {
  std::vector<Point> id(x->size());
  std::iota(id.begin(), id.end(), Point{0});
  return GMap(x, x, std::move(id));
}

GMap compose(const GMap& f, const GMap& g) {
  if (!same_gset(g.target(), f.source())) throw Error(Errc::TargetMismatch, "compose: g's target is not f's source");
  std::vector<Point> pts(g.source()->size());
  for (Point x = 0; x < pts.size(); ++x) pts[x] = f(g(x));
  return GMap(g.source(), f.target(), std::move(pts));
}

GSetPtr point_gset(GroupPtr group) {
  std::vector<std::vector<Point>> action(group->order(), std::vector<Point>{0});
  return std::make_shared<const GSet>(std::move(group), 1, std::move(action), std::vector<std::string>{"*"});
}

GMap to_point(const GSetPtr& x) { return GMap(x, point_gset(x->group_ptr()), std::vector<Point>(x->size(), 0)); }

Coproduct coproduct(const std::vector<GSetPtr>& parts) {
  if (parts.empty()) throw Error(Errc::PreconditionViolated, "coproduct of no parts");
  GroupPtr grp = parts[0]->group_ptr();
  Coproduct out;
  std::size_t total = 0;
  for (const auto& p : parts) {
    if (p->group_ptr() != grp) throw Error(Errc::TargetMismatch, "coproduct over different groups");
    out.offsets.push_back(total);
    total += p->size();
  }
  std::vector<std::vector<Point>> action(grp->order(), std::vector<Point>(total));
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (Elem g = 0; g < grp->order(); ++g)
      for (Point x = 0; x < parts[i]->size(); ++x)
        action[g][out.offsets[i] + x] = static_cast<Point>(out.offsets[i] + parts[i]->act(g, x));
    for (Point x = 0; x < parts[i]->size(); ++x) labels.push_back(std::to_string(i) + ":" + parts[i]->label(x));
  }
  out.set = std::make_shared<const GSet>(grp, total, std::move(action), std::move(labels));
  for (std::size_t i = 0; i < parts.size(); ++i) {
    std::vector<Point> pts(parts[i]->size());
    std::iota(pts.begin(), pts.end(), static_cast<Point>(out.offsets[i]));
    out.inclusions.emplace_back(parts[i], out.set, std::move(pts));
  }
  return out;
}

std::optional<Point> FiberProduct::index_of(Point x, Point y) const {
  auto it = std::lower_bound(pairs.begin(), pairs.end(), std::pair{x, y});
  if (it == pairs.end() || *it != std::pair{x, y}) return std::nullopt;
  return static_cast<Point>(it - pairs.begin());
}

FiberProduct fiber_product(const GMap& alpha, const GMap& beta) {
  if (!same_gset(alpha.target(), beta.target())) throw Error(Errc::TargetMismatch, "fiber product");
  const GSet& X = *alpha.source();
  const GSet& Y = *beta.source();
  FiberProduct out;
  for (Point x = 0; x < X.size(); ++x)
    for (Point y = 0; y < Y.size(); ++y)
      if (alpha(x) == beta(y)) out.pairs.emplace_back(x, y);
  const PermGroup& G = X.group();
  std::vector<std::vector<Point>> action(G.order(), std::vector<Point>(out.pairs.size()));
  std::vector<std::string> labels;
  for (Point i = 0; i < out.pairs.size(); ++i) {
    auto [x, y] = out.pairs[i];
    labels.push_back("(" + X.label(x) + "," + Y.label(y) + ")");
    for (Elem g = 0; g < G.order(); ++g) action[g][i] = *out.index_of(X.act(g, x), Y.act(g, y));
  }
  out.set = std::make_shared<const GSet>(X.group_ptr(), out.pairs.size(), std::move(action), std::move(labels));
  std::vector<Point> p1, p2;
  for (auto [x, y] : out.pairs) {
    p1.push_back(x);
    p2.push_back(y);
  }
  out.pr1 = GMap(out.set, alpha.source(), std::move(p1));
  out.pr2 = GMap(out.set, beta.source(), std::move(p2));
  return out;
}

std::optional<GMap> fiber_product_factor(const FiberProduct& fp, const GMap& f, const GMap& g) {
  if (!same_gset(f.source(), g.source())) return std::nullopt;
  if (!same_gset(f.target(), fp.pr1.target()) || !same_gset(g.target(), fp.pr2.target())) return std::nullopt;
  std::vector<Point> pts;
  for (Point c = 0; c < f.source()->size(); ++c) {
    auto i = fp.index_of(f(c), g(c));
    if (!i) return std::nullopt;
    pts.push_back(*i);
  }
  return GMap(f.source(), fp.set, std::move(pts));
}

bool is_pullback(const GMap& pr1, const GMap& pr2, const GMap& alpha, const GMap& beta) {
  if (!same_gset(pr1.source(), pr2.source()) || !same_gset(pr1.target(), alpha.source()) ||
      !same_gset(pr2.target(), beta.source()) || !same_gset(alpha.target(), beta.target()))
    return false;
  std::vector<std::pair<Point, Point>> seen;
  for (Point p = 0; p < pr1.source()->size(); ++p) {
    if (alpha(pr1(p)) != beta(pr2(p))) return false;
    seen.emplace_back(pr1(p), pr2(p));
  }
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) return false;
  std::size_t expected = 0;
  for (Point x = 0; x < alpha.source()->size(); ++x)
    for (Point y = 0; y < beta.source()->size(); ++y)
      if (alpha(x) == beta(y)) ++expected;
  return expected == seen.size();
}

FiberPowers::FiberPowers(const GMap& alpha, std::size_t max_power, std::size_t point_cap) : alpha_(alpha) {
  if (max_power == 0) throw Error(Errc::PreconditionViolated, "fiber powers start at 1");
  const GSet& U = *alpha.source();
  const PermGroup& G = U.group();
  std::vector<std::vector<Point>> fibers(alpha.target()->size());
  for (Point u = 0; u < U.size(); ++u) fibers[alpha(u)].push_back(u);

  for (std::size_t n = 1; n <= max_power; ++n) {
    std::size_t count = 0;
    for (Point u = 0; u < U.size(); ++u) {
      std::size_t c = 1;
      for (std::size_t k = 1; k < n; ++k) c *= fibers[alpha(u)].size();
      count += c;
    }
    if (count > point_cap) throw Error(Errc::PointCapExceeded, std::to_string(count) + " points");
    std::vector<std::vector<Point>> tuples;
    tuples.reserve(count);
    for (Point u = 0; u < U.size(); ++u) {
      const auto& f = fibers[alpha(u)];
      std::vector<std::size_t> idx(n - 1, 0);
      while (true) {
        std::vector<Point> t{u};
        for (std::size_t k = 0; k + 1 < n; ++k) t.push_back(f[idx[k]]);
        tuples.push_back(std::move(t));
        std::size_t k = n - 1;
        while (k > 0) {
          if (++idx[k - 1] < f.size()) break;
          idx[k - 1] = 0;
          --k;
        }
        if (k == 0) break;
      }
    }
    std::map<std::vector<Point>, Point> lookup;
    for (Point i = 0; i < tuples.size(); ++i) lookup.emplace(tuples[i], i);
    if (n == 1) {
      sets_.push_back(alpha.source());
    } else {
      std::vector<std::vector<Point>> action(G.order(), std::vector<Point>(tuples.size()));
      std::vector<Point> moved(n);
      for (Elem g = 0; g < G.order(); ++g)
        for (Point i = 0; i < tuples.size(); ++i) {
          for (std::size_t k = 0; k < n; ++k) moved[k] = U.act(g, tuples[i][k]);
          action[g][i] = lookup.at(moved);
        }
      sets_.push_back(std::make_shared<const GSet>(U.group_ptr(), tuples.size(), std::move(action)));
    }
    tuples_.push_back(std::move(tuples));
    lookup_.push_back(std::move(lookup));
  }
}

std::optional<Point> FiberPowers::index_of(std::span<const Point> tuple) const {
  if (tuple.empty() || tuple.size() > lookup_.size()) return std::nullopt;
  const auto& m = lookup_[tuple.size() - 1];
  auto it = m.find(std::vector<Point>(tuple.begin(), tuple.end()));
  if (it == m.end()) return std::nullopt;
  return it->second;
}

GMap FiberPowers::projection(std::size_t n, const std::vector<std::size_t>& coords) const {
  if (n == 0 || n > max_power() || coords.empty() || coords.size() > max_power())
    throw Error(Errc::DegreeOutOfRange, "fiber power projection");
  std::vector<Point> pts;
  std::vector<Point> t(coords.size());
  for (const auto& tuple : tuples(n)) {
    for (std::size_t k = 0; k < coords.size(); ++k) t[k] = tuple.at(coords[k]);
    pts.push_back(*index_of(t));
  }
  return GMap(set(n), set(coords.size()), std::move(pts));
}

GMap FiberPowers::structure_map(std::size_t n) const {
  std::vector<Point> pts;
  for (const auto& tuple : tuples(n)) pts.push_back(alpha_(tuple[0]));
  return GMap(set(n), alpha_.target(), std::move(pts));
}

CosetSpace coset_gset(const Subgroup& h) {
  const PermGroup& G = h.group();
  CosetSpace cs{h, nullptr, left_cosets(h)};
  const std::size_t n = cs.cosets.reps.size();
  std::vector<std::vector<Point>> action(G.order(), std::vector<Point>(n));
  for (Elem g = 0; g < G.order(); ++g)
    for (Point c = 0; c < n; ++c) action[g][c] = cs.cosets.coset_of[G.mul(g, cs.cosets.reps[c])];
  std::vector<std::string> labels;
  for (Elem r : cs.cosets.reps) labels.push_back("[" + G.name(r) + "]");
  cs.set = std::make_shared<const GSet>(h.group_ptr(), n, std::move(action), std::move(labels));
  return cs;
}

GMap beta_map(const CosetSpace& from, const CosetSpace& to, Elem g) {
  const PermGroup& G = from.subgroup.group();
  G.check_element(g);
  for (Elem k : from.subgroup.elements())
    if (!to.subgroup.contains(G.conj(g, k)))
      throw Error(Errc::ConjugateNotContained, "g K g^-1 is not inside H for g = " + G.name(g));
  Elem gi = G.inv(g);
  std::vector<Point> pts;
  for (Point c = 0; c < from.set->size(); ++c) pts.push_back(to.coset_of(G.mul(from.representative(c), gi)));
  return GMap(from.set, to.set, std::move(pts));
}

namespace {
void check_powers_of(const CosetSpace& gh, const FiberPowers& powers, std::size_t n) {
  if (powers.max_power() < n || !same_gset(powers.set(1), gh.set) || powers.base_map().target()->size() != 1)
    throw Error(Errc::TargetMismatch, "fiber powers are not those of G/H over G/G");
}
}  // namespace

GammaMap gamma_map(const CosetSpace& gh, const FiberPowers& powers, Elem g) {
  check_powers_of(gh, powers, 2);
  GammaMap out{coset_gset(bracket_subgroup(gh.subgroup, g)), {}};
  GMap bg = beta_map(out.domain, gh, g);
  GMap b1 = beta_map(out.domain, gh, PermGroup::identity());
  std::vector<Point> pts;
  for (Point c = 0; c < out.domain.set->size(); ++c) {
    Point t[2] = {bg(c), b1(c)};
    pts.push_back(*powers.index_of(t));
  }
  out.map = GMap(out.domain.set, powers.set(2), std::move(pts));
  return out;
}

DeltaMap delta_map(const CosetSpace& gh, const FiberPowers& powers, Elem g2, Elem g1) {
  check_powers_of(gh, powers, 3);
  const PermGroup& G = gh.subgroup.group();
  DeltaMap out{coset_gset(bracket_subgroup(gh.subgroup, g2, g1)), {}};
  GMap b21 = beta_map(out.domain, gh, G.mul(g2, g1));
  GMap b1 = beta_map(out.domain, gh, g1);
  GMap b0 = beta_map(out.domain, gh, PermGroup::identity());
  std::vector<Point> pts;
  for (Point c = 0; c < out.domain.set->size(); ++c) {
    Point t[3] = {b21(c), b1(c), b0(c)};
    pts.push_back(*powers.index_of(t));
  }
  out.map = GMap(out.domain.set, powers.set(3), std::move(pts));
  return out;
}

std::optional<GMap> find_isomorphism(const GSetPtr& a, const GSetPtr& b) {
  if (a->group_ptr() != b->group_ptr() || a->size() != b->size()) return std::nullopt;
  const PermGroup& G = a->group();
  auto oa = orbit_decomposition(*a);
  auto ob = orbit_decomposition(*b);
  if (oa.size() != ob.size()) return std::nullopt;
  std::vector<bool> used(ob.size(), false);
  std::vector<Point> pts(a->size(), 0);
  for (const auto& orb : oa) {
    bool matched = false;
    for (std::size_t j = 0; j < ob.size() && !matched; ++j) {
      if (used[j] || ob[j].points.size() != orb.points.size()) continue;
      // Look for c with St(c·y) = St(x).
      for (Elem c = 0; c < G.order(); ++c) {
        Point y = b->act(c, ob[j].representative);
        bool same = true;
        for (Elem s : orb.stabilizer.elements())
          if (b->act(s, y) != y) {
            same = false;
            break;
          }
        if (!same) continue;
        used[j] = true;
        matched = true;
        std::vector<bool> done(a->size(), false);
        for (Elem h = 0; h < G.order(); ++h) {
          Point x = a->act(h, orb.representative);
          if (!done[x]) {
            done[x] = true;
            pts[x] = b->act(h, y);
          }
        }
        break;
      }
    }
    if (!matched) return std::nullopt;
  }
  GMap iso(a, b, std::move(pts));
  if (!iso.is_isomorphism()) return std::nullopt;
  return iso;
}

}  // namespace sipp
