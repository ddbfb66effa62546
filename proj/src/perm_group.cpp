#include "sipp/perm_group.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>

#include "sipp/arith.hpp"
#include "sipp/error.hpp"

namespace sipp {

Permutation::Permutation(std::vector<Point> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (Point x : images_) {
    if (x >= images_.size() || seen[x])
      throw Error(Errc::InvalidPermutation, "images are not a bijection");
    seen[x] = true;
  }
}

Permutation Permutation::identity(std::size_t degree) {
  std::vector<Point> im(degree);
  std::iota(im.begin(), im.end(), Point{0});
  return Permutation(std::move(im));
}

Permutation Permutation::from_cycles(std::size_t degree, const std::vector<std::vector<Point>>& cycles) {
  std::vector<Point> im(degree);
  std::iota(im.begin(), im.end(), Point{0});
  std::vector<bool> used(degree, false);
  for (const auto& c : cycles) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] >= degree || used[c[i]]) throw Error(Errc::InvalidPermutation, "bad cycle");
      used[c[i]] = true;
      im[c[i]] = c[(i + 1) % c.size()];
    }
  }
  return Permutation(std::move(im));
}

Permutation Permutation::inverse() const {
  std::vector<Point> im(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) im[images_[i]] = static_cast<Point>(i);
  Permutation r;
  r.images_ = std::move(im);
  return r;
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != i) return false;
  return true;
}

std::string Permutation::cycle_string() const {
  std::ostringstream os;
  std::vector<bool> seen(images_.size(), false);
  bool any = false;
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (seen[i] || images_[i] == i) continue;
    any = true;
    os << '(';
    std::size_t j = i;
    bool first = true;
    while (!seen[j]) {
      seen[j] = true;
      if (!first) os << ' ';
      os << j;
      first = false;
      j = images_[j];
    }
    os << ')';
  }
  if (!any) return "()";
  return os.str();
}

Permutation operator*(const Permutation& a, const Permutation& b) {
  if (a.degree() != b.degree()) throw Error(Errc::DegreeMismatch, "composing permutations");
  std::vector<Point> im(a.degree());
  for (std::size_t i = 0; i < im.size(); ++i) im[i] = a.images_[b.images_[i]];
  Permutation r;
  r.images_ = std::move(im);
  return r;
}

std::size_t PermutationHash::operator()(const Permutation& p) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (Point x : p.images()) h = (h ^ x) * 1099511628211ull;
  return h;
}

GroupPtr group_closure(const std::vector<Permutation>& generators, std::size_t degree,
                       std::size_t order_bound) {
  for (const auto& g : generators)
    if (g.degree() != degree) throw Error(Errc::DegreeMismatch, "generator degree differs from group degree");

  // Breadth-first closure under left multiplication by generators.
  std::vector<Permutation> found{Permutation::identity(degree)};
  std::unordered_map<Permutation, Elem, PermutationHash> seen{{found[0], 0}};
  std::vector<std::size_t> gen_of{0};
  std::vector<Elem> parent_of{0};
  for (std::size_t head = 0; head < found.size(); ++head) {
    for (std::size_t s = 0; s < generators.size(); ++s) {
      Permutation next = generators[s] * found[head];
      if (seen.count(next)) continue;
      if (found.size() >= order_bound)
        throw Error(Errc::OrderBoundExceeded, "group order exceeds " + std::to_string(order_bound));
      seen.emplace(next, static_cast<Elem>(found.size()));
      found.push_back(std::move(next));
      gen_of.push_back(s);
      parent_of.push_back(static_cast<Elem>(head));
    }
  }

  const std::size_t n = found.size();
  std::vector<Elem> order(n);
  std::iota(order.begin(), order.end(), Elem{0});
  std::sort(order.begin(), order.end(), [&](Elem a, Elem b) { return found[a] < found[b]; });
  std::vector<Elem> rank(n);
  for (std::size_t i = 0; i < n; ++i) rank[order[i]] = static_cast<Elem>(i);

  auto grp = std::shared_ptr<PermGroup>(new PermGroup());
  grp->degree_ = degree;
  grp->generators_ = generators;
  grp->elements_.reserve(n);
  for (Elem old : order) grp->elements_.push_back(found[old]);
  for (std::size_t i = 0; i < n; ++i) grp->index_.emplace(grp->elements_[i], static_cast<Elem>(i));
  grp->tree_gen_.assign(n, 0);
  grp->tree_parent_.assign(n, 0);
  for (std::size_t old = 0; old < n; ++old) {
    grp->tree_gen_[rank[old]] = gen_of[old];
    grp->tree_parent_[rank[old]] = rank[parent_of[old]];
    grp->bfs_order_.push_back(rank[old]);
  }
  for (const auto& g : generators) grp->generator_elements_.push_back(grp->index_.at(g));

  grp->inverse_.resize(n);
  for (std::size_t i = 0; i < n; ++i) grp->inverse_[i] = grp->index_.at(grp->elements_[i].inverse());
  if (n <= PermGroup::kTableBound) {
    grp->table_.resize(n * n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        grp->table_[a * n + b] = grp->index_.at(grp->elements_[a] * grp->elements_[b]);
  }
  return grp;
}

std::optional<Elem> PermGroup::index_of(const Permutation& p) const {
  auto it = index_.find(p);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Elem PermGroup::index_or_throw(const Permutation& p) const {
  if (p.degree() != degree_) throw Error(Errc::DegreeMismatch, "permutation degree differs from group degree");
  auto g = index_of(p);
  if (!g) throw Error(Errc::ElementNotInGroup, p.cycle_string());
  return *g;
}

void PermGroup::check_element(Elem g) const {
  if (g >= elements_.size()) throw Error(Errc::ElementNotInGroup, "index " + std::to_string(g));
}

Elem PermGroup::mul(Elem a, Elem b) const {
  if (!table_.empty()) return table_[static_cast<std::size_t>(a) * elements_.size() + b];
  return index_.at(elements_[a] * elements_[b]);
}

Elem PermGroup::pow(Elem a, long long n) const {
  if (n < 0) {
    a = inv(a);
    n = -n;
  }
  Elem r = identity();
  Elem base = a;
  while (n > 0) {
    if (n & 1) r = mul(r, base);
    base = mul(base, base);
    n >>= 1;
  }
  return r;
}

std::size_t PermGroup::element_order(Elem a) const {
  std::size_t k = 1;
  for (Elem x = a; x != identity(); x = mul(x, a)) ++k;
  return k;
}

Subgroup Subgroup::from_elements(GroupPtr g, std::vector<Elem> elems) {
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  Subgroup h;
  h.group_ = std::move(g);
  h.member_.assign(h.group_->order(), false);
  for (Elem e : elems) {
    h.group_->check_element(e);
    h.member_[e] = true;
  }
  h.elements_ = std::move(elems);
  if (h.elements_.empty() || !h.member_[PermGroup::identity()])
    throw Error(Errc::NotASubgroup, "identity missing");
  for (Elem a : h.elements_) {
    if (!h.member_[h.group_->inv(a)]) throw Error(Errc::NotASubgroup, "not closed under inverse");
    for (Elem b : h.elements_)
      if (!h.member_[h.group_->mul(a, b)]) throw Error(Errc::NotASubgroup, "not closed under composition");
  }
  if (h.group_->order() % h.elements_.size() != 0) throw Error(Errc::NotASubgroup, "order does not divide");
  return h;
}

Subgroup Subgroup::whole(GroupPtr g) {
  Subgroup h;
  h.group_ = std::move(g);
  h.elements_.resize(h.group_->order());
  std::iota(h.elements_.begin(), h.elements_.end(), Elem{0});
  h.member_.assign(h.group_->order(), true);
  return h;
}

Subgroup Subgroup::trivial(GroupPtr g) {
  Subgroup h;
  h.group_ = std::move(g);
  h.elements_ = {PermGroup::identity()};
  h.member_.assign(h.group_->order(), false);
  h.member_[PermGroup::identity()] = true;
  return h;
}

Subgroup Subgroup::generated_by(GroupPtr g, std::span<const Elem> gens) {
  Subgroup h;
  h.group_ = std::move(g);
  h.member_.assign(h.group_->order(), false);
  h.member_[PermGroup::identity()] = true;
  std::vector<Elem> found{PermGroup::identity()};
  for (Elem s : gens) h.group_->check_element(s);
  for (std::size_t head = 0; head < found.size(); ++head) {
    for (Elem s : gens) {
      Elem next = h.group_->mul(s, found[head]);
      if (!h.member_[next]) {
        h.member_[next] = true;
        found.push_back(next);
      }
    }
  }
  std::sort(found.begin(), found.end());
  h.elements_ = std::move(found);
  return h;
}

Subgroup Subgroup::generated_by(GroupPtr g, const std::vector<Permutation>& gens) {
  std::vector<Elem> idx;
  for (const auto& p : gens) idx.push_back(g->index_or_throw(p));
  return generated_by(std::move(g), idx);
}

std::optional<std::size_t> Subgroup::position(Elem g) const {
  if (g >= member_.size() || !member_[g]) return std::nullopt;
  return static_cast<std::size_t>(std::lower_bound(elements_.begin(), elements_.end(), g) - elements_.begin());
}

bool Subgroup::is_subgroup_of(const Subgroup& other) const {
  if (group_ != other.group_) return false;
  return std::all_of(elements_.begin(), elements_.end(), [&](Elem e) { return other.contains(e); });
}

bool Subgroup::is_normal() const {
  for (Elem s : group_->generator_elements())
    for (Elem h : elements_)
      if (!contains(group_->conj(s, h))) return false;
  return true;
}

bool Subgroup::is_p_group(unsigned p) const { return is_power_of(order(), p); }

std::vector<Elem> Subgroup::generators() const {
  std::vector<Elem> gens;
  Subgroup cur = trivial(group_);
  for (Elem e : elements_) {
    if (cur.contains(e)) continue;
    gens.push_back(e);
    cur = generated_by(group_, gens);
    if (cur.order() == order()) break;
  }
  return gens;
}

Subgroup conjugate_subgroup(const Subgroup& h, Elem g) {
  const PermGroup& G = h.group();
  G.check_element(g);
  std::vector<Elem> out;
  out.reserve(h.order());
  Elem gi = G.inv(g);
  for (Elem x : h.elements()) out.push_back(G.mul(G.mul(gi, x), g));
  return Subgroup::from_elements(h.group_ptr(), std::move(out));
}

Subgroup intersect(const Subgroup& a, const Subgroup& b) {
  if (a.group_ptr() != b.group_ptr()) throw Error(Errc::NotASubgroupOf, "different ambient groups");
  std::vector<Elem> out;
  for (Elem x : a.elements())
    if (b.contains(x)) out.push_back(x);
  return Subgroup::from_elements(a.group_ptr(), std::move(out));
}

Subgroup bracket_subgroup(const Subgroup& h, Elem g) { return intersect(conjugate_subgroup(h, g), h); }

Subgroup bracket_subgroup(const Subgroup& h, Elem g2, Elem g1) {
  const PermGroup& G = h.group();
  G.check_element(g1);
  G.check_element(g2);
  return intersect(intersect(conjugate_subgroup(h, G.mul(g2, g1)), conjugate_subgroup(h, g1)), h);
}

Subgroup normalizer(const Subgroup& h) {
  const PermGroup& G = h.group();
  std::vector<Elem> out;
  for (Elem x = 0; x < G.order(); ++x) {
    bool ok = true;
    for (Elem y : h.elements())
      if (!h.contains(G.conj(x, y))) {
        ok = false;
        break;
      }
    if (ok) out.push_back(x);
  }
  return Subgroup::from_elements(h.group_ptr(), std::move(out));
}

std::vector<Elem> double_coset(const Subgroup& k1, Elem t, const Subgroup& k2) {
  const PermGroup& G = k1.group();
  std::vector<bool> in(G.order(), false);
  std::vector<Elem> out;
  for (Elem a : k1.elements()) {
    Elem at = G.mul(a, t);
    for (Elem b : k2.elements()) {
      Elem x = G.mul(at, b);
      if (!in[x]) {
        in[x] = true;
        out.push_back(x);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Elem> double_cosets(const Subgroup& k1, const Subgroup& k2, const Subgroup& h) {
  if (!k1.is_subgroup_of(h) || !k2.is_subgroup_of(h))
    throw Error(Errc::NotASubgroupOf, "double cosets need K1, K2 <= H");
  const PermGroup& G = h.group();
  std::vector<bool> covered(G.order(), false);
  std::vector<Elem> reps;
  for (Elem t : h.elements()) {
    if (covered[t]) continue;
    reps.push_back(t);
    for (Elem x : double_coset(k1, t, k2)) covered[x] = true;
  }
  return reps;
}

Subgroup sylow_subgroup(GroupPtr g, unsigned p) {
  if (!is_prime(p)) throw Error(Errc::NotPrime, std::to_string(p));
  const std::size_t target = p_part(g->order(), p);
  Subgroup P = Subgroup::trivial(g);
  while (P.order() < target) {
    // N(P)/P has order divisible by p while P is not Sylow; lift an element of order p.
    Subgroup N = normalizer(P);
    bool grown = false;
    for (Elem x : N.elements()) {
      if (P.contains(x)) continue;
      std::size_t k = 1;
      Elem y = x;
      while (!P.contains(y)) {
        y = g->mul(y, x);
        ++k;
      }
      if (k % p != 0) continue;
      std::vector<Elem> gens = P.generators();
      gens.push_back(g->pow(x, static_cast<long long>(k / p)));
      P = Subgroup::generated_by(g, gens);
      grown = true;
      break;
    }
    if (!grown) throw Error(Errc::PreconditionViolated, "Sylow growth stalled");
  }
  return P;
}

namespace {
CosetTable cosets(const Subgroup& h, bool left) {
  const PermGroup& G = h.group();
  CosetTable t;
  t.coset_of.assign(G.order(), UINT32_MAX);
  for (Elem x = 0; x < G.order(); ++x) {
    if (t.coset_of[x] != UINT32_MAX) continue;
    auto id = static_cast<std::uint32_t>(t.reps.size());
    t.reps.push_back(x);
    for (Elem y : h.elements()) t.coset_of[left ? G.mul(x, y) : G.mul(y, x)] = id;
  }
  return t;
}
}  // namespace

CosetTable left_cosets(const Subgroup& h) { return cosets(h, true); }
CosetTable right_cosets(const Subgroup& h) { return cosets(h, false); }

}  // namespace sipp
