#include "sipp/kmodule.hpp"

#include <algorithm>

#include "sipp/error.hpp"

namespace sipp {

KModule::KModule(Subgroup group, std::int64_t field, Eigen::Index dim, std::vector<FpMatrix> matrices)
    : group_(std::move(group)), field_(field), dim_(dim), matrices_(std::move(matrices)) {
  check_field(field_);
  if (matrices_.size() != group_.order()) throw Error(Errc::NotAHomomorphism, "one matrix per subgroup element");
  for (const auto& m : matrices_) {
    if (m.field() != field_) throw Error(Errc::FieldMismatch, "module matrix over another field");
    if (m.rows() != dim_ || m.cols() != dim_) throw Error(Errc::DimensionMismatch, "module matrix has wrong size");
  }
  const PermGroup& G = group_.group();
  if (!matrices_[0].is_identity()) throw Error(Errc::NotAHomomorphism, "identity does not act as the identity");
  for (Elem s : group_.generators())
    for (Elem g : group_.elements())
      if (action(G.mul(s, g)) != action(s) * action(g))
        throw Error(Errc::NotAHomomorphism, "fails at " + G.name(s) + " * " + G.name(g), {s, g});
}

KModule KModule::from_generators(Subgroup group, std::int64_t field, Eigen::Index dim,
                                 const std::vector<std::pair<Elem, FpMatrix>>& images) {
  const PermGroup& G = group.group();
  std::vector<std::optional<FpMatrix>> m(group.order());
  m[0] = FpMatrix::identity(field, dim);
  std::vector<Elem> queue{PermGroup::identity()};
  for (const auto& [s, a] : images) {
    if (!group.contains(s)) throw Error(Errc::ElementNotInGroup, G.name(s));
    if (a.rows() != dim || a.cols() != dim) throw Error(Errc::DimensionMismatch, "generator image has wrong size");
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    Elem x = queue[head];
    for (const auto& [s, a] : images) {
      Elem y = G.mul(s, x);
      auto pos = *group.position(y);
      if (!m[pos]) {
        m[pos] = a * *m[*group.position(x)];
        queue.push_back(y);
      }
    }
  }
  std::vector<FpMatrix> out;
  for (auto& o : m) {
    if (!o) throw Error(Errc::NotAHomomorphism, "images do not cover a generating set");
    out.push_back(std::move(*o));
  }
  KModule mod(std::move(group), field, dim, std::move(out));
  for (const auto& [s, a] : images)
    if (mod.action(s) != a) throw Error(Errc::NotAHomomorphism, "generator images are inconsistent", {s});
  return mod;
}

KModule KModule::trivial(Subgroup group, std::int64_t field, Eigen::Index dim) {
  std::vector<FpMatrix> m(group.order(), FpMatrix::identity(field, dim));
  return KModule(std::move(group), field, dim, std::move(m));
}

KModule KModule::character(Subgroup group, std::int64_t field, const std::vector<std::pair<Elem, std::int64_t>>& values) {
  std::vector<std::pair<Elem, FpMatrix>> images;
  for (auto [g, v] : values) images.emplace_back(g, FpMatrix::scalar(field, 1, v));
  return from_generators(std::move(group), field, 1, images);
}

const FpMatrix& KModule::action(Elem g) const {
  auto pos = group_.position(g);
  if (!pos) throw Error(Errc::ElementNotInGroup, group_.group().name(g) + " is not in the module's group", {g});
  return matrices_[*pos];
}

KModule restrict_module(const KModule& w, const Subgroup& k) {
  if (!k.is_subgroup_of(w.group())) throw Error(Errc::NotASubgroupOf, "restriction to a non-subgroup");
  std::vector<FpMatrix> m;
  for (Elem x : k.elements()) m.push_back(w.action(x));
  return KModule(k, w.field(), w.dim(), std::move(m));
}

KModule twisted_restriction(const KModule& w, const Subgroup& k, Elem g) {
  const PermGroup& G = k.group();
  G.check_element(g);
  std::vector<FpMatrix> m;
  for (Elem x : k.elements()) {
    Elem c = G.conj(g, x);
    if (!w.group().contains(c))
      throw Error(Errc::ConjugateNotContained, "g K g^-1 is not inside H for g = " + G.name(g), {g});
    m.push_back(w.action(c));
  }
  return KModule(k, w.field(), w.dim(), std::move(m));
}

FpMatrix tau(const KModule& w, const Subgroup& k, Elem h) {
  if (!w.group().contains(h)) throw Error(Errc::ElementNotInGroup, "τ_h needs h in H", {h});
  const FpMatrix& t = w.action(h);
  if (!is_linear(t, restrict_module(w, k), twisted_restriction(w, k, h)))
    throw Error(Errc::NotAMorphism, "τ_h does not intertwine", {h});
  return t;
}

bool is_linear(const FpMatrix& f, const KModule& a, const KModule& b) {
  if (!(a.group() == b.group())) throw Error(Errc::NotASubgroupOf, "modules over different subgroups");
  if (f.rows() != b.dim() || f.cols() != a.dim()) return false;
  for (Elem s : a.group().generators())
    if (f * a.action(s) != b.action(s) * f) return false;
  return true;
}

std::vector<FpMatrix> hom_basis(const KModule& a, const KModule& b) {
  if (!(a.group() == b.group())) throw Error(Errc::NotASubgroupOf, "modules over different subgroups");
  if (a.field() != b.field()) throw Error(Errc::FieldMismatch, "modules over different fields");
  const std::int64_t p = a.field();
  const Eigen::Index da = a.dim(), db = b.dim();
  std::vector<FpMatrix> blocks;
  // vec(F A) - vec(B F) = (A^T ⊗ I - I ⊗ B) vec(F), column-major vec.
  for (Elem s : a.group().generators())
    blocks.push_back(kron(a.action(s).transpose(), FpMatrix::identity(p, db)) -
                     kron(FpMatrix::identity(p, da), b.action(s)));
  FpMatrix sys = blocks.empty() ? FpMatrix(p, 0, da * db) : vstack(blocks);
  FpMatrix ns = nullspace(sys);
  std::vector<FpMatrix> out;
  for (Eigen::Index k = 0; k < ns.cols(); ++k) {
    FpMatrix f(p, db, da);
    for (Eigen::Index j = 0; j < da; ++j)
      for (Eigen::Index i = 0; i < db; ++i) f.set(i, j, ns(j * db + i, k));
    out.push_back(std::move(f));
  }
  return out;
}

std::optional<FpMatrix> find_isomorphism(const KModule& a, const KModule& b, std::uint64_t seed) {
  if (a.dim() != b.dim()) return std::nullopt;
  const std::int64_t p = a.field();
  if (a.dim() == 0) return FpMatrix(p, 0, 0);
  auto basis = hom_basis(a, b);
  if (basis.empty()) return std::nullopt;
  for (const auto& f : basis)
    if (is_invertible(f)) return f;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> d(0, p - 1);
  for (int trial = 0; trial < 200; ++trial) {
    FpMatrix f(p, b.dim(), a.dim());
    for (const auto& v : basis) f = f + d(rng) * v;
    if (is_invertible(f)) return f;
  }
  // exhaustive when p^k is small
  double space = 1;
  for (std::size_t i = 0; i < basis.size(); ++i) space *= static_cast<double>(p);
  if (space > 1e6) return std::nullopt;
  std::vector<std::int64_t> c(basis.size(), 0);
  while (true) {
    std::size_t i = 0;
    while (i < c.size() && ++c[i] == p) c[i++] = 0;
    if (i == c.size()) break;
    FpMatrix f(p, b.dim(), a.dim());
    for (std::size_t k = 0; k < basis.size(); ++k)
      if (c[k]) f = f + c[k] * basis[k];
    if (is_invertible(f)) return f;
  }
  return std::nullopt;
}

KModule direct_sum(const KModule& a, const KModule& b) {
  if (!(a.group() == b.group())) throw Error(Errc::NotASubgroupOf, "modules over different subgroups");
  std::vector<FpMatrix> m;
  for (std::size_t i = 0; i < a.matrices().size(); ++i) {
    FpMatrix blocks[2] = {a.matrices()[i], b.matrices()[i]};
    m.push_back(sipp::direct_sum(blocks));
  }
  return KModule(a.group(), a.field(), a.dim() + b.dim(), std::move(m));
}

KModule tensor(const KModule& a, const KModule& b) {
  if (!(a.group() == b.group())) throw Error(Errc::NotASubgroupOf, "modules over different subgroups");
  std::vector<FpMatrix> m;
  for (std::size_t i = 0; i < a.matrices().size(); ++i) m.push_back(kron(a.matrices()[i], b.matrices()[i]));
  return KModule(a.group(), a.field(), a.dim() * b.dim(), std::move(m));
}

KModule change_basis(const KModule& w, const FpMatrix& b) {
  auto bi = inverse(b);
  if (!bi) throw Error(Errc::NotInvertible, "basis change");
  std::vector<FpMatrix> m;
  for (const auto& x : w.matrices()) m.push_back(*bi * x * b);
  return KModule(w.group(), w.field(), w.dim(), std::move(m));
}

std::vector<KModule> characters(const Subgroup& h, std::int64_t field) {
  auto gens = h.generators();
  std::vector<KModule> out;
  std::vector<std::int64_t> v(gens.size(), 1);
  while (true) {
    std::vector<std::pair<Elem, std::int64_t>> values;
    for (std::size_t i = 0; i < gens.size(); ++i) values.emplace_back(gens[i], v[i]);
    try {
      out.push_back(KModule::character(h, field, values));
    } catch (const Error& e) {
      if (e.code() != Errc::NotAHomomorphism) throw;
    }
    std::size_t i = 0;
    while (i < v.size() && ++v[i] == field) v[i++] = 1;
    if (i == v.size()) break;
  }
  return out;
}

KModule permutation_module(const Subgroup& h, const Subgroup& k, std::int64_t field) {
  if (!k.is_subgroup_of(h)) throw Error(Errc::NotASubgroupOf, "permutation module");
  const PermGroup& G = h.group();
  // cosets xK with x in H, labelled by minimal element
  std::vector<std::int64_t> coset(G.order(), -1);
  std::vector<Elem> reps;
  for (Elem x : h.elements()) {
    if (coset[x] >= 0) continue;
    for (Elem y : k.elements()) coset[G.mul(x, y)] = static_cast<std::int64_t>(reps.size());
    reps.push_back(x);
  }
  const auto n = static_cast<Eigen::Index>(reps.size());
  std::vector<FpMatrix> m;
  for (Elem g : h.elements()) {
    FpMatrix a(field, n, n);
    for (Eigen::Index c = 0; c < n; ++c) a.set(coset[G.mul(g, reps[static_cast<std::size_t>(c)])], c, 1);
    m.push_back(std::move(a));
  }
  return KModule(h, field, n, std::move(m));
}

KModule random_module(const Subgroup& h, std::int64_t field, Eigen::Index dim, std::mt19937_64& rng) {
  auto chars = characters(h, field);
  const PermGroup& G = h.group();
  std::vector<KModule> pieces;
  Eigen::Index left = dim;
  while (left > 0) {
    if (std::uniform_int_distribution<int>(0, 1)(rng) == 0) {
      Elem x = h.elements()[std::uniform_int_distribution<std::size_t>(0, h.order() - 1)(rng)];
      Elem xs[1] = {x};
      Subgroup k = Subgroup::generated_by(h.group_ptr(), xs);
      auto idx = static_cast<Eigen::Index>(h.order() / k.order());
      if (idx > 1 && idx <= left) {
        pieces.push_back(permutation_module(h, k, field));
        left -= idx;
        continue;
      }
    }
    pieces.push_back(chars[std::uniform_int_distribution<std::size_t>(0, chars.size() - 1)(rng)]);
    left -= 1;
  }
  (void)G;
  KModule m = pieces[0];
  for (std::size_t i = 1; i < pieces.size(); ++i) m = direct_sum(m, pieces[i]);
  return change_basis(m, random_invertible(field, dim, rng));
}

}  // namespace sipp
