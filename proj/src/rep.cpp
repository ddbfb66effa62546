#include "sipp/rep.hpp"

#include <algorithm>
#include <map>
#include <optional>

#include "sipp/error.hpp"

namespace sipp {

namespace {

void check_same_field(const Representation& a, const Representation& b) {
  if (a.field() != b.field()) throw Error(Errc::FieldMismatch, "representations over different fields");
}

void check_same_set(const Representation& a, const Representation& b) {
  if (!same_gset(a.set_ptr(), b.set_ptr())) throw Error(Errc::NotAMorphism, "representations over different G-sets");
}

void check_target(const GMap& alpha, const Representation& v) {
  if (!same_gset(alpha.target(), v.set_ptr()))
    throw Error(Errc::TargetMismatch, "representation does not live on the map's target");
}

void check_source(const GMap& alpha, const Representation& w) {
  if (!same_gset(alpha.source(), w.set_ptr()))
    throw Error(Errc::TargetMismatch, "representation does not live on the map's source");
}

// Offsets of the fiber blocks of α_*W over x.
struct FiberBlocks {
  std::vector<Point> points;
  std::vector<Eigen::Index> offset;
  Eigen::Index total = 0;
  Eigen::Index at(Point y) const {
    auto it = std::lower_bound(points.begin(), points.end(), y);
    return offset[static_cast<std::size_t>(it - points.begin())];
  }
};

std::vector<FiberBlocks> fiber_blocks(const GMap& alpha, const Representation& w) {
  std::vector<FiberBlocks> out(alpha.target()->size());
  for (Point y = 0; y < alpha.source()->size(); ++y) {
    auto& b = out[alpha(y)];
    b.points.push_back(y);
    b.offset.push_back(b.total);
    b.total += w.dim(y);
  }
  return out;
}

}  // namespace

Representation::Representation(GSetPtr set, std::int64_t field, std::vector<Eigen::Index> dims,
                               std::vector<std::vector<FpMatrix>> transitions) {
  check_field(field);
  const GSet& X = *set;
  const PermGroup& G = X.group();
  if (dims.size() != X.size()) throw Error(Errc::DimensionMismatch, "one dimension per point");
  if (transitions.size() != G.order()) throw Error(Errc::NotAHomomorphism, "one transition family per element");
  for (Elem g = 0; g < G.order(); ++g) {
    if (transitions[g].size() != X.size()) throw Error(Errc::NotAHomomorphism, "one transition per point");
    for (Point x = 0; x < X.size(); ++x) {
      const FpMatrix& t = transitions[g][x];
      if (t.field() != field) throw Error(Errc::FieldMismatch, "transition over another field");
      if (t.cols() != dims[x] || t.rows() != dims[X.act(g, x)])
        throw Error(Errc::DimensionMismatch, "transition " + G.name(g) + " at point " + std::to_string(x), {g});
    }
  }
  for (Point x = 0; x < X.size(); ++x)
    if (!transitions[0][x].is_identity()) throw Error(Errc::NotAHomomorphism, "V_1 is not the identity");
  for (Elem s : G.generator_elements())
    for (Elem g = 0; g < G.order(); ++g)
      for (Point x = 0; x < X.size(); ++x)
        if (transitions[G.mul(s, g)][x] != transitions[s][X.act(g, x)] * transitions[g][x])
          throw Error(Errc::NotAHomomorphism,
                      "V_{s g} != V_s V_g for s = " + G.name(s) + ", g = " + G.name(g) + " at " + std::to_string(x),
                      {s, g});
  d_ = std::make_shared<const Data>(Data{std::move(set), field, std::move(dims), std::move(transitions)});
}

Representation Representation::from_generators(GSetPtr set, std::int64_t field, std::vector<Eigen::Index> dims,
                                               const std::vector<std::vector<FpMatrix>>& generator_transitions) {
  const GSet& X = *set;
  const PermGroup& G = X.group();
  const auto& gens = G.generator_elements();
  if (generator_transitions.size() != gens.size()) throw Error(Errc::NotAHomomorphism, "one family per generator");
  std::vector<std::vector<FpMatrix>> t(G.order());
  for (Point x = 0; x < X.size(); ++x) t[0].push_back(FpMatrix::identity(field, dims[x]));
  for (Elem g : G.bfs_order()) {
    if (g == PermGroup::identity()) continue;
    std::size_t s = G.tree_gen(g);
    Elem parent = G.tree_parent(g);
    t[g].reserve(X.size());
    for (Point x = 0; x < X.size(); ++x) {
      const FpMatrix& a = generator_transitions[s].at(X.act(parent, x));
      const FpMatrix& b = t[parent][x];
      if (a.cols() != b.rows()) throw Error(Errc::DimensionMismatch, "generator transition has wrong size");
      t[g].push_back(a * b);
    }
  }
  Representation v(std::move(set), field, std::move(dims), std::move(t));
  for (std::size_t i = 0; i < gens.size(); ++i)
    if (v.d_->transitions[gens[i]] != generator_transitions[i])
      throw Error(Errc::NotAHomomorphism, "generator transitions are inconsistent", {gens[i]});
  return v;
}

Representation Representation::unit(GSetPtr set, std::int64_t field) {
  const std::size_t n = set->size();
  std::vector<std::vector<FpMatrix>> t(set->group().order(), std::vector<FpMatrix>(n, FpMatrix::identity(field, 1)));
  return Representation(std::move(set), field, std::vector<Eigen::Index>(n, 1), std::move(t));
}

bool operator==(const Representation& a, const Representation& b) {
  if (a.d_ == b.d_) return true;
  if (!a.d_ || !b.d_) return false;
  if (a.field() != b.field() || a.dims() != b.dims() || !same_gset(a.set_ptr(), b.set_ptr())) return false;
  for (Elem s : a.set().group().generator_elements())
    if (a.transitions()[s] != b.transitions()[s]) return false;
  return true;
}

RepMorphism::RepMorphism(Representation source, Representation target, std::vector<FpMatrix> components)
    : source_(std::move(source)), target_(std::move(target)), components_(std::move(components)) {
  check_same_field(source_, target_);
  check_same_set(source_, target_);
  const GSet& X = source_.set();
  if (components_.size() != X.size()) throw Error(Errc::NotAMorphism, "one component per point");
  for (Point x = 0; x < X.size(); ++x) {
    const FpMatrix& f = components_[x];
    if (f.field() != source_.field()) throw Error(Errc::FieldMismatch, "component over another field");
    if (f.rows() != target_.dim(x) || f.cols() != source_.dim(x))
      throw Error(Errc::DimensionMismatch, "component at point " + std::to_string(x) + " has wrong size");
  }
  for (Elem s : X.group().generator_elements())
    for (Point x = 0; x < X.size(); ++x)
      if (target_.transition(s, x) * components_[x] != components_[X.act(s, x)] * source_.transition(s, x))
        throw Error(Errc::NotAMorphism,
                    "not equivariant at point " + std::to_string(x) + " for " + X.group().name(s), {s});
}

RepMorphism identity_morphism(const Representation& v) {
  std::vector<FpMatrix> c;
  for (Point x = 0; x < v.set().size(); ++x) c.push_back(FpMatrix::identity(v.field(), v.dim(x)));
  return RepMorphism(v, v, std::move(c));
}

RepMorphism compose(const RepMorphism& f, const RepMorphism& g) {
  if (!(g.target() == f.source())) throw Error(Errc::NotAMorphism, "composition of non-composable morphisms");
  std::vector<FpMatrix> c;
  for (Point x = 0; x < f.components().size(); ++x) c.push_back(f.component(x) * g.component(x));
  return RepMorphism(g.source(), f.target(), std::move(c));
}

bool is_isomorphism(const RepMorphism& f) {
  for (const auto& c : f.components())
    if (!is_invertible(c)) return false;
  return true;
}

RepMorphism inverse(const RepMorphism& f) {
  std::vector<FpMatrix> c;
  for (Point x = 0; x < f.components().size(); ++x) {
    auto inv = sipp::inverse(f.component(x));
    if (!inv) throw Error(Errc::NotInvertible, "component at point " + std::to_string(x));
    c.push_back(std::move(*inv));
  }
  return RepMorphism(f.target(), f.source(), std::move(c));
}

Representation pullback_rep(const GMap& alpha, const Representation& v) {
  check_target(alpha, v);
  const GSet& Y = *alpha.source();
  const PermGroup& G = Y.group();
  std::vector<Eigen::Index> dims(Y.size());
  for (Point y = 0; y < Y.size(); ++y) dims[y] = v.dim(alpha(y));
  std::vector<std::vector<FpMatrix>> t(G.order());
  for (Elem g = 0; g < G.order(); ++g) {
    t[g].reserve(Y.size());
    for (Point y = 0; y < Y.size(); ++y) t[g].push_back(v.transition(g, alpha(y)));
  }
  return Representation(alpha.source(), v.field(), std::move(dims), std::move(t));
}

RepMorphism pullback_morphism(const GMap& alpha, const RepMorphism& f) {
  std::vector<FpMatrix> c;
  for (Point y = 0; y < alpha.source()->size(); ++y) c.push_back(f.component(alpha(y)));
  return RepMorphism(pullback_rep(alpha, f.source()), pullback_rep(alpha, f.target()), std::move(c));
}

Representation pushforward_rep(const GMap& alpha, const Representation& w) {
  check_source(alpha, w);
  const GSet& X = *alpha.target();
  const GSet& Y = *alpha.source();
  const PermGroup& G = X.group();
  auto blocks = fiber_blocks(alpha, w);
  std::vector<Eigen::Index> dims(X.size());
  for (Point x = 0; x < X.size(); ++x) dims[x] = blocks[x].total;
  std::vector<std::vector<FpMatrix>> t(G.order());
  for (Elem g = 0; g < G.order(); ++g) {
    t[g].reserve(X.size());
    for (Point x = 0; x < X.size(); ++x) {
      const Point gx = X.act(g, x);
      FpMatrix m(w.field(), dims[gx], dims[x]);
      const auto& b = blocks[x];
      for (std::size_t i = 0; i < b.points.size(); ++i) {
        Point y = b.points[i];
        m.set_block(blocks[gx].at(Y.act(g, y)), b.offset[i], w.transition(g, y));
      }
      t[g].push_back(std::move(m));
    }
  }
  return Representation(alpha.target(), w.field(), std::move(dims), std::move(t));
}

RepMorphism pushforward_morphism(const GMap& alpha, const RepMorphism& f) {
  auto src = pushforward_rep(alpha, f.source());
  auto tgt = pushforward_rep(alpha, f.target());
  auto bs = fiber_blocks(alpha, f.source());
  auto bt = fiber_blocks(alpha, f.target());
  std::vector<FpMatrix> c;
  for (Point x = 0; x < alpha.target()->size(); ++x) {
    FpMatrix m(src.field(), tgt.dim(x), src.dim(x));
    for (std::size_t i = 0; i < bs[x].points.size(); ++i)
      m.set_block(bt[x].offset[i], bs[x].offset[i], f.component(bs[x].points[i]));
    c.push_back(std::move(m));
  }
  return RepMorphism(std::move(src), std::move(tgt), std::move(c));
}

RepMorphism adjunction_unit(const GMap& alpha, const Representation& v) {
  auto w = pullback_rep(alpha, v);
  auto target = pushforward_rep(alpha, w);
  std::vector<FpMatrix> c;
  for (Point x = 0; x < v.set().size(); ++x) {
    const auto n = static_cast<Eigen::Index>(alpha.fiber(x).size());
    std::vector<FpMatrix> stack(static_cast<std::size_t>(n), FpMatrix::identity(v.field(), v.dim(x)));
    c.push_back(n == 0 ? FpMatrix(v.field(), 0, v.dim(x)) : vstack(stack));
  }
  return RepMorphism(v, std::move(target), std::move(c));
}

RepMorphism adjunction_counit(const GMap& alpha, const Representation& w) {
  auto pushed = pushforward_rep(alpha, w);
  auto source = pullback_rep(alpha, pushed);
  auto blocks = fiber_blocks(alpha, w);
  std::vector<FpMatrix> c;
  for (Point y = 0; y < w.set().size(); ++y) {
    FpMatrix m(w.field(), w.dim(y), source.dim(y));
    m.set_block(0, blocks[alpha(y)].at(y), FpMatrix::identity(w.field(), w.dim(y)));
    c.push_back(std::move(m));
  }
  return RepMorphism(std::move(source), w, std::move(c));
}

RepMorphism averaging_retraction(const GMap& alpha, const Representation& v) {
  auto unit = adjunction_unit(alpha, v);
  const GSet& X = *alpha.target();
  const std::int64_t l = v.field();
  auto uorb = orbit_labels(*alpha.source());
  auto xorb = orbit_labels(X);
  // chosen source orbit per target orbit
  std::vector<std::optional<std::uint32_t>> chosen(xorb.representatives.size());
  for (std::size_t o = 0; o < chosen.size(); ++o) {
    Point x = xorb.representatives[o];
    std::map<std::uint32_t, std::int64_t> count;
    for (Point u : alpha.fiber(x)) ++count[uorb.orbit_of[u]];
    for (auto [orb, c] : count)
      if (c % l != 0) {
        chosen[o] = orb;
        break;
      }
    if (!chosen[o])
      throw Error(Errc::IndexNotInvertible,
                  "no source orbit over " + X.label(x) + " meets the fiber in a number of points prime to " +
                      std::to_string(l),
                  {x});
  }
  std::vector<FpMatrix> c;
  for (Point x = 0; x < X.size(); ++x) {
    auto fiber = alpha.fiber(x);
    const auto orb = *chosen[xorb.orbit_of[x]];
    const Eigen::Index d = v.dim(x);
    FpMatrix m(l, d, unit.target().dim(x));
    std::int64_t count = 0;
    for (std::size_t i = 0; i < fiber.size(); ++i)
      if (uorb.orbit_of[fiber[i]] == orb) {
        m.set_block(0, static_cast<Eigen::Index>(i) * d, FpMatrix::identity(l, d));
        ++count;
      }
    c.push_back(inv_mod(count % l, l) * m);
  }
  RepMorphism pi(unit.target(), v, std::move(c));
  if (!(compose(pi, unit) == identity_morphism(v)))
    throw Error(Errc::NotAMorphism, "averaging map is not a retraction of the unit");
  return pi;
}

RepMorphism beck_chevalley(const PullbackSquare& sq, const Representation& v) {
  if (!is_pullback(sq.beta_prime, sq.alpha_prime, sq.alpha, sq.beta))
    throw Error(Errc::NotAPullback, "square is not a pullback");
  const Representation pushed = pushforward_rep(sq.alpha, v);
  const Representation top = pullback_rep(sq.beta, pushed);  // β*α_*V
  RepMorphism eta = adjunction_unit(sq.alpha_prime, top);   // -> α'_*α'^*β*α_*V
  RepMorphism eps = adjunction_counit(sq.alpha, v);          // α*α_*V -> V
  RepMorphism tail = pushforward_morphism(sq.alpha_prime, pullback_morphism(sq.beta_prime, eps));
  // α'^*β^* = β'^*α^* holds on the nose, so the two halves compose directly.
  RepMorphism bc = compose(tail, eta);

  const GSet& Xp = *sq.alpha_prime.target();
  auto top_blocks = fiber_blocks(sq.alpha, v);
  const Representation bottom = bc.target();
  std::vector<FpMatrix> closed;
  for (Point xp = 0; xp < Xp.size(); ++xp) {
    const auto& src = top_blocks[sq.beta(xp)];
    FpMatrix m(v.field(), bottom.dim(xp), top.dim(xp));
    Eigen::Index row = 0;
    for (Point yp : sq.alpha_prime.fiber(xp)) {
      Point y = sq.beta_prime(yp);
      m.set_block(row, src.at(y), FpMatrix::identity(v.field(), v.dim(y)));
      row += v.dim(y);
    }
    closed.push_back(std::move(m));
  }
  if (bc.components() != closed) throw Error(Errc::NotAMorphism, "composite differs from the reindexing map");
  if (!is_isomorphism(bc)) throw Error(Errc::NotAnIsomorphism, "base change map is not invertible");
  return bc;
}

KModule iota_equiv(const CosetSpace& cs, const Representation& v) {
  if (!same_gset(cs.set, v.set_ptr())) throw Error(Errc::WrongBaseGSet, "representation is not over G/H");
  std::vector<FpMatrix> m;
  for (Elem h : cs.subgroup.elements()) m.push_back(v.transition(h, 0));
  return KModule(cs.subgroup, v.field(), v.dim(0), std::move(m));
}

Representation iota_inverse(const CosetSpace& cs, const KModule& w) {
  if (!(cs.subgroup == w.group())) throw Error(Errc::WrongBaseGSet, "module is not over the coset space's subgroup");
  const GSet& X = *cs.set;
  const PermGroup& G = X.group();
  std::vector<std::vector<FpMatrix>> t(G.order());
  for (Elem g = 0; g < G.order(); ++g)
    for (Point c = 0; c < X.size(); ++c) {
      Elem k = G.mul(G.inv(cs.representative(X.act(g, c))), G.mul(g, cs.representative(c)));
      t[g].push_back(w.action(k));
    }
  return Representation(cs.set, w.field(), std::vector<Eigen::Index>(X.size(), w.dim()), std::move(t));
}

RepMorphism iota_counit(const CosetSpace& cs, const Representation& v) {
  auto round = iota_inverse(cs, iota_equiv(cs, v));
  std::vector<FpMatrix> c;
  for (Point x = 0; x < cs.set->size(); ++x) c.push_back(v.transition(cs.representative(x), 0));
  return RepMorphism(std::move(round), v, std::move(c));
}

}  // namespace sipp
