#include "sipp/descent.hpp"

#include <algorithm>
#include <string>

#include "sipp/error.hpp"

namespace sipp {

namespace {

std::string join_names(const PermGroup& G, const std::vector<Elem>& elems) {
  std::string out;
  for (Elem g : elems) out += (out.empty() ? "" : ", ") + G.name(g);
  return out;
}

}  // namespace

DescentDatum canonical_datum(const GMap& alpha, const Representation& v) {
  Representation w = pullback_rep(alpha, v);
  FiberPowers powers(alpha, 2);
  // pr1*α*V and pr2*α*V are the same data
  RepMorphism s = identity_morphism(pullback_rep(powers.structure_map(2), v));
  return {alpha, std::move(w), std::move(s)};
}

void check_descent_datum(const DescentDatum& d) {
  FiberPowers powers(d.cover, 3);
  const GMap pr1 = powers.projection(2, {0});
  const GMap pr2 = powers.projection(2, {1});
  if (!(d.s.source() == pullback_rep(pr2, d.w)) || !(d.s.target() == pullback_rep(pr1, d.w)))
    throw Error(Errc::NotAMorphism, "gluing map is not pr2*W -> pr1*W");
  for (Point t = 0; t < d.s.components().size(); ++t)
    if (!is_invertible(d.s.component(t)))
      throw Error(Errc::NotInvertible, "gluing map is singular at " + powers.set(2)->label(t), {t});
  const auto s12 = pullback_morphism(powers.projection(3, {0, 1}), d.s);
  const auto s23 = pullback_morphism(powers.projection(3, {1, 2}), d.s);
  const auto s13 = pullback_morphism(powers.projection(3, {0, 2}), d.s);
  const auto rhs = compose(s12, s23);
  for (Point t = 0; t < s13.components().size(); ++t)
    if (s13.component(t) != rhs.component(t))
      throw Error(Errc::CocycleViolated, "pr13*s != pr12*s pr23*s at " + powers.set(3)->label(t), {t});
}

bool is_descent_datum(const DescentDatum& d) {
  try {
    check_descent_datum(d);
    return true;
  } catch (const Error& e) {
    if (e.code() == Errc::NotInvertible || e.code() == Errc::CocycleViolated || e.code() == Errc::NotAMorphism)
      return false;
    throw;
  }
}

DescentSolution solve_descent(const DescentDatum& d, bool validate) {
  if (validate) check_descent_datum(d);
  const GMap& alpha = d.cover;
  const GSet& X = *alpha.target();
  const PermGroup& G = X.group();
  const std::int64_t l = d.w.field();
  FiberPowers powers(alpha, 2);
  const Representation pushed = pushforward_rep(alpha, d.w);

  std::vector<FpMatrix> basis(X.size());
  std::vector<std::vector<Eigen::Index>> offset(X.size());
  for (Point x = 0; x < X.size(); ++x) {
    auto fiber = alpha.fiber(x);
    Eigen::Index total = 0;
    for (Point u : fiber) {
      offset[x].push_back(total);
      total += d.w.dim(u);
    }
    std::vector<FpMatrix> rows;
    for (std::size_t i = 0; i < fiber.size(); ++i)
      for (std::size_t j = 0; j < fiber.size(); ++j) {
        Point pair[2] = {fiber[i], fiber[j]};
        const FpMatrix& s = d.s.component(*powers.index_of(pair));
        // w_u - s_{(u,u')} w_{u'}
        FpMatrix r(l, d.w.dim(fiber[i]), total);
        const FpMatrix id = FpMatrix::identity(l, d.w.dim(fiber[i]));
        if (i == j) {
          r.set_block(0, offset[x][i], id - s);
        } else {
          r.set_block(0, offset[x][i], id);
          r.set_block(0, offset[x][j], FpMatrix(l, s.rows(), s.cols()) - s);
        }
        rows.push_back(std::move(r));
      }
    basis[x] = rows.empty() ? FpMatrix::identity(l, total) : nullspace(vstack(rows));
  }

  std::vector<Eigen::Index> dims(X.size());
  for (Point x = 0; x < X.size(); ++x) dims[x] = basis[x].cols();
  std::vector<FpMatrix> left(X.size());
  for (Point x = 0; x < X.size(); ++x) left[x] = left_inverse(basis[x]);
  std::vector<std::vector<FpMatrix>> t(G.order());
  for (Elem g = 0; g < G.order(); ++g)
    for (Point x = 0; x < X.size(); ++x) {
      const Point gx = X.act(g, x);
      FpMatrix image = pushed.transition(g, x) * basis[x];
      FpMatrix m = left[gx] * image;
      if (basis[gx] * m != image)
        throw Error(Errc::NotEffective, "equalizer at " + X.label(x) + " is not carried into the one at " +
                                            X.label(gx) + " by " + G.name(g), {g});
      t[g].push_back(std::move(m));
    }
  Representation v(alpha.target(), l, std::move(dims), std::move(t));

  std::vector<FpMatrix> f;
  for (Point u = 0; u < alpha.source()->size(); ++u) {
    const Point x = alpha(u);
    auto fiber = alpha.fiber(x);
    auto i = static_cast<std::size_t>(std::lower_bound(fiber.begin(), fiber.end(), u) - fiber.begin());
    FpMatrix fu = basis[x].block(offset[x][i], 0, d.w.dim(u), basis[x].cols());
    if (!fu.is_square() || !is_invertible(fu))
      throw Error(Errc::NotEffective, "descended object does not restrict to W at point " + alpha.source()->label(u),
                  {u});
    f.push_back(std::move(fu));
  }
  RepMorphism fm(pullback_rep(alpha, v), d.w, std::move(f));
  return {std::move(v), std::move(fm)};
}

FpMatrix glue_morphism(const Subgroup& h, const KModule& v1, const KModule& v2, const FpMatrix& f) {
  const PermGroup& G = h.group();
  if (v1.field() != v2.field()) throw Error(Errc::FieldMismatch, "modules over different fields");
  if (static_cast<std::int64_t>(h.index()) % v1.field() == 0)
    throw Error(Errc::PreconditionViolated, "[G:H] is divisible by the characteristic");
  if (v1.group().order() != G.order() || v2.group().order() != G.order())
    throw Error(Errc::NotASubgroupOf, "glue_morphism needs modules over all of G");
  if (!is_linear(f, restrict_module(v1, h), restrict_module(v2, h)))
    throw Error(Errc::NotAMorphism, "f is not H-linear");
  std::vector<Elem> bad;
  for (Elem g = 0; g < G.order(); ++g)
    if (f * v1.action(g) != v2.action(g) * f) bad.push_back(g);
  if (!bad.empty()) throw Error(Errc::CompatibilityFailed, "fails for g in {" + join_names(G, bad) + "}", bad);
  return f;
}

SigmaFamily sigma_from_module(const KModule& v, const Subgroup& h) {
  return {h, restrict_module(v, h), v.matrices()};
}

bool twisted_intertwiner_exists(const KModule& w, Elem g, std::uint64_t seed) {
  Subgroup k = bracket_subgroup(w.group(), g);
  return find_isomorphism(restrict_module(w, k), twisted_restriction(w, k, g), seed).has_value();
}

Extension extend_representation(const SigmaFamily& s) {
  const Subgroup& H = s.h;
  const PermGroup& G = H.group();
  const KModule& W = s.w;
  const std::int64_t l = W.field();
  if (!(W.group() == H)) throw Error(Errc::NotASubgroupOf, "W is not a module over H");
  if (s.sigma.size() != G.order()) throw Error(Errc::DimensionMismatch, "one σ per group element");
  if (static_cast<std::int64_t>(H.index()) % l == 0)
    throw Error(Errc::PreconditionViolated, "[G:H] is divisible by the characteristic");
  for (Elem g = 0; g < G.order(); ++g)
    if (!twisted_intertwiner_exists(W, g))
      throw Error(Errc::PreconditionViolated, "no isomorphism Res W -> ᵍRes W on H[g] for g = " + G.name(g), {g});

  for (Elem g = 0; g < G.order(); ++g) {
    const FpMatrix& sg = s.sigma[g];
    Subgroup k = bracket_subgroup(H, g);
    if (sg.rows() != W.dim() || sg.cols() != W.dim() || !is_invertible(sg) ||
        !is_linear(sg, restrict_module(W, k), twisted_restriction(W, k, g)))
      throw Error(Errc::SigmaNotIntertwiner, "σ at " + G.name(g), {g});
  }
  for (Elem h : H.elements())
    if (s.sigma[h] != W.action(h)) throw Error(Errc::ConditionIFailed, "σ_h != τ_h for h = " + G.name(h), {h});
  for (Elem g1 = 0; g1 < G.order(); ++g1)
    for (Elem g2 = 0; g2 < G.order(); ++g2)
      if (s.sigma[G.mul(g2, g1)] != s.sigma[g2] * s.sigma[g1])
        throw Error(Errc::ConditionIIFailed, "σ_{g2 g1} != σ_{g2} σ_{g1} for g1 = " + G.name(g1) + ", g2 = " + G.name(g2),
                    {g1, g2});

  KModule v(Subgroup::whole(H.group_ptr()), l, W.dim(), s.sigma);
  if (!(restrict_module(v, H) == W)) throw Error(Errc::NotAHomomorphism, "extension does not restrict to W");
  return {std::move(v), FpMatrix::identity(l, W.dim())};
}

}  // namespace sipp
