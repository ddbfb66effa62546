#include "sipp/pic.hpp"

#include <algorithm>

#include "sipp/error.hpp"

namespace sipp {

bool PicCocycle::is_zero() const {
  return std::all_of(cls.begin(), cls.end(), [](std::int64_t x) { return x == 0; });
}

PicCocycle pic_cocycle(const CechComplex& c, const Representation& w, const RepMorphism& xi) {
  const GMap& alpha = c.cover();
  if (!same_gset(alpha.source(), w.set_ptr())) throw Error(Errc::WrongBaseGSet, "W is not over the cover's source");
  for (Point u = 0; u < w.set().size(); ++u)
    if (w.dim(u) != 1) throw Error(Errc::NotInvertible, "W is not one-dimensional at " + w.set().label(u), {u});
  const std::int64_t l = w.field();
  FiberPowers powers(alpha, 2);
  if (!(xi.source() == pullback_rep(powers.projection(2, {1}), w)) ||
      !(xi.target() == pullback_rep(powers.projection(2, {0}), w)))
    throw Error(Errc::NotAMorphism, "ξ is not pr2*W -> pr1*W");
  for (Point t = 0; t < xi.components().size(); ++t)
    if (xi.component(t)(0, 0) == 0) throw Error(Errc::NotAnIsomorphism, "ξ vanishes at " + powers.set(2)->label(t), {t});

  auto scalar = [&](Point a, Point b) {
    Point pair[2] = {a, b};
    return xi.component(*powers.index_of(pair))(0, 0);
  };
  PicCocycle out;
  for (const auto& t : c.basis_representatives(2)) {
    std::int64_t z = inv_mod(scalar(t[0], t[2]), l) * scalar(t[0], t[1]) % l * scalar(t[1], t[2]) % l;
    out.values.push_back(z);
    out.logs.push_back(l == 2 ? 0 : discrete_log(z, l));
  }
  const std::int64_t m = l - 1;
  if (!is_cocycle(c.complex(), 2, m, out.logs)) throw Error(Errc::CocycleViolated, "d ζ != 0");
  out.group = cyclic_cohomology(c.complex(), 2, m);
  out.cls = cohomology_class(c.complex(), 2, m, out.logs);
  return out;
}

PicCocycle pic_cocycle(const CechComplex& c, const Representation& w, const RepMorphism& xi,
                       const RepMorphism& other) {
  PicCocycle a = pic_cocycle(c, w, xi);
  PicCocycle b = pic_cocycle(c, w, other);
  if (a.cls != b.cls) throw Error(Errc::CocycleViolated, "the class depends on the choice of ξ");
  return a;
}

}  // namespace sipp
