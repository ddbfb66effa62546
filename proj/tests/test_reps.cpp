#include <doctest.h>

#include "sipp/descent.hpp"
#include "sipp/error.hpp"
#include "sipp/pic.hpp"
#include "sipp/rep.hpp"
#include "sipp/topology.hpp"
#include "support.hpp"

using namespace sipp;
using fx::el;
using fx::sub;

namespace {

Errc code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return Errc::ParseError;
}

KModule sign(std::int64_t l) {
  auto g = fx::s3();
  return KModule::character(Subgroup::whole(g), l, {{el(g, "(0 1)"), l - 1}, {el(g, "(0 1 2)"), 1}});
}

// Scalar c on every off-diagonal point of U×_X U, 1 on the diagonal.
RepMorphism scaled_gluing(const GMap& alpha, const Representation& w, std::int64_t c) {
  FiberPowers pw(alpha, 2);
  Representation src = pullback_rep(pw.projection(2, {1}), w), dst = pullback_rep(pw.projection(2, {0}), w);
  std::vector<FpMatrix> comps;
  for (Point t = 0; t < pw.set(2)->size(); ++t) {
    const auto& tu = pw.tuples(2)[t];
    comps.push_back(FpMatrix::scalar(w.field(), w.dim(tu[0]), tu[0] == tu[1] ? 1 : c));
  }
  return RepMorphism(src, dst, comps);
}

}  // namespace

TEST_SUITE("reps") {
  TEST_CASE("matrices over F_p") {
    FpMatrix a(5, {{1, 2}, {3, 4}});
    auto inv = inverse(a);
    REQUIRE(inv.has_value());
    CHECK(a * *inv == FpMatrix::identity(5, 2));
    FpMatrix s(3, {{1, 2}, {2, 1}});
    CHECK(rank(s) == 1);
    CHECK((s * nullspace(s)).is_zero());
    CHECK_FALSE(inverse(s).has_value());
    auto x = solve(a, FpMatrix(5, {{1}, {0}}));
    REQUIRE(x.has_value());
    CHECK(a * *x == FpMatrix(5, {{1}, {0}}));
    CHECK(kron(FpMatrix::identity(7, 2), FpMatrix(7, {{3}})) == FpMatrix::scalar(7, 2, 3));
    CHECK(discrete_log(pow_mod(primitive_root(11), 7, 11), 11) == 7);
    CHECK_THROWS_AS(check_field(4), Error);
    CHECK_THROWS_AS(check_field(46349), Error);
  }

  TEST_CASE("random matrix identities") {
    std::mt19937_64 rng(1);
    for (std::int64_t p : {2, 3, 5, 7}) {
      for (int t = 0; t < 30; ++t) {
        auto m = random_invertible(p, 1 + static_cast<Eigen::Index>(rng() % 4), rng);
        CHECK(m * *inverse(m) == FpMatrix::identity(p, m.rows()));
        auto r = random_matrix(p, 3, 5, rng);
        CHECK((r * nullspace(r)).is_zero());
        CHECK(static_cast<Eigen::Index>(nullspace(r).cols()) + rank(r) == 5);
        auto b = column_basis(r);
        CHECK(rank(b) == b.cols());
        CHECK(left_inverse(b) * b == FpMatrix::identity(p, b.cols()));
      }
    }
  }

  TEST_CASE("modules") {
    auto g = fx::s3();
    Subgroup G = Subgroup::whole(g);
    CHECK_THROWS_AS(KModule::from_generators(G, 3, 1, {{el(g, "(0 1)"), FpMatrix(3, {{1}})}, {el(g, "(0 1 2)"), FpMatrix(3, {{2}})}}), Error);
    CHECK(characters(G, 3).size() == 2);
    CHECK(characters(G, 7).size() == 2);
    CHECK(characters(sub(g, {"(0 1 2)"}), 7).size() == 3);
    CHECK(characters(Subgroup::whole(fx::c6()), 7).size() == 6);
    auto p = permutation_module(G, sub(g, {"(0 1)"}), 5);
    CHECK(p.dim() == 3);
    CHECK(hom_basis(KModule::trivial(G, 5), p).size() == 1);
    std::mt19937_64 rng(0);
    for (int t = 0; t < 20; ++t) {
      auto m = random_module(G, 5, 1 + static_cast<Eigen::Index>(t % 4), rng);
      auto b = random_invertible(5, m.dim(), rng);
      auto iso = find_isomorphism(m, change_basis(m, b), static_cast<std::uint64_t>(t));
      REQUIRE(iso.has_value());
      CHECK(is_linear(*iso, m, change_basis(m, b)));
    }
    CHECK_FALSE(find_isomorphism(KModule::trivial(G, 5), sign(5)).has_value());
  }

  TEST_CASE("twisted restriction") {
    auto g = fx::s3();
    Subgroup c3 = sub(g, {"(0 1 2)"});
    auto chi = KModule::character(c3, 7, {{el(g, "(0 1 2)"), 2}});
    auto twisted = twisted_restriction(chi, c3, el(g, "(0 1)"));
    CHECK(twisted.action(el(g, "(0 1 2)")) == FpMatrix(7, {{4}}));
    CHECK(twisted_restriction(chi, c3, 0) == chi);
    CHECK(tau(chi, c3, 0) == FpMatrix::identity(7, 1));
    CHECK_THROWS_AS(twisted_restriction(KModule::trivial(sub(g, {"(0 1)"}), 5), sub(g, {"(0 1)"}), el(g, "(0 2)")), Error);

    auto s4 = fx::s4();
    Subgroup v4 = sub(s4, {"(0 1)(2 3)", "(0 2)(1 3)"});
    std::mt19937_64 rng(4);
    auto w = random_module(v4, 3, 3, rng);
    for (Elem a = 0; a < s4->order(); a += 5)
      for (Elem b = 0; b < s4->order(); b += 7)
        CHECK(twisted_restriction(w, v4, s4->mul(a, b)) == twisted_restriction(twisted_restriction(w, v4, a), v4, b));
    for (Elem h : v4.elements()) CHECK(is_linear(tau(w, v4, h), w, twisted_restriction(w, v4, h)));
  }

  TEST_CASE("representations validate the cocycle") {
    auto g = fx::s3();
    auto x = coset_gset(sub(g, {"(0 1)"})).set;
    std::vector<std::vector<FpMatrix>> t(g->order(), std::vector<FpMatrix>(3, FpMatrix::identity(5, 1)));
    t[1][0] = FpMatrix(5, {{2}});
    CHECK_THROWS_AS(Representation(x, 5, {1, 1, 1}, t), Error);
    CHECK_NOTHROW(Representation::unit(x, 5));
  }

  TEST_CASE("pullback is strictly functorial") {
    auto g = fx::s4();
    std::mt19937_64 rng(9);
    Subgroup a = sub(g, {"(0 1)"}), b = sub(g, {"(0 1)", "(2 3)"}), c = sub(g, {"(0 1)", "(2 3)", "(0 2)(1 3)"});
    auto ca = coset_gset(a), cb = coset_gset(b), cc = coset_gset(c);
    GMap ab = beta_map(ca, cb, 0), bc = beta_map(cb, cc, 0);
    auto v = iota_inverse(cc, random_module(c, 3, 2, rng));
    CHECK(pullback_rep(compose(bc, ab), v) == pullback_rep(ab, pullback_rep(bc, v)));
    CHECK(pullback_rep(identity_map(cc.set), v) == v);
    auto unit = Representation::unit(cc.set, 3);
    CHECK(pullback_rep(bc, unit) == Representation::unit(cb.set, 3));
  }

  TEST_CASE("sign representation pulled back") {
    auto g = fx::s3();
    auto cs = coset_gset(sub(g, {"(0 1 2)"}));
    auto w = pullback_rep(to_point(cs.set), fx::over_point(sign(3)));
    for (Elem x = 0; x < g->order(); ++x)
      for (Point p = 0; p < 2; ++p) CHECK(w.transition(x, p) == sign(3).action(x));
  }

  TEST_CASE("pushforward") {
    auto g = fx::s3();
    auto reg = coset_gset(Subgroup::trivial(g));
    auto x = coset_gset(sub(g, {"(0 1)"})).set;
    auto w = Representation::unit(x, 5);
    CHECK(pushforward_rep(identity_map(x), w) == w);
    auto pushed = pushforward_rep(to_point(reg.set), Representation::unit(reg.set, 5));
    CHECK(pushed.dim(0) == 6);
    auto regular = permutation_module(Subgroup::whole(g), Subgroup::trivial(g), 5);
    CHECK(find_isomorphism(iota_equiv(coset_gset(Subgroup::whole(g)), pushed), regular).has_value());
    // empty fiber
    Coproduct c = coproduct({x, point_gset(g)});
    GMap inc = c.inclusions[0];
    auto p = pushforward_rep(inc, w);
    CHECK(p.dim(3) == 0);
  }

  TEST_CASE("adjunction triangles and averaging") {
    std::mt19937_64 rng(12);
    for (auto g : {fx::s3(), fx::s4()}) {
      auto subs = fx::small_subgroups(g);
      for (int t = 0; t < 12; ++t) {
        const Subgroup& h = subs[rng() % subs.size()];
        Subgroup k = random_subgroup(h, rng);
        auto ck = coset_gset(k), ch = coset_gset(h);
        GMap a = beta_map(ck, ch, 0);
        const std::int64_t l = (k.index() / h.index()) % 5 == 0 ? 7 : 5;
        auto v = iota_inverse(ch, random_module(h, l, 2, rng));
        auto w = iota_inverse(ck, random_module(k, l, 2, rng));
        auto eta = adjunction_unit(a, v);
        auto eps = adjunction_counit(a, w);
        CHECK(compose(adjunction_counit(a, pullback_rep(a, v)), pullback_morphism(a, eta)) ==
              identity_morphism(pullback_rep(a, v)));
        CHECK(compose(pushforward_morphism(a, eps), adjunction_unit(a, pushforward_rep(a, w))) ==
              identity_morphism(pushforward_rep(a, w)));
        auto pi = averaging_retraction(a, v);
        CHECK(compose(pi, eta) == identity_morphism(v));
      }
    }
    auto g = fx::s3();
    auto ch = coset_gset(Subgroup::whole(g));
    auto c2 = coset_gset(sub(g, {"(0 1)"}));
    GMap a = beta_map(c2, ch, 0);
    CHECK(code_of([&] { averaging_retraction(a, Representation::unit(ch.set, 3)); }) == Errc::IndexNotInvertible);
    auto reg = coset_gset(Subgroup::trivial(g));
    auto eta = adjunction_unit(to_point(reg.set), Representation::unit(point_gset(g), 5));
    CHECK(eta.component(0) == FpMatrix(5, {{1}, {1}, {1}, {1}, {1}, {1}}));
    CHECK(adjunction_unit(identity_map(c2.set), Representation::unit(c2.set, 5)) ==
          identity_morphism(Representation::unit(c2.set, 5)));
  }

  TEST_CASE("Beck-Chevalley") {
    auto g = fx::s4();
    std::mt19937_64 rng(21);
    auto subs = fx::small_subgroups(g);
    for (int t = 0; t < 15; ++t) {
      const Subgroup& h = subs[rng() % subs.size()];
      Subgroup k1 = random_subgroup(h, rng), k2 = random_subgroup(h, rng);
      auto ch = coset_gset(h);
      GMap al = beta_map(coset_gset(k1), ch, 0), be = beta_map(coset_gset(k2), ch, 0);
      auto fp = fiber_product(al, be);
      PullbackSquare sq{al, be, fp.pr2, fp.pr1};
      auto w = iota_inverse(coset_gset(k1), random_module(k1, 3, 1 + static_cast<Eigen::Index>(t % 3), rng));
      auto bc = beck_chevalley(sq, w);
      CHECK(is_isomorphism(bc));
      auto idsq = PullbackSquare{al, identity_map(ch.set), al, identity_map(al.source())};
      CHECK(beck_chevalley(idsq, w) == identity_morphism(pushforward_rep(al, w)));
    }
    auto h = sub(g, {"(0 1)", "(2 3)"});
    auto cs = coset_gset(h);
    FiberPowers pw(to_point(cs.set), 2);
    PullbackSquare sq{to_point(cs.set), to_point(cs.set), pw.projection(2, {1}), pw.projection(2, {0})};
    auto w = Representation::unit(cs.set, 3);
    CHECK(is_isomorphism(beck_chevalley(sq, w)));
    PullbackSquare bad{to_point(cs.set), to_point(cs.set), pw.projection(2, {1}), pw.projection(2, {1})};
    CHECK(code_of([&] { beck_chevalley(bad, w); }) == Errc::NotAPullback);
  }

  TEST_CASE("iota equivalence") {
    auto g = fx::s4();
    std::mt19937_64 rng(3);
    Subgroup h = sub(g, {"(0 1)", "(2 3)"});
    auto cs = coset_gset(h);
    CHECK(iota_equiv(cs, Representation::unit(cs.set, 5)) == KModule::trivial(h, 5));
    for (int t = 0; t < 10; ++t) {
      auto w = random_module(h, 5, 2, rng);
      CHECK(iota_equiv(cs, iota_inverse(cs, w)) == w);
      auto v = iota_inverse(cs, w);
      CHECK(is_isomorphism(iota_counit(cs, v)));
      // Res^H_K ι_H = ι_K β_1*
      Subgroup k = random_subgroup(h, rng);
      auto ck = coset_gset(k);
      CHECK(iota_equiv(ck, pullback_rep(beta_map(ck, cs, 0), v)) == restrict_module(w, k));
    }
    auto top = coset_gset(Subgroup::whole(g));
    auto m = random_module(Subgroup::whole(g), 3, 2, rng);
    CHECK(iota_equiv(top, iota_inverse(top, m)) == m);
    CHECK(code_of([&] { iota_equiv(cs, Representation::unit(top.set, 5)); }) == Errc::WrongBaseGSet);
  }

  TEST_CASE("descent of canonical data") {
    std::mt19937_64 rng(17);
    for (auto g : {fx::s3(), fx::a4(), fx::d8()}) {
      auto subs = fx::small_subgroups(g);
      for (int t = 0; t < 8; ++t) {
        const Subgroup& h = subs[rng() % subs.size()];
        const std::int64_t l = h.index() % 5 == 0 ? 3 : 5;
        auto v = random_module(Subgroup::whole(g), l, 1 + static_cast<Eigen::Index>(t % 3), rng);
        auto cs = coset_gset(h);
        auto d = canonical_datum(to_point(cs.set), fx::over_point(v));
        CHECK(is_descent_datum(d));
        auto sol = solve_descent(d);
        CHECK(is_isomorphism(sol.f));
        CHECK(find_isomorphism(iota_equiv(coset_gset(Subgroup::whole(g)), sol.v), v).has_value());
      }
    }
  }

  TEST_CASE("descent of the unit and of the sign-twisted gluing") {
    auto g = fx::s3();
    auto cs = coset_gset(sub(g, {"(0 1 2)"}));
    GMap a = to_point(cs.set);
    auto w = Representation::unit(cs.set, 3);
    auto triv = solve_descent({a, w, identity_morphism(pullback_rep(FiberPowers(a, 2).structure_map(2), Representation::unit(point_gset(g), 3)))});
    CHECK(triv.v == Representation::unit(point_gset(g), 3));
    auto sol = solve_descent({a, w, scaled_gluing(a, w, 2)});
    CHECK(find_isomorphism(iota_equiv(coset_gset(Subgroup::whole(g)), sol.v), sign(3)).has_value());
  }

  TEST_CASE("descent failures") {
    auto g = fx::s3();
    auto cs = coset_gset(sub(g, {"(0 1 2)"}));
    GMap a = to_point(cs.set);
    auto w = Representation::unit(cs.set, 5);
    DescentDatum d{a, w, scaled_gluing(a, w, 2)};
    CHECK_FALSE(is_descent_datum(d));
    CHECK(code_of([&] { check_descent_datum(d); }) == Errc::CocycleViolated);
    CHECK(code_of([&] { solve_descent(d, false); }) == Errc::NotEffective);
    // a singular gluing map
    DescentDatum z{a, w, scaled_gluing(a, w, 0)};
    CHECK(code_of([&] { check_descent_datum(z); }) == Errc::NotInvertible);
  }

  TEST_CASE("gluing morphisms") {
    auto g = fx::s3();
    Subgroup G = Subgroup::whole(g);
    Subgroup c3 = sub(g, {"(0 1 2)"});
    auto triv = KModule::trivial(G, 5);
    try {
      glue_morphism(c3, sign(5), triv, FpMatrix::identity(5, 1));
      FAIL("expected CompatibilityFailed");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::CompatibilityFailed);
      auto& w = e.witnesses();
      CHECK(std::find(w.begin(), w.end(), el(g, "(0 1)")) != w.end());
      CHECK(w.size() == 3);
    }
    CHECK(glue_morphism(c3, sign(5), triv, FpMatrix::zero(5, 1, 1)) == FpMatrix::zero(5, 1, 1));
    std::mt19937_64 rng(8);
    for (int t = 0; t < 20; ++t) {
      auto v1 = random_module(G, 5, 2, rng), v2 = random_module(G, 5, 2, rng);
      auto basis = hom_basis(v1, v2);
      FpMatrix f0 = FpMatrix::zero(5, 2, 2);
      for (const auto& b : basis) f0 = f0 + static_cast<std::int64_t>(rng() % 5) * b;
      CHECK(glue_morphism(c3, v1, v2, f0) == f0);
    }
    auto perm = permutation_module(G, sub(g, {"(0 1)"}), 5);
    FpMatrix corner(5, {{1, 0, 0}, {0, 0, 0}, {0, 0, 0}});
    CHECK(code_of([&] { glue_morphism(c3, perm, perm, corner); }) == Errc::NotAMorphism);
    CHECK(code_of([&] { glue_morphism(c3, KModule::trivial(G, 2), KModule::trivial(G, 2), FpMatrix::identity(2, 1)); }) ==
          Errc::PreconditionViolated);
  }

  TEST_CASE("extension round trips") {
    std::mt19937_64 rng(31);
    for (auto g : {fx::s3(), fx::s4()}) {
      auto subs = fx::small_subgroups(g);
      for (int t = 0; t < 10; ++t) {
        const Subgroup& h = subs[rng() % subs.size()];
        const std::int64_t l = h.index() % 5 == 0 ? 7 : 5;
        auto v = random_module(Subgroup::whole(g), l, 1 + static_cast<Eigen::Index>(t % 3), rng);
        auto e = extend_representation(sigma_from_module(v, h));
        CHECK(e.v == v);
        CHECK(restrict_module(e.v, h) == restrict_module(v, h));
        CHECK(e.f.is_identity());
      }
    }
  }

  TEST_CASE("sign extension and diagnostics") {
    auto g = fx::s3();
    Subgroup c3 = sub(g, {"(0 1 2)"});
    auto w = KModule::trivial(c3, 3);
    std::vector<FpMatrix> sigma;
    for (Elem x = 0; x < g->order(); ++x) sigma.push_back(FpMatrix(3, {{c3.contains(x) ? 1 : 2}}));
    CHECK(extend_representation({c3, w, sigma}).v == sign(3));

    auto broken = sigma;
    broken[el(g, "(0 2)")] = FpMatrix(3, {{1}});
    try {
      extend_representation({c3, w, broken});
      FAIL("expected ConditionIIFailed");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::ConditionIIFailed);
      REQUIRE(e.witnesses().size() == 2);
      CHECK(e.witnesses() == std::vector<std::uint32_t>{el(g, "(1 2)"), el(g, "(0 2 1)")});
    }

    auto cond1 = sigma;
    cond1[el(g, "(0 1 2)")] = FpMatrix(3, {{2}});
    try {
      extend_representation({c3, w, cond1});
      FAIL("expected ConditionIFailed");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::ConditionIFailed);
      CHECK(e.witnesses() == std::vector<std::uint32_t>{el(g, "(0 1 2)")});
    }

    auto singular = sigma;
    singular[el(g, "(0 1)")] = FpMatrix(3, {{0}});
    CHECK(code_of([&] { extend_representation({c3, w, singular}); }) == Errc::SigmaNotIntertwiner);

    auto chi = KModule::character(c3, 7, {{el(g, "(0 1 2)"), 2}});
    std::vector<FpMatrix> any(g->order(), FpMatrix::identity(7, 1));
    try {
      extend_representation({c3, chi, any});
      FAIL("expected PreconditionViolated");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::PreconditionViolated);
      CHECK(e.witnesses() == std::vector<std::uint32_t>{el(g, "(1 2)")});
    }
    CHECK_FALSE(twisted_intertwiner_exists(chi, el(g, "(0 1)")));
    CHECK(twisted_intertwiner_exists(chi, el(g, "(0 1 2)")));

    Subgroup c2 = sub(g, {"(0 1)"});
    std::vector<FpMatrix> ones(g->order(), FpMatrix::identity(3, 1));
    CHECK(code_of([&] { extend_representation({c2, KModule::trivial(c2, 3), ones}); }) == Errc::PreconditionViolated);
  }

  TEST_CASE("Pic cocycles") {
    auto g = fx::s3();
    Subgroup c3 = sub(g, {"(0 1 2)"});
    auto c = cech_complex(c3, 3);
    auto unit = Representation::unit(c.cover().source(), 3);
    FiberPowers pw(c.cover(), 2);
    auto id = identity_morphism(pullback_rep(pw.projection(2, {0}), unit));
    auto z = pic_cocycle(c, unit, id);
    for (auto v : z.values) CHECK(v == 1);
    CHECK(z.is_zero());

    auto w = pullback_rep(c.cover(), fx::over_point(sign(3)));
    auto xi = scaled_gluing(c.cover(), w, 2);
    auto s = pic_cocycle(c, w, xi, scaled_gluing(c.cover(), w, 1));
    CHECK(s.is_zero());
    CHECK(s.group == CohomologyGroup{0, {2}});

    auto two = pullback_rep(c.cover(), fx::over_point(KModule::trivial(Subgroup::whole(g), 3, 2)));
    CHECK(code_of([&] { pic_cocycle(c, two, identity_morphism(pullback_rep(pw.projection(2, {0}), two))); }) ==
          Errc::NotInvertible);
    CHECK(code_of([&] { pic_cocycle(c, w, scaled_gluing(c.cover(), w, 0)); }) == Errc::NotAnIsomorphism);
  }
}
