#include <doctest.h>

#include <numeric>
#include <set>

#include "sipp/error.hpp"
#include "sipp/topology.hpp"
#include "support.hpp"

using namespace sipp;
using fx::el;
using fx::sub;

TEST_SUITE("perm_groups") {
  TEST_CASE("closure of small generating sets") {
    CHECK(fx::s3()->order() == 6);
    CHECK(group_closure({}, 4)->order() == 1);
    auto c4 = group_closure({Permutation({1, 2, 3, 0})}, 4);
    CHECK(c4->order() == 4);
    CHECK(fx::s4()->order() == 24);
    CHECK(fx::a4()->order() == 12);
    CHECK(fx::d8()->order() == 8);
    CHECK(fx::c6()->order() == 6);
  }

  TEST_CASE("closure rejects bad input") {
    CHECK_THROWS_AS(group_closure({Permutation({1, 0})}, 3), Error);
    try {
      group_closure({Permutation({1, 0, 2, 3, 4, 5, 6}), Permutation({1, 2, 3, 4, 5, 6, 0})}, 7, 100);
      FAIL("expected OrderBoundExceeded");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::OrderBoundExceeded);
    }
    CHECK_THROWS_AS(Permutation({0, 0, 1}), Error);
  }

  TEST_CASE("elements sorted, identity first, closed") {
    for (auto g : {fx::s3(), fx::s4(), fx::d8(), fx::a4()}) {
      CHECK(g->element(0).is_identity());
      CHECK(std::is_sorted(g->elements().begin(), g->elements().end()));
      for (Elem a = 0; a < g->order(); ++a) {
        CHECK(g->index_of(g->element(a).inverse()) == g->inv(a));
        for (Elem b = 0; b < g->order(); ++b) REQUIRE(g->index_of(g->element(a) * g->element(b)) == g->mul(a, b));
      }
      for (const auto& s : g->generators()) CHECK(g->index_of(s).has_value());
    }
  }

  TEST_CASE("S3 element order") {
    auto g = fx::s3();
    CHECK(g->name(0) == "()");
    CHECK(g->name(1) == "(1 2)");
    CHECK(g->name(2) == "(0 1)");
    CHECK(g->name(3) == "(0 1 2)");
    CHECK(g->name(4) == "(0 2 1)");
    CHECK(g->name(5) == "(0 2)");
  }

  TEST_CASE("conjugate subgroups") {
    auto g = fx::s3();
    Subgroup h = sub(g, {"(0 1)"});
    CHECK(conjugate_subgroup(h, el(g, "(0 2)")) == sub(g, {"(1 2)"}));
    CHECK(conjugate_subgroup(h, 0) == h);
    Subgroup c3 = sub(g, {"(0 1 2)"});
    for (Elem x = 0; x < g->order(); ++x) CHECK(conjugate_subgroup(c3, x) == c3);
    // (H^g)^g' = H^{gg'}
    auto s4 = fx::s4();
    Subgroup k = sub(s4, {"(0 1)", "(2 3)"});
    for (Elem a = 0; a < s4->order(); a += 5)
      for (Elem b = 0; b < s4->order(); b += 3)
        CHECK(conjugate_subgroup(conjugate_subgroup(k, a), b) == conjugate_subgroup(k, s4->mul(a, b)));
  }

  TEST_CASE("Lagrange on all small subgroups") {
    for (auto g : {fx::s4(), fx::d8(), fx::a4()})
      for (const auto& h : fx::small_subgroups(g)) {
        CHECK(g->order() % h.order() == 0);
        for (Elem a : h.elements())
          for (Elem b : h.elements()) REQUIRE(h.contains(g->mul(a, b)));
      }
  }

  TEST_CASE("double cosets") {
    auto g = fx::s3();
    Subgroup h = sub(g, {"(0 1)"});
    Subgroup G = Subgroup::whole(g);
    auto reps = double_cosets(h, h, G);
    REQUIRE(reps.size() == 2);
    std::multiset<std::size_t> sizes;
    for (Elem t : reps) sizes.insert(double_coset(h, t, h).size());
    CHECK(sizes == std::multiset<std::size_t>{2, 4});
    CHECK(double_cosets(G, h, G) == std::vector<Elem>{0});
    Subgroup triv = Subgroup::trivial(g);
    CHECK(double_cosets(triv, triv, G).size() == 6);
    CHECK_THROWS_AS(double_cosets(sub(g, {"(1 2)"}), h, h), Error);
  }

  TEST_CASE("double cosets partition H") {
    auto g = fx::s4();
    auto subs = fx::small_subgroups(g);
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 60; ++trial) {
      const Subgroup& h = subs[rng() % subs.size()];
      Subgroup k1 = random_subgroup(h, rng), k2 = random_subgroup(h, rng);
      std::set<Elem> seen;
      std::size_t total = 0;
      for (Elem t : double_cosets(k1, k2, h)) {
        auto dc = double_coset(k1, t, k2);
        total += dc.size();
        seen.insert(dc.begin(), dc.end());
      }
      CHECK(total == h.order());
      CHECK(seen.size() == h.order());
    }
  }

  TEST_CASE("Sylow subgroups") {
    CHECK(sylow_subgroup(fx::s3(), 2).order() == 2);
    CHECK(sylow_subgroup(fx::s3(), 5).order() == 1);
    CHECK(sylow_subgroup(fx::s4(), 2).order() == 8);
    CHECK(sylow_subgroup(fx::s4(), 3).order() == 3);
    CHECK(sylow_subgroup(fx::a4(), 2).order() == 4);
    CHECK(sylow_subgroup(fx::d8(), 2).order() == 8);
    CHECK_THROWS_AS(sylow_subgroup(fx::s3(), 4), Error);
  }

  TEST_CASE("bracket subgroups") {
    auto g = fx::s3();
    Subgroup h = sub(g, {"(0 1)"});
    CHECK(bracket_subgroup(h, el(g, "(0 2)")).order() == 1);
    for (Elem x : h.elements()) CHECK(bracket_subgroup(h, x) == h);
    Subgroup c3 = sub(g, {"(0 1 2)"});
    for (Elem x = 0; x < g->order(); ++x) CHECK(bracket_subgroup(c3, x) == c3);
    for (Elem a = 0; a < g->order(); ++a)
      for (Elem b = 0; b < g->order(); ++b) {
        Subgroup expect = intersect(intersect(conjugate_subgroup(h, g->mul(a, b)), conjugate_subgroup(h, b)), h);
        CHECK(bracket_subgroup(h, a, b) == expect);
      }
  }

  TEST_CASE("cycle strings round trip") {
    auto g = fx::s4();
    for (Elem x = 0; x < g->order(); ++x) CHECK(el(g, g->name(x)) == x);
  }
}
