#include <doctest.h>

#include "sipp/arith.hpp"
#include "sipp/error.hpp"
#include "sipp/topology.hpp"
#include "support.hpp"

using namespace sipp;
using fx::el;
using fx::sub;

namespace {

GMap projection(const Subgroup& k, const Subgroup& h) { return beta_map(coset_gset(k), coset_gset(h), 0); }

}  // namespace

TEST_SUITE("sipp") {
  TEST_CASE("orbit covers follow the index") {
    for (auto g : {fx::s4(), fx::d8(), fx::a4()}) {
      auto subs = fx::small_subgroups(g);
      for (const auto& h : subs)
        for (const auto& k : subs) {
          if (!k.is_subgroup_of(h)) continue;
          for (unsigned p : {2u, 3u}) {
            const bool prime_to = (h.order() / k.order()) % p != 0;
            CHECK(is_sipp_cover(projection(k, h), p).is_cover == prime_to);
          }
        }
    }
  }

  TEST_CASE("S3 covers of the point") {
    auto g = fx::s3();
    Subgroup G = Subgroup::whole(g);
    GMap a = projection(sub(g, {"(0 1)"}), G);
    CHECK(is_sipp_cover(a, 2).is_cover);
    auto w = is_sipp_cover(a, 3);
    CHECK_FALSE(w.is_cover);
    CHECK(w.uncovered == std::vector<Point>{0});
    auto x = coset_gset(sub(g, {"(0 1)"})).set;
    CHECK(is_sipp_cover(identity_map(x), 2).is_cover);
    CHECK(is_sipp_cover(identity_map(x), 3).is_cover);
  }

  TEST_CASE("covering families") {
    auto g = fx::s3();
    Subgroup G = Subgroup::whole(g);
    auto top = coset_gset(G).set;
    CoverFamily f{top, {projection(sub(g, {"(0 1)"}), G), projection(sub(g, {"(0 1 2)"}), G)}, 3};
    auto w = is_sipp_covering(f);
    CHECK(w.is_covering);
    REQUIRE(w.witness[0].has_value());
    CHECK(w.witness[0]->first == 1);
    CoverFamily single{top, {projection(sub(g, {"(0 1)"}), G)}, 3};
    CHECK_FALSE(is_sipp_covering(single).is_covering);
    CoverFamily with_iso{top, {projection(Subgroup::trivial(g), G), identity_map(top)}, 2};
    CHECK(is_sipp_covering(with_iso).is_covering);
    auto empty = GSet::empty(g);
    CoverFamily vacuous{empty, {identity_map(empty)}, 2};
    CHECK(is_sipp_covering(vacuous).is_covering);
    CoverFamily bad{top, {identity_map(coset_gset(sub(g, {"(0 1)"})).set)}, 2};
    CHECK_THROWS_AS(bad.validate(), Error);
    CoverFamily notprime{top, {identity_map(top)}, 4};
    CHECK_THROWS_AS(notprime.validate(), Error);
  }

  TEST_CASE("singleton families agree with covers") {
    auto g = fx::s4();
    auto subs = fx::small_subgroups(g);
    for (std::size_t i = 0; i < subs.size(); ++i)
      for (std::size_t j = 0; j < subs.size(); ++j) {
        if (!subs[i].is_subgroup_of(subs[j])) continue;
        GMap a = projection(subs[i], subs[j]);
        for (unsigned p : {2u, 3u}) CHECK(is_sipp_cover(a, p).is_cover == is_sipp_covering({a.target(), {a}, p}).is_covering);
      }
  }

  TEST_CASE("Mackey decomposition examples") {
    auto g = fx::s3();
    Subgroup h = sub(g, {"(0 1)"});
    Subgroup G = Subgroup::whole(g);
    auto m = mackey_decomposition(h, h, G);
    REQUIRE(m.parts.size() == 2);
    CHECK(m.parts[0].set->size() == 3);
    CHECK(m.parts[1].set->size() == 6);
    CHECK(m.iso.is_isomorphism());
    CHECK(m.fiber.set->size() == 9);

    auto one = mackey_decomposition(G, h, G);
    CHECK(one.parts.size() == 1);
    CHECK(one.parts[0].set->size() == 3);

    Subgroup c3 = sub(g, {"(0 1 2)"});
    auto normal = mackey_decomposition(c3, c3, G);
    CHECK(normal.parts.size() == 2);
    for (const auto& p : normal.parts) CHECK(p.subgroup == c3);
    CHECK_THROWS_AS(mackey_decomposition(sub(g, {"(1 2)"}), h, h), Error);
  }

  TEST_CASE("Mackey sizes match the fiber product") {
    auto g = fx::s4();
    auto subs = fx::small_subgroups(g);
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
      const Subgroup& h = subs[rng() % subs.size()];
      Subgroup k1 = random_subgroup(h, rng), k2 = random_subgroup(h, rng);
      auto m = mackey_decomposition(k1, k2, h);
      std::size_t total = 0;
      for (Elem t : m.representatives) total += intersect(conjugate_subgroup(k1, t), k2).index();
      CHECK(total == m.fiber.set->size());
      CHECK(m.iso.is_isomorphism());
    }
  }

  TEST_CASE("prime index witnesses") {
    auto g = fx::s4();
    Subgroup G = Subgroup::whole(g);
    CHECK(prime_index_witness(G, sub(g, {"(0 1)"}), G, 2) == 0);
    CHECK_THROWS_AS(prime_index_witness(sub(g, {"(0 1 2)"}), G, G, 2), Error);
    auto subs = fx::small_subgroups(g);
    for (const auto& k : subs)
      for (const auto& hp : subs)
        for (unsigned p : {2u, 3u}) {
          if (k.index() % p == 0) continue;
          Elem t = prime_index_witness(k, hp, G, p);
          CHECK(intersect(conjugate_subgroup(k, t), hp).index() / hp.index() % p != 0);
        }
  }

  TEST_CASE("locality") {
    for (auto g : {fx::s3(), fx::s4(), fx::a4()})
      for (unsigned p : {2u, 3u}) {
        CHECK(is_local(*coset_gset(sylow_subgroup(g, p)).set, p));
        CHECK_FALSE(is_local(*coset_gset(Subgroup::whole(g)).set, p));
        auto x = coset_gset(sylow_subgroup(g, p)).set;
        CHECK_FALSE(is_local(*coproduct({x, x}).set, p));
      }
  }

  TEST_CASE("topology axioms on handmade instances") {
    auto g = fx::s3();
    Subgroup G = Subgroup::whole(g);
    Subgroup h = sub(g, {"(0 1)"});
    auto top = coset_gset(G).set;
    AxiomInstance inst{{top, {projection(h, G)}, 2}, projection(sub(g, {"(0 1 2)"}), G), {}};
    auto r = verify_topology_axioms({inst});
    CHECK(r.all_passed());
    // the proof's square: pullback of the cover along an arbitrary β
    auto pulled = pullback_family(inst.family, inst.base_change);
    CHECK(is_sipp_covering(pulled).is_covering);
    // composite G/1 -> G/H -> G/G with p = 2 fails (index 2 at the first step)
    CoverFamily first{coset_gset(h).set, {projection(Subgroup::trivial(g), h)}, 2};
    CHECK_FALSE(is_sipp_covering(first).is_covering);
    CoverFamily ok{coset_gset(h).set, {identity_map(coset_gset(h).set)}, 2};
    CHECK(is_sipp_covering(compose_families(inst.family, {ok})).is_covering);
  }

  TEST_CASE("randomized axiom instances") {
    std::mt19937_64 rng(5);
    for (auto g : {fx::s3(), fx::d8()})
      for (unsigned p : {2u, 3u}) {
        auto inst = random_axiom_instances(g, p, 10, rng);
        for (const auto& i : inst) CHECK(is_sipp_covering(i.family).is_covering);
        CHECK(verify_topology_axioms(inst).all_passed());
      }
  }
}
