#include <doctest.h>
#include <Eigen/LU>

#include "sipp/cech.hpp"
#include "sipp/error.hpp"
#include "sipp/json_io.hpp"
#include "sipp/linalg/smith.hpp"
#include "sipp/topology.hpp"
#include "support.hpp"

using namespace sipp;
using fx::sub;

namespace {

CohomologyGroup elementary(std::int64_t m, std::size_t k) {
  CohomologyGroup c;
  c.torsion.assign(k, m);
  return c;
}

template <class S>
bool unimodular(const Mat<S>& m) {
  // integer inverse exists iff |det| = 1; det over long double suffices at these sizes
  Eigen::MatrixXd d(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) d(i, j) = static_cast<double>(m(i, j));
  return std::abs(std::abs(d.determinant()) - 1.0) < 1e-9;
}

}  // namespace

TEST_SUITE("cech") {
  TEST_CASE("Smith normal form examples") {
    Mat<std::int64_t> m(2, 2);
    m << 2, 4, 6, 8;
    auto s = smith_normal_form(m);
    CHECK(s.diagonal() == std::vector<std::int64_t>{2, 4});
    CHECK(s.U * s.D * s.V == m);
    CHECK(unimodular(s.U));
    CHECK(unimodular(s.V));
    CHECK(smith_normal_form(Mat<std::int64_t>(Mat<std::int64_t>::Zero(3, 2))).rank == 0);
    auto id = smith_normal_form(Mat<std::int64_t>(Mat<std::int64_t>::Identity(3, 3)));
    CHECK(id.diagonal() == std::vector<std::int64_t>{1, 1, 1});
  }

  TEST_CASE("Smith normal form round trip on random matrices") {
    std::mt19937_64 rng(2);
    std::uniform_int_distribution<int> e(-6, 6), dim(1, 5);
    for (int t = 0; t < 200; ++t) {
      Mat<std::int64_t> m(dim(rng), dim(rng));
      for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = e(rng);
      auto s = smith_normal_form(m);
      REQUIRE(s.U * s.D * s.V == m);
      CHECK(s.P * m * s.Q == s.D);
      auto d = s.diagonal();
      for (std::size_t i = 0; i + 1 < d.size(); ++i) CHECK(d[i + 1] % d[i] == 0);
    }
  }

  TEST_CASE("Smith normal form promotes on overflow") {
    Mat<std::int64_t> m(2, 2);
    m << 4000000000000000000LL, 3, 3999999999999999999LL, 7;
    auto diag = with_promotion([&](auto zero) {
      using S = decltype(zero);
      auto s = smith_normal_form(convert<S>(m));
      std::vector<std::string> out;
      for (const auto& d : s.diagonal()) out.push_back(BigInt(d).str());
      return out;
    });
    // det = 7·4e18 − 3·(4e18 − 1) = 16000000000000000003
    CHECK(diag == std::vector<std::string>{"1", "16000000000000000003"});
  }

  TEST_CASE("S3 Sylow-2 complex") {
    auto g = fx::s3();
    auto c = cech_complex(sub(g, {"(0 1)"}), 2);
    CHECK(c.complex().basis_sizes == std::vector<std::size_t>{1, 1, 1, 1});
    CHECK(c.differential(0)(0, 0) == 0);
    CHECK(c.differential(1)(0, 0) == 1);
    for (auto a : {AbelianGroupSpec::integers(), AbelianGroupSpec::cyclic(2), AbelianGroupSpec::cyclic(6)}) {
      auto hs = cohomology(c, a);
      CHECK(hs[0] == CohomologyGroup::from_spec(a));
      CHECK(hs[1].is_zero());
      CHECK(hs[2].is_zero());
    }
  }

  TEST_CASE("identity cover") {
    auto g = fx::s3();
    auto c = cech_complex(Subgroup::whole(g), 3);
    CHECK(c.complex().basis_sizes == std::vector<std::size_t>{1, 1, 1, 1});
    CHECK(c.differential(0)(0, 0) == 0);
    CHECK(c.differential(1)(0, 0) == 1);
    CHECK(c.differential(2)(0, 0) == 0);
    auto hs = cohomology(c, AbelianGroupSpec::cyclic(5));
    CHECK(hs[0] == elementary(5, 1));
    CHECK(hs[1].is_zero());
    CHECK(hs[2].is_zero());
    CHECK(t_kernel(Subgroup::whole(g), 4).is_zero());
    CHECK(obstruction_group(Subgroup::whole(g), 4).is_zero());
  }

  TEST_CASE("S3 Sylow-3 complex is the bar complex of Z/2") {
    auto g = fx::s3();
    Subgroup c3 = sub(g, {"(0 1 2)"});
    auto c = cech_complex(c3, 3);
    CHECK(c.complex().basis_sizes == std::vector<std::size_t>{1, 2, 4, 8});
    auto hs = cohomology(c, AbelianGroupSpec::cyclic(2));
    CHECK(hs[1] == elementary(2, 1));
    CHECK(hs[2] == elementary(2, 1));
    CHECK(t_kernel(c3, 3) == elementary(2, 1));
    CHECK(obstruction_group(c3, 3) == elementary(2, 1));
    CHECK(t_kernel(sub(g, {"(0 1)"}), 2).is_zero());
    CHECK(cohomology(c, AbelianGroupSpec::trivial())[1].is_zero());
  }

  TEST_CASE("non-sipp covers need the flag") {
    auto g = fx::s3();
    CHECK_THROWS_AS(cech_complex(sub(g, {"(0 1)"}), 3), Error);
    CechOptions o;
    o.allow_non_sipp = true;
    CHECK_FALSE(cech_complex(sub(g, {"(0 1)"}), 3, o).is_sipp());
    CHECK_THROWS_AS(t_kernel(sub(g, {"(0 1)"}), 3), Error);
  }

  TEST_CASE("degree and point caps") {
    auto g = fx::s4();
    CechOptions o;
    o.point_cap = 100;
    CHECK_THROWS_AS(cech_complex(sub(g, {"(0 1 2)"}), 2, o), Error);
    auto c = cech_complex(sub(g, {"(0 1)", "(0 2)"}), 3);
    CHECK_THROWS_AS(cohomology_at(c.complex(), 7, AbelianGroupSpec::integers()), Error);
  }

  TEST_CASE("d squared vanishes and entries are bounded") {
    for (auto g : {fx::s3(), fx::s4(), fx::d8(), fx::a4()})
      for (const auto& h : fx::small_subgroups(g))
        for (unsigned p : {2u, 3u}) {
          if (h.index() % p == 0 || h.index() > 8) continue;
          auto c = cech_complex(h, p);
          CHECK(c.complex().d_squared_zero());
          CHECK(oracle::d_squared_zero(c.complex()));
          for (int n = 0; n < c.max_degree(); ++n)
            if (c.differential(n).size() > 0) CHECK(c.differential(n).cwiseAbs().maxCoeff() <= n + 2);
        }
  }

  TEST_CASE("basis sizes match orbit enumeration and Mackey counts") {
    for (auto g : {fx::s3(), fx::s4(), fx::a4()})
      for (const auto& h : fx::small_subgroups(g))
        for (unsigned p : {2u, 3u}) {
          if (h.index() % p == 0 || h.index() > 6) continue;
          auto c = cech_complex(h, p);
          for (int n = 0; n <= c.max_degree(); ++n)
            CHECK(c.basis_size(n) == oracle::bar_power_size(h, static_cast<std::size_t>(n + 1), p));
          auto m = mackey_decomposition(h, h, Subgroup::whole(g));
          std::size_t count = 0;
          for (Elem t : m.representatives)
            if (bracket_subgroup(h, t).order() % p == 0) ++count;
          CHECK(c.basis_size(1) == count);
        }
  }

  TEST_CASE("H0 is the coefficient group when p divides |G|") {
    for (auto g : {fx::s3(), fx::d8(), fx::a4()})
      for (const auto& h : fx::small_subgroups(g))
        for (unsigned p : {2u, 3u}) {
          if (h.index() % p == 0 || g->order() % p != 0 || h.index() > 6) continue;
          auto c = cech_complex(h, p);
          for (auto a : {AbelianGroupSpec::integers(), AbelianGroupSpec::cyclic(4)})
            CHECK(cohomology(c, a)[0] == CohomologyGroup::from_spec(a));
        }
  }

  TEST_CASE("sign convention does not change cohomology") {
    CechOptions rev;
    rev.sign = SignConvention::Reversed;
    for (auto g : {fx::s3(), fx::a4()})
      for (const auto& h : fx::small_subgroups(g))
        for (unsigned p : {2u, 3u}) {
          if (h.index() % p == 0 || h.index() > 4) continue;
          auto a = cech_complex(h, p), b = cech_complex(h, p, rev);
          for (auto coeff : {AbelianGroupSpec::integers(), AbelianGroupSpec::cyclic(2), AbelianGroupSpec::cyclic(3)})
            CHECK(cohomology(a, coeff) == cohomology(b, coeff));
        }
  }

  TEST_CASE("universal coefficients agree with direct cyclic computation") {
    for (auto g : {fx::s3(), fx::s4()})
      for (const auto& h : fx::small_subgroups(g))
        for (unsigned p : {2u, 3u}) {
          if (h.index() % p == 0 || h.index() > 4) continue;
          auto c = cech_complex(h, p);
          for (std::int64_t m : {2, 3, 4, 6})
            for (int n = 0; n < c.max_degree(); ++n)
              CHECK(cohomology_at(c.complex(), n, AbelianGroupSpec::cyclic(m)) == cyclic_cohomology(c.complex(), n, m));
        }
  }

  TEST_CASE("brute force on small complexes") {
    CechOptions o;
    o.max_degree = 2;
    o.allow_non_sipp = true;
    std::size_t checked = 0;
    for (auto g : {fx::s3(), fx::d8()})
      for (const auto& h : fx::small_subgroups(g))
        for (unsigned p : {2u, 3u}) {
          auto c = cech_complex(h, p, o);
          if (c.complex().total_basis() > 12) continue;
          for (std::int64_t m : {2, 3, 4})
            for (int n = 0; n < 2; ++n) {
              auto hn = cyclic_cohomology(c.complex(), n, m);
              std::uint64_t order = 1;
              for (auto t : hn.torsion) order *= static_cast<std::uint64_t>(t);
              CHECK(hn.rank == 0);
              CHECK(order == oracle::brute_cohomology_order(c.complex(), n, m));
              CHECK(static_cast<std::uint64_t>(hn.torsion.empty() ? 1 : hn.torsion.back()) ==
                    oracle::brute_cohomology_exponent(c.complex(), n, m));
              ++checked;
            }
        }
    CHECK(checked > 20);
  }

  TEST_CASE("cohomology classes") {
    auto g = fx::s3();
    auto c = cech_complex(sub(g, {"(0 1 2)"}), 3);
    const auto& cx = c.complex();
    std::vector<std::int64_t> zero(cx.basis_sizes[1], 0);
    CHECK(cohomology_class(cx, 1, 2, zero) == std::vector<std::int64_t>{0});
    // a coboundary has class 0, a non-coboundary cocycle class 1
    std::vector<std::int64_t> b0{1};
    auto b = apply_differential(cx, 0, 2, b0);
    CHECK(cohomology_class(cx, 1, 2, b) == std::vector<std::int64_t>{0});
    std::size_t nonzero = 0;
    for (std::int64_t a = 0; a < 2; ++a)
      for (std::int64_t bb = 0; bb < 2; ++bb) {
        std::vector<std::int64_t> z{a, bb};
        if (!is_cocycle(cx, 1, 2, z)) continue;
        if (cohomology_class(cx, 1, 2, z) != std::vector<std::int64_t>{0}) ++nonzero;
      }
    CHECK(nonzero == 1);
    std::vector<std::int64_t> bad{1, 1};
    if (!is_cocycle(cx, 1, 2, bad)) CHECK_THROWS_AS(cohomology_class(cx, 1, 2, bad), Error);
  }

  TEST_CASE("emitted complex JSON") {
    auto c = cech_complex(fx::sub(fx::s3(), {"(0 1 2)"}), 3);
    auto j = complex_to_json(c);
    REQUIRE(j["degrees"].size() == 4);
    CHECK(j["degrees"][2]["basis_size"] == 4);
    CHECK(j["degrees"][1]["differential"].size() == 4);
    CHECK(j["degrees"][1]["differential"][0].size() == 2);
  }
}
