#include "support.hpp"

#include <algorithm>
#include <set>

#include "sipp/json_io.hpp"

namespace fx {

namespace {

GroupPtr make(std::size_t degree, const std::vector<std::vector<Point>>& gens) {
  std::vector<Permutation> ps;
  for (const auto& g : gens) ps.emplace_back(g);
  return group_closure(ps, degree);
}

}  // namespace

GroupPtr s3() {
  static GroupPtr g = make(3, {{1, 0, 2}, {1, 2, 0}});
  return g;
}
GroupPtr s4() {
  static GroupPtr g = make(4, {{1, 0, 2, 3}, {1, 2, 3, 0}});
  return g;
}
GroupPtr a4() {
  static GroupPtr g = make(4, {{1, 2, 0, 3}, {1, 0, 3, 2}});
  return g;
}
GroupPtr d8() {
  static GroupPtr g = make(4, {{1, 2, 3, 0}, {2, 1, 0, 3}});
  return g;
}
GroupPtr c6() {
  static GroupPtr g = make(5, {{1, 2, 0, 4, 3}});
  return g;
}

Elem el(const GroupPtr& g, const std::string& cycles) { return parse_element(cycles, *g); }

Subgroup sub(const GroupPtr& g, const std::vector<std::string>& gens) {
  std::vector<Elem> e;
  for (const auto& s : gens) e.push_back(el(g, s));
  return Subgroup::generated_by(g, e);
}

std::vector<Subgroup> small_subgroups(const GroupPtr& g) {
  std::set<std::vector<Elem>> seen;
  std::vector<Subgroup> out;
  for (Elem a = 0; a < g->order(); ++a)
    for (Elem b = a; b < g->order(); ++b) {
      Elem gens[2] = {a, b};
      Subgroup s = Subgroup::generated_by(g, gens);
      if (seen.insert(s.elements()).second) out.push_back(s);
    }
  return out;
}

GMap projection(const Subgroup& k, const Subgroup& h) { return beta_map(coset_gset(k), coset_gset(h), 0); }

Representation over_point(const KModule& v) {
  GSetPtr pt = point_gset(v.group().group_ptr());
  std::vector<std::vector<FpMatrix>> t;
  for (Elem g = 0; g < v.group().group().order(); ++g) t.push_back({v.action(g)});
  return Representation(pt, v.field(), {v.dim()}, std::move(t));
}

}  // namespace fx

namespace oracle {

std::size_t Cosets::find(const Permutation& x) const {
  for (std::size_t i = 0; i < sets.size(); ++i)
    if (std::binary_search(sets[i].begin(), sets[i].end(), x)) return i;
  return sets.size();
}

Cosets cosets(const Subgroup& h) {
  const PermGroup& G = h.group();
  Cosets c;
  std::set<std::vector<Permutation>> seen;
  for (const auto& x : G.elements()) {
    std::vector<Permutation> s;
    for (Elem k : h.elements()) s.push_back(x * G.element(k));
    std::sort(s.begin(), s.end());
    if (seen.insert(s).second) c.sets.push_back(std::move(s));
  }
  return c;
}

std::size_t bar_power_size(const Subgroup& h, std::size_t n, unsigned p) {
  const PermGroup& G = h.group();
  Cosets c = cosets(h);
  const std::size_t m = c.sets.size();
  // act[g][i] on coset indices
  std::vector<std::vector<std::size_t>> act;
  for (const auto& g : G.elements()) {
    std::vector<std::size_t> row;
    for (const auto& s : c.sets) row.push_back(c.find(g * s.front()));
    act.push_back(row);
  }
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= m;
  auto decode = [&](std::size_t code) {
    std::vector<std::size_t> t(n);
    for (std::size_t i = n; i-- > 0;) {
      t[i] = code % m;
      code /= m;
    }
    return t;
  };
  auto encode = [&](const std::vector<std::size_t>& t) {
    std::size_t code = 0;
    for (auto x : t) code = code * m + x;
    return code;
  };
  std::vector<bool> seen(total, false);
  std::size_t count = 0;
  for (std::size_t code = 0; code < total; ++code) {
    if (seen[code]) continue;
    std::set<std::size_t> orbit;
    auto t = decode(code);
    for (const auto& row : act) {
      std::vector<std::size_t> u(n);
      for (std::size_t i = 0; i < n; ++i) u[i] = row[t[i]];
      orbit.insert(encode(u));
    }
    for (auto o : orbit) seen[o] = true;
    if ((G.order() / orbit.size()) % p == 0) ++count;
  }
  return count;
}

std::size_t rank_mod(const IntMatrix& m, std::int64_t p) {
  IntMatrix a = m;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) a(i, j) = ((a(i, j) % p) + p) % p;
  std::size_t r = 0;
  for (Eigen::Index col = 0; col < a.cols() && static_cast<Eigen::Index>(r) < a.rows(); ++col) {
    Eigen::Index piv = -1;
    for (Eigen::Index i = static_cast<Eigen::Index>(r); i < a.rows(); ++i)
      if (a(i, col) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    a.row(piv).swap(a.row(static_cast<Eigen::Index>(r)));
    std::int64_t inv = 1;
    for (std::int64_t k = 1; k < p; ++k)
      if (a(static_cast<Eigen::Index>(r), col) * k % p == 1) inv = k;
    for (Eigen::Index j = 0; j < a.cols(); ++j) a(static_cast<Eigen::Index>(r), j) = a(static_cast<Eigen::Index>(r), j) * inv % p;
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (i == static_cast<Eigen::Index>(r) || a(i, col) == 0) continue;
      const std::int64_t f = a(i, col);
      for (Eigen::Index j = 0; j < a.cols(); ++j)
        a(i, j) = ((a(i, j) - f * a(static_cast<Eigen::Index>(r), j)) % p + p) % p;
    }
    ++r;
  }
  return r;
}

namespace {

// Inhomogeneous bar differential of Q with trivial coefficients: Z^{q^n} -> Z^{q^{n+1}}.
IntMatrix bar_differential(const std::vector<std::vector<std::size_t>>& mul, int n) {
  const std::size_t q = mul.size();
  std::size_t rows = 1, cols = 1;
  for (int i = 0; i < n + 1; ++i) rows *= q;
  for (int i = 0; i < n; ++i) cols *= q;
  IntMatrix d = IntMatrix::Zero(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  auto encode = [&](const std::vector<std::size_t>& t) {
    std::size_t c = 0;
    for (auto x : t) c = c * q + x;
    return static_cast<Eigen::Index>(c);
  };
  for (std::size_t code = 0; code < rows; ++code) {
    std::vector<std::size_t> t(n + 1);
    std::size_t c = code;
    for (int i = n + 1; i-- > 0;) {
      t[i] = c % q;
      c /= q;
    }
    const auto r = static_cast<Eigen::Index>(code);
    d(r, encode(std::vector<std::size_t>(t.begin() + 1, t.end()))) += 1;
    for (int i = 0; i < n; ++i) {
      std::vector<std::size_t> u;
      for (int j = 0; j < n + 1; ++j) {
        if (j == i + 1) continue;
        u.push_back(j == i ? mul[t[i]][t[i + 1]] : t[j]);
      }
      d(r, encode(u)) += (i % 2 == 0) ? -1 : 1;
    }
    d(r, encode(std::vector<std::size_t>(t.begin(), t.end() - 1))) += (n % 2 == 0) ? -1 : 1;
  }
  return d;
}

}  // namespace

std::size_t group_cohomology_dim(const Subgroup& h, int n, std::int64_t p) {
  Cosets c = cosets(h);
  const std::size_t q = c.sets.size();
  std::vector<std::vector<std::size_t>> mul(q, std::vector<std::size_t>(q));
  for (std::size_t a = 0; a < q; ++a)
    for (std::size_t b = 0; b < q; ++b) mul[a][b] = c.find(c.sets[a].front() * c.sets[b].front());
  std::size_t dim = 1;
  for (int i = 0; i < n; ++i) dim *= q;
  const std::size_t out = rank_mod(bar_differential(mul, n), p);
  const std::size_t in = n == 0 ? 0 : rank_mod(bar_differential(mul, n - 1), p);
  return dim - out - in;
}

namespace {

using Cochain = std::vector<std::int64_t>;

std::vector<Cochain> all_cochains(std::size_t size, std::int64_t m) {
  std::vector<Cochain> out;
  Cochain c(size, 0);
  while (true) {
    out.push_back(c);
    std::size_t i = 0;
    while (i < size && ++c[i] == m) c[i++] = 0;
    if (i == size) break;
  }
  return out;
}

Cochain apply(const IntMatrix& d, const Cochain& c, std::int64_t m) {
  Cochain out(static_cast<std::size_t>(d.rows()), 0);
  for (Eigen::Index i = 0; i < d.rows(); ++i) {
    std::int64_t s = 0;
    for (Eigen::Index j = 0; j < d.cols(); ++j) s += d(i, j) * c[static_cast<std::size_t>(j)];
    out[static_cast<std::size_t>(i)] = ((s % m) + m) % m;
  }
  return out;
}

struct Enumerated {
  std::vector<Cochain> cocycles;
  std::set<Cochain> boundaries;
};

Enumerated enumerate(const CochainComplex& c, int n, std::int64_t m) {
  Enumerated e;
  const std::size_t size = c.basis_sizes[static_cast<std::size_t>(n)];
  for (const auto& z : all_cochains(size, m)) {
    auto dz = apply(c.differentials[static_cast<std::size_t>(n)], z, m);
    if (std::all_of(dz.begin(), dz.end(), [](std::int64_t x) { return x == 0; })) e.cocycles.push_back(z);
  }
  if (n == 0) {
    e.boundaries.insert(Cochain(size, 0));
  } else {
    const auto& d = c.differentials[static_cast<std::size_t>(n - 1)];
    for (const auto& b : all_cochains(c.basis_sizes[static_cast<std::size_t>(n - 1)], m))
      e.boundaries.insert(apply(d, b, m));
  }
  return e;
}

}  // namespace

std::uint64_t brute_cohomology_order(const CochainComplex& c, int n, std::int64_t m) {
  auto e = enumerate(c, n, m);
  return e.cocycles.size() / e.boundaries.size();
}

std::uint64_t brute_cohomology_exponent(const CochainComplex& c, int n, std::int64_t m) {
  auto e = enumerate(c, n, m);
  std::uint64_t best = 1;
  for (const auto& z : e.cocycles) {
    Cochain k(z.size(), 0);
    for (std::uint64_t order = 1;; ++order) {
      for (std::size_t i = 0; i < z.size(); ++i) k[i] = (k[i] + z[i]) % m;
      if (e.boundaries.count(k)) {
        best = std::max(best, order);
        break;
      }
    }
  }
  return best;
}

bool d_squared_zero(const CochainComplex& c) {
  for (std::size_t n = 0; n + 1 < c.differentials.size(); ++n) {
    const IntMatrix& a = c.differentials[n];
    const IntMatrix& b = c.differentials[n + 1];
    for (Eigen::Index i = 0; i < b.rows(); ++i)
      for (Eigen::Index j = 0; j < a.cols(); ++j) {
        std::int64_t s = 0;
        for (Eigen::Index k = 0; k < b.cols(); ++k) s += b(i, k) * a(k, j);
        if (s != 0) return false;
      }
  }
  return true;
}

}  // namespace oracle
