#include "sipp/cech.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "sipp/arith.hpp"
#include "sipp/error.hpp"
#include "sipp/linalg/smith.hpp"
#include "sipp/topology.hpp"

namespace sipp {

std::size_t CochainComplex::total_basis() const {
  return std::accumulate(basis_sizes.begin(), basis_sizes.end(), std::size_t{0});
}

bool CochainComplex::d_squared_zero() const {
  for (std::size_t n = 0; n + 1 < differentials.size(); ++n) {
    auto prod = with_promotion([&](auto s) {
      using S = decltype(s);
      Mat<S> p = checked::matmul<S>(convert<S>(differentials[n + 1]), convert<S>(differentials[n]));
      for (Eigen::Index i = 0; i < p.rows(); ++i)
        for (Eigen::Index j = 0; j < p.cols(); ++j)
          if (p(i, j) != 0) return false;
      return true;
    });
    if (!prod) return false;
  }
  return true;
}

AbelianGroupSpec CohomologyGroup::as_spec() const {
  std::vector<std::int64_t> f = torsion;
  f.insert(f.end(), rank, 0);
  return AbelianGroupSpec::normalized(std::move(f));
}

CohomologyGroup CohomologyGroup::from_spec(const AbelianGroupSpec& a) {
  CohomologyGroup g;
  for (auto d : a.invariant_factors) {
    if (d == 0)
      ++g.rank;
    else
      g.torsion.push_back(d);
  }
  return g;
}

std::string CohomologyGroup::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  if (rank > 0) {
    os << "Z";
    if (rank > 1) os << "^" << rank;
    first = false;
  }
  for (auto t : torsion) {
    if (!first) os << " + ";
    os << "Z/" << t;
    first = false;
  }
  return os.str();
}

namespace {

// Invariant factors of ⊕ Z/t_i, via the Smith form of the diagonal.
std::vector<std::int64_t> canonical_torsion(const std::vector<std::int64_t>& ts) {
  if (ts.empty()) return {};
  const auto n = static_cast<Eigen::Index>(ts.size());
  Mat<std::int64_t> d = Mat<std::int64_t>::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) d(i, i) = ts[static_cast<std::size_t>(i)];
  auto s = smith_normal_form(d);
  std::vector<std::int64_t> out;
  for (auto v : s.diagonal())
    if (v > 1) out.push_back(v);
  return out;
}

CohomologyGroup combine(const std::vector<CohomologyGroup>& parts) {
  CohomologyGroup g;
  std::vector<std::int64_t> t;
  for (const auto& p : parts) {
    g.rank += p.rank;
    t.insert(t.end(), p.torsion.begin(), p.torsion.end());
  }
  g.torsion = canonical_torsion(t);
  return g;
}

struct DegreeData {
  IntMatrix next;  // c x b
  IntMatrix prev;  // b x a
};

DegreeData degree_data(const CochainComplex& c, int n) {
  if (n < 0 || n >= static_cast<int>(c.differentials.size()))
    throw Error(Errc::DegreeOutOfRange, "degree " + std::to_string(n));
  const auto b = static_cast<Eigen::Index>(c.basis_sizes[static_cast<std::size_t>(n)]);
  DegreeData d;
  d.next = c.differentials.at(static_cast<std::size_t>(n));
  d.prev = n > 0 ? c.differentials[static_cast<std::size_t>(n - 1)] : IntMatrix::Zero(b, 0);
  return d;
}

// Lattice data for H^n(C ⊗ Z/m): L = {x : d x ∈ mZ^c} and its basis, and the Smith form of
// the image lattice in L-coordinates.
template <class S>
struct Lattice {
  SmithForm<S> l;  // of a spanning set of L
  SmithForm<S> y;  // of the image generators in L-coordinates
  Eigen::Index rank_l = 0;
};

template <class S>
Mat<S> l_coordinates(const SmithForm<S>& l, Eigen::Index rank_l, const Mat<S>& v) {
  Mat<S> w = checked::matmul<S>(l.P, v);
  Mat<S> y(rank_l, v.cols());
  for (Eigen::Index j = 0; j < v.cols(); ++j) {
    for (Eigen::Index i = 0; i < rank_l; ++i) {
      if (w(i, j) % l.D(i, i) != 0) throw Error(Errc::CocycleViolated, "vector is not in the cocycle lattice");
      y(i, j) = w(i, j) / l.D(i, i);
    }
    for (Eigen::Index i = rank_l; i < w.rows(); ++i)
      if (w(i, j) != 0) throw Error(Errc::CocycleViolated, "vector is not in the cocycle lattice");
  }
  return y;
}

template <class S>
Lattice<S> build_lattice(const DegreeData& d, std::int64_t m) {
  const Eigen::Index b = d.next.cols();
  const Eigen::Index c = d.next.rows();
  Mat<S> k = Mat<S>::Zero(c, b + c);
  for (Eigen::Index i = 0; i < c; ++i) {
    for (Eigen::Index j = 0; j < b; ++j) k(i, j) = S(d.next(i, j));
    k(i, b + i) = S(m);
  }
  auto sk = smith_normal_form(k);
  Mat<S> span = sk.Q.block(0, sk.rank, b, b + c - sk.rank);
  Lattice<S> out;
  out.l = smith_normal_form(span);
  out.rank_l = out.l.rank;

  const Eigen::Index a = d.prev.cols();
  Mat<S> gens = Mat<S>::Zero(b, a + (m > 0 ? b : 0));
  for (Eigen::Index i = 0; i < b; ++i) {
    for (Eigen::Index j = 0; j < a; ++j) gens(i, j) = S(d.prev(i, j));
    if (m > 0) gens(i, a + i) = S(m);
  }
  out.y = smith_normal_form(l_coordinates(out.l, out.rank_l, gens));
  return out;
}

template <class S>
CohomologyGroup group_from(const Lattice<S>& lat) {
  CohomologyGroup g;
  g.rank = static_cast<std::size_t>(lat.rank_l - lat.y.rank);
  for (Eigen::Index i = 0; i < lat.y.rank; ++i) {
    const S& e = lat.y.D(i, i);
    if (e > 1) {
      if (e > INT64_MAX) throw Error(Errc::Overflow, "invariant factor exceeds int64");
      g.torsion.push_back(static_cast<std::int64_t>(e));
    }
  }
  return g;
}

std::size_t basis_of(const DegreeData& d) { return static_cast<std::size_t>(d.next.cols()); }

}  // namespace

CohomologyGroup cyclic_cohomology(const CochainComplex& c, int n, std::int64_t m) {
  if (m < 0) throw Error(Errc::PreconditionViolated, "negative modulus");
  if (m == 1) return {};
  DegreeData d = degree_data(c, n);
  if (basis_of(d) == 0) return {};
  return with_promotion([&](auto s) { return group_from(build_lattice<decltype(s)>(d, m)); });
}

CohomologyGroup cohomology_at(const CochainComplex& c, int n, const AbelianGroupSpec& a) {
  std::vector<CohomologyGroup> parts;
  for (auto f : a.invariant_factors) parts.push_back(cyclic_cohomology(c, n, f));
  if (parts.empty()) degree_data(c, n);
  return combine(parts);
}

std::vector<std::int64_t> apply_differential(const CochainComplex& c, int n, std::int64_t m,
                                             std::span<const std::int64_t> cochain) {
  DegreeData d = degree_data(c, n);
  if (static_cast<std::size_t>(d.next.cols()) != cochain.size())
    throw Error(Errc::DimensionMismatch, "cochain length differs from basis size");
  std::vector<std::int64_t> out(static_cast<std::size_t>(d.next.rows()), 0);
  for (Eigen::Index i = 0; i < d.next.rows(); ++i) {
    std::int64_t acc = 0;
    for (Eigen::Index j = 0; j < d.next.cols(); ++j)
      acc = checked::add(acc, checked::mul(d.next(i, j), cochain[static_cast<std::size_t>(j)]));
    out[static_cast<std::size_t>(i)] = m > 0 ? checked::mod(acc, m) : acc;
  }
  return out;
}

bool is_cocycle(const CochainComplex& c, int n, std::int64_t m, std::span<const std::int64_t> cochain) {
  auto v = apply_differential(c, n, m, cochain);
  return std::all_of(v.begin(), v.end(), [](std::int64_t x) { return x == 0; });
}

std::vector<std::int64_t> cohomology_class(const CochainComplex& c, int n, std::int64_t m,
                                           std::span<const std::int64_t> cocycle) {
  if (!is_cocycle(c, n, m, cocycle)) throw Error(Errc::CocycleViolated, "not a cocycle");
  if (m == 1) return {};
  DegreeData d = degree_data(c, n);
  if (basis_of(d) == 0) return {};
  return with_promotion([&](auto s) {
    using S = decltype(s);
    Lattice<S> lat = build_lattice<S>(d, m);
    Mat<S> v(static_cast<Eigen::Index>(cocycle.size()), 1);
    for (std::size_t i = 0; i < cocycle.size(); ++i) v(static_cast<Eigen::Index>(i), 0) = S(cocycle[i]);
    Mat<S> z = checked::matmul<S>(lat.y.P, l_coordinates(lat.l, lat.rank_l, v));
    std::vector<std::int64_t> out;
    for (Eigen::Index i = 0; i < lat.y.rank; ++i) {
      const S& e = lat.y.D(i, i);
      if (e > 1) out.push_back(static_cast<std::int64_t>(checked::mod<S>(z(i, 0), e)));
    }
    for (Eigen::Index i = lat.y.rank; i < lat.rank_l; ++i) {
      if (z(i, 0) > INT64_MAX || z(i, 0) < INT64_MIN) throw Error(Errc::Overflow, "class coordinate");
      out.push_back(static_cast<std::int64_t>(z(i, 0)));
    }
    return out;
  });
}

CohomologyGroup universal_coefficients(const CohomologyGroup& hn, const CohomologyGroup& hn1,
                                       const AbelianGroupSpec& a) {
  std::vector<CohomologyGroup> parts;
  for (auto f : a.invariant_factors) {
    CohomologyGroup g;
    if (f == 0) {
      g = hn;
    } else {
      std::vector<std::int64_t> t(hn.rank, f);
      for (auto x : hn.torsion) t.push_back(std::gcd(x, f));
      for (auto x : hn1.torsion) t.push_back(std::gcd(x, f));
      g.torsion = t;
    }
    parts.push_back(g);
  }
  return combine(parts);
}

std::int32_t CechComplex::OrbitIndex::get(std::uint64_t code) const {
  if (flat) return dense[code];
  auto it = sparse.find(code);
  return it == sparse.end() ? -2 : it->second;
}

void CechComplex::OrbitIndex::set(std::uint64_t code, std::int32_t v) {
  if (flat)
    dense[code] = v;
  else
    sparse[code] = v;
}

std::uint64_t CechComplex::encode(std::span<const Point> tuple) const {
  std::uint64_t code = 0;
  const std::uint64_t n = cover_.source()->size();
  for (Point u : tuple) code = code * n + u;
  return code;
}

CechComplex::CechComplex(const GMap& cover, unsigned p, const CechOptions& options) : cover_(cover), p_(p) {
  if (!is_prime(p)) throw Error(Errc::NotPrime, std::to_string(p));
  if (options.max_degree < 0) throw Error(Errc::DegreeOutOfRange, "negative max degree");
  sipp_ = is_sipp_cover(cover, p).is_cover;
  if (!sipp_ && !options.allow_non_sipp) throw Error(Errc::NotSippCover, "cover fails the prime-index condition");

  const GSet& U = *cover.source();
  const PermGroup& G = U.group();
  const std::uint64_t nu = U.size();
  std::vector<std::vector<Point>> fibers(cover.target()->size());
  for (Point u = 0; u < nu; ++u) fibers[cover(u)].push_back(u);
  const auto& gens = G.generator_elements();

  for (int deg = 0; deg <= options.max_degree; ++deg) {
    const std::size_t k = static_cast<std::size_t>(deg) + 1;
    std::uint64_t count = 0;
    for (Point u = 0; u < nu; ++u) {
      std::uint64_t c = 1;
      for (std::size_t i = 1; i < k; ++i) c *= fibers[cover(u)].size();
      count += c;
    }
    if (count > options.point_cap)
      throw Error(Errc::PointCapExceeded, "U^(" + std::to_string(k) + ") has " + std::to_string(count) + " points");
    std::uint64_t space = 1;
    for (std::size_t i = 0; i < k; ++i) {
      if (nu != 0 && space > UINT64_MAX / nu) throw Error(Errc::PointCapExceeded, "tuple codes overflow");
      space *= nu;
    }
    OrbitIndex idx;
    idx.flat = space <= 20'000'000;
    if (idx.flat) idx.dense.assign(space, -2);
    std::vector<std::vector<Point>> reps;

    std::vector<Point> t(k), moved(k);
    std::vector<std::uint64_t> queue;
    for (Point u = 0; u < nu; ++u) {
      const auto& f = fibers[cover(u)];
      std::vector<std::size_t> pos(k - 1, 0);
      while (true) {
        t[0] = u;
        for (std::size_t i = 1; i < k; ++i) t[i] = f[pos[i - 1]];
        std::uint64_t code = encode(t);
        if (idx.get(code) == -2) {
          queue.assign(1, code);
          idx.set(code, -3);
          for (std::size_t head = 0; head < queue.size(); ++head) {
            std::uint64_t c = queue[head];
            for (std::size_t i = k; i-- > 0;) {
              moved[i] = static_cast<Point>(c % nu);
              c /= nu;
            }
            for (Elem s : gens) {
              std::uint64_t nc = 0;
              for (std::size_t i = 0; i < k; ++i) nc = nc * nu + U.act(s, moved[i]);
              if (idx.get(nc) == -2) {
                idx.set(nc, -3);
                queue.push_back(nc);
              }
            }
          }
          const std::size_t st = G.order() / queue.size();
          std::int32_t value = -1;
          if (st % p == 0) {
            value = static_cast<std::int32_t>(reps.size());
            reps.push_back(t);
          }
          for (auto c : queue) idx.set(c, value);
        }
        std::size_t i = k - 1;
        while (i > 0) {
          if (++pos[i - 1] < f.size()) break;
          pos[i - 1] = 0;
          --i;
        }
        if (i == 0) break;
      }
    }
    complex_.basis_sizes.push_back(reps.size());
    reps_.push_back(std::move(reps));
    index_.push_back(std::move(idx));
  }

  for (int deg = 0; deg < options.max_degree; ++deg) {
    const auto& rows = reps_[static_cast<std::size_t>(deg) + 1];
    IntMatrix d = IntMatrix::Zero(static_cast<Eigen::Index>(rows.size()),
                                  static_cast<Eigen::Index>(reps_[static_cast<std::size_t>(deg)].size()));
    std::vector<Point> face(static_cast<std::size_t>(deg) + 1);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      for (std::size_t i = 0; i < rows[r].size(); ++i) {
        std::size_t w = 0;
        for (std::size_t j = 0; j < rows[r].size(); ++j)
          if (j != i) face[w++] = rows[r][j];
        std::int32_t col = index_[static_cast<std::size_t>(deg)].get(encode(face));
        if (col < 0) throw Error(Errc::PreconditionViolated, "face of a bar orbit left bar");
        std::int64_t sign = (i % 2 == 0) ? 1 : -1;
        if (options.sign == SignConvention::Reversed) sign = -sign;
        d(static_cast<Eigen::Index>(r), col) += sign;
      }
    }
    complex_.differentials.push_back(std::move(d));
  }
}

std::optional<std::size_t> CechComplex::basis_index(std::span<const Point> tuple) const {
  if (tuple.empty() || tuple.size() > index_.size()) return std::nullopt;
  for (Point u : tuple)
    if (u >= cover_.source()->size() || cover_(u) != cover_(tuple[0])) return std::nullopt;
  std::int32_t v = index_[tuple.size() - 1].get(encode(tuple));
  if (v < 0) return std::nullopt;
  return static_cast<std::size_t>(v);
}

CechComplex cech_complex(const Subgroup& h, unsigned p, const CechOptions& options) {
  CosetSpace cs = coset_gset(h);
  return CechComplex(to_point(cs.set), p, options);
}

std::vector<CohomologyGroup> cohomology(const CechComplex& c, const AbelianGroupSpec& a) {
  std::vector<CohomologyGroup> out;
  for (int n = 0; n < c.max_degree(); ++n) out.push_back(cohomology_at(c.complex(), n, a));
  return out;
}

namespace {
CechComplex units_complex(const Subgroup& h, std::int64_t q, int max_degree) {
  auto pp = prime_power(static_cast<std::uint64_t>(q));
  if (!pp) throw Error(Errc::NotPrime, "q = " + std::to_string(q) + " is not a prime power");
  auto p = static_cast<unsigned>(pp->first);
  if (h.index() % p == 0) throw Error(Errc::NotSippCover, "[G:H] is divisible by the characteristic");
  CechOptions o;
  o.max_degree = max_degree;
  return cech_complex(h, p, o);
}
}  // namespace

CohomologyGroup t_kernel(const Subgroup& h, std::int64_t q) {
  CechComplex c = units_complex(h, q, 2);
  return cohomology_at(c.complex(), 1, AbelianGroupSpec::units_of_field(q));
}

CohomologyGroup obstruction_group(const Subgroup& h, std::int64_t q) {
  CechComplex c = units_complex(h, q, 3);
  return cohomology_at(c.complex(), 2, AbelianGroupSpec::units_of_field(q));
}

}  // namespace sipp
