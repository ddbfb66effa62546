#include "sipp/monad.hpp"

#include <map>

#include "sipp/error.hpp"

namespace sipp {

namespace {

Subgroup whole_of(const Subgroup& h) { return Subgroup::whole(h.group_ptr()); }

FpMatrix repeat_diag(const FpMatrix& f, std::size_t times) {
  if (times == 0) return FpMatrix(f.field(), 0, 0);
  std::vector<FpMatrix> blocks(times, f);
  return direct_sum(blocks);
}

// n×1 column e_i
FpMatrix unit_vector(std::int64_t p, Eigen::Index n, Eigen::Index i) {
  FpMatrix e(p, n, 1);
  e.set(i, 0, 1);
  return e;
}

// A⊗B -> B⊗A
FpMatrix swap_factors(std::int64_t p, Eigen::Index a, Eigen::Index b) {
  FpMatrix s(p, a * b, a * b);
  for (Eigen::Index i = 0; i < a; ++i)
    for (Eigen::Index j = 0; j < b; ++j) s.set(j * a + i, i * b + j, 1);
  return s;
}

bool linear_on_generators(const FpMatrix& f, const KModule& a, const KModule& b) {
  if (f.rows() != b.dim() || f.cols() != a.dim()) return false;
  for (Elem s : a.group().generators())
    if (f * a.action(s) != b.action(s) * f) return false;
  return true;
}

std::size_t index_of_h(const Subgroup& h) { return h.index(); }

}  // namespace

RingObject ring_object(const Subgroup& h, std::int64_t field) {
  CosetSpace cs = coset_gset(h);
  const PermGroup& G = h.group();
  const auto n = static_cast<Eigen::Index>(cs.set->size());
  std::vector<FpMatrix> m;
  for (Elem g = 0; g < G.order(); ++g) {
    FpMatrix a(field, n, n);
    for (Point c = 0; c < cs.set->size(); ++c) a.set(cs.set->act(g, c), c, 1);
    m.push_back(std::move(a));
  }
  KModule carrier(whole_of(h), field, n, std::move(m));
  FpMatrix mu(field, n, n * n), eta(field, n, 1), sigma(field, n * n, n);
  for (Eigen::Index c = 0; c < n; ++c) {
    mu.set(c, c * n + c, 1);
    eta.set(c, 0, 1);
    sigma.set(c * n + c, c, 1);
  }
  return {std::move(cs), std::move(carrier), std::move(mu), std::move(eta), std::move(sigma)};
}

std::vector<AxiomCheck> ring_axioms(const RingObject& a) {
  const std::int64_t p = a.carrier.field();
  const auto n = a.carrier.dim();
  const FpMatrix I = FpMatrix::identity(p, n);
  const FpMatrix& mu = a.mu;
  std::vector<AxiomCheck> out;
  out.push_back({"ring.associativity", mu * kron(mu, I) == mu * kron(I, mu)});
  out.push_back({"ring.unit", mu * kron(a.eta, I) == I && mu * kron(I, a.eta) == I});
  out.push_back({"ring.commutativity", mu * swap_factors(p, n, n) == mu});
  bool lin = true;
  for (Elem s : a.carrier.group().generators()) {
    const FpMatrix& g = a.carrier.action(s);
    lin = lin && mu * kron(g, g) == g * mu && g * a.eta == a.eta && kron(g, g) * a.sigma == a.sigma * g;
  }
  out.push_back({"ring.G-linearity", lin});
  out.push_back({"ring.separability", mu * a.sigma == I});
  out.push_back({"ring.section-bilinear",
                 a.sigma * mu == kron(mu, I) * kron(I, a.sigma) && a.sigma * mu == kron(I, mu) * kron(a.sigma, I)});
  return out;
}

std::vector<AxiomCheck> amodule_axioms(const RingObject& a, const AModule& m) {
  const std::int64_t p = a.carrier.field();
  const auto n = a.carrier.dim();
  const auto N = m.carrier.dim();
  const FpMatrix IN = FpMatrix::identity(p, N);
  std::vector<AxiomCheck> out;
  if (m.rho.rows() != N || m.rho.cols() != n * N) {
    out.push_back({"module.shape", false});
    return out;
  }
  out.push_back({"module.associativity", m.rho * kron(FpMatrix::identity(p, n), m.rho) == m.rho * kron(a.mu, IN)});
  out.push_back({"module.unit", m.rho * kron(a.eta, IN) == IN});
  bool lin = true;
  for (Elem s : m.carrier.group().generators())
    lin = lin && m.rho * kron(a.carrier.action(s), m.carrier.action(s)) == m.carrier.action(s) * m.rho;
  out.push_back({"module.G-linearity", lin});
  return out;
}

bool is_amodule(const RingObject& a, const AModule& m) {
  for (const auto& c : amodule_axioms(a, m))
    if (!c.passed) return false;
  return true;
}

std::vector<FpMatrix> idempotents(const RingObject& a, const AModule& m) {
  const std::int64_t p = a.carrier.field();
  const auto n = a.carrier.dim();
  std::vector<FpMatrix> e;
  for (Eigen::Index c = 0; c < n; ++c)
    e.push_back(m.rho * kron(unit_vector(p, n, c), FpMatrix::identity(p, m.carrier.dim())));
  return e;
}

bool idempotents_ok(const RingObject& a, const AModule& m) {
  auto e = idempotents(a, m);
  const auto N = m.carrier.dim();
  const std::int64_t p = a.carrier.field();
  FpMatrix sum(p, N, N);
  for (std::size_t i = 0; i < e.size(); ++i) {
    sum = sum + e[i];
    for (std::size_t j = 0; j < e.size(); ++j) {
      FpMatrix prod = e[i] * e[j];
      if (i == j ? prod != e[i] : !prod.is_zero()) return false;
    }
  }
  if (!sum.is_identity()) return false;
  const GSet& X = *a.cosets.set;
  for (Elem g = 0; g < X.group().order(); ++g)
    for (Point c = 0; c < X.size(); ++c)
      if (m.carrier.action(g) * e[c] != e[X.act(g, c)] * m.carrier.action(g)) return false;
  return true;
}

KModule induction(const KModule& w) {
  const Subgroup& H = w.group();
  const PermGroup& G = H.group();
  CosetSpace cs = coset_gset(H);
  const auto d = w.dim();
  const auto n = static_cast<Eigen::Index>(cs.set->size());
  std::vector<FpMatrix> m;
  for (Elem g = 0; g < G.order(); ++g) {
    FpMatrix a(w.field(), n * d, n * d);
    for (Point c = 0; c < cs.set->size(); ++c) {
      Point gc = cs.set->act(g, c);
      Elem k = G.mul(G.inv(cs.representative(gc)), G.mul(g, cs.representative(c)));
      a.set_block(gc * d, c * d, w.action(k));
    }
    m.push_back(std::move(a));
  }
  return KModule(whole_of(H), w.field(), n * d, std::move(m));
}

KModule coinduction(const KModule& w) {
  const Subgroup& H = w.group();
  const PermGroup& G = H.group();
  CosetTable rc = right_cosets(H);
  const auto d = w.dim();
  const auto m = static_cast<Eigen::Index>(rc.reps.size());
  std::vector<FpMatrix> mats;
  for (Elem g = 0; g < G.order(); ++g) {
    FpMatrix a(w.field(), m * d, m * d);
    for (Eigen::Index j = 0; j < m; ++j) {
      Elem y = G.mul(rc.reps[j], g);
      auto jp = rc.coset_of[y];
      Elem hp = G.mul(y, G.inv(rc.reps[jp]));
      a.set_block(j * d, jp * d, w.action(hp));
    }
    mats.push_back(std::move(a));
  }
  return KModule(whole_of(H), w.field(), m * d, std::move(mats));
}

FpMatrix ind_coind_iso(const KModule& w) {
  const Subgroup& H = w.group();
  const PermGroup& G = H.group();
  CosetSpace cs = coset_gset(H);
  CosetTable rc = right_cosets(H);
  const auto d = w.dim();
  const auto n = static_cast<Eigen::Index>(cs.set->size());
  FpMatrix f(w.field(), n * d, n * d);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index c = 0; c < n; ++c) {
      Elem x = G.mul(rc.reps[j], cs.representative(static_cast<Point>(c)));
      if (H.contains(x)) f.set_block(j * d, c * d, w.action(x));
    }
  return f;
}

FpMatrix coind_unit(const KModule& v, const Subgroup& h) {
  CosetTable rc = right_cosets(h);
  std::vector<FpMatrix> blocks;
  for (Elem s : rc.reps) blocks.push_back(v.action(s));
  return vstack(blocks);
}

FpMatrix coind_counit(const KModule& w) {
  const auto d = w.dim();
  const auto m = static_cast<Eigen::Index>(index_of_h(w.group()));
  FpMatrix e(w.field(), d, m * d);
  e.set_block(0, 0, FpMatrix::identity(w.field(), d));
  return e;
}

FpMatrix coind_section(const KModule& w) { return coind_counit(w).transpose(); }

FpMatrix ind_unit(const KModule& v, const Subgroup& h) {
  CosetSpace cs = coset_gset(h);
  std::vector<FpMatrix> blocks;
  for (Point c = 0; c < cs.set->size(); ++c) blocks.push_back(v.action(h.group().inv(cs.representative(c))));
  return vstack(blocks);
}

FpMatrix ind_counit(const KModule& w) { return coind_counit(w); }
FpMatrix ind_section(const KModule& w) { return coind_section(w); }

FpMatrix coind_map(const FpMatrix& f, const Subgroup& h) { return repeat_diag(f, index_of_h(h)); }
FpMatrix ind_map(const FpMatrix& f, const Subgroup& h) { return repeat_diag(f, index_of_h(h)); }

BimoduleRetraction bimodule_retraction(const Subgroup& h, std::int64_t field) {
  const auto gn = static_cast<Eigen::Index>(h.group().order());
  const auto hn = static_cast<Eigen::Index>(h.order());
  FpMatrix ell(field, gn, hn), m(field, hn, gn);
  for (Eigen::Index i = 0; i < hn; ++i) {
    ell.set(h.elements()[i], i, 1);
    m.set(i, h.elements()[i], 1);
  }
  return {std::move(ell), std::move(m)};
}

std::vector<AxiomCheck> retraction_checks(const Subgroup& h, const BimoduleRetraction& r) {
  const PermGroup& G = h.group();
  const std::int64_t p = r.m.field();
  const auto gn = static_cast<Eigen::Index>(G.order());
  const auto hn = static_cast<Eigen::Index>(h.order());
  bool left = true, right = true;
  for (Elem s : h.generators()) {
    FpMatrix lg(p, gn, gn), rg(p, gn, gn), lh(p, hn, hn), rh(p, hn, hn);
    for (Elem g = 0; g < G.order(); ++g) {
      lg.set(G.mul(s, g), g, 1);
      rg.set(G.mul(g, s), g, 1);
    }
    for (Eigen::Index i = 0; i < hn; ++i) {
      Elem x = h.elements()[i];
      lh.set(*h.position(G.mul(s, x)), i, 1);
      rh.set(*h.position(G.mul(x, s)), i, 1);
    }
    left = left && r.m * lg == lh * r.m && r.ell * lh == lg * r.ell;
    right = right && r.m * rg == rh * r.m && r.ell * rh == rg * r.ell;
  }
  return {{"retraction.m-ell", (r.m * r.ell).is_identity()},
          {"retraction.left-linear", left},
          {"retraction.right-linear", right}};
}

FpMatrix theta(const KModule& v, const Subgroup& h) {
  CosetSpace cs = coset_gset(h);
  std::vector<FpMatrix> blocks;
  for (Point c = 0; c < cs.set->size(); ++c) blocks.push_back(v.action(cs.representative(c)));
  return direct_sum(blocks);
}

FpMatrix theta_inverse(const KModule& v, const Subgroup& h) {
  CosetSpace cs = coset_gset(h);
  std::vector<FpMatrix> blocks;
  for (Point c = 0; c < cs.set->size(); ++c) blocks.push_back(v.action(h.group().inv(cs.representative(c))));
  return direct_sum(blocks);
}

FpMatrix ind_res_multiplication(const KModule& v, const Subgroup& h) {
  return ind_map(ind_counit(restrict_module(v, h)), h);
}

std::vector<AxiomCheck> theta_checks(const RingObject& a, const KModule& v) {
  const Subgroup& H = a.cosets.subgroup;
  const std::int64_t p = v.field();
  const auto n = a.carrier.dim();
  const auto d = v.dim();
  KModule resv = restrict_module(v, H);
  KModule irv = induction(resv);
  KModule av = tensor(a.carrier, v);
  FpMatrix th = theta(v, H);
  std::vector<AxiomCheck> out;
  out.push_back({"theta.G-linear", linear_on_generators(th, irv, av)});
  out.push_back({"theta.inverse", (theta_inverse(v, H) * th).is_identity() && (th * theta_inverse(v, H)).is_identity()});

  FpMatrix mult = ind_res_multiplication(v, H);
  FpMatrix th_ir = theta(irv, H);
  FpMatrix rhs = kron(a.mu, FpMatrix::identity(p, d)) * kron(FpMatrix::identity(p, n), th) * th_ir;
  out.push_back({"theta.multiplication-square", th * mult == rhs});
  // g⊗g'⊗v ↦ [g]⊗g g' v if g' ∈ H, else 0
  FpMatrix closed(p, n * d, n * n * d);
  for (Eigen::Index c = 0; c < n; ++c)
    closed.set_block(c * d, (c * n) * d, v.action(a.cosets.representative(static_cast<Point>(c))));
  out.push_back({"theta.closed-form", th * mult == closed});
  FpMatrix eta_av = kron(a.eta, FpMatrix::identity(p, d));
  out.push_back({"theta.unit", th * ind_unit(v, H) == eta_av});
  return out;
}

AModule psi(const RingObject& a, const KModule& w) {
  KModule ind = induction(w);
  const auto n = a.carrier.dim();
  const auto d = w.dim();
  const auto N = ind.dim();
  FpMatrix rho(w.field(), N, n * N);
  for (Eigen::Index c = 0; c < n; ++c)
    for (Eigen::Index i = 0; i < d; ++i) rho.set(c * d + i, c * N + c * d + i, 1);
  return {std::move(ind), std::move(rho)};
}

KModule phi(const RingObject& a, const AModule& m) {
  for (const auto& c : amodule_axioms(a, m))
    if (!c.passed) throw Error(Errc::NotAnAModule, c.name + " fails");
  const Subgroup& H = a.cosets.subgroup;
  FpMatrix e0 = idempotents(a, m)[0];
  FpMatrix b = column_basis(e0);
  FpMatrix bl = left_inverse(b);
  std::vector<FpMatrix> mats;
  for (Elem h : H.elements()) {
    FpMatrix image = m.carrier.action(h) * b;
    FpMatrix x = bl * image;
    if (b * x != image) throw Error(Errc::NotAnAModule, "e_[1] X is not H-stable");
    mats.push_back(std::move(x));
  }
  return KModule(H, m.carrier.field(), b.cols(), std::move(mats));
}

FpMatrix psi_phi_iso(const RingObject& a, const AModule& m) {
  KModule w = phi(a, m);
  FpMatrix b = column_basis(idempotents(a, m)[0]);
  std::vector<FpMatrix> blocks;
  for (Point c = 0; c < a.cosets.set->size(); ++c) blocks.push_back(m.carrier.action(a.cosets.representative(c)) * b);
  FpMatrix f = hstack(blocks);
  AModule pw = psi(a, w);
  if (!linear_on_generators(f, pw.carrier, m.carrier) || !is_invertible(f) ||
      f * pw.rho != m.rho * kron(FpMatrix::identity(f.field(), a.carrier.dim()), f))
    throw Error(Errc::NotAnIsomorphism, "Ψ Φ M -> M is not an A-module isomorphism");
  return f;
}

AModule free_module(const RingObject& a, const KModule& v) {
  return {tensor(a.carrier, v), kron(a.mu, FpMatrix::identity(v.field(), v.dim()))};
}

AModule twist(const AModule& m, const FpMatrix& t) {
  auto ti = inverse(t);
  if (!ti) throw Error(Errc::NotInvertible, "twisting matrix");
  const auto n = m.rho.cols() / m.carrier.dim();
  return {change_basis(m.carrier, t), *ti * m.rho * kron(FpMatrix::identity(t.field(), n), t)};
}

std::vector<FpMatrix> amodule_hom_basis(const RingObject& a, const AModule& m1, const AModule& m2) {
  auto basis = hom_basis(m1.carrier, m2.carrier);
  if (basis.empty()) return {};
  const std::int64_t p = a.carrier.field();
  const auto In = FpMatrix::identity(p, a.carrier.dim());
  std::vector<FpMatrix> cols;
  for (const auto& f : basis) {
    FpMatrix r = f * m1.rho - m2.rho * kron(In, f);
    FpMatrix v(p, r.rows() * r.cols(), 1);
    for (Eigen::Index j = 0; j < r.cols(); ++j)
      for (Eigen::Index i = 0; i < r.rows(); ++i) v.set(j * r.rows() + i, 0, r(i, j));
    cols.push_back(std::move(v));
  }
  FpMatrix ns = nullspace(hstack(cols));
  std::vector<FpMatrix> out;
  for (Eigen::Index k = 0; k < ns.cols(); ++k) {
    FpMatrix f(p, basis[0].rows(), basis[0].cols());
    for (std::size_t i = 0; i < basis.size(); ++i) f = f + ns(static_cast<Eigen::Index>(i), k) * basis[i];
    out.push_back(std::move(f));
  }
  return out;
}

AModule coind_module(const KModule& w) {
  KModule x = coinduction(w);
  return {x, coind_map(coind_counit(w), w.group())};
}

std::vector<AxiomCheck> coind_module_axioms(const AModule& e, const Subgroup& h) {
  const KModule& x = e.carrier;
  KModule resx = restrict_module(x, h);
  KModule tx = coinduction(resx);
  FpMatrix t_rho = coind_map(e.rho, h);
  FpMatrix mu_x = coind_map(coind_counit(resx), h);
  std::vector<AxiomCheck> out;
  out.push_back({"coind-module.associativity", e.rho * t_rho == e.rho * mu_x});
  out.push_back({"coind-module.unit", (e.rho * coind_unit(x, h)).is_identity()});
  out.push_back({"coind-module.G-linearity", linear_on_generators(e.rho, tx, x)});
  return out;
}

std::vector<CheckTally> monad_suite(const Subgroup& h, std::int64_t field, std::size_t trials, std::uint64_t seed,
                                    bool corrupt_mu) {
  std::mt19937_64 rng(seed);
  std::vector<CheckTally> tally;
  std::map<std::string, std::size_t> where;
  auto record = [&](const std::string& name, bool ok) {
    auto [it, fresh] = where.emplace(name, tally.size());
    if (fresh) tally.push_back({name, 0, 0});
    auto& t = tally[it->second];
    ++t.total;
    if (ok) ++t.passed;
  };
  auto record_all = [&](const std::vector<AxiomCheck>& checks) {
    for (const auto& c : checks) record(c.name, c.passed);
  };
  // Exceptions inside one check count as a failure of that check.
  auto guarded = [&](const std::string& name, auto&& fn) {
    try {
      record(name, fn());
    } catch (const Error&) {
      record(name, false);
    }
  };

  RingObject a = ring_object(h, field);
  if (corrupt_mu) a.mu.set(0, 0, a.mu(0, 0) + 1);
  record_all(ring_axioms(a));
  record_all(retraction_checks(h, bimodule_retraction(h, field)));
  const Subgroup G = whole_of(h);
  std::uniform_int_distribution<int> dim(1, 3);

  for (std::size_t trial = 0; trial < trials; ++trial) {
    KModule w = random_module(h, field, dim(rng), rng);
    KModule v = random_module(G, field, dim(rng), rng);
    KModule resv = restrict_module(v, h);

    guarded("adjunction.coind-linear", [&] {
      return linear_on_generators(coind_unit(v, h), v, coinduction(resv)) &&
             linear_on_generators(coind_counit(w), restrict_module(coinduction(w), h), w) &&
             linear_on_generators(coind_section(w), w, restrict_module(coinduction(w), h));
    });
    guarded("adjunction.ind-linear", [&] {
      return linear_on_generators(ind_unit(v, h), v, induction(resv)) &&
             linear_on_generators(ind_counit(w), restrict_module(induction(w), h), w) &&
             linear_on_generators(ind_section(w), w, restrict_module(induction(w), h));
    });
    guarded("adjunction.coind-triangles", [&] {
      KModule cw = coinduction(w);
      return (coind_counit(resv) * coind_unit(v, h)).is_identity() &&
             (coind_map(coind_counit(w), h) * coind_unit(cw, h)).is_identity();
    });
    guarded("adjunction.ind-triangles", [&] {
      KModule iw = induction(w);
      return (ind_counit(resv) * ind_unit(v, h)).is_identity() &&
             (ind_map(ind_counit(w), h) * ind_unit(iw, h)).is_identity();
    });
    guarded("retraction.eps-xi", [&] { return (coind_counit(w) * coind_section(w)).is_identity(); });
    guarded("retraction.eps'-xi'", [&] { return (ind_counit(w) * ind_section(w)).is_identity(); });

    guarded("ind-coind.explicit", [&] {
      FpMatrix f = ind_coind_iso(w);
      return is_invertible(f) && linear_on_generators(f, induction(w), coinduction(w));
    });
    guarded("ind-coind.solved", [&] { return find_isomorphism(induction(w), coinduction(w), rng()).has_value(); });

    for (const auto& c : theta_checks(a, v)) record(c.name, c.passed);
    guarded("theta.naturality", [&] {
      FpMatrix t = random_invertible(field, v.dim(), rng);
      KModule v2 = change_basis(v, t);
      auto phi_map = *inverse(t);  // v -> v2
      auto endo = hom_basis(v, v);
      FpMatrix e = phi_map;
      for (const auto& b : endo) e = e + static_cast<std::int64_t>(rng() % field) * (phi_map * b);
      FpMatrix lhs = theta(v2, h) * ind_map(e, h);
      FpMatrix rhs = kron(FpMatrix::identity(field, a.carrier.dim()), e) * theta(v, h);
      return linear_on_generators(e, v, v2) && lhs == rhs;
    });

    AModule pw = psi(a, w);
    record_all(amodule_axioms(a, pw));
    guarded("psi.idempotents", [&] { return idempotents_ok(a, pw); });
    guarded("phi-psi.round-trip", [&] { return find_isomorphism(phi(a, pw), w, rng()).has_value(); });
    guarded("psi-phi.round-trip", [&] {
      AModule m = twist(pw, random_invertible(field, pw.carrier.dim(), rng));
      if (!is_amodule(a, m) || !idempotents_ok(a, m)) return false;
      psi_phi_iso(a, m);
      return true;
    });
    guarded("phi.free-module", [&] {
      AModule f = free_module(a, v);
      return is_amodule(a, f) && find_isomorphism(phi(a, f), resv, rng()).has_value();
    });
    guarded("psi.fully-faithful", [&] {
      KModule w2 = random_module(h, field, dim(rng), rng);
      return hom_basis(w, w2).size() == amodule_hom_basis(a, pw, psi(a, w2)).size();
    });
    guarded("coind-module.axioms", [&] {
      AModule e = coind_module(w);
      for (const auto& c : coind_module_axioms(e, h))
        if (!c.passed) return false;
      return true;
    });
  }
  return tally;
}

}  // namespace sipp
