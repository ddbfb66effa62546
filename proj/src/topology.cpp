#include "sipp/topology.hpp"

#include <algorithm>

#include "sipp/arith.hpp"
#include "sipp/error.hpp"

namespace sipp {

std::size_t stabilizer_index(const GMap& alpha, Point u) {
  OrbitLabels src = orbit_labels(*alpha.source());
  OrbitLabels tgt = orbit_labels(*alpha.target());
  return src.sizes[src.orbit_of[u]] / tgt.sizes[tgt.orbit_of[alpha(u)]];
}

CoverWitness is_sipp_cover(const GMap& alpha, unsigned p) {
  if (!is_prime(p)) throw Error(Errc::NotPrime, std::to_string(p));
  OrbitLabels src = orbit_labels(*alpha.source());
  OrbitLabels tgt = orbit_labels(*alpha.target());
  CoverWitness w;
  w.witness.assign(alpha.target()->size(), std::nullopt);
  for (Point u = 0; u < alpha.source()->size(); ++u) {
    Point x = alpha(u);
    if (w.witness[x]) continue;
    std::size_t idx = src.sizes[src.orbit_of[u]] / tgt.sizes[tgt.orbit_of[x]];
    if (idx % p != 0) w.witness[x] = u;
  }
  for (Point x = 0; x < w.witness.size(); ++x)
    if (!w.witness[x]) w.uncovered.push_back(x);
  w.is_cover = w.uncovered.empty();
  return w;
}

void CoverFamily::validate() const {
  if (!is_prime(prime)) throw Error(Errc::NotPrime, std::to_string(prime));
  for (const auto& m : maps)
    if (!same_gset(m.target(), target)) throw Error(Errc::TargetMismatch, "family member has another target");
}

CoveringWitness is_sipp_covering(const CoverFamily& family) {
  family.validate();
  CoveringWitness w;
  w.witness.assign(family.target->size(), std::nullopt);
  for (std::size_t i = 0; i < family.maps.size(); ++i) {
    CoverWitness c = is_sipp_cover(family.maps[i], family.prime);
    for (Point x = 0; x < c.witness.size(); ++x)
      if (!w.witness[x] && c.witness[x]) w.witness[x] = std::pair{i, *c.witness[x]};
  }
  w.is_covering = std::all_of(w.witness.begin(), w.witness.end(), [](const auto& o) { return o.has_value(); });
  return w;
}

MackeyDecomposition mackey_decomposition(const Subgroup& k1, const Subgroup& k2, const Subgroup& h) {
  const PermGroup& G = h.group();
  MackeyDecomposition md;
  md.representatives = double_cosets(k1, k2, h);
  CosetSpace gk1 = coset_gset(k1);
  CosetSpace gk2 = coset_gset(k2);
  CosetSpace gh = coset_gset(h);
  md.fiber = fiber_product(beta_map(gk1, gh, PermGroup::identity()), beta_map(gk2, gh, PermGroup::identity()));
  std::vector<GSetPtr> sets;
  for (Elem t : md.representatives) {
    md.parts.push_back(coset_gset(intersect(conjugate_subgroup(k1, t), k2)));
    sets.push_back(md.parts.back().set);
  }
  md.coproduct = coproduct(sets);
  std::vector<Point> pts;
  for (std::size_t i = 0; i < md.parts.size(); ++i) {
    Elem ti = G.inv(md.representatives[i]);
    for (Point c = 0; c < md.parts[i].set->size(); ++c) {
      Elem z = md.parts[i].representative(c);
      auto idx = md.fiber.index_of(gk1.coset_of(G.mul(z, ti)), gk2.coset_of(z));
      if (!idx) throw Error(Errc::PreconditionViolated, "Mackey map leaves the fiber product");
      pts.push_back(*idx);
    }
  }
  md.iso = GMap(md.coproduct.set, md.fiber.set, std::move(pts));
  if (!md.iso.is_isomorphism()) throw Error(Errc::PreconditionViolated, "Mackey map is not bijective");
  return md;
}

Elem prime_index_witness(const Subgroup& k, const Subgroup& hp, const Subgroup& h, unsigned p) {
  if (!is_prime(p)) throw Error(Errc::NotPrime, std::to_string(p));
  if (!k.is_subgroup_of(h) || !hp.is_subgroup_of(h)) throw Error(Errc::NotASubgroupOf, "K, Hp must lie in H");
  if ((h.order() / k.order()) % p == 0) throw Error(Errc::PreconditionViolated, "[H:K] is divisible by p");
  for (Elem t : double_cosets(k, hp, h)) {
    std::size_t inter = intersect(conjugate_subgroup(k, t), hp).order();
    if ((hp.order() / inter) % p != 0) return t;
  }
  throw Error(Errc::PreconditionViolated, "no prime-index representative");
}

bool is_local(const GSet& x, unsigned p) {
  if (!is_prime(p)) throw Error(Errc::NotPrime, std::to_string(p));
  OrbitLabels lab = orbit_labels(x);
  if (lab.representatives.size() != 1) return false;
  return is_power_of(x.group().order() / lab.sizes[0], p);
}

CoverFamily pullback_family(const CoverFamily& family, const GMap& beta) {
  if (!same_gset(beta.target(), family.target)) throw Error(Errc::TargetMismatch, "base change");
  CoverFamily out{beta.source(), {}, family.prime};
  for (const auto& a : family.maps) out.maps.push_back(fiber_product(a, beta).pr2);
  return out;
}

CoverFamily compose_families(const CoverFamily& family, const std::vector<CoverFamily>& refinements) {
  if (refinements.size() != family.maps.size())
    throw Error(Errc::PreconditionViolated, "one refinement per family member");
  CoverFamily out{family.target, {}, family.prime};
  for (std::size_t i = 0; i < refinements.size(); ++i) {
    if (!same_gset(refinements[i].target, family.maps[i].source()))
      throw Error(Errc::TargetMismatch, "refinement targets the wrong source");
    for (const auto& b : refinements[i].maps) out.maps.push_back(compose(family.maps[i], b));
  }
  return out;
}

bool AxiomReport::all_passed() const {
  return std::all_of(results.begin(), results.end(), [](const AxiomResult& r) { return r.passed; });
}

AxiomReport verify_topology_axioms(const std::vector<AxiomInstance>& instances) {
  AxiomReport rep;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const auto& inst = instances[i];
    unsigned p = inst.family.prime;

    bool a = is_sipp_cover(identity_map(inst.family.target), p).is_cover &&
             is_sipp_cover(identity_map(inst.base_change.source()), p).is_cover;
    for (const auto& m : inst.family.maps)
      if (m.is_isomorphism()) a = a && is_sipp_cover(m, p).is_cover;
    rep.results.push_back({"isomorphisms", i, a});

    bool covering = is_sipp_covering(inst.family).is_covering;
    bool b = !covering || is_sipp_covering(pullback_family(inst.family, inst.base_change)).is_covering;
    rep.results.push_back({"pullback", i, covering && b});

    if (!inst.refinements.empty()) {
      bool refined = std::all_of(inst.refinements.begin(), inst.refinements.end(),
                                 [](const CoverFamily& f) { return is_sipp_covering(f).is_covering; });
      bool c = is_sipp_covering(compose_families(inst.family, inst.refinements)).is_covering;
      rep.results.push_back({"composite", i, covering && refined && c});
    }
  }
  return rep;
}

Subgroup random_subgroup(const Subgroup& h, std::mt19937_64& rng, std::size_t max_generators) {
  std::uniform_int_distribution<std::size_t> pick(0, h.order() - 1);
  std::uniform_int_distribution<std::size_t> count(0, max_generators);
  std::vector<Elem> gens;
  for (std::size_t i = count(rng); i > 0; --i) gens.push_back(h.elements()[pick(rng)]);
  return Subgroup::generated_by(h.group_ptr(), gens);
}

namespace {

// Maps G/K -> G/H covering G/H, the first of index prime to p.
CoverFamily random_covering(const CosetSpace& target, unsigned p, std::mt19937_64& rng) {
  const Subgroup& H = target.subgroup;
  CoverFamily f{target.set, {}, p};
  Subgroup k = H;
  for (int tries = 0; tries < 20; ++tries) {
    Subgroup c = random_subgroup(H, rng);
    if ((H.order() / c.order()) % p != 0) {
      k = c;
      break;
    }
  }
  f.maps.push_back(beta_map(coset_gset(k), target, PermGroup::identity()));
  for (auto extra = std::uniform_int_distribution<int>(0, 2)(rng); extra > 0; --extra) {
    // a conjugate K' = g^-1 K g with the twisted map β_g
    Subgroup c = random_subgroup(H, rng);
    Elem g = std::uniform_int_distribution<Elem>(0, static_cast<Elem>(H.group().order() - 1))(rng);
    f.maps.push_back(beta_map(coset_gset(conjugate_subgroup(c, g)), target, g));
  }
  return f;
}

}  // namespace

std::vector<AxiomInstance> random_axiom_instances(const GroupPtr& g, unsigned p, std::size_t count,
                                                  std::mt19937_64& rng) {
  std::vector<AxiomInstance> out;
  const Subgroup G = Subgroup::whole(g);
  std::uniform_int_distribution<Elem> elem(0, static_cast<Elem>(g->order() - 1));
  for (std::size_t i = 0; i < count; ++i) {
    CosetSpace target = coset_gset(random_subgroup(G, rng));
    AxiomInstance inst;
    inst.family = random_covering(target, p, rng);
    Subgroup l = random_subgroup(target.subgroup, rng);
    Elem t = elem(rng);
    inst.base_change = beta_map(coset_gset(conjugate_subgroup(l, t)), target, t);
    for (const auto& m : inst.family.maps) {
      // m.source() is a coset space; rebuild its bookkeeping from a point stabilizer
      CosetSpace member = coset_gset(stabilizer(*m.source(), 0));
      auto refined = random_covering(member, p, rng);
      auto iso = find_isomorphism(member.set, m.source());
      if (!iso) throw Error(Errc::NotAnIsomorphism, "coset space bookkeeping");
      for (auto& r : refined.maps) r = compose(*iso, r);
      refined.target = m.source();
      inst.refinements.push_back(std::move(refined));
    }
    out.push_back(std::move(inst));
  }
  return out;
}

}  // namespace sipp
