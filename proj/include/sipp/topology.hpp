#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "sipp/gset.hpp"

namespace sipp {

// [St(x) : St(u)] for u over x = α(u), read off from orbit sizes.
std::size_t stabilizer_index(const GMap& alpha, Point u);

struct CoverWitness {
  bool is_cover = false;
  std::vector<std::optional<Point>> witness;  // per target point
  std::vector<Point> uncovered;
};
CoverWitness is_sipp_cover(const GMap& alpha, unsigned p);

struct CoverFamily {
  GSetPtr target;
  std::vector<GMap> maps;
  unsigned prime = 0;
  // Throws TargetMismatch / NotPrime.
  void validate() const;
};

struct CoveringWitness {
  bool is_covering = false;
  // (map index, source point) per target point
  std::vector<std::optional<std::pair<std::size_t, Point>>> witness;
};
CoveringWitness is_sipp_covering(const CoverFamily& family);

struct MackeyDecomposition {
  std::vector<Elem> representatives;
  std::vector<CosetSpace> parts;  // G/(K1^t ∩ K2), indexed like representatives
  Coproduct coproduct;
  FiberProduct fiber;  // (G/K1) ×_{G/H} (G/K2)
  GMap iso;
};
// Builds ⊔_t G/(K1^t∩K2) -> (G/K1)×_{G/H}(G/K2), [z] ↦ ([z t^-1], [z]); throws if not bijective.
MackeyDecomposition mackey_decomposition(const Subgroup& k1, const Subgroup& k2, const Subgroup& h);

// t ∈ K\H/Hp with [Hp : K^t ∩ Hp] prime to p.
Elem prime_index_witness(const Subgroup& k, const Subgroup& hp, const Subgroup& h, unsigned p);

bool is_local(const GSet& x, unsigned p);

// Pullback of a family along beta: Y -> X.
CoverFamily pullback_family(const CoverFamily& family, const GMap& beta);
// {α_i ∘ β_ij}
CoverFamily compose_families(const CoverFamily& family, const std::vector<CoverFamily>& refinements);

struct AxiomInstance {
  CoverFamily family;                    // assumed to be a covering
  GMap base_change;                      // beta: Y -> target, for (b)
  std::vector<CoverFamily> refinements;  // one covering per member, for (c); may be empty
};

struct AxiomResult {
  std::string axiom;
  std::size_t instance;
  bool passed;
};

struct AxiomReport {
  std::vector<AxiomResult> results;
  bool all_passed() const;
};

// (a) isomorphisms are covers, (b) pullbacks of coverings are coverings,
// (c) composites of coverings are coverings, checked on each instance.
AxiomReport verify_topology_axioms(const std::vector<AxiomInstance>& instances);

// Subgroup of H generated by up to max_generators uniformly drawn elements.
Subgroup random_subgroup(const Subgroup& h, std::mt19937_64& rng, std::size_t max_generators = 2);
// Coverings of G/H by orbits G/K -> G/H (one of index prime to p, plus random extras),
// a base change G/L -> G/H and a covering refinement of every member.
std::vector<AxiomInstance> random_axiom_instances(const GroupPtr& g, unsigned p, std::size_t count,
                                                  std::mt19937_64& rng);

}  // namespace sipp
