#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "sipp/cech.hpp"
#include "sipp/gset.hpp"
#include "sipp/kmodule.hpp"
#include "sipp/perm_group.hpp"
#include "sipp/rep.hpp"

namespace fx {

using namespace sipp;

GroupPtr s3();
GroupPtr s4();
GroupPtr a4();
GroupPtr d8();
GroupPtr c6();

Elem el(const GroupPtr& g, const std::string& cycles);
Subgroup sub(const GroupPtr& g, const std::vector<std::string>& gens);
// Every subgroup generated by at most two elements, deduplicated.
std::vector<Subgroup> small_subgroups(const GroupPtr& g);

// G/K -> G/H, [x] ↦ [x], for K ≤ H.
GMap projection(const Subgroup& k, const Subgroup& h);

// W over the one-point set from a G-module.
Representation over_point(const KModule& v);

}  // namespace fx

namespace oracle {

using namespace sipp;

// Left cosets of H as explicit permutation sets, the action computed by multiplying permutations.
struct Cosets {
  std::vector<std::vector<Permutation>> sets;  // each sorted
  std::size_t find(const Permutation& x) const;
};
Cosets cosets(const Subgroup& h);

// Number of orbits of G on (G/H)^n whose stabilizer order is divisible by p.
std::size_t bar_power_size(const Subgroup& h, std::size_t n, unsigned p);

// Rank of an integer matrix reduced mod a prime.
std::size_t rank_mod(const IntMatrix& m, std::int64_t p);

// dim H^n(Q, Z/p) with trivial action, Q = G/H for H normal, via inhomogeneous cochains.
std::size_t group_cohomology_dim(const Subgroup& h, int n, std::int64_t p);

// |Z^n| / |B^n| of C ⊗ Z/m by enumerating every cochain.
std::uint64_t brute_cohomology_order(const CochainComplex& c, int n, std::int64_t m);
// Largest element order in H^n(C ⊗ Z/m), also by enumeration.
std::uint64_t brute_cohomology_exponent(const CochainComplex& c, int n, std::int64_t m);

// d^{n+1} d^n = 0, multiplied out here.
bool d_squared_zero(const CochainComplex& c);

}  // namespace oracle
