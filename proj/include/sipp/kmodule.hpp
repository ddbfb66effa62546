#pragma once

#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "sipp/linalg/fp_matrix.hpp"
#include "sipp/perm_group.hpp"

namespace sipp {

// A finite-dimensional F_l-representation of a subgroup H, one matrix per element of H.
class KModule {
 public:
  KModule() = default;
  // matrices[i] acts as the i-th element of group.elements(). Throws NotAHomomorphism.
  KModule(Subgroup group, std::int64_t field, Eigen::Index dim, std::vector<FpMatrix> matrices);
  // Extends images of a generating set of H; throws NotAHomomorphism when inconsistent.
  static KModule from_generators(Subgroup group, std::int64_t field, Eigen::Index dim,
                                 const std::vector<std::pair<Elem, FpMatrix>>& images);
  static KModule trivial(Subgroup group, std::int64_t field, Eigen::Index dim = 1);
  // One-dimensional, given by the value on each generator.
  static KModule character(Subgroup group, std::int64_t field, const std::vector<std::pair<Elem, std::int64_t>>& values);

  const Subgroup& group() const { return group_; }
  std::int64_t field() const { return field_; }
  Eigen::Index dim() const { return dim_; }
  // Throws ElementNotInGroup for g outside the subgroup.
  const FpMatrix& action(Elem g) const;
  const std::vector<FpMatrix>& matrices() const { return matrices_; }

  friend bool operator==(const KModule& a, const KModule& b) {
    return a.group_ == b.group_ && a.field_ == b.field_ && a.dim_ == b.dim_ && a.matrices_ == b.matrices_;
  }

 private:
  Subgroup group_;
  std::int64_t field_ = 2;
  Eigen::Index dim_ = 0;
  std::vector<FpMatrix> matrices_;
};

KModule restrict_module(const KModule& w, const Subgroup& k);
// The g-twisted restriction: same space, k acts as W(g k g^-1); needs g K g^-1 ≤ H.
KModule twisted_restriction(const KModule& w, const Subgroup& k, Elem g);
// τ_h = W(h): Res_K W -> ʰRes_K W, checked to intertwine.
FpMatrix tau(const KModule& w, const Subgroup& k, Elem h);

// f a(g) = b(g) f on generators of the common subgroup.
bool is_linear(const FpMatrix& f, const KModule& a, const KModule& b);
// Basis of Hom_{kH}(a, b).
std::vector<FpMatrix> hom_basis(const KModule& a, const KModule& b);
// An invertible intertwiner, by random combinations of a Hom basis with an exhaustive
// fallback when the search space is small.
std::optional<FpMatrix> find_isomorphism(const KModule& a, const KModule& b, std::uint64_t seed = 0);

KModule direct_sum(const KModule& a, const KModule& b);
KModule tensor(const KModule& a, const KModule& b);
// Action B^-1 W(g) B, i.e. the module transported along B: new -> W.
KModule change_basis(const KModule& w, const FpMatrix& b);
// All homomorphisms H -> F_l^x, as one-dimensional modules.
std::vector<KModule> characters(const Subgroup& h, std::int64_t field);
// Permutation module k(H/K).
KModule permutation_module(const Subgroup& h, const Subgroup& k, std::int64_t field);
// A random sum of characters and permutation modules, in a random basis.
KModule random_module(const Subgroup& h, std::int64_t field, Eigen::Index dim, std::mt19937_64& rng);

}  // namespace sipp
