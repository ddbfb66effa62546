#pragma once

#include <optional>
#include <vector>

#include "sipp/gset.hpp"
#include "sipp/kmodule.hpp"
#include "sipp/rep.hpp"

namespace sipp {

// W over U with a gluing isomorphism s: pr2*W -> pr1*W over U^(2), s_{(u,u')}: W_{u'} -> W_u.
struct DescentDatum {
  GMap cover;
  Representation w;
  RepMorphism s;
};

// Q(V) = (α*V, id)
DescentDatum canonical_datum(const GMap& alpha, const Representation& v);

// s invertible and pr13*(s) = pr12*(s) ∘ pr23*(s). Throws NotInvertible or CocycleViolated.
void check_descent_datum(const DescentDatum& d);
bool is_descent_datum(const DescentDatum& d);

struct DescentSolution {
  Representation v;  // over X
  RepMorphism f;     // α*V -> W, invertible
};
// V_x = {(w_u) : w_u = s_{(u,u')} w_{u'}} inside (α_*W)_x. Throws NotEffective when the
// result does not restrict back to W.
DescentSolution solve_descent(const DescentDatum& d, bool validate = true);

// f: Res V1 -> Res V2 over H, accepted iff f V1(g) = V2(g) f for every g in G.
// Throws PreconditionViolated, NotAMorphism (f not H-linear) or CompatibilityFailed.
FpMatrix glue_morphism(const Subgroup& h, const KModule& v1, const KModule& v2, const FpMatrix& f);

// σ_g: Res_{H[g]} W -> ᵍRes_{H[g]} W for every g in G.
struct SigmaFamily {
  Subgroup h;
  KModule w;
  std::vector<FpMatrix> sigma;  // indexed by element of G
};
// σ_g = V(g), W = Res V.
SigmaFamily sigma_from_module(const KModule& v, const Subgroup& h);
// Does Res_{H[g]} W ≅ ᵍRes_{H[g]} W?
bool twisted_intertwiner_exists(const KModule& w, Elem g, std::uint64_t seed = 0);

struct Extension {
  KModule v;  // over G, on the space of W
  FpMatrix f;  // Res V -> W, the identity
};
// Checks in order: [G:H] prime to l and an invertible twisted intertwiner for every g
// (PreconditionViolated), σ_g invertible and H[g]-linear (SigmaNotIntertwiner),
// σ_h = W(h) (ConditionIFailed), σ_{g2 g1} = σ_{g2} σ_{g1} (ConditionIIFailed).
Extension extend_representation(const SigmaFamily& s);

}  // namespace sipp
