#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "sipp/gset.hpp"
#include "sipp/kmodule.hpp"

namespace sipp {

// A = k(G/H) with μ(γ⊗γ) = γ, μ(γ⊗γ') = 0, η(1) = Σγ and section σ(γ) = γ⊗γ.
// Tensor products use the index γ·dim + i.
struct RingObject {
  CosetSpace cosets;
  KModule carrier;  // over G
  FpMatrix mu;      // n × n²
  FpMatrix eta;     // n × 1
  FpMatrix sigma;   // n² × n
  std::size_t rank() const { return static_cast<std::size_t>(carrier.dim()); }
};
RingObject ring_object(const Subgroup& h, std::int64_t field);

struct AxiomCheck {
  std::string name;
  bool passed;
};
// Associativity, unit, commutativity, G-linearity of μ, η, σ, and μσ = id with σ A-bilinear.
std::vector<AxiomCheck> ring_axioms(const RingObject& a);

// X with ρ: A⊗X -> X.
struct AModule {
  KModule carrier;
  FpMatrix rho;
};
std::vector<AxiomCheck> amodule_axioms(const RingObject& a, const AModule& m);
bool is_amodule(const RingObject& a, const AModule& m);
// e_γ = ρ(γ⊗−)
std::vector<FpMatrix> idempotents(const RingObject& a, const AModule& m);
// e_γ² = e_γ, e_γ e_γ' = 0, Σ e_γ = id, g e_γ g^-1 = e_{gγ}
bool idempotents_ok(const RingObject& a, const AModule& m);

// Ind on coset blocks: block (gγ, γ) is W(r_{gγ}^-1 g r_γ).
KModule induction(const KModule& w);
// CoInd = Hom_{kH}(kG, W), coordinates f(s_j) on minimal right coset representatives,
// (g f)(x) = f(x g).
KModule coinduction(const KModule& w);
// g⊗w ↦ (x ↦ x g w if x g ∈ H, else 0)
FpMatrix ind_coind_iso(const KModule& w);

// Res ⊣ CoInd: η_V(v) = (x ↦ x v), ε_W(f) = f(1), section ξ_W(w) = (h ↦ h w, 0 off H).
FpMatrix coind_unit(const KModule& v, const Subgroup& h);
FpMatrix coind_counit(const KModule& w);
FpMatrix coind_section(const KModule& w);
// Res ⊣ Ind: η'_V(v) = Σ x⊗x^-1 v, ε'_W(g⊗w) = g w if g ∈ H else 0, ξ'_W(w) = 1⊗w.
FpMatrix ind_unit(const KModule& v, const Subgroup& h);
FpMatrix ind_counit(const KModule& w);
FpMatrix ind_section(const KModule& w);
// CoInd and Ind applied to an H-linear map f: blocks f on the diagonal.
FpMatrix coind_map(const FpMatrix& f, const Subgroup& h);
FpMatrix ind_map(const FpMatrix& f, const Subgroup& h);

// ℓ: kH -> kG and m: kG -> kH, m(g) = g if g ∈ H else 0; bases are group elements.
struct BimoduleRetraction {
  FpMatrix ell;
  FpMatrix m;
};
BimoduleRetraction bimodule_retraction(const Subgroup& h, std::int64_t field);
// m∘ℓ = id and m is left and right kH-linear.
std::vector<AxiomCheck> retraction_checks(const Subgroup& h, const BimoduleRetraction& r);

// θ_V: Ind Res V -> A⊗V, g⊗v ↦ [g]⊗g v, and its inverse γ⊗v ↦ g⊗g^-1 v.
FpMatrix theta(const KModule& v, const Subgroup& h);
FpMatrix theta_inverse(const KModule& v, const Subgroup& h);
// Ind(ε'_{Res V}): Ind Res Ind Res V -> Ind Res V
FpMatrix ind_res_multiplication(const KModule& v, const Subgroup& h);
// θ is a monad morphism: multiplication square, its closed form, and unit compatibility.
std::vector<AxiomCheck> theta_checks(const RingObject& a, const KModule& v);

// Ψ(W) = (Ind W, ρ') with ρ'(γ⊗g⊗w) = g⊗w if g ∈ γ else 0.
AModule psi(const RingObject& a, const KModule& w);
// W = e_{[1]} X with H acting by restriction. Throws NotAnAModule.
KModule phi(const RingObject& a, const AModule& m);
// Ind Φ(M) -> X, r_γ⊗w ↦ r_γ w; checked to be an A-module isomorphism.
FpMatrix psi_phi_iso(const RingObject& a, const AModule& m);
// F_A(V) = (A⊗V, μ⊗V)
AModule free_module(const RingObject& a, const KModule& v);
// Transport along T: new -> X.
AModule twist(const AModule& m, const FpMatrix& t);
// G-linear maps commuting with ρ.
std::vector<FpMatrix> amodule_hom_basis(const RingObject& a, const AModule& m1, const AModule& m2);

// E(W) = (CoInd W, CoInd(ε_W)) for the monad CoInd∘Res.
AModule coind_module(const KModule& w);
// ρ∘T(ρ) = ρ∘μ and ρ∘η = id with T = CoInd∘Res, μ_X = CoInd(ε_{Res X}).
std::vector<AxiomCheck> coind_module_axioms(const AModule& e, const Subgroup& h);

struct CheckTally {
  std::string name;
  std::size_t passed = 0;
  std::size_t total = 0;
};
// Randomized suite over H ≤ G; corrupt_mu perturbs one entry of μ first.
std::vector<CheckTally> monad_suite(const Subgroup& h, std::int64_t field, std::size_t trials, std::uint64_t seed,
                                    bool corrupt_mu = false);

}  // namespace sipp
