#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "sipp/gset.hpp"
#include "sipp/kmodule.hpp"
#include "sipp/linalg/fp_matrix.hpp"

namespace sipp {

// A representation of the action groupoid of X: a space F^{dims(x)} per point and
// transitions V_{g,x}: F^{dims(x)} -> F^{dims(gx)} for every group element g.
class Representation {
 public:
  Representation() = default;
  // transitions[g][x]. Checks V_{1,x} = id and V_{s g, x} = V_{s, gx} V_{g, x} for generators s.
  Representation(GSetPtr set, std::int64_t field, std::vector<Eigen::Index> dims,
                 std::vector<std::vector<FpMatrix>> transitions);
  // Transitions of the group generators only, extended along the spanning tree.
  static Representation from_generators(GSetPtr set, std::int64_t field, std::vector<Eigen::Index> dims,
                                        const std::vector<std::vector<FpMatrix>>& generator_transitions);
  // 𝟙: every fiber one-dimensional, every transition the identity.
  static Representation unit(GSetPtr set, std::int64_t field);

  const GSet& set() const { return *d_->set; }
  const GSetPtr& set_ptr() const { return d_->set; }
  std::int64_t field() const { return d_->field; }
  Eigen::Index dim(Point x) const { return d_->dims[x]; }
  const std::vector<Eigen::Index>& dims() const { return d_->dims; }
  const FpMatrix& transition(Elem g, Point x) const { return d_->transitions[g][x]; }
  const std::vector<std::vector<FpMatrix>>& transitions() const { return d_->transitions; }

  // Same G-set, field, dims and generator transitions (which determine the rest).
  friend bool operator==(const Representation& a, const Representation& b);

 private:
  struct Data {
    GSetPtr set;
    std::int64_t field;
    std::vector<Eigen::Index> dims;
    std::vector<std::vector<FpMatrix>> transitions;
  };
  std::shared_ptr<const Data> d_;
};

// Components f_x with V'_{g,x} f_x = f_{gx} V_{g,x}.
class RepMorphism {
 public:
  RepMorphism() = default;
  // Throws NotAMorphism, naming the offending point.
  RepMorphism(Representation source, Representation target, std::vector<FpMatrix> components);

  const Representation& source() const { return source_; }
  const Representation& target() const { return target_; }
  const FpMatrix& component(Point x) const { return components_[x]; }
  const std::vector<FpMatrix>& components() const { return components_; }

  friend bool operator==(const RepMorphism& a, const RepMorphism& b) {
    return a.source_ == b.source_ && a.target_ == b.target_ && a.components_ == b.components_;
  }

 private:
  Representation source_;
  Representation target_;
  std::vector<FpMatrix> components_;
};

RepMorphism identity_morphism(const Representation& v);
// f ∘ g
RepMorphism compose(const RepMorphism& f, const RepMorphism& g);
bool is_isomorphism(const RepMorphism& f);
// Throws NotInvertible.
RepMorphism inverse(const RepMorphism& f);

// (α*V)_y = V_{α(y)}
Representation pullback_rep(const GMap& alpha, const Representation& v);
RepMorphism pullback_morphism(const GMap& alpha, const RepMorphism& f);
// (α_*W)_x = ⊕_{y ∈ α^-1(x)} W_y, blocks in ascending order of y.
Representation pushforward_rep(const GMap& alpha, const Representation& w);
RepMorphism pushforward_morphism(const GMap& alpha, const RepMorphism& f);

// η_V: V -> α_*α*V, v ↦ (v, ..., v)
RepMorphism adjunction_unit(const GMap& alpha, const Representation& v);
// ε_W: α*α_*W -> W, (w_{y'}) ↦ w_y
RepMorphism adjunction_counit(const GMap& alpha, const Representation& w);
// π: α_*α*V -> V with π ∘ η = id, averaging over the fiber points of one source orbit
// per target orbit whose count is prime to the field. Throws IndexNotInvertible.
RepMorphism averaging_retraction(const GMap& alpha, const Representation& v);

// Square  Y' -β'-> Y,  α': Y' -> X',  α: Y -> X,  β: X' -> X.
struct PullbackSquare {
  GMap alpha;
  GMap beta;
  GMap alpha_prime;
  GMap beta_prime;
};
// β*α_*V -> α'_*β'*V built from η^{α'} and ε^α, checked against (v_y) ↦ (v_{β'(y')})
// and checked invertible. Throws NotAPullback.
RepMorphism beck_chevalley(const PullbackSquare& square, const Representation& v);

// V ↦ V_{[1]} as a module over H.
KModule iota_equiv(const CosetSpace& cs, const Representation& v);
// V_{g,c} = W(r_{gc}^-1 g r_c) with r the coset representatives.
Representation iota_inverse(const CosetSpace& cs, const KModule& w);
// ι^-1 ι V -> V with components V_{r_c, [1]}.
RepMorphism iota_counit(const CosetSpace& cs, const Representation& v);

}  // namespace sipp
