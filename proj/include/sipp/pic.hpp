#pragma once

#include <cstdint>
#include <vector>

#include "sipp/cech.hpp"
#include "sipp/rep.hpp"

namespace sipp {

// ζ = pr13*(ξ)^-1 ∘ pr12*(ξ) ∘ pr23*(ξ) for a one-dimensional W over U and ξ: pr2*W -> pr1*W.
struct PicCocycle {
  std::vector<std::int64_t> values;  // scalars in F_l^x, one per basis orbit of degree 2
  std::vector<std::int64_t> logs;    // the same in Z/(l-1), base the smallest primitive root
  CohomologyGroup group;             // Ȟ²(U, Z/(l-1))
  std::vector<std::int64_t> cls;     // coordinates of [ζ] in group
  bool is_zero() const;
};

// The complex must be built for the same cover as W lives on, with max_degree >= 3.
// Throws NotInvertible (W not one-dimensional), NotAnIsomorphism (ξ singular), CocycleViolated
// (d ζ != 0, or a second ξ giving a different class).
PicCocycle pic_cocycle(const CechComplex& c, const Representation& w, const RepMorphism& xi);
PicCocycle pic_cocycle(const CechComplex& c, const Representation& w, const RepMorphism& xi,
                       const RepMorphism& other);

}  // namespace sipp
