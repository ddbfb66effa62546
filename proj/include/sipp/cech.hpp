#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "sipp/gset.hpp"
#include "sipp/sheaf.hpp"

namespace sipp {

// Integer cochain complex: differential(n) maps Z^{basis_size(n)} -> Z^{basis_size(n+1)}.
struct CochainComplex {
  std::vector<std::size_t> basis_sizes;
  std::vector<IntMatrix> differentials;

  int top_degree() const { return static_cast<int>(basis_sizes.size()) - 1; }
  std::size_t total_basis() const;
  // d^{n+1} d^n = 0 for all consecutive pairs, in exact integer arithmetic.
  bool d_squared_zero() const;
};

// Free rank plus torsion invariant factors > 1 (a divisibility chain).
struct CohomologyGroup {
  std::size_t rank = 0;
  std::vector<std::int64_t> torsion;

  bool is_zero() const { return rank == 0 && torsion.empty(); }
  AbelianGroupSpec as_spec() const;
  static CohomologyGroup from_spec(const AbelianGroupSpec& a);
  std::string to_string() const;
  friend bool operator==(const CohomologyGroup&, const CohomologyGroup&) = default;
};

// H^n(C ⊗ Z/m), m = 0 meaning Z. Needs n < top degree, or n = top when nothing leaves it.
CohomologyGroup cyclic_cohomology(const CochainComplex& c, int n, std::int64_t m);
CohomologyGroup cohomology_at(const CochainComplex& c, int n, const AbelianGroupSpec& a);

// Coordinates of the class of a Z/m-valued cocycle, one per summand of cyclic_cohomology
// (torsion first, reduced mod the factor; then free coordinates). Throws when not a cocycle.
std::vector<std::int64_t> cohomology_class(const CochainComplex& c, int n, std::int64_t m,
                                           std::span<const std::int64_t> cocycle);
bool is_cocycle(const CochainComplex& c, int n, std::int64_t m, std::span<const std::int64_t> cochain);
// d^n applied to a cochain, reduced mod m (m = 0: exact).
std::vector<std::int64_t> apply_differential(const CochainComplex& c, int n, std::int64_t m,
                                             std::span<const std::int64_t> cochain);

// H^n ⊗ A ⊕ Tor(H^{n+1}, A)
CohomologyGroup universal_coefficients(const CohomologyGroup& hn, const CohomologyGroup& hn1,
                                       const AbelianGroupSpec& a);

enum class SignConvention { Standard, Reversed };

struct CechOptions {
  int max_degree = 3;
  bool allow_non_sipp = false;
  SignConvention sign = SignConvention::Standard;
  std::size_t point_cap = 10'000'000;
};

// Čech complex of the constant sheaf for a cover alpha: U -> X.
// Degree n has basis bar(U^(n+1)), ordered by lexicographically minimal tuple.
class CechComplex {
 public:
  CechComplex(const GMap& cover, unsigned p, const CechOptions& options = {});

  const GMap& cover() const { return cover_; }
  unsigned prime() const { return p_; }
  int max_degree() const { return static_cast<int>(reps_.size()) - 1; }
  bool is_sipp() const { return sipp_; }
  const CochainComplex& complex() const { return complex_; }
  std::size_t basis_size(int n) const { return complex_.basis_sizes.at(n); }
  const IntMatrix& differential(int n) const { return complex_.differentials.at(n); }
  // Minimal tuple of each basis orbit.
  const std::vector<std::vector<Point>>& basis_representatives(int n) const { return reps_.at(n); }
  // Basis index of the orbit of a tuple of U-points, if that orbit lies in bar.
  std::optional<std::size_t> basis_index(std::span<const Point> tuple) const;

 private:
  std::uint64_t encode(std::span<const Point> tuple) const;

  GMap cover_;
  unsigned p_;
  bool sipp_;
  CochainComplex complex_;
  std::vector<std::vector<std::vector<Point>>> reps_;
  // Tuple code -> basis index, -1 outside bar, -2 unvisited.
  struct OrbitIndex {
    bool flat = true;
    std::vector<std::int32_t> dense;
    std::unordered_map<std::uint64_t, std::int32_t> sparse;
    std::int32_t get(std::uint64_t code) const;
    void set(std::uint64_t code, std::int32_t v);
  };
  std::vector<OrbitIndex> index_;
};

CechComplex cech_complex(const Subgroup& h, unsigned p, const CechOptions& options = {});

// Cohomology in degrees 0..max_degree-1.
std::vector<CohomologyGroup> cohomology(const CechComplex& c, const AbelianGroupSpec& a);

// Ȟ^1 and Ȟ^2 of the cover G/H -> G/G with coefficients Z/(q-1).
CohomologyGroup t_kernel(const Subgroup& h, std::int64_t q);
CohomologyGroup obstruction_group(const Subgroup& h, std::int64_t q);

}  // namespace sipp
