#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "sipp/gset.hpp"

namespace sipp {

using IntMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

// ⊕ Z/d_i, 0 standing for Z. Kept as invariant factors d1 | d2 | ..., ones dropped.
struct AbelianGroupSpec {
  std::vector<std::int64_t> invariant_factors;

  static AbelianGroupSpec integers() { return {{0}}; }
  static AbelianGroupSpec cyclic(std::int64_t m) { return normalized({m}); }
  static AbelianGroupSpec trivial() { return {{}}; }
  // Units of F_q.
  static AbelianGroupSpec units_of_field(std::int64_t q) { return cyclic(q - 1); }
  // Sorts into a divisibility chain when the input is one up to order; drops trivial factors.
  static AbelianGroupSpec normalized(std::vector<std::int64_t> factors);

  bool is_trivial() const { return invariant_factors.empty(); }
  bool is_finite() const;
  // Order, when finite.
  std::optional<std::int64_t> order() const;
  std::string to_string() const;
  friend bool operator==(const AbelianGroupSpec&, const AbelianGroupSpec&) = default;
};

// A^m
AbelianGroupSpec power(const AbelianGroupSpec& a, std::size_t m);

// The orbits of X whose stabilizer order is divisible by p.
struct BarSet {
  GSetPtr source;
  unsigned prime = 0;
  std::vector<Point> orbits;                // representatives, ascending
  std::vector<std::int64_t> component_of;   // per point: index into orbits, or -1
  std::size_t size() const { return orbits.size(); }
};
BarSet bar(const GSetPtr& x, unsigned p);
// bar(α): component i of bar(source) goes to component result[i] of bar(target).
std::vector<std::size_t> bar_map(const GMap& alpha, const BarSet& source, const BarSet& target);

AbelianGroupSpec constant_sheaf_value(const GSetPtr& x, const AbelianGroupSpec& a, unsigned p);
// 0/1 matrix of u̲A(α): A^{bar target} -> A^{bar source}, rows bar(source), columns bar(target).
IntMatrix constant_sheaf_restriction(const GMap& alpha, unsigned p);

// A presheaf of finite sets tabulated on finitely many G-sets and maps.
struct PresheafTable {
  struct Value {
    GSetPtr object;
    std::size_t size;  // elements are 0..size-1
  };
  struct Restriction {
    GMap map;                          // f: S -> T
    std::vector<std::size_t> function;  // P(T) -> P(S)
  };
  std::vector<Value> values;
  std::vector<Restriction> restrictions;

  std::optional<std::size_t> value_size(const GSetPtr& x) const;
  const std::vector<std::size_t>* restriction(const GMap& f) const;
  void add_value(GSetPtr x, std::size_t size);
  void add_restriction(GMap f, std::vector<std::size_t> function);
  // Contravariance on every composable pair of tabulated maps.
  bool is_functorial() const;
};

// Value tables on the given objects and maps.
PresheafTable constant_sheaf_table(const AbelianGroupSpec& a, unsigned p, const std::vector<GSetPtr>& objects,
                                   const std::vector<GMap>& maps);
// X ↦ A with identity restrictions (no bar); not a sheaf.
PresheafTable constant_presheaf_table(const AbelianGroupSpec& a, const std::vector<GSetPtr>& objects,
                                      const std::vector<GMap>& maps);
// X ↦ Hom_G(X, Z)
PresheafTable represented_presheaf_table(const GSetPtr& z, const std::vector<GSetPtr>& objects,
                                         const std::vector<GMap>& maps);

// All G-maps X -> Z, in a fixed enumeration order.
std::vector<GMap> equivariant_maps(const GSetPtr& x, const GSetPtr& z);

// The objects and maps a sheaf check along alpha needs: U, X, U×_X U and α, pr1, pr2.
struct CoverDiagram {
  std::vector<GSetPtr> objects;
  std::vector<GMap> maps;
};
CoverDiagram cover_diagram(const GMap& alpha);

// P(X) -> P(U) ⇉ P(U×_X U) is an equalizer. Throws MissingEvaluation.
bool check_sheaf_condition(const PresheafTable& presheaf, const GMap& cover);
// P(X1 ⊔ X2 ⊔ ...) -> ∏ P(Xi) is bijective, and P(∅) is one point when the empty set is tabulated.
bool check_additivity(const PresheafTable& presheaf, const Coproduct& parts);

}  // namespace sipp
