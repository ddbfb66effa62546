#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sipp/perm_group.hpp"

namespace sipp {

class GSet;
using GSetPtr = std::shared_ptr<const GSet>;

// A finite left G-set, with the action tabulated for every group element.
class GSet {
 public:
  // action[g][x] = g·x for every element index g. Validated exhaustively.
  GSet(GroupPtr group, std::size_t size, std::vector<std::vector<Point>> action,
       std::vector<std::string> labels = {});
  // Extends an action given on the group's generators along the spanning tree.
  static GSetPtr from_generator_action(GroupPtr group, std::size_t size,
                                       const std::vector<std::vector<Point>>& generator_action,
                                       std::vector<std::string> labels = {});
  static GSetPtr empty(GroupPtr group);
  // G acting on itself by left translation.
  static GSetPtr regular(GroupPtr group);

  const PermGroup& group() const { return *group_; }
  const GroupPtr& group_ptr() const { return group_; }
  std::size_t size() const { return size_; }
  Point act(Elem g, Point x) const { return action_[g][x]; }
  const std::vector<Point>& action(Elem g) const { return action_[g]; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::string label(Point x) const;

 private:
  GroupPtr group_;
  std::size_t size_;
  std::vector<std::vector<Point>> action_;
  std::vector<std::string> labels_;
};

// Same group and identical action tables.
bool same_gset(const GSet& a, const GSet& b);
inline bool same_gset(const GSetPtr& a, const GSetPtr& b) { return a == b || same_gset(*a, *b); }

struct Orbit {
  std::vector<Point> points;  // sorted
  Point representative;       // minimal point
  Subgroup stabilizer;
};

// Orbits sorted by representative.
std::vector<Orbit> orbit_decomposition(const GSet& x);

// Orbit id per point, without stabilizers.
struct OrbitLabels {
  std::vector<std::uint32_t> orbit_of;
  std::vector<Point> representatives;
  std::vector<std::size_t> sizes;
};
OrbitLabels orbit_labels(const GSet& x);

Subgroup stabilizer(const GSet& x, Point pt);

class GMap {
 public:
  GMap() = default;
  // Throws NotEquivariant unless points commutes with every generator.
  GMap(GSetPtr source, GSetPtr target, std::vector<Point> points);

  const GSetPtr& source() const { return source_; }
  const GSetPtr& target() const { return target_; }
  Point operator()(Point x) const { return points_[x]; }
  const std::vector<Point>& points() const { return points_; }

  bool is_injective() const;
  bool is_surjective() const;
  bool is_isomorphism() const { return is_injective() && is_surjective(); }
  // Points of the source over y, ascending.
  std::vector<Point> fiber(Point y) const;

 private:
  GSetPtr source_;
  GSetPtr target_;
  std::vector<Point> points_;
};

bool operator==(const GMap& a, const GMap& b);
GMap identity_map(const GSetPtr& x);
// f ∘ g
GMap compose(const GMap& f, const GMap& g);
// Exhaustive check over all group elements and points.
bool is_equivariant(const GSet& source, const GSet& target, std::span<const Point> points);

// The one-point G-set G/G and the map to it.
GSetPtr point_gset(GroupPtr group);
GMap to_point(const GSetPtr& x);

struct Coproduct {
  GSetPtr set;
  std::vector<GMap> inclusions;
  std::vector<std::size_t> offsets;
};
Coproduct coproduct(const std::vector<GSetPtr>& parts);

struct FiberProduct {
  GSetPtr set;
  GMap pr1;
  GMap pr2;
  std::vector<std::pair<Point, Point>> pairs;  // lexicographic
  std::optional<Point> index_of(Point x, Point y) const;
};
// Throws TargetMismatch unless both maps share a target.
FiberProduct fiber_product(const GMap& alpha, const GMap& beta);
// The unique map c -> X×_Z Y through which a cone (f, g) factors, if it is a cone.
std::optional<GMap> fiber_product_factor(const FiberProduct& fp, const GMap& f, const GMap& g);
// Is the square (pr1: P->X, pr2: P->Y) over (alpha, beta) a pullback?
bool is_pullback(const GMap& pr1, const GMap& pr2, const GMap& alpha, const GMap& beta);

// U^(1), U^(2), ... for a map alpha: U -> X, tuples sorted lexicographically.
class FiberPowers {
 public:
  FiberPowers(const GMap& alpha, std::size_t max_power, std::size_t point_cap = 10'000'000);

  const GMap& base_map() const { return alpha_; }
  std::size_t max_power() const { return sets_.size(); }
  // n >= 1
  const GSetPtr& set(std::size_t n) const { return sets_[n - 1]; }
  const std::vector<std::vector<Point>>& tuples(std::size_t n) const { return tuples_[n - 1]; }
  std::optional<Point> index_of(std::span<const Point> tuple) const;
  // The map U^(n) -> U^(coords.size()) keeping the listed coordinates.
  GMap projection(std::size_t n, const std::vector<std::size_t>& coords) const;
  // U^(n) -> X
  GMap structure_map(std::size_t n) const;

 private:
  GMap alpha_;
  std::vector<GSetPtr> sets_;
  std::vector<std::vector<std::vector<Point>>> tuples_;
  std::vector<std::map<std::vector<Point>, Point>> lookup_;
};

// G/H together with its coset bookkeeping.
struct CosetSpace {
  Subgroup subgroup;
  GSetPtr set;
  CosetTable cosets;
  Point coset_of(Elem x) const { return cosets.coset_of[x]; }
  Elem representative(Point c) const { return cosets.reps[c]; }
};
CosetSpace coset_gset(const Subgroup& h);

// β_g: G/K -> G/H, [x]_K ↦ [x g^-1]_H; needs g K g^-1 ≤ H.
GMap beta_map(const CosetSpace& from, const CosetSpace& to, Elem g);

struct GammaMap {
  CosetSpace domain;  // G/H[g]
  GMap map;           // into the square of G/H over G/G
};
// γ_g = β_g × β_1 : G/H[g] -> (G/H)^2, landing in square.set.
GammaMap gamma_map(const CosetSpace& gh, const FiberPowers& powers, Elem g);

struct DeltaMap {
  CosetSpace domain;  // G/H[g2,g1]
  GMap map;           // into (G/H)^3
};
// δ_{g2,g1} = β_{g2 g1} × β_{g1} × β_1
DeltaMap delta_map(const CosetSpace& gh, const FiberPowers& powers, Elem g2, Elem g1);

// Orbit-by-orbit isomorphism search via stabilizer conjugacy.
std::optional<GMap> find_isomorphism(const GSetPtr& a, const GSetPtr& b);

}  // namespace sipp
