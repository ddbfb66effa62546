#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace sipp {

using Point = std::uint32_t;
// Position of an element in the sorted element list of its group.
using Elem = std::uint32_t;

class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<Point> images);

  static Permutation identity(std::size_t degree);
  static Permutation from_cycles(std::size_t degree, const std::vector<std::vector<Point>>& cycles);

  std::size_t degree() const { return images_.size(); }
  Point operator()(Point x) const { return images_[x]; }
  const std::vector<Point>& images() const { return images_; }

  Permutation inverse() const;
  bool is_identity() const;
  // "(0 1)(2 3)", "()" for the identity.
  std::string cycle_string() const;

  // (a * b)(x) = a(b(x))
  friend Permutation operator*(const Permutation& a, const Permutation& b);
  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<Point> images_;
};

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept;
};

class PermGroup;
using GroupPtr = std::shared_ptr<const PermGroup>;

class PermGroup {
 public:
  static constexpr std::size_t kDefaultOrderBound = 100000;
  static constexpr std::size_t kTableBound = 2048;

  std::size_t degree() const { return degree_; }
  std::size_t order() const { return elements_.size(); }
  const std::vector<Permutation>& generators() const { return generators_; }
  // Indices of the generators, in generator order.
  const std::vector<Elem>& generator_elements() const { return generator_elements_; }
  const std::vector<Permutation>& elements() const { return elements_; }
  const Permutation& element(Elem g) const { return elements_[g]; }
  static constexpr Elem identity() { return 0; }

  std::optional<Elem> index_of(const Permutation& p) const;
  Elem index_or_throw(const Permutation& p) const;
  bool contains(Elem g) const { return g < elements_.size(); }
  void check_element(Elem g) const;

  Elem mul(Elem a, Elem b) const;
  Elem inv(Elem a) const { return inverse_[a]; }
  Elem pow(Elem a, long long n) const;
  // g h g^-1
  Elem conj(Elem g, Elem h) const { return mul(mul(g, h), inv(g)); }
  std::size_t element_order(Elem a) const;

  // Every non-identity g equals generator(tree_gen(g)) * tree_parent(g); the
  // parent is strictly closer to the identity.
  std::size_t tree_gen(Elem g) const { return tree_gen_[g]; }
  Elem tree_parent(Elem g) const { return tree_parent_[g]; }
  // Elements in breadth-first order from the identity.
  const std::vector<Elem>& bfs_order() const { return bfs_order_; }

  std::string name(Elem g) const { return elements_[g].cycle_string(); }

  friend GroupPtr group_closure(const std::vector<Permutation>& generators, std::size_t degree,
                                std::size_t order_bound);

 private:
  PermGroup() = default;

  std::size_t degree_ = 0;
  std::vector<Permutation> generators_;
  std::vector<Elem> generator_elements_;
  std::vector<Permutation> elements_;
  std::unordered_map<Permutation, Elem, PermutationHash> index_;
  std::vector<Elem> inverse_;
  std::vector<Elem> table_;
  std::vector<std::size_t> tree_gen_;
  std::vector<Elem> tree_parent_;
  std::vector<Elem> bfs_order_;
};

GroupPtr group_closure(const std::vector<Permutation>& generators, std::size_t degree,
                       std::size_t order_bound = PermGroup::kDefaultOrderBound);

class Subgroup {
 public:
  Subgroup() = default;

  static Subgroup whole(GroupPtr g);
  static Subgroup trivial(GroupPtr g);
  static Subgroup generated_by(GroupPtr g, std::span<const Elem> gens);
  static Subgroup generated_by(GroupPtr g, const std::vector<Permutation>& gens);
  // Throws NotASubgroup unless the set is closed and contains the identity.
  static Subgroup from_elements(GroupPtr g, std::vector<Elem> elems);

  const PermGroup& group() const { return *group_; }
  const GroupPtr& group_ptr() const { return group_; }
  std::size_t order() const { return elements_.size(); }
  std::size_t index() const { return group_->order() / elements_.size(); }
  const std::vector<Elem>& elements() const { return elements_; }
  bool contains(Elem g) const { return member_[g]; }
  // Position of g in elements(), if present.
  std::optional<std::size_t> position(Elem g) const;

  bool is_subgroup_of(const Subgroup& other) const;
  bool is_normal() const;
  bool is_p_group(unsigned p) const;
  // A short generating set, greedy in element order.
  std::vector<Elem> generators() const;

  friend bool operator==(const Subgroup& a, const Subgroup& b) {
    return a.group_ == b.group_ && a.elements_ == b.elements_;
  }

 private:
  GroupPtr group_;
  std::vector<Elem> elements_;
  std::vector<bool> member_;
};

// H^g = g^-1 H g
Subgroup conjugate_subgroup(const Subgroup& h, Elem g);
Subgroup intersect(const Subgroup& a, const Subgroup& b);
// H[g] = H^g ∩ H
Subgroup bracket_subgroup(const Subgroup& h, Elem g);
// H[g2,g1] = H^{g2 g1} ∩ H^{g1} ∩ H
Subgroup bracket_subgroup(const Subgroup& h, Elem g2, Elem g1);
Subgroup normalizer(const Subgroup& h);

// Representatives (minimal index) of K1\H/K2, sorted.
std::vector<Elem> double_cosets(const Subgroup& k1, const Subgroup& k2, const Subgroup& h);
// The double coset K1 t K2 as a sorted element list.
std::vector<Elem> double_coset(const Subgroup& k1, Elem t, const Subgroup& k2);

Subgroup sylow_subgroup(GroupPtr g, unsigned p);

// Left cosets xH: coset id per element, ids ordered by minimal element.
struct CosetTable {
  std::vector<std::uint32_t> coset_of;
  std::vector<Elem> reps;  // minimal element of each coset
};
CosetTable left_cosets(const Subgroup& h);
CosetTable right_cosets(const Subgroup& h);

}  // namespace sipp
