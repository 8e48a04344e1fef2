#ifndef ARSURJ_PERM_GROUP_HPP
#define ARSURJ_PERM_GROUP_HPP

#include <cstddef>
#include <memory>
#include <mutex>
#include <vector>

#include "arsurj/permutation.hpp"

namespace arsurj {

/// Finite permutation group given by generators. The full element list is
/// enumerated by closure on first demand, sorted lexicographically, and
/// cached in shared state; copies are cheap and the cached list is safe for
/// concurrent reads. Enumeration past the order cap raises GroupTooLargeError.
class PermutationGroup {
public:
  static constexpr std::size_t kDefaultOrderCap = 100000;

  PermutationGroup(std::uint32_t degree, std::vector<Permutation> generators,
                   std::size_t order_cap = kDefaultOrderCap);

  std::uint32_t degree() const;
  std::size_t order_cap() const;
  const std::vector<Permutation>& generators() const;

  /// Closure of the generators, sorted; independent of generator order.
  const std::vector<Permutation>& elements() const;
  std::size_t order() const { return elements().size(); }

  bool contains(const Permutation& p) const;
  /// Position of p in the canonical element list; Error if absent.
  std::size_t index_of(const Permutation& p) const;

  /// Structural identity: same degree and same sorted element list.
  bool same_group(const PermutationGroup& other) const;

private:
  struct State;
  std::shared_ptr<State> state_;
};

struct ConjugacyClass {
  Permutation representative;        // lexicographically least member
  std::vector<Permutation> members;  // sorted
};

/// Classes in canonical order (ascending representative); they partition
/// the element list and the identity class comes first.
std::vector<ConjugacyClass> conjugacy_classes(const PermutationGroup& group);

/// A subgroup recorded by member generators inside an ambient parent group.
class SubgroupHandle {
public:
  SubgroupHandle(PermutationGroup parent, std::vector<Permutation> member_generators);

  const PermutationGroup& parent() const { return parent_; }
  const std::vector<Permutation>& member_generators() const { return member_generators_; }
  /// The generated subgroup as a group of the same degree.
  const PermutationGroup& generated() const { return generated_; }

private:
  PermutationGroup parent_;
  std::vector<Permutation> member_generators_;
  PermutationGroup generated_;
};

/// An action of a group on {0, ..., set_size-1}, given on generators and
/// extended (and verified) to the whole group by closure. Also serves as a
/// homomorphism carrier into another permutation group.
class GroupAction {
public:
  GroupAction(PermutationGroup group, std::uint32_t set_size,
              std::vector<Permutation> generator_images);

  const PermutationGroup& group() const { return group_; }
  std::uint32_t set_size() const { return set_size_; }
  const std::vector<Permutation>& generator_images() const { return generator_images_; }

  /// Image of an arbitrary group element; Error if g is not in the group.
  const Permutation& image_of(const Permutation& g) const;
  /// Images of all elements, parallel to group().elements().
  const std::vector<Permutation>& element_images() const { return images_; }

  bool is_transitive() const;

private:
  PermutationGroup group_;
  std::uint32_t set_size_;
  std::vector<Permutation> generator_images_;
  std::vector<Permutation> images_;
};

/// True iff the action image of g fixes at least one point of the set.
bool has_fixed_point(const Permutation& g, const GroupAction& action);

/// Left-translation action on the left cosets of h; transitive, with cosets
/// indexed in order of their least elements.
GroupAction coset_action(const PermutationGroup& group, const SubgroupHandle& h);

struct Quotient {
  PermutationGroup group;  // the quotient realized on cosets of the kernel
  GroupAction projection;  // parent -> quotient; projection.image_of is g |-> gN
};

/// Quotient by a normal subgroup; Error naming a violating conjugation when
/// n is not normal.
Quotient quotient_by_normal(const PermutationGroup& group, const SubgroupHandle& n);

/// All subgroups of the group, each as a sorted element list; produced by
/// closing the cyclic subgroups under joins. Intended for small groups.
std::vector<std::vector<Permutation>> all_subgroups(const PermutationGroup& group);

} // namespace arsurj

#endif
