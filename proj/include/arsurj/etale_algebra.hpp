#ifndef ARSURJ_ETALE_ALGEBRA_HPP
#define ARSURJ_ETALE_ALGEBRA_HPP

#include <optional>
#include <vector>

#include "arsurj/perm_group.hpp"

namespace arsurj {

/// A finite etale algebra through its Galois shadow: a group G together with
/// the component stabilizers H_1, ..., H_n. The derived point set is the
/// disjoint union of the coset actions G/H_i, with G acting blockwise.
class EtaleAlgebraDescriptor {
public:
  EtaleAlgebraDescriptor(PermutationGroup galois_group,
                         std::vector<SubgroupHandle> components);

  const PermutationGroup& galois_group() const { return galois_group_; }
  const std::vector<SubgroupHandle>& components() const { return components_; }

  /// G acting on the disjoint union of the coset spaces.
  const GroupAction& point_action() const { return point_action_; }
  /// Start index of each component's block inside the point set.
  const std::vector<std::uint32_t>& block_offsets() const { return block_offsets_; }

private:
  PermutationGroup galois_group_;
  std::vector<SubgroupHandle> components_;
  std::vector<std::uint32_t> block_offsets_;
  GroupAction point_action_;
};

struct SplitnessReport {
  bool is_split = false;
  bool is_pseudo_split = false;
  /// Elements of G with no fixed point on the point set, sorted; empty iff
  /// pseudo-split. Always a union of conjugacy classes.
  std::vector<Permutation> uncovered;
  /// Index of a component with H_i = G, when one exists.
  std::optional<std::size_t> fixed_component;
};

/// True iff some component subgroup is all of G.
bool is_split(const EtaleAlgebraDescriptor& d);

/// Covering test: pseudo-split iff every g in G fixes a point of the union,
/// i.e. G is the union of the conjugates of the H_i.
SplitnessReport is_pseudo_split(const EtaleAlgebraDescriptor& d);

/// Builds the descriptor for the direct sum of the fixed fields of the given
/// subgroups; the covering property itself is not asserted here.
EtaleAlgebraDescriptor algebra_from_covering(const PermutationGroup& lambda,
                                             std::vector<SubgroupHandle> subgroups);

/// Component degrees [G : H_i], order-preserving.
std::vector<std::size_t> component_degrees(const EtaleAlgebraDescriptor& d);

} // namespace arsurj

#endif
