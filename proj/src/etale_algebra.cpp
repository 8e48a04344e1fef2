#include "arsurj/etale_algebra.hpp"

#include <utility>

#include "arsurj/error.hpp"

namespace arsurj {

namespace {

const PermutationGroup& validated(const PermutationGroup& group,
                                  const std::vector<SubgroupHandle>& components) {
  if (components.empty())
    throw Error("etale algebra: empty component list is rejected");
  for (const auto& h : components)
    for (const auto& g : h.member_generators())
      if (!group.contains(g))
        throw Error("etale algebra: component subgroup lies outside the Galois group");
  return group;
}

// Disjoint union of the coset actions, blockwise per component.
GroupAction build_point_action(const PermutationGroup& group,
                               const std::vector<SubgroupHandle>& components,
                               std::vector<std::uint32_t>& offsets_out) {
  std::vector<GroupAction> blocks;
  blocks.reserve(components.size());
  std::uint32_t total = 0;
  offsets_out.clear();
  for (const auto& h : components) {
    offsets_out.push_back(total);
    blocks.push_back(coset_action(group, h));
    total += blocks.back().set_size();
  }
  std::vector<Permutation> images;
  for (std::size_t gi = 0; gi < group.generators().size(); ++gi) {
    std::vector<std::uint32_t> im(total);
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      const Permutation& part = blocks[b].generator_images()[gi];
      for (std::uint32_t x = 0; x < part.degree(); ++x)
        im[offsets_out[b] + x] = offsets_out[b] + part[x];
    }
    images.emplace_back(std::move(im));
  }
  return GroupAction(group, total, std::move(images));
}

} // namespace

EtaleAlgebraDescriptor::EtaleAlgebraDescriptor(PermutationGroup galois_group,
                                               std::vector<SubgroupHandle> components)
    : galois_group_(std::move(galois_group)),
      components_(std::move(components)),
      point_action_(build_point_action(validated(galois_group_, components_),
                                       components_, block_offsets_)) {}

bool is_split(const EtaleAlgebraDescriptor& d) {
  std::size_t order = d.galois_group().order();
  for (const auto& h : d.components())
    if (h.generated().order() == order) return true;
  return false;
}

SplitnessReport is_pseudo_split(const EtaleAlgebraDescriptor& d) {
  SplitnessReport report;
  for (const auto& g : d.galois_group().elements())
    if (!has_fixed_point(g, d.point_action())) report.uncovered.push_back(g);
  report.is_pseudo_split = report.uncovered.empty();
  std::size_t order = d.galois_group().order();
  for (std::size_t i = 0; i < d.components().size(); ++i) {
    if (d.components()[i].generated().order() == order) {
      report.fixed_component = i;
      break;
    }
  }
  report.is_split = report.fixed_component.has_value();
  return report;
}

EtaleAlgebraDescriptor algebra_from_covering(const PermutationGroup& lambda,
                                             std::vector<SubgroupHandle> subgroups) {
  return EtaleAlgebraDescriptor(lambda, std::move(subgroups));
}

std::vector<std::size_t> component_degrees(const EtaleAlgebraDescriptor& d) {
  std::vector<std::size_t> degrees;
  degrees.reserve(d.components().size());
  std::size_t order = d.galois_group().order();
  for (const auto& h : d.components())
    degrees.push_back(order / h.generated().order());
  return degrees;
}

} // namespace arsurj
