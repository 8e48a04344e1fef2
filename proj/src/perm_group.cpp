#include "arsurj/perm_group.hpp"

#include <algorithm>
#include <deque>
#include <exception>
#include <map>
#include <set>

#include "arsurj/error.hpp"

namespace arsurj {

struct PermutationGroup::State {
  std::uint32_t degree;
  std::vector<Permutation> generators;
  std::size_t order_cap;
  std::once_flag once;
  std::vector<Permutation> elements;
  std::exception_ptr failure;
};

PermutationGroup::PermutationGroup(std::uint32_t degree,
                                   std::vector<Permutation> generators,
                                   std::size_t order_cap)
    : state_(std::make_shared<State>()) {
  if (order_cap == 0) throw Error("group: order cap must be positive");
  for (const auto& g : generators)
    if (g.degree() != degree)
      throw Error("group: generator degree mismatch");
  state_->degree = degree;
  state_->generators = std::move(generators);
  state_->order_cap = order_cap;
}

std::uint32_t PermutationGroup::degree() const { return state_->degree; }
std::size_t PermutationGroup::order_cap() const { return state_->order_cap; }

const std::vector<Permutation>& PermutationGroup::generators() const {
  return state_->generators;
}

const std::vector<Permutation>& PermutationGroup::elements() const {
  State& st = *state_;
  std::call_once(st.once, [&st] {
    try {
      std::set<Permutation> seen;
      std::deque<const Permutation*> todo;
      auto insert = [&](Permutation p) {
        auto [it, fresh] = seen.insert(std::move(p));
        if (fresh) {
          if (seen.size() > st.order_cap)
            throw GroupTooLargeError("group too large: closure exceeds cap of " +
                                     std::to_string(st.order_cap));
          todo.push_back(&*it);
        }
      };
      insert(Permutation::identity(st.degree));
      for (const auto& g : st.generators) insert(g);
      while (!todo.empty()) {
        const Permutation* cur = todo.front();
        todo.pop_front();
        for (const auto& g : st.generators) {
          insert(g * *cur);
          insert(*cur * g);
        }
        insert(cur->inverse());
      }
      st.elements.assign(seen.begin(), seen.end());
    } catch (...) {
      st.failure = std::current_exception();
    }
  });
  if (st.failure) std::rethrow_exception(st.failure);
  return st.elements;
}

bool PermutationGroup::contains(const Permutation& p) const {
  if (p.degree() != degree()) return false;
  const auto& el = elements();
  return std::binary_search(el.begin(), el.end(), p);
}

std::size_t PermutationGroup::index_of(const Permutation& p) const {
  const auto& el = elements();
  auto it = std::lower_bound(el.begin(), el.end(), p);
  if (it == el.end() || *it != p)
    throw Error("group: element " + p.cycle_string() + " not in group");
  return static_cast<std::size_t>(it - el.begin());
}

bool PermutationGroup::same_group(const PermutationGroup& other) const {
  if (state_ == other.state_) return true;
  return degree() == other.degree() && elements() == other.elements();
}

std::vector<ConjugacyClass> conjugacy_classes(const PermutationGroup& group) {
  const auto& el = group.elements();
  std::vector<bool> assigned(el.size(), false);
  std::vector<ConjugacyClass> classes;
  std::vector<std::pair<Permutation, Permutation>> conj_gens;
  for (const auto& g : group.generators())
    conj_gens.emplace_back(g, g.inverse());
  for (std::size_t i = 0; i < el.size(); ++i) {
    if (assigned[i]) continue;
    // orbit of el[i] under conjugation by generators
    std::set<Permutation> orbit{el[i]};
    std::deque<Permutation> todo{el[i]};
    assigned[i] = true;
    while (!todo.empty()) {
      Permutation cur = std::move(todo.front());
      todo.pop_front();
      for (const auto& [g, ginv] : conj_gens) {
        Permutation c = g * cur * ginv;
        if (orbit.insert(c).second) {
          assigned[group.index_of(c)] = true;
          todo.push_back(std::move(c));
        }
      }
    }
    ConjugacyClass cls{el[i], {orbit.begin(), orbit.end()}};
    classes.push_back(std::move(cls));
  }
  return classes;
}

SubgroupHandle::SubgroupHandle(PermutationGroup parent,
                               std::vector<Permutation> member_generators)
    : parent_(std::move(parent)),
      member_generators_(std::move(member_generators)),
      generated_(parent_.degree(), member_generators_, parent_.order_cap()) {
  for (const auto& g : member_generators_)
    if (!parent_.contains(g))
      throw Error("subgroup: generator " + g.cycle_string() + " is not in the parent group");
}

GroupAction::GroupAction(PermutationGroup group, std::uint32_t set_size,
                         std::vector<Permutation> generator_images)
    : group_(std::move(group)),
      set_size_(set_size),
      generator_images_(std::move(generator_images)) {
  if (generator_images_.size() != group_.generators().size())
    throw Error("action: need one image per group generator");
  for (const auto& im : generator_images_)
    if (im.degree() != set_size_)
      throw Error("action: generator image degree does not match the set size");

  const auto& el = group_.elements();
  images_.assign(el.size(), Permutation::identity(set_size_));
  std::vector<bool> known(el.size(), false);
  std::size_t id_idx = group_.index_of(Permutation::identity(group_.degree()));
  known[id_idx] = true;
  std::deque<std::size_t> todo{id_idx};
  std::size_t reached = 1;
  while (!todo.empty()) {
    std::size_t cur = todo.front();
    todo.pop_front();
    for (std::size_t gi = 0; gi < generator_images_.size(); ++gi) {
      Permutation next = group_.generators()[gi] * el[cur];
      Permutation next_img = generator_images_[gi] * images_[cur];
      std::size_t ni = group_.index_of(next);
      if (!known[ni]) {
        known[ni] = true;
        images_[ni] = std::move(next_img);
        todo.push_back(ni);
        ++reached;
      } else if (images_[ni] != next_img) {
        throw Error("action: generator images do not extend to a homomorphism "
                    "(conflict at " + next.cycle_string() + ")");
      }
    }
  }
  if (reached != el.size())
    throw Error("action: generators do not generate the group");
}

const Permutation& GroupAction::image_of(const Permutation& g) const {
  return images_[group_.index_of(g)];
}

bool GroupAction::is_transitive() const {
  if (set_size_ == 0) return false;
  std::vector<bool> hit(set_size_, false);
  hit[0] = true;
  std::deque<std::uint32_t> todo{0};
  std::size_t count = 1;
  while (!todo.empty()) {
    std::uint32_t x = todo.front();
    todo.pop_front();
    for (const auto& im : generator_images_) {
      for (std::uint32_t y : {im[x], im.inverse()[x]}) {
        if (!hit[y]) {
          hit[y] = true;
          todo.push_back(y);
          ++count;
        }
      }
    }
  }
  return count == set_size_;
}

bool has_fixed_point(const Permutation& g, const GroupAction& action) {
  return action.image_of(g).has_fixed_index();
}

GroupAction coset_action(const PermutationGroup& group, const SubgroupHandle& h) {
  for (const auto& g : h.member_generators())
    if (!group.contains(g))
      throw Error("coset action: subgroup is not contained in the group");
  const auto& el = group.elements();
  const auto& sub = h.generated().elements();

  // Sweep elements in canonical order; the first unassigned element of each
  // left coset is its least member and becomes the coset representative.
  std::vector<std::size_t> coset_of(el.size(), SIZE_MAX);
  std::vector<Permutation> reps;
  for (std::size_t i = 0; i < el.size(); ++i) {
    if (coset_of[i] != SIZE_MAX) continue;
    std::size_t idx = reps.size();
    reps.push_back(el[i]);
    for (const auto& s : sub) coset_of[group.index_of(el[i] * s)] = idx;
  }

  std::uint32_t n = static_cast<std::uint32_t>(reps.size());
  std::vector<Permutation> images;
  images.reserve(group.generators().size());
  for (const auto& g : group.generators()) {
    std::vector<std::uint32_t> im(n);
    for (std::uint32_t j = 0; j < n; ++j)
      im[j] = static_cast<std::uint32_t>(coset_of[group.index_of(g * reps[j])]);
    images.emplace_back(std::move(im));
  }
  return GroupAction(group, n, std::move(images));
}

Quotient quotient_by_normal(const PermutationGroup& group, const SubgroupHandle& n) {
  for (const auto& g : n.member_generators())
    if (!group.contains(g))
      throw Error("quotient: subgroup is not contained in the group");
  for (const auto& g : group.generators()) {
    Permutation ginv = g.inverse();
    for (const auto& h : n.member_generators()) {
      Permutation c = g * h * ginv;
      if (!n.generated().contains(c))
        throw Error("quotient: subgroup is not normal: " + g.cycle_string() + " * " +
                    h.cycle_string() + " * " + ginv.cycle_string() + " = " +
                    c.cycle_string() + " lies outside the subgroup");
    }
  }
  GroupAction proj = coset_action(group, n);
  PermutationGroup quot(proj.set_size(), proj.generator_images(), group.order_cap());
  return Quotient{std::move(quot), std::move(proj)};
}

std::vector<std::vector<Permutation>> all_subgroups(const PermutationGroup& group) {
  const auto& el = group.elements();
  auto closure_of = [&](std::vector<Permutation> gens) {
    PermutationGroup sub(group.degree(), std::move(gens), group.order_cap());
    return sub.elements();
  };
  std::set<std::vector<Permutation>> found;
  found.insert({Permutation::identity(group.degree())});
  for (const auto& g : el) found.insert(closure_of({g}));
  // join each known subgroup with each cyclic generator until stable
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::vector<Permutation>> snapshot(found.begin(), found.end());
    for (const auto& sub : snapshot) {
      for (const auto& g : el) {
        if (std::binary_search(sub.begin(), sub.end(), g)) continue;
        std::vector<Permutation> gens = sub;
        gens.push_back(g);
        auto joined = closure_of(std::move(gens));
        if (found.insert(std::move(joined)).second) grew = true;
      }
    }
  }
  return {found.begin(), found.end()};
}

} // namespace arsurj
