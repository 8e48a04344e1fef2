#include "arsurj/frobenian.hpp"

#include <algorithm>
#include <set>

#include "arsurj/error.hpp"

namespace arsurj {

GaloisSetup::GaloisSetup(PermutationGroup lambda, SubgroupHandle gamma,
                         PermutationGroup g_group, SubgroupHandle n_subgroup,
                         std::vector<Permutation> quotient_generator_images,
                         std::uint32_t fiber_size,
                         std::vector<Permutation> fiber_generator_images)
    : lambda_(std::move(lambda)),
      gamma_(std::move(gamma)),
      g_group_(std::move(g_group)),
      n_subgroup_(std::move(n_subgroup)),
      quotient_(g_group_, lambda_.degree(), std::move(quotient_generator_images)),
      fiber_(g_group_, fiber_size, std::move(fiber_generator_images)) {
  if (!gamma_.parent().same_group(lambda_))
    throw Error("setup: gamma must be a subgroup of lambda");
  if (!n_subgroup_.parent().same_group(g_group_))
    throw Error("setup: N must be a subgroup of G");
  // normality of N, with a named violation on failure
  for (const auto& g : g_group_.generators()) {
    Permutation ginv = g.inverse();
    for (const auto& h : n_subgroup_.member_generators()) {
      Permutation c = g * h * ginv;
      if (!n_subgroup_.generated().contains(c))
        throw Error("setup: N is not normal in G: conjugation of " + h.cycle_string() +
                    " by " + g.cycle_string() + " gives " + c.cycle_string());
    }
  }
  for (const auto& im : quotient_.generator_images())
    if (!lambda_.contains(im))
      throw Error("setup: quotient image " + im.cycle_string() + " lies outside lambda");
  // image of the quotient map must be exactly Gamma
  std::set<Permutation> image(quotient_.element_images().begin(),
                              quotient_.element_images().end());
  std::vector<Permutation> image_sorted(image.begin(), image.end());
  if (image_sorted != gamma_.generated().elements())
    throw Error("setup: the quotient map image differs from gamma");
  // kernel must be exactly N
  std::vector<Permutation> kernel;
  const auto& els = g_group_.elements();
  for (std::size_t i = 0; i < els.size(); ++i)
    if (quotient_.element_images()[i].is_identity()) kernel.push_back(els[i]);
  if (kernel != n_subgroup_.generated().elements())
    throw Error("setup: the quotient map kernel differs from N");
}

ClassFunction::ClassFunction(PermutationGroup group, std::vector<Rational> values)
    : group_(std::move(group)),
      classes_(conjugacy_classes(group_)),
      values_(std::move(values)) {
  if (values_.size() != classes_.size())
    throw Error("class function: need one value per conjugacy class");
}

const Rational& ClassFunction::value_at(const Permutation& g) const {
  for (std::size_t i = 0; i < classes_.size(); ++i)
    if (std::binary_search(classes_[i].members.begin(), classes_[i].members.end(), g))
      return values_[i];
  throw Error("class function: element " + g.cycle_string() + " not in the group");
}

Rational ClassFunction::mean() const {
  Rational sum(0);
  for (std::size_t i = 0; i < classes_.size(); ++i)
    sum += Rational(static_cast<long long>(classes_[i].members.size())) * values_[i];
  return sum / Rational(static_cast<long long>(group_.order()));
}

std::pair<std::vector<Permutation>, std::vector<Permutation>> conjugacy_saturation(
    const PermutationGroup& h, const std::vector<Permutation>& z) {
  for (const auto& x : z)
    if (!h.contains(x))
      throw Error("conjugacy saturation: element " + x.cycle_string() + " not in the group");
  auto classes = conjugacy_classes(h);
  std::vector<Permutation> saturation;
  std::vector<Permutation> reps;
  for (const auto& cls : classes) {
    bool meets = std::any_of(z.begin(), z.end(), [&](const Permutation& x) {
      return std::binary_search(cls.members.begin(), cls.members.end(), x);
    });
    if (meets) {
      reps.push_back(cls.representative);
      saturation.insert(saturation.end(), cls.members.begin(), cls.members.end());
    }
  }
  std::sort(saturation.begin(), saturation.end());
  return {std::move(saturation), std::move(reps)};
}

namespace {

// Elements of the Lambda-class of rep that land in Gamma.
std::vector<Permutation> class_meet_gamma(const GaloisSetup& setup,
                                          const Permutation& rep) {
  auto [cls, reps] = conjugacy_saturation(setup.lambda(), {rep});
  (void)reps;
  const auto& gamma_els = setup.gamma().generated().elements();
  std::vector<Permutation> meet;
  for (const auto& x : cls)
    if (std::binary_search(gamma_els.begin(), gamma_els.end(), x)) meet.push_back(x);
  return meet;
}

// Gamma-conjugacy classes of a subset already closed under Gamma-conjugation.
std::vector<std::vector<Permutation>> gamma_classes_of(const GaloisSetup& setup,
                                                       const std::vector<Permutation>& subset) {
  const PermutationGroup& gamma = setup.gamma().generated();
  auto classes = conjugacy_classes(gamma);
  std::vector<std::vector<Permutation>> out;
  for (const auto& cls : classes) {
    if (std::binary_search(subset.begin(), subset.end(), cls.representative))
      out.push_back(cls.members);
  }
  return out;
}

} // namespace

Rational s_value(const GaloisSetup& setup, const Permutation& lambda_rep) {
  if (!setup.lambda().contains(lambda_rep))
    throw Error("s-value: class representative not in lambda");
  if (setup.empty_fiber()) return Rational(0);
  std::vector<Permutation> meet = class_meet_gamma(setup, lambda_rep);
  if (meet.empty()) return Rational(1);
  auto gamma_classes = gamma_classes_of(setup, meet);

  long long n_order = static_cast<long long>(setup.n_subgroup().generated().order());
  const auto& g_els = setup.g_group().elements();
  Rational sum(0);
  for (const auto& cls : gamma_classes) {
    long long count = 0;
    for (std::size_t i = 0; i < g_els.size(); ++i) {
      const Permutation& image = setup.quotient().element_images()[i];
      if (!std::binary_search(cls.begin(), cls.end(), image)) continue;
      if (setup.fiber().element_images()[i].has_fixed_index()) ++count;
    }
    sum += Rational(count, static_cast<long long>(cls.size()) * n_order);
  }
  return sum / Rational(static_cast<long long>(gamma_classes.size()));
}

SInvariantProfile s_profile(const GaloisSetup& setup) {
  auto classes = conjugacy_classes(setup.lambda());
  std::vector<Rational> values;
  values.reserve(classes.size());
  for (const auto& cls : classes) values.push_back(s_value(setup, cls.representative));
  return SInvariantProfile{ClassFunction(setup.lambda(), std::move(values)),
                           setup.empty_fiber()};
}

std::optional<Permutation> s_lt_one_witness(const GaloisSetup& setup,
                                            const Permutation& lambda_rep) {
  if (setup.empty_fiber())
    throw Error("s-witness: setup has an empty fiber");
  std::vector<Permutation> meet = class_meet_gamma(setup, lambda_rep);
  const auto& g_els = setup.g_group().elements();
  for (std::size_t i = 0; i < g_els.size(); ++i) {
    const Permutation& image = setup.quotient().element_images()[i];
    if (!std::binary_search(meet.begin(), meet.end(), image)) continue;
    if (!setup.fiber().element_images()[i].has_fixed_index()) return g_els[i];
  }
  return std::nullopt;
}

Rational density_s_eq_1(const GaloisSetup& setup) {
  if (setup.empty_fiber())
    throw Error("density: setup has an empty fiber");
  auto classes = conjugacy_classes(setup.lambda());
  long long favorable = 0;
  for (const auto& cls : classes)
    if (!s_lt_one_witness(setup, cls.representative))
      favorable += static_cast<long long>(cls.members.size());
  return Rational(favorable, static_cast<long long>(setup.lambda().order()));
}

Rational delta(const GaloisSetup& setup) {
  if (setup.empty_fiber())
    throw Error("delta: setup has an empty fiber");
  long long count = 0;
  for (const auto& image : setup.fiber().element_images())
    if (image.has_fixed_index()) ++count;
  return Rational(count, static_cast<long long>(setup.g_group().order()));
}

bool is_pseudo_split_via_s(const GaloisSetup& setup) {
  bool via_profile = true;
  if (setup.empty_fiber()) {
    via_profile = false;
  } else {
    auto profile = s_profile(setup);
    for (const auto& v : profile.values.values())
      if (!v.is_one()) { via_profile = false; break; }
  }
  bool via_fixed_points = setup.fiber().set_size() > 0;
  for (const auto& image : setup.fiber().element_images())
    if (!image.has_fixed_index()) { via_fixed_points = false; break; }
  if (via_profile != via_fixed_points)
    throw Error("pseudo-split check: the profile route and the fixed-point route disagree");
  return via_profile;
}

bool predict_surjectivity(std::span<const GaloisSetup> strata,
                          const PermutationGroup& lambda,
                          const Permutation& lambda_rep) {
  if (!lambda.contains(lambda_rep))
    throw Error("predict: class representative not in lambda");
  for (const auto& setup : strata) {
    if (!setup.lambda().same_group(lambda))
      throw Error("predict: strata reference different ambient groups");
    if (!s_value(setup, lambda_rep).is_one()) return false;
  }
  return true;
}

SurjectivitySet surjectivity_set(const PermutationGroup& lambda,
                                 std::span<const GaloisSetup> strata) {
  auto classes = conjugacy_classes(lambda);
  SurjectivitySet out;
  long long favorable = 0;
  for (const auto& cls : classes) {
    if (predict_surjectivity(strata, lambda, cls.representative)) {
      out.class_representatives.push_back(cls.representative);
      favorable += static_cast<long long>(cls.members.size());
    }
  }
  out.density = Rational(favorable, static_cast<long long>(lambda.order()));
  return out;
}

GaloisSetup setup_from_descriptor(const EtaleAlgebraDescriptor& d) {
  const PermutationGroup& g = d.galois_group();
  SubgroupHandle gamma(g, g.generators());
  SubgroupHandle trivial_n(g, {});
  std::vector<Permutation> quotient_images = g.generators();
  return GaloisSetup(g, std::move(gamma), g, std::move(trivial_n),
                     std::move(quotient_images), d.point_action().set_size(),
                     d.point_action().generator_images());
}

} // namespace arsurj
