#ifndef ARSURJ_FROBENIAN_HPP
#define ARSURJ_FROBENIAN_HPP

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "arsurj/etale_algebra.hpp"
#include "arsurj/perm_group.hpp"
#include "arsurj/rational.hpp"

namespace arsurj {

/// The tower data behind an s-invariant: ambient group Lambda with subgroup
/// Gamma, a group G with normal subgroup N, a surjection G -> Gamma with
/// kernel exactly N, and the action of G on the finite fiber set. Places and
/// Frobenius elements are abstracted to conjugacy classes of Lambda; the
/// finitely many ramified places live outside this model.
class GaloisSetup {
public:
  GaloisSetup(PermutationGroup lambda, SubgroupHandle gamma,
              PermutationGroup g_group, SubgroupHandle n_subgroup,
              std::vector<Permutation> quotient_generator_images,
              std::uint32_t fiber_size,
              std::vector<Permutation> fiber_generator_images);

  const PermutationGroup& lambda() const { return lambda_; }
  const SubgroupHandle& gamma() const { return gamma_; }
  const PermutationGroup& g_group() const { return g_group_; }
  const SubgroupHandle& n_subgroup() const { return n_subgroup_; }
  /// The homomorphism G -> Lambda with image Gamma and kernel N.
  const GroupAction& quotient() const { return quotient_; }
  /// The action of G on the fiber point set I(L).
  const GroupAction& fiber() const { return fiber_; }
  bool empty_fiber() const { return fiber_.set_size() == 0; }

private:
  PermutationGroup lambda_;
  SubgroupHandle gamma_;
  PermutationGroup g_group_;
  SubgroupHandle n_subgroup_;
  GroupAction quotient_;
  GroupAction fiber_;
};

/// A rational-valued function constant on conjugacy classes, tabulated on
/// the canonical class list of its group.
class ClassFunction {
public:
  ClassFunction(PermutationGroup group, std::vector<Rational> values);

  const PermutationGroup& group() const { return group_; }
  const std::vector<ConjugacyClass>& classes() const { return classes_; }
  const std::vector<Rational>& values() const { return values_; }

  const Rational& value_at(const Permutation& g) const;

  /// Group average: sum over classes of |class| * value, divided by |group|.
  Rational mean() const;

private:
  PermutationGroup group_;
  std::vector<ConjugacyClass> classes_;
  std::vector<Rational> values_;
};

struct SInvariantProfile {
  ClassFunction values;  // on Lambda, values in [0,1]
  bool empty_fiber = false;
};

/// Smallest conjugation-stable subset of h containing z, together with one
/// canonical representative per conjugacy class met.
std::pair<std::vector<Permutation>, std::vector<Permutation>> conjugacy_saturation(
    const PermutationGroup& h, const std::vector<Permutation>& z);

/// The s-invariant at the class of lambda_rep: 0 on an empty fiber; 1 when
/// the Lambda-class misses Gamma; otherwise the average over Gamma-classes C
/// inside the intersection of (1/(|C|*|N|)) * #{g in G : g mod N in C, g
/// fixes a fiber point}.
Rational s_value(const GaloisSetup& setup, const Permutation& lambda_rep);

/// s_value tabulated on every class of Lambda.
SInvariantProfile s_profile(const GaloisSetup& setup);

/// Some g in G without a fiber fixed point whose image lies in the
/// Lambda-class of rep intersected with Gamma; absent exactly when the
/// s-value there is 1.
std::optional<Permutation> s_lt_one_witness(const GaloisSetup& setup,
                                            const Permutation& lambda_rep);

/// Density of {s = 1}: the fraction of lambda in Lambda all of whose
/// compatible g act with a fiber fixed point.
Rational density_s_eq_1(const GaloisSetup& setup);

/// Fraction of G acting with a fiber fixed point.
Rational delta(const GaloisSetup& setup);

/// True iff the profile is constantly 1, equivalently every g in G fixes a
/// fiber point; both routes are computed and cross-checked.
bool is_pseudo_split_via_s(const GaloisSetup& setup);

/// Conjunction of s = 1 at the given class over all strata. The ambient
/// Lambda is supplied explicitly; every stratum must carry the same group.
bool predict_surjectivity(std::span<const GaloisSetup> strata,
                          const PermutationGroup& lambda,
                          const Permutation& lambda_rep);

struct SurjectivitySet {
  std::vector<Permutation> class_representatives;
  Rational density;
};

/// Classes of Lambda where every stratum has s = 1, with their total density.
SurjectivitySet surjectivity_set(const PermutationGroup& lambda,
                                 std::span<const GaloisSetup> strata);

/// The setup induced by an etale algebra descriptor over the base field
/// itself: Lambda = Gamma = G, trivial N, identity quotient, fiber = the
/// descriptor's point set.
GaloisSetup setup_from_descriptor(const EtaleAlgebraDescriptor& d);

} // namespace arsurj

#endif
