#ifndef ARSURJ_PADIC_ORACLE_HPP
#define ARSURJ_PADIC_ORACLE_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <vector>

#include "arsurj/rational.hpp"

namespace arsurj {

using BigInt = boost::multiprecision::cpp_int;

/// Exact discriminant of a monic integer polynomial (coefficients low degree
/// first), via the Sylvester resultant of f and f'.
BigInt discriminant(const std::vector<long long>& monic_poly);

/// A list of monic squarefree integer polynomials encoding a 0-dimensional
/// fiber over Q componentwise. Squarefreeness is certified by a nonzero
/// discriminant; the bad primes are those dividing any member's discriminant.
class PolynomialFamily {
public:
  explicit PolynomialFamily(std::vector<std::vector<long long>> members);

  const std::vector<std::vector<long long>>& members() const { return members_; }
  const std::vector<BigInt>& discriminants() const { return discriminants_; }
  /// Sorted distinct primes dividing some member's discriminant.
  const std::vector<long long>& bad_primes() const { return bad_primes_; }
  /// Exact test via the discriminants; independent of the factored list.
  bool is_bad_prime(long long p) const;

private:
  std::vector<std::vector<long long>> members_;
  std::vector<BigInt> discriminants_;
  std::vector<long long> bad_primes_;
};

/// Whether some member has a root mod p, for p good. At a good prime every
/// mod-p root is simple and lifts to Z_p, and monicity makes a Q_p-root the
/// same as a Z_p-root, so this decides Q_p-solvability of the family.
bool has_qp_root(const PolynomialFamily& family, long long p);

/// Root existence in F_p by exhaustive residue scan (p <= scan limit) or by
/// deg gcd(X^p - X, f) >= 1 via repeated squaring; both are exposed so the
/// two paths can be checked against each other.
bool has_root_mod_p(const std::vector<long long>& poly, long long p);
bool has_root_mod_p_scan(const std::vector<long long>& poly, long long p);
bool has_root_mod_p_gcd(const std::vector<long long>& poly, long long p);

/// Primes in [lower, upper], ascending.
std::vector<long long> sieve_primes(long long lower, long long upper);

struct DensityEstimate {
  long long lower = 0;
  long long upper = 0;
  long long good_primes = 0;
  long long successes = 0;
  Rational ratio;                    // successes / good_primes
  std::vector<long long> excluded;   // bad primes met in the range
};

/// Counts good primes in the range with a Q_p-root. Splitting the range over
/// several workers merges counts by addition and matches the single-worker
/// result exactly.
DensityEstimate empirical_density(const PolynomialFamily& family, long long lower,
                                  long long upper, int workers = 1);

struct ComparisonReport {
  DensityEstimate estimate;
  Rational predicted;
  Rational deviation;  // |ratio - predicted|, exact
  Rational tolerance;
  bool pass = false;
};

ComparisonReport compare_with_prediction(const PolynomialFamily& family,
                                         const Rational& predicted, long long lower,
                                         long long upper, const Rational& tolerance,
                                         int workers = 1);

} // namespace arsurj

#endif
