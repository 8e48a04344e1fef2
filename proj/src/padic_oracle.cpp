#include "arsurj/padic_oracle.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>
#include <thread>

#include "arsurj/error.hpp"

namespace arsurj {

namespace {

constexpr long long kScanLimit = 10000;
constexpr long long kSieveLimit = 100000000;

int degree_of(const std::vector<long long>& poly) {
  int d = static_cast<int>(poly.size()) - 1;
  while (d > 0 && poly[d] == 0) --d;
  return d;
}

void require_monic(const std::vector<long long>& poly) {
  int d = degree_of(poly);
  if (d < 1) throw Error("oracle: polynomial must have degree at least 1");
  if (poly[d] != 1) throw Error("oracle: polynomial must be monic");
}

BigInt sylvester_resultant(const std::vector<BigInt>& f, const std::vector<BigInt>& g) {
  int m = static_cast<int>(f.size()) - 1;
  int n = static_cast<int>(g.size()) - 1;
  int size = m + n;
  if (size == 0) return 1;
  std::vector<std::vector<BigInt>> a(size, std::vector<BigInt>(size, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= m; ++j) a[i][i + j] = f[m - j];
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= n; ++j) a[n + i][i + j] = g[n - j];
  // Bareiss fraction-free elimination
  BigInt prev = 1;
  int sign = 1;
  for (int k = 0; k + 1 < size; ++k) {
    if (a[k][k] == 0) {
      int s = k + 1;
      while (s < size && a[s][k] == 0) ++s;
      if (s == size) return 0;
      std::swap(a[k], a[s]);
      sign = -sign;
    }
    for (int i = k + 1; i < size; ++i)
      for (int j = k + 1; j < size; ++j)
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sign * a[size - 1][size - 1];
}

// ---- 64-bit primality and factorization (for the bad-prime list) ----

using u64 = unsigned long long;
using u128 = unsigned __int128;

u64 mulmod_u64(u64 a, u64 b, u64 m) { return static_cast<u64>(u128(a) * b % m); }

u64 powmod_u64(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod_u64(r, a, m);
    a = mulmod_u64(a, a, m);
    e >>= 1;
  }
  return r;
}

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) { d >>= 1; ++s; }
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    u64 x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) { composite = false; break; }
    }
    if (composite) return false;
  }
  return true;
}

u64 pollard_rho(u64 n) {
  if (n % 2 == 0) return 2;
  for (u64 c = 1;; ++c) {
    auto step = [&](u64 x) { return (mulmod_u64(x, x, n) + c) % n; };
    u64 x = 2, y = 2, d = 1;
    while (d == 1) {
      x = step(x);
      y = step(step(y));
      u64 diff = x > y ? x - y : y - x;
      d = std::gcd(diff, n);
    }
    if (d != n) return d;
  }
}

void factor_u64(u64 n, std::set<long long>& out) {
  if (n < 2) return;
  if (is_prime_u64(n)) {
    out.insert(static_cast<long long>(n));
    return;
  }
  u64 d = pollard_rho(n);
  factor_u64(d, out);
  factor_u64(n / d, out);
}

void prime_factors_of(const BigInt& value, std::set<long long>& out) {
  BigInt n = value < 0 ? BigInt(-value) : value;
  if (n <= 1) return;
  for (long long p = 2; p < 1000 && n > 1; p == 2 ? p = 3 : p += 2) {
    while (n % p == 0) {
      out.insert(p);
      n /= p;
    }
  }
  if (n == 1) return;
  if (n > BigInt(std::numeric_limits<unsigned long long>::max()))
    throw Error("oracle: discriminant cofactor too large to factor");
  factor_u64(n.convert_to<u64>(), out);
}

// ---- polynomial arithmetic over F_p ----

using ModPoly = std::vector<long long>;  // low degree first, entries in [0, p)

ModPoly reduce_mod(const std::vector<long long>& poly, long long p) {
  ModPoly out(poly.size());
  for (std::size_t i = 0; i < poly.size(); ++i) {
    long long v = poly[i] % p;
    out[i] = v < 0 ? v + p : v;
  }
  while (out.size() > 1 && out.back() == 0) out.pop_back();
  return out;
}

long long eval_mod(const ModPoly& f, long long x, long long p) {
  long long r = 0;
  for (std::size_t i = f.size(); i-- > 0;) r = (r * x + f[i]) % p;
  return r;
}

long long inv_mod(long long a, long long p) {
  return static_cast<long long>(powmod_u64(static_cast<u64>(a), static_cast<u64>(p - 2),
                                           static_cast<u64>(p)));
}

// product of a and b reduced modulo the monic polynomial f
ModPoly mulmod_poly(const ModPoly& a, const ModPoly& b, const ModPoly& f, long long p) {
  std::size_t n = f.size() - 1;
  std::vector<long long> prod(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
  }
  for (std::size_t i = prod.size(); i-- > n;) {
    long long c = prod[i];
    if (c == 0) continue;
    prod[i] = 0;
    for (std::size_t j = 0; j < n; ++j)
      prod[i - n + j] = ((prod[i - n + j] - c * f[j]) % p + p) % p;
  }
  prod.resize(std::max<std::size_t>(n, 1));
  return prod;
}

int poly_deg(const ModPoly& f) {
  for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i)
    if (f[i] != 0) return i;
  return -1;
}

ModPoly poly_mod(ModPoly a, const ModPoly& b, long long p) {
  int db = poly_deg(b);
  long long lead_inv = inv_mod(b[db], p);
  for (int i = poly_deg(a); i >= db; --i) {
    long long c = a[i] % p;
    if (c == 0) continue;
    long long q = c * lead_inv % p;
    for (int j = 0; j <= db; ++j)
      a[i - db + j] = ((a[i - db + j] - q * b[j]) % p + p) % p;
  }
  a.resize(std::max(db, 1));
  return a;
}

} // namespace

BigInt discriminant(const std::vector<long long>& monic_poly) {
  require_monic(monic_poly);
  int d = degree_of(monic_poly);
  std::vector<BigInt> f(monic_poly.begin(), monic_poly.begin() + d + 1);
  if (d == 1) return 1;
  std::vector<BigInt> df(d);
  for (int i = 1; i <= d; ++i) df[i - 1] = BigInt(i) * f[i];
  BigInt res = sylvester_resultant(f, df);
  // disc = (-1)^{d(d-1)/2} * Res(f, f') for monic f
  return (d * (d - 1) / 2) % 2 == 0 ? res : -res;
}

PolynomialFamily::PolynomialFamily(std::vector<std::vector<long long>> members)
    : members_(std::move(members)) {
  if (members_.empty()) throw Error("oracle: family must have at least one member");
  std::set<long long> bad;
  for (const auto& poly : members_) {
    require_monic(poly);
    BigInt disc = discriminant(poly);
    if (disc == 0)
      throw Error("oracle: member is not squarefree (zero discriminant)");
    prime_factors_of(disc, bad);
    discriminants_.push_back(std::move(disc));
  }
  bad_primes_.assign(bad.begin(), bad.end());
}

bool PolynomialFamily::is_bad_prime(long long p) const {
  for (const auto& disc : discriminants_)
    if (disc % p == 0) return true;
  return false;
}

bool has_root_mod_p_scan(const std::vector<long long>& poly, long long p) {
  ModPoly f = reduce_mod(poly, p);
  for (long long x = 0; x < p; ++x)
    if (eval_mod(f, x, p) == 0) return true;
  return false;
}

bool has_root_mod_p_gcd(const std::vector<long long>& poly, long long p) {
  ModPoly f = reduce_mod(poly, p);
  int d = poly_deg(f);
  if (d <= 0) return false;
  if (static_cast<long long>(d) >= p) return has_root_mod_p_scan(poly, p);
  // X^p mod f by repeated squaring
  ModPoly x_pow{0, 1};
  if (d == 1) return true;  // monic linear always has a root
  x_pow.resize(d, 0);
  ModPoly acc(d, 0);
  acc[0] = 1;
  long long e = p;
  while (e) {
    if (e & 1) acc = mulmod_poly(acc, x_pow, f, p);
    x_pow = mulmod_poly(x_pow, x_pow, f, p);
    e >>= 1;
  }
  // gcd(f, X^p - X)
  ModPoly g = acc;
  g.resize(std::max<std::size_t>(g.size(), 2), 0);
  g[1] = ((g[1] - 1) % p + p) % p;
  ModPoly a = f, b = g;
  while (poly_deg(b) >= 0) {
    ModPoly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return poly_deg(a) >= 1;
}

bool has_root_mod_p(const std::vector<long long>& poly, long long p) {
  return p <= kScanLimit ? has_root_mod_p_scan(poly, p) : has_root_mod_p_gcd(poly, p);
}

bool has_qp_root(const PolynomialFamily& family, long long p) {
  if (family.is_bad_prime(p))
    throw Error("oracle: prime " + std::to_string(p) +
                " divides a member discriminant; exclude it");
  for (const auto& poly : family.members())
    if (has_root_mod_p(poly, p)) return true;
  return false;
}

std::vector<long long> sieve_primes(long long lower, long long upper) {
  if (upper < lower || upper < 2) return {};
  if (upper > kSieveLimit) throw Error("oracle: sieve bound too large");
  std::vector<bool> composite(static_cast<std::size_t>(upper) + 1, false);
  std::vector<long long> primes;
  for (long long p = 2; p <= upper; ++p) {
    if (composite[static_cast<std::size_t>(p)]) continue;
    if (p >= lower) primes.push_back(p);
    for (long long q = p * p; q <= upper; q += p) composite[static_cast<std::size_t>(q)] = true;
  }
  return primes;
}

DensityEstimate empirical_density(const PolynomialFamily& family, long long lower,
                                  long long upper, int workers) {
  if (lower < 2 || upper < lower)
    throw Error("oracle: need 2 <= lower <= upper");
  if (workers < 1) workers = 1;
  std::vector<long long> primes = sieve_primes(lower, upper);

  struct Chunk {
    long long good = 0;
    long long successes = 0;
    std::vector<long long> excluded;
  };
  std::vector<Chunk> chunks(static_cast<std::size_t>(workers));
  auto work = [&](std::size_t w) {
    std::size_t begin = primes.size() * w / workers;
    std::size_t end = primes.size() * (w + 1) / workers;
    Chunk& chunk = chunks[w];
    for (std::size_t i = begin; i < end; ++i) {
      long long p = primes[i];
      if (family.is_bad_prime(p)) {
        chunk.excluded.push_back(p);
        continue;
      }
      ++chunk.good;
      if (has_qp_root(family, p)) ++chunk.successes;
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < chunks.size(); ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }

  DensityEstimate est;
  est.lower = lower;
  est.upper = upper;
  for (const auto& chunk : chunks) {
    est.good_primes += chunk.good;
    est.successes += chunk.successes;
    est.excluded.insert(est.excluded.end(), chunk.excluded.begin(), chunk.excluded.end());
  }
  est.ratio = est.good_primes == 0 ? Rational(0) : Rational(est.successes, est.good_primes);
  return est;
}

ComparisonReport compare_with_prediction(const PolynomialFamily& family,
                                         const Rational& predicted, long long lower,
                                         long long upper, const Rational& tolerance,
                                         int workers) {
  if (tolerance <= Rational(0)) throw Error("oracle: tolerance must be positive");
  ComparisonReport report;
  report.estimate = empirical_density(family, lower, upper, workers);
  report.predicted = predicted;
  report.deviation = (report.estimate.ratio - predicted).abs();
  report.tolerance = tolerance;
  report.pass = report.deviation <= tolerance;
  return report;
}

} // namespace arsurj
