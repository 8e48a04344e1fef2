#ifndef ARSURJ_RATIONAL_HPP
#define ARSURJ_RATIONAL_HPP

#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>

#include "arsurj/error.hpp"

namespace arsurj {

/// Exact rational number on 64-bit components. All intermediate products go
/// through 128-bit arithmetic and overflow raises Error instead of wrapping.
class Rational {
public:
  constexpr Rational() = default;
  Rational(long long n) : num_(n), den_(1) {}
  Rational(long long n, long long d) {
    if (d == 0) throw Error("rational: zero denominator");
    assign(static_cast<__int128>(n), static_cast<__int128>(d));
  }

  long long num() const { return num_; }
  long long den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_one() const { return num_ == 1 && den_ == 1; }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return make(i128(a.num_) * b.den_ + i128(b.num_) * a.den_,
                i128(a.den_) * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return make(i128(a.num_) * b.den_ - i128(b.num_) * a.den_,
                i128(a.den_) * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return make(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw Error("rational: division by zero");
    return make(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
  }
  friend Rational operator-(const Rational& a) { return make(-i128(a.num_), a.den_); }

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    __int128 l = i128(a.num_) * b.den_;
    __int128 r = i128(b.num_) * a.den_;
    if (l < r) return std::strong_ordering::less;
    if (l > r) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  Rational abs() const { return num_ >= 0 ? *this : -*this; }

  double to_double() const { return double(num_) / double(den_); }

  /// Canonical "p/q" rendering, denominator always present ("3/4", "1/1").
  std::string to_string() const {
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  /// Accepts "p", "p/q" and plain decimals like "0.02".
  static Rational from_string(const std::string& s);

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.to_string();
  }

private:
  static __int128 i128(long long v) { return static_cast<__int128>(v); }

  static Rational make(__int128 n, __int128 d) {
    Rational r;
    r.assign(n, d);
    return r;
  }

  void assign(__int128 n, __int128 d) {
    if (d < 0) { n = -n; d = -d; }
    __int128 an = n < 0 ? -n : n;
    __int128 g = gcd128(an, d);
    if (g > 1) { n /= g; d /= g; }
    constexpr __int128 lo = static_cast<__int128>(INT64_MIN);
    constexpr __int128 hi = static_cast<__int128>(INT64_MAX);
    if (n < lo || n > hi || d > hi)
      throw Error("rational: 64-bit overflow after normalization");
    num_ = static_cast<long long>(n);
    den_ = static_cast<long long>(d);
  }

  static __int128 gcd128(__int128 a, __int128 b) {
    while (b != 0) { __int128 t = a % b; a = b; b = t; }
    return a == 0 ? 1 : a;
  }

  long long num_ = 0;
  long long den_ = 1;
};

inline Rational Rational::from_string(const std::string& s) {
  if (s.empty()) throw Error("rational: empty string");
  auto slash = s.find('/');
  try {
    if (slash != std::string::npos) {
      long long n = std::stoll(s.substr(0, slash));
      long long d = std::stoll(s.substr(slash + 1));
      return Rational(n, d);
    }
    auto dot = s.find('.');
    if (dot == std::string::npos) return Rational(std::stoll(s));
    std::string head = s.substr(0, dot), tail = s.substr(dot + 1);
    if (tail.size() > 18) throw Error("rational: too many decimal digits: " + s);
    long long den = 1;
    for (std::size_t i = 0; i < tail.size(); ++i) den *= 10;
    long long whole = head.empty() || head == "-" ? 0 : std::stoll(head);
    long long frac = tail.empty() ? 0 : std::stoll(tail);
    bool neg = !head.empty() && head[0] == '-';
    __int128 n = static_cast<__int128>(whole) * den + (neg ? -frac : frac);
    return Rational(static_cast<long long>(n), den);
  } catch (const std::invalid_argument&) {
    throw Error("rational: cannot parse \"" + s + "\"");
  } catch (const std::out_of_range&) {
    throw Error("rational: out of range \"" + s + "\"");
  }
}

} // namespace arsurj

#endif
