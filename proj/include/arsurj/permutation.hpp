#ifndef ARSURJ_PERMUTATION_HPP
#define ARSURJ_PERMUTATION_HPP

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace arsurj {

/// A permutation of {0, ..., degree-1}, stored as its image sequence.
/// Composition is (a*b)(x) = a(b(x)). Ordering is lexicographic on the
/// image sequence; this is the canonical order used everywhere downstream.
class Permutation {
public:
  explicit Permutation(std::vector<std::uint32_t> images);

  static Permutation identity(std::uint32_t degree);

  std::uint32_t degree() const { return static_cast<std::uint32_t>(images_.size()); }
  std::uint32_t operator[](std::uint32_t i) const { return images_[i]; }
  const std::vector<std::uint32_t>& images() const { return images_; }

  Permutation operator*(const Permutation& rhs) const;
  Permutation inverse() const;

  bool is_identity() const;
  bool fixes(std::uint32_t i) const { return images_[i] == i; }
  bool has_fixed_index() const;

  /// Cycle notation for diagnostics, e.g. "(0 1)(2 3)"; identity is "()".
  std::string cycle_string() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation& a, const Permutation& b) {
    return a.images_ <=> b.images_;
  }

private:
  std::vector<std::uint32_t> images_;
};

} // namespace arsurj

#endif
