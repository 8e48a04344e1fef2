#include "arsurj/permutation.hpp"

#include <algorithm>

#include "arsurj/error.hpp"

namespace arsurj {

Permutation::Permutation(std::vector<std::uint32_t> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (std::uint32_t v : images_) {
    if (v >= images_.size() || seen[v])
      throw Error("permutation: image sequence is not a bijection");
    seen[v] = true;
  }
}

Permutation Permutation::identity(std::uint32_t degree) {
  std::vector<std::uint32_t> im(degree);
  for (std::uint32_t i = 0; i < degree; ++i) im[i] = i;
  return Permutation(std::move(im));
}

Permutation Permutation::operator*(const Permutation& rhs) const {
  if (degree() != rhs.degree())
    throw Error("permutation: degree mismatch in composition");
  std::vector<std::uint32_t> im(degree());
  for (std::uint32_t i = 0; i < degree(); ++i) im[i] = images_[rhs.images_[i]];
  return Permutation(std::move(im));
}

Permutation Permutation::inverse() const {
  std::vector<std::uint32_t> im(degree());
  for (std::uint32_t i = 0; i < degree(); ++i) im[images_[i]] = i;
  return Permutation(std::move(im));
}

bool Permutation::is_identity() const {
  for (std::uint32_t i = 0; i < degree(); ++i)
    if (images_[i] != i) return false;
  return true;
}

bool Permutation::has_fixed_index() const {
  for (std::uint32_t i = 0; i < degree(); ++i)
    if (images_[i] == i) return true;
  return false;
}

std::string Permutation::cycle_string() const {
  std::vector<bool> done(degree(), false);
  std::string out;
  for (std::uint32_t i = 0; i < degree(); ++i) {
    if (done[i] || images_[i] == i) continue;
    out += "(";
    std::uint32_t j = i;
    bool first = true;
    do {
      if (!first) out += " ";
      out += std::to_string(j);
      done[j] = true;
      j = images_[j];
      first = false;
    } while (j != i);
    out += ")";
  }
  return out.empty() ? "()" : out;
}

} // namespace arsurj
