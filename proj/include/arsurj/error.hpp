#ifndef ARSURJ_ERROR_HPP
#define ARSURJ_ERROR_HPP

#include <stdexcept>
#include <string>

namespace arsurj {

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when enumerating a group whose projected order exceeds the cap.
struct GroupTooLargeError : Error {
  explicit GroupTooLargeError(const std::string& what) : Error(what) {}
};

} // namespace arsurj

#endif
