#pragma once

#include <stdexcept>
#include <string>

namespace qkd {

/// A state handed to bell_diagonal_of carries coherences between Bell states.
class NotBellDiagonalError : public std::runtime_error {
 public:
  explicit NotBellDiagonalError(const std::string& what) : std::runtime_error(what) {}
};

/// Purification input sits at or below the recurrence fixed-point threshold.
class NonDistillableError : public std::runtime_error {
 public:
  explicit NonDistillableError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qkd
