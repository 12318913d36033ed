#pragma once

#include <stdexcept>
#include <string>

namespace entspec {

// Invalid input: bad sizes, masks, indices, mismatched qubit counts.
class ArgumentError : public std::invalid_argument {
 public:
  explicit ArgumentError(const std::string& what) : std::invalid_argument(what) {}
};

// A numerical routine failed to converge or produced an unusable result.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace entspec
