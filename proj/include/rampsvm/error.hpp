#pragma once

#include <stdexcept>
#include <string>

namespace rampsvm {

/// Malformed or out-of-contract input: bad dimensions, non-finite values,
/// invalid labels, unparsable files.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical routine could not produce a result (non-SPD matrix,
/// missing generalized inverse, diverging iterates).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rampsvm
