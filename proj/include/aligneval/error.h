#pragma once

#include <stdexcept>
#include <string>

namespace aligneval {

// Malformed input or a request that cannot be satisfied by the data.
// The CLI maps this to exit code 1.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A file could not be opened, read, or written. Exit code 2.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace aligneval
