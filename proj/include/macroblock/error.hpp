#pragma once

#include <stdexcept>
#include <string>

namespace macroblock {

// Raised on violated preconditions and invalid input anywhere in the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Configuration problems; the message names the offending line or flag.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace macroblock
