#pragma once

#include <stdexcept>
#include <string>

namespace noisyemo {

/// Invalid user-facing configuration (bad flag value, unknown objective, empty grid).
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A precondition of a library call was violated by the caller.
class ContractViolation : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

/// Reading or writing an output file failed.
class IoError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace noisyemo
