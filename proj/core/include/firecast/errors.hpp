#pragma once

#include <stdexcept>
#include <string>

namespace firecast {

// Error taxonomy mirrored by the CLI exit codes: config=2, data=3, numerical=4.

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace firecast
