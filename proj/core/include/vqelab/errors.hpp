#pragma once

#include <stdexcept>
#include <string>

namespace vqelab {

/// Invalid user-supplied configuration (bad ranges, mismatched dimensions, unknown keys).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Request exceeds a hard implementation budget (e.g. dense diagonalization size).
class CapabilityError : public std::runtime_error {
 public:
  explicit CapabilityError(const std::string& msg) : std::runtime_error(msg) {}
};

/// File could not be read or parsed into a valid object.
class LoadError : public std::runtime_error {
 public:
  explicit LoadError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace vqelab
