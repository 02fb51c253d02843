#pragma once

#include <stdexcept>
#include <string>

namespace rosenau {

/// Invalid parameters, malformed configuration, or violated preconditions.
/// CLI exit code 2.
class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Non-finite values produced by a solver run. CLI exit code 3.
class BlowUpError : public std::runtime_error {
public:
  BlowUpError(const std::string& what, double time)
      : std::runtime_error(what), time_(time) {}
  double time() const { return time_; }

private:
  double time_;
};

/// File and stream failures. CLI exit code 4.
class IoError : public std::runtime_error {
public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace rosenau
