#pragma once

#include <stdexcept>
#include <string>

namespace bounce {

// Bad or out-of-range run configuration (CLI exit code 2).
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// A numerical guard tripped: norm canary, finite-difference instability,
// momentum grid too coarse for the requested propagation (CLI exit code 3).
struct NumericsError : std::runtime_error {
  explicit NumericsError(const std::string& msg) : std::runtime_error(msg) {}
};

// Semiclassical model evaluated outside its validity domain (CLI exit code 4).
struct ModelError : std::runtime_error {
  explicit ModelError(const std::string& msg) : std::runtime_error(msg) {}
};

// API misuse: wrong amplitude tag, non-power-of-two grid, and the like.
struct UsageError : std::logic_error {
  explicit UsageError(const std::string& msg) : std::logic_error(msg) {}
};

}  // namespace bounce
