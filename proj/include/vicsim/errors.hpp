#pragma once

#include <stdexcept>
#include <string>

namespace vicsim {

// Bad scenario input (unknown keys, out-of-range values, dt misalignment). CLI exit 2.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Gain synthesis failure (Riccati residual, non-Hurwitz explicit gains). CLI exit 3.
struct SynthesisError : std::runtime_error {
  explicit SynthesisError(const std::string& msg) : std::runtime_error(msg) {}
};

// Runtime integration fault (non-finite state, nonpositive rotor speed). CLI exit 4.
struct SimulationFault : std::runtime_error {
  explicit SimulationFault(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace vicsim
