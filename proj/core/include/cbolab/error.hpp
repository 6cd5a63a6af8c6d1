#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace cbolab {

// Invalid configuration or parameters (including refused time steps).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Inputs outside an operation's domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A particle left the finite reals. Carries the first offending index and step.
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(std::size_t particle, std::uint64_t step)
      : std::runtime_error("particle " + std::to_string(particle) +
                           " diverged at step " + std::to_string(step)),
        particle_(particle),
        step_(step) {}

  std::size_t particle() const noexcept { return particle_; }
  std::uint64_t step() const noexcept { return step_; }

 private:
  std::size_t particle_;
  std::uint64_t step_;
};

// The density is too far from nonnegative for a meaningful consensus point.
class NumericalBreakdown : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Projection onto the sphere (or radial projection) hit the zero vector.
class DegenerateProjection : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cbolab
