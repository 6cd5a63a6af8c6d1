#pragma once

#include <array>
#include <cstdint>
#include <span>

namespace cbolab {

// Philox4x32-10 block cipher (Salmon et al.), exposed for known-answer tests.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key) noexcept;

// Which consumer a draw belongs to. Initial positions and the dynamics never
// share draws even for the same (particle, step).
enum class StreamTag : std::uint32_t { dynamics = 0, initial = 1 };

// Counter-based standard Gaussian source. A draw is a pure function of
// (seed, tag, particle, step, component), so any two systems that agree on
// those indices see the same noise, whatever order they are evaluated in.
class NoiseStream {
 public:
  explicit NoiseStream(std::uint64_t seed = 0, StreamTag tag = StreamTag::dynamics) noexcept;

  std::uint64_t seed() const noexcept { return seed_; }
  StreamTag tag() const noexcept { return tag_; }

  // Fills out[j] with component j of the Gaussian vector for (particle, step).
  void gaussian(std::uint64_t particle, std::uint64_t step, std::span<double> out) const noexcept;

  // Uniform doubles in (0, 1), same addressing.
  void uniform(std::uint64_t particle, std::uint64_t step, std::span<double> out) const noexcept;

 private:
  std::uint64_t seed_;
  StreamTag tag_;
  std::array<std::uint32_t, 2> key_;
};

}  // namespace cbolab
