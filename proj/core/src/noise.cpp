#include "cbolab/noise.hpp"

#include <cmath>
#include <numbers>

namespace cbolab {
namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// 53-bit uniform strictly inside (0, 1).
double to_unit(std::uint32_t hi, std::uint32_t lo) noexcept {
  const std::uint64_t bits = ((static_cast<std::uint64_t>(hi) << 32) | lo) >> 11;
  return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> c,
                                        std::array<std::uint32_t, 2> k) noexcept {
  for (int round = 0; round < 10; ++round) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * c[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * c[2];
    const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const auto lo0 = static_cast<std::uint32_t>(p0);
    const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const auto lo1 = static_cast<std::uint32_t>(p1);
    c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
    k[0] += kWeyl0;
    k[1] += kWeyl1;
  }
  return c;
}

NoiseStream::NoiseStream(std::uint64_t seed, StreamTag tag) noexcept : seed_(seed), tag_(tag) {
  const std::uint64_t mixed =
      splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(tag) + 0x632BE59BD9B4E019ull));
  key_ = {static_cast<std::uint32_t>(mixed), static_cast<std::uint32_t>(mixed >> 32)};
}

void NoiseStream::uniform(std::uint64_t particle, std::uint64_t step,
                          std::span<double> out) const noexcept {
  const auto p = static_cast<std::uint32_t>(particle);
  const auto s_lo = static_cast<std::uint32_t>(step);
  const auto s_hi = static_cast<std::uint32_t>(step >> 32) ^ static_cast<std::uint32_t>(particle >> 32);
  for (std::size_t j = 0; j < out.size(); j += 2) {
    const auto block = static_cast<std::uint32_t>(j / 2);
    const auto r = philox4x32({block, p, s_lo, s_hi}, key_);
    out[j] = to_unit(r[0], r[1]);
    if (j + 1 < out.size()) out[j + 1] = to_unit(r[2], r[3]);
  }
}

void NoiseStream::gaussian(std::uint64_t particle, std::uint64_t step,
                           std::span<double> out) const noexcept {
  const auto p = static_cast<std::uint32_t>(particle);
  const auto s_lo = static_cast<std::uint32_t>(step);
  const auto s_hi = static_cast<std::uint32_t>(step >> 32) ^ static_cast<std::uint32_t>(particle >> 32);
  for (std::size_t j = 0; j < out.size(); j += 2) {
    const auto block = static_cast<std::uint32_t>(j / 2);
    const auto r = philox4x32({block, p, s_lo, s_hi}, key_);
    const double radius = std::sqrt(-2.0 * std::log(to_unit(r[0], r[1])));
    const double angle = 2.0 * std::numbers::pi * to_unit(r[2], r[3]);
    out[j] = radius * std::cos(angle);
    if (j + 1 < out.size()) out[j + 1] = radius * std::sin(angle);
  }
}

}  // namespace cbolab
