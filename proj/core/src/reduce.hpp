#pragma once

#include <cstddef>
#include <span>

namespace cbolab::detail {

// Sum with a fixed pairwise tree: the split points depend only on the length,
// so the rounding is reproducible.
inline double pairwise_sum(std::span<const double> x) {
  constexpr std::size_t leaf = 64;
  if (x.size() <= leaf) {
    double s = 0.0;
    for (double v : x) s += v;
    return s;
  }
  const std::size_t half = x.size() / 2;
  return pairwise_sum(x.first(half)) + pairwise_sum(x.subspan(half));
}

}  // namespace cbolab::detail
