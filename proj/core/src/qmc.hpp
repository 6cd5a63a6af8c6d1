#pragma once

#include <cmath>
#include <cstdint>
#include <span>

#include <boost/random/sobol.hpp>

namespace cbolab::detail {

// Unit-cube points from an unscrambled Sobol sequence, starting at `start`.
class SobolPoints {
 public:
  SobolPoints(std::size_t dim, std::uint64_t start) : engine_(dim) {
    if (start > 0) engine_.seed(start);
  }

  void next(std::span<double> out) {
    for (double& u : out) u = std::ldexp(static_cast<double>(engine_()), -64);
  }

 private:
  boost::random::sobol engine_;
};

}  // namespace cbolab::detail
