#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace cbolab {

using Vec = std::vector<double>;

// N points in R^d, stored row-major.
class Positions {
 public:
  Positions() = default;
  Positions(std::size_t count, std::size_t dim, double fill = 0.0)
      : count_(count), dim_(dim), data_(count * dim, fill) {}

  std::size_t size() const noexcept { return count_; }
  std::size_t dim() const noexcept { return dim_; }
  bool empty() const noexcept { return count_ == 0; }

  std::span<double> operator[](std::size_t i) noexcept {
    return {data_.data() + i * dim_, dim_};
  }
  std::span<const double> operator[](std::size_t i) const noexcept {
    return {data_.data() + i * dim_, dim_};
  }

  std::span<double> data() noexcept { return data_; }
  std::span<const double> data() const noexcept { return data_; }

  friend bool operator==(const Positions&, const Positions&) = default;

 private:
  std::size_t count_ = 0;
  std::size_t dim_ = 0;
  std::vector<double> data_;
};

inline double squared_norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return s;
}

inline double squared_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    const double d = a[j] - b[j];
    s += d * d;
  }
  return s;
}

}  // namespace cbolab
