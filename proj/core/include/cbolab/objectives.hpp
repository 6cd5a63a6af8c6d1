#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "cbolab/points.hpp"

namespace cbolab {

// An evaluatable cost f: R^d -> R. Immutable after construction, so a single
// instance may be evaluated from many threads at once.
struct Objective {
  using Eval = std::function<double(std::span<const double>)>;
  using Grad = std::function<void(std::span<const double>, std::span<double>)>;

  std::string name;
  int dim = 0;
  Eval eval;
  Grad grad;       // empty when no analytic gradient is available
  Eval laplacian;  // empty when no analytic Laplacian is available
  std::optional<Vec> known_minimizer;
  double lower_bound = 0.0;  // inf f

  double operator()(std::span<const double> v) const { return eval(v); }
  bool has_grad() const noexcept { return static_cast<bool>(grad); }
  bool has_laplacian() const noexcept { return static_cast<bool>(laplacian); }
};

// quadratic: |v|^2. rastrigin: 10 d + sum(v_j^2 - 10 cos(2 pi v_j)).
// ackley: the standard (a=20, b=0.2, c=2 pi) form. All have their minimum 0
// at the origin. Throws ConfigError for an unknown name or dim < 1.
Objective builtin_objective(std::string_view name, int dim);

// Bounds checked by check_growth_conditions:
//   |f(v)-f(u)| <= L_f (|v|+|u|) |v-u|
//   f(v) - inf f <= c_u (1 + |v|^2)
//   f(v) - inf f >= c_l |v|^2           for |v| >= M
//   |grad f| <= poly_C (1 + |v|^q),  |lap f| <= poly_C (1 + |v|^p)
struct GrowthConstants {
  double lipschitz = 1.0;
  double upper = 1.0;
  double lower = 1.0;
  double radius_M = 0.0;
  double p = 2.0;
  double q = 1.0;
  std::optional<double> poly_constant;
};

// Sample pairs (v, u) drawn from an unscrambled Sobol sequence in the box
// [lo, hi]^d. The seed selects the starting index, so equal seeds give equal
// samples.
struct GrowthSampler {
  double lo = -1.0;
  double hi = 1.0;
  std::size_t pairs = 1000;
  std::uint64_t seed = 0;
};

struct GrowthReport {
  double lipschitz_ratio_max = 0.0;
  double upper_quadratic_ratio_max = 0.0;
  double lower_quadratic_ratio_min = 0.0;  // +inf when no sample has |v| >= M
  std::optional<double> grad_ratio_max;
  std::optional<double> laplacian_ratio_max;
  std::size_t sample_count = 0;
  std::size_t skipped_pairs = 0;

  bool lipschitz_ok = false;
  bool upper_ok = false;
  bool lower_ok = false;
  std::optional<bool> grad_ok;
  std::optional<bool> laplacian_ok;

  bool all_satisfied() const;
};

GrowthReport check_growth_conditions(const Objective& obj, const GrowthSampler& sampler,
                                     const GrowthConstants& constants);

// Constants that make every sampled inequality hold, inflated by `margin`.
GrowthConstants fit_growth_constants(const GrowthReport& report, double radius_M,
                                     double margin = 1.05);

}  // namespace cbolab
