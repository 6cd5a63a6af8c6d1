#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cbolab/objectives.hpp"
#include "cbolab/particle.hpp"
#include "cbolab/points.hpp"

namespace cbolab {

// Mean squared distance to v_star: W2^2 between the empirical measure and a
// Dirac at v_star.
double w2_to_dirac(const Positions& positions, std::span<const double> v_star);

struct DecaySeries {
  std::string label;
  std::vector<double> times;
  std::vector<double> values;

  void push(double t, double value);  // DomainError unless t increases and value is finite
};

struct RateFit {
  double rate = 0.0;  // minus the slope of log(value) against t
  double intercept = 0.0;
  double r_squared = 0.0;
  std::size_t samples = 0;
};

// Least squares over samples with t0 <= t <= t1. DomainError if fewer than
// 4 samples fall in the window or any of them is <= 0.
RateFit fit_exponential_rate(const DecaySeries& series, double t0, double t1);

struct ValphaRates {
  double speed = 0.0;   // max |dv| / dt
  double holder = 0.0;  // max |dv| / sqrt(dt)
};

// DomainError with fewer than 3 samples or non-increasing times.
ValphaRates valpha_rate_check(std::span<const double> times, std::span<const Vec> points);

struct SuccessSpec {
  Objective objective;
  CboParams params;
  std::size_t particles = 100;
  std::uint64_t steps = 100;
  InitialDistribution initial;
  std::uint64_t base_seed = 0;  // run r uses seed base_seed + r
};

struct SuccessReport {
  std::size_t runs = 0;
  double epsilon = 0.0;
  std::size_t hits = 0;
  double fraction = 0.0;
  std::vector<double> final_error;  // |mean - v*| per run, +inf if diverged
  std::vector<bool> diverged;
};

// Independent runs with distinct seeds; the reported fraction has
// |mean of final positions - v*| <= epsilon. Needs a known minimizer.
SuccessReport success_probability(const SuccessSpec& spec, std::size_t runs, double epsilon,
                                  int workers = 1);

struct ScalingFit {
  double slope = 0.0;
  double intercept = 0.0;
  std::size_t used = 0;
};

// Least squares of log(error) against log(N); rows with zero error are
// dropped, and fewer than 3 distinct remaining N is a DomainError.
ScalingFit mfa_scaling_fit(std::span<const CouplingRow> rows);

// Plain least squares y = a + b x, r^2 included; DomainError for < 2 points
// or constant x.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};
LineFit fit_line(std::span<const double> x, std::span<const double> y);

}  // namespace cbolab
