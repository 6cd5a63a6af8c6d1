#include "cbolab/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "cbolab/error.hpp"
#include "cbolab/parallel.hpp"

namespace cbolab {

double w2_to_dirac(const Positions& positions, std::span<const double> v_star) {
  if (positions.empty()) throw DomainError("w2_to_dirac: empty ensemble");
  double sum = 0.0;
  for (std::size_t i = 0; i < positions.size(); ++i) sum += squared_distance(positions[i], v_star);
  return sum / static_cast<double>(positions.size());
}

void DecaySeries::push(double t, double value) {
  if (!times.empty() && !(t > times.back())) throw DomainError(label + ": times must increase");
  if (!std::isfinite(value)) throw DomainError(label + ": non-finite value");
  times.push_back(t);
  values.push_back(value);
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n) throw DomainError("fit_line needs at least two (x, y) pairs");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw DomainError("fit_line: x values are all equal");
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - (fit.intercept + fit.slope * x[i]);
    ss_res += r * r;
  }
  fit.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  return fit;
}

RateFit fit_exponential_rate(const DecaySeries& series, double t0, double t1) {
  std::vector<double> x, y;
  for (std::size_t i = 0; i < series.times.size(); ++i) {
    const double t = series.times[i];
    if (t < t0 || t > t1) continue;
    const double v = series.values[i];
    if (!(v > 0.0)) throw DomainError(series.label + ": nonpositive value in the fit window");
    x.push_back(t);
    y.push_back(std::log(v));
  }
  if (x.size() < 4) throw DomainError(series.label + ": fewer than 4 samples in the fit window");
  const LineFit line = fit_line(x, y);
  return {-line.slope, line.intercept, line.r_squared, x.size()};
}

ValphaRates valpha_rate_check(std::span<const double> times, std::span<const Vec> points) {
  if (times.size() < 3 || points.size() != times.size())
    throw DomainError("valpha_rate_check needs at least 3 matching samples");
  ValphaRates out;
  for (std::size_t i = 1; i < times.size(); ++i) {
    const double dt = times[i] - times[i - 1];
    if (!(dt > 0.0)) throw DomainError("valpha_rate_check: times must increase");
    const double jump = std::sqrt(squared_distance(points[i], points[i - 1]));
    out.speed = std::max(out.speed, jump / dt);
    out.holder = std::max(out.holder, jump / std::sqrt(dt));
  }
  return out;
}

SuccessReport success_probability(const SuccessSpec& spec, std::size_t runs, double epsilon,
                                  int workers) {
  if (runs < 1) throw ConfigError("diagnostics.runs must be >= 1");
  if (!spec.objective.known_minimizer) throw ConfigError("success_probability needs a known minimizer");
  const Vec& v_star = *spec.objective.known_minimizer;
  const auto dim = static_cast<std::size_t>(spec.objective.dim);

  SuccessReport report;
  report.runs = runs;
  report.epsilon = epsilon;
  report.final_error.assign(runs, std::numeric_limits<double>::infinity());
  std::vector<char> diverged(runs, 0);

  // runs are independent; each writes only its own slot
  parallel_for(runs, workers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t r = begin; r < end; ++r) {
      const std::uint64_t seed = spec.base_seed + r;
      ParticleEnsemble ens{spec.initial.sample(spec.particles, dim, seed), spec.params, seed, 0};
      try {
        for (std::uint64_t k = 0; k < spec.steps; ++k) cbo_step(ens, spec.objective, 1);
      } catch (const DivergenceError&) {
        diverged[r] = 1;
        continue;
      } catch (const DomainError&) {
        diverged[r] = 1;
        continue;
      }
      Vec mean(dim, 0.0);
      for (std::size_t i = 0; i < ens.positions.size(); ++i)
        for (std::size_t j = 0; j < dim; ++j) mean[j] += ens.positions[i][j];
      for (double& m : mean) m /= static_cast<double>(ens.positions.size());
      report.final_error[r] = std::sqrt(squared_distance(mean, v_star));
    }
  });

  for (std::size_t r = 0; r < runs; ++r) {
    report.diverged.push_back(diverged[r] != 0);
    if (!diverged[r] && report.final_error[r] <= epsilon) ++report.hits;
  }
  report.fraction = static_cast<double>(report.hits) / static_cast<double>(runs);
  return report;
}

ScalingFit mfa_scaling_fit(std::span<const CouplingRow> rows) {
  std::vector<double> x, y;
  std::set<std::size_t> distinct;
  for (const auto& row : rows) {
    if (!(row.error > 0.0) || row.size == 0) continue;
    x.push_back(std::log(static_cast<double>(row.size)));
    y.push_back(std::log(row.error));
    distinct.insert(row.size);
  }
  if (distinct.size() < 3) throw DomainError("mfa_scaling_fit needs at least 3 distinct N with nonzero error");
  const LineFit line = fit_line(x, y);
  return {line.slope, line.intercept, x.size()};
}

}  // namespace cbolab
