#include "cbolab/consensus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "cbolab/error.hpp"
#include "reduce.hpp"

namespace cbolab {

ConsensusResult consensus_point(const Positions& positions, std::span<const double> values,
                                double alpha) {
  const std::size_t n = positions.size();
  const std::size_t d = positions.dim();
  if (n == 0) throw DomainError("consensus_point: empty ensemble");
  if (values.size() != n) throw DomainError("consensus_point: values/positions size mismatch");
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw DomainError("consensus_point: alpha must be finite and >= 0");

  double fmin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(values[i]))
      throw DomainError("consensus_point: non-finite objective value at particle " + std::to_string(i));
    fmin = std::min(fmin, values[i]);
  }
  for (double x : positions.data())
    if (!std::isfinite(x)) throw DomainError("consensus_point: non-finite position");

  std::vector<double> w(n), w2(n), wv(n);
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = std::exp(-alpha * (values[i] - fmin));
    w2[i] = w[i] * w[i];
  }
  const double total = detail::pairwise_sum(w);

  ConsensusResult out;
  out.point.resize(d);
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t i = 0; i < n; ++i) wv[i] = w[i] * positions[i][j];
    out.point[j] = detail::pairwise_sum(wv) / total;
  }
  out.log_normalizer = -alpha * fmin + std::log(total / static_cast<double>(n));
  out.effective_sample_fraction = total * total / (static_cast<double>(n) * detail::pairwise_sum(w2));
  return out;
}

ConsensusResult consensus_point(const Positions& positions, const Objective& obj, double alpha) {
  std::vector<double> values(positions.size());
  for (std::size_t i = 0; i < positions.size(); ++i) values[i] = obj(positions[i]);
  return consensus_point(positions, values, alpha);
}

DensityConsensus consensus_point_grid(const GridSpec& grid, std::span<const double> density,
                                      std::span<const double> objective_values, double alpha) {
  const std::size_t n = grid.grid_size();
  if (density.size() != n || objective_values.size() != n)
    throw DomainError("consensus_point_grid: size mismatch with grid");
  double fmin = std::numeric_limits<double>::infinity();
  double positive = 0.0;
  double negative = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (density[i] > 0.0) {
      fmin = std::min(fmin, objective_values[i]);
      positive += density[i];
    } else {
      negative -= density[i];
    }
  }
  if (!(positive > 0.0)) throw NumericalBreakdown("consensus_point_grid: no positive density");
  if (negative > 0.5 * positive)
    throw NumericalBreakdown("consensus_point_grid: negative mass exceeds half the positive mass");

  const auto d = static_cast<std::size_t>(grid.dim);
  std::vector<double> w(n, 0.0), wv(n);
  for (std::size_t i = 0; i < n; ++i)
    if (density[i] > 0.0) w[i] = density[i] * std::exp(-alpha * (objective_values[i] - fmin));
  const double total = detail::pairwise_sum(w);

  DensityConsensus out;
  out.point.assign(d, 0.0);
  out.clamped_fraction = negative / positive;
  const auto m = static_cast<std::size_t>(grid.M);
  for (std::size_t j = 0; j < d; ++j) {
    // flat index i = a * M + b in 2D; axis 0 follows a, axis 1 follows b
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t axis_index = d == 1 ? i : (j == 0 ? i / m : i % m);
      wv[i] = w[i] * grid.coordinate(static_cast<int>(axis_index), static_cast<int>(j));
    }
    out.point[j] = detail::pairwise_sum(wv) / total;
  }
  return out;
}

DensityConsensus consensus_point_density(const SpectralField& field, const Objective& obj,
                                         double alpha) {
  const GridSpec& grid = field.grid();
  SpectralTransform transform(grid);
  const auto density = transform.to_grid(field);
  std::vector<double> values(grid.grid_size());
  Vec v(static_cast<std::size_t>(grid.dim));
  for (std::size_t i = 0; i < values.size(); ++i) {
    grid_point(grid, i, v);
    values[i] = obj(v);
  }
  return consensus_point_grid(grid, density, values, alpha);
}

double laplace_gap(const Positions& positions, std::span<const double> values, double alpha,
                   const Objective& obj) {
  const auto c = consensus_point(positions, values, alpha);
  return obj(c.point) - *std::min_element(values.begin(), values.end());
}

}  // namespace cbolab
