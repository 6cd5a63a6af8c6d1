#pragma once

#include <span>

#include "cbolab/objectives.hpp"
#include "cbolab/points.hpp"
#include "cbolab/spectral_field.hpp"

namespace cbolab {

struct ConsensusResult {
  Vec point;
  double log_normalizer = 0.0;             // log of the mean Gibbs weight
  double effective_sample_fraction = 1.0;  // (sum w)^2 / (N sum w^2)
};

// Gibbs-weighted mean sum_i V_i w_i / sum_i w_i with w_i = exp(-alpha f_i).
// Weights are shifted by min f, and the sums use a fixed-shape pairwise tree,
// so results are identical however the caller parallelises around it.
// Throws DomainError for an empty ensemble, mismatched sizes, alpha < 0 or a
// non-finite value.
ConsensusResult consensus_point(const Positions& positions, std::span<const double> values,
                                double alpha);

// Evaluates f at every particle and forwards to consensus_point.
ConsensusResult consensus_point(const Positions& positions, const Objective& obj, double alpha);

struct DensityConsensus {
  Vec point;
  double clamped_fraction = 0.0;  // negative mass / positive mass
};

// Grid-quadrature consensus point of a density. Negative density values get
// zero weight; if the discarded negative mass exceeds half the positive mass
// the result is meaningless and NumericalBreakdown is thrown.
DensityConsensus consensus_point_grid(const GridSpec& grid, std::span<const double> density,
                                      std::span<const double> objective_values, double alpha);

DensityConsensus consensus_point_density(const SpectralField& field, const Objective& obj,
                                         double alpha);

// f(v_alpha) - min_i f(V_i).
double laplace_gap(const Positions& positions, std::span<const double> values, double alpha,
                   const Objective& obj);

}  // namespace cbolab
