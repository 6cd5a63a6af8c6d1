#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "cbolab/consensus.hpp"
#include "cbolab/noise.hpp"
#include "cbolab/objectives.hpp"
#include "cbolab/points.hpp"

namespace cbolab {

struct CboParams {
  double lambda = 1.0;  // drift rate
  double sigma = 1.0;   // noise rate
  double alpha = 1.0;   // inverse temperature of the consensus weights
  double dt = 0.01;

  // Throws ConfigError naming the offending cbo.* key.
  void validate() const;
};

// The empirical system state. time() is derived from step_index so it never
// accumulates rounding.
struct ParticleEnsemble {
  Positions positions;
  CboParams params;
  std::uint64_t seed = 0;
  std::uint64_t step_index = 0;

  double time() const noexcept { return static_cast<double>(step_index) * params.dt; }
};

// Single-particle updates shared by every stepper. `gaussian` is the
// standard normal d-vector for this (particle, step).
//   euclidean: v <- (1 - lambda dt) v + lambda dt va + sqrt(dt) sigma |v - va| B
//   sphere:    v <- v - lambda dt P(v)(v - va) + sqrt(dt) sigma |v - va| P(v) B,
//              then v / |v|, with P(v) = I - v v^T
void euler_maruyama_update(std::span<double> v, std::span<const double> valpha,
                           const CboParams& params, std::span<const double> gaussian);
void sphere_update(std::span<double> v, std::span<const double> valpha, const CboParams& params,
                   std::span<const double> gaussian);

// One Euler-Maruyama step of the interacting system; returns the consensus
// used for the step. Throws DivergenceError on the first non-finite particle.
// Results do not depend on `workers`.
ConsensusResult cbo_step(ParticleEnsemble& ens, const Objective& obj, int workers = 1);

// Consensus trajectory t -> v_alpha(t) fed to the mono-particle dynamics.
class ValphaPath {
 public:
  static ValphaPath constant(Vec point);
  // Values at given times; lookups must hit a recorded time (to 1e-9 relative).
  static ValphaPath sampled(std::vector<double> times, std::vector<Vec> points);
  static ValphaPath function(std::function<Vec(double)> fn);

  // Throws DomainError when t is not covered.
  Vec at(double t) const;

  // For sampled paths: the recorded samples (empty otherwise).
  const std::vector<double>& times() const noexcept { return times_; }
  const std::vector<Vec>& points() const noexcept { return points_; }

 private:
  std::vector<double> times_;
  std::vector<Vec> points_;
  std::function<Vec(double)> fn_;
};

// Euler-Maruyama step of the mono-particle system driven by an external
// consensus path, using the same noise addressing as cbo_step. `step_index`
// is the index of the step being taken (time = step_index * dt).
void mono_step(Positions& positions, const ValphaPath& path, const CboParams& params,
               const NoiseStream& noise, std::uint64_t step_index, int workers = 1);

// CBO on the unit sphere: drift and noise are projected onto the tangent
// space at each particle, then particles are renormalised. Throws
// DomainError if a particle is off the sphere by more than 1e-8 and
// DegenerateProjection if a step lands on the origin.
ConsensusResult sphere_cbo_step(ParticleEnsemble& ens, const Objective& obj, int workers = 1);

// Initial law for particle experiments. Particle i draws from the `initial`
// stream at index i, so the first N particles of any larger ensemble with the
// same seed coincide.
struct InitialDistribution {
  enum class Kind { gaussian, uniform, point };
  Kind kind = Kind::gaussian;
  Vec center;          // defaults to the origin when empty
  double scale = 1.0;  // std-dev (gaussian) or half-width (uniform)

  Positions sample(std::size_t count, std::size_t dim, std::uint64_t seed) const;
};

// Throws ConfigError for anything but gaussian|uniform|point.
InitialDistribution::Kind parse_initial_kind(const std::string& name);

struct CouplingExperiment {
  std::vector<std::size_t> sizes;
  std::size_t reference_size = 0;
  double horizon = 1.0;
  std::uint64_t seed = 0;
  // Independent repetitions (seeds seed, seed+1, ...) averaged per size.
  std::size_t replicates = 1;
  InitialDistribution initial;
};

struct CouplingRow {
  std::size_t size = 0;
  double error = 0.0;  // sup over t of the mean over particles of |Vbar - V|^2
};

// For each size N: runs the N-particle system and N mono-particles driven by
// the consensus path of a reference system, all with shared noise, and
// reports the coupling error. Throws ConfigError unless
// reference_size >= 4 * max(sizes).
std::vector<CouplingRow> run_coupling(const CouplingExperiment& exp, const Objective& obj,
                                      const CboParams& params, int workers = 1);

}  // namespace cbolab
