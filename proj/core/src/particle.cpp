#include "cbolab/particle.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <string>

#include "cbolab/error.hpp"
#include "cbolab/parallel.hpp"

namespace cbolab {

void CboParams::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw ConfigError(what);
  };
  require(std::isfinite(lambda) && lambda >= 0.0, "cbo.lambda must be finite and >= 0");
  require(std::isfinite(sigma) && sigma >= 0.0, "cbo.sigma must be finite and >= 0");
  require(std::isfinite(alpha) && alpha >= 0.0, "cbo.alpha must be finite and >= 0");
  require(std::isfinite(dt) && dt > 0.0, "cbo.dt must be finite and > 0");
}

void euler_maruyama_update(std::span<double> v, std::span<const double> valpha,
                           const CboParams& params, std::span<const double> gaussian) {
  const double amplitude = std::sqrt(params.dt) * params.sigma * std::sqrt(squared_distance(v, valpha));
  const double pull = params.lambda * params.dt;
  for (std::size_t j = 0; j < v.size(); ++j)
    v[j] = (1.0 - pull) * v[j] + pull * valpha[j] + amplitude * gaussian[j];
}

void sphere_update(std::span<double> v, std::span<const double> valpha, const CboParams& params,
                   std::span<const double> gaussian) {
  const std::size_t d = v.size();
  double along_diff = 0.0;
  double along_noise = 0.0;
  for (std::size_t j = 0; j < d; ++j) {
    along_diff += v[j] * (v[j] - valpha[j]);
    along_noise += v[j] * gaussian[j];
  }
  const double amplitude = std::sqrt(params.dt) * params.sigma * std::sqrt(squared_distance(v, valpha));
  const double pull = params.lambda * params.dt;
  double norm_sq = 0.0;
  for (std::size_t j = 0; j < d; ++j) {
    const double tangent_diff = (v[j] - valpha[j]) - v[j] * along_diff;
    const double tangent_noise = gaussian[j] - v[j] * along_noise;
    v[j] += -pull * tangent_diff + amplitude * tangent_noise;
    norm_sq += v[j] * v[j];
  }
  if (!(norm_sq > 0.0)) throw DegenerateProjection("sphere step reached the origin");
  const double inv = 1.0 / std::sqrt(norm_sq);
  for (double& x : v) x *= inv;
}

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

template <typename Update>
void update_all(Positions& positions, std::span<const double> valpha, const NoiseStream& noise,
                std::uint64_t step, int workers, Update&& update) {
  const std::size_t d = positions.dim();
  std::atomic<std::size_t> first_bad{kNone};
  parallel_for(positions.size(), workers, [&](std::size_t begin, std::size_t end) {
    Vec z(d);
    for (std::size_t i = begin; i < end; ++i) {
      noise.gaussian(i, step, z);
      auto v = positions[i];
      update(v, valpha, z);
      for (double x : v) {
        if (!std::isfinite(x)) {
          std::size_t cur = first_bad.load();
          while (i < cur && !first_bad.compare_exchange_weak(cur, i)) {
          }
          break;
        }
      }
    }
  });
  if (first_bad.load() != kNone) throw DivergenceError(first_bad.load(), step);
}

std::vector<double> evaluate_all(const Positions& positions, const Objective& obj, int workers) {
  std::vector<double> values(positions.size());
  parallel_for(positions.size(), workers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) values[i] = obj(positions[i]);
  });
  return values;
}

void check_ensemble(const ParticleEnsemble& ens, const Objective& obj) {
  ens.params.validate();
  if (ens.positions.empty()) throw DomainError("ensemble is empty");
  if (static_cast<int>(ens.positions.dim()) != obj.dim)
    throw DomainError("ensemble dimension " + std::to_string(ens.positions.dim()) +
                      " does not match objective dimension " + std::to_string(obj.dim));
}

}  // namespace

ConsensusResult cbo_step(ParticleEnsemble& ens, const Objective& obj, int workers) {
  check_ensemble(ens, obj);
  const auto values = evaluate_all(ens.positions, obj, workers);
  ConsensusResult c = consensus_point(ens.positions, values, ens.params.alpha);
  const NoiseStream noise(ens.seed);
  update_all(ens.positions, c.point, noise, ens.step_index, workers,
             [&](std::span<double> v, std::span<const double> va, std::span<const double> z) {
               euler_maruyama_update(v, va, ens.params, z);
             });
  ++ens.step_index;
  return c;
}

ValphaPath ValphaPath::constant(Vec point) {
  ValphaPath p;
  p.fn_ = [point = std::move(point)](double) { return point; };
  return p;
}

ValphaPath ValphaPath::sampled(std::vector<double> times, std::vector<Vec> points) {
  if (times.size() != points.size() || times.empty())
    throw DomainError("sampled consensus path needs matching, nonempty times and points");
  if (!std::is_sorted(times.begin(), times.end()))
    throw DomainError("sampled consensus path times must be increasing");
  ValphaPath p;
  p.times_ = std::move(times);
  p.points_ = std::move(points);
  return p;
}

ValphaPath ValphaPath::function(std::function<Vec(double)> fn) {
  ValphaPath p;
  p.fn_ = std::move(fn);
  return p;
}

Vec ValphaPath::at(double t) const {
  if (fn_) return fn_(t);
  const double tol = 1e-9 * std::max(1.0, std::abs(t));
  auto it = std::lower_bound(times_.begin(), times_.end(), t - tol);
  if (it == times_.end() || std::abs(*it - t) > tol)
    throw DomainError("consensus path not defined at t = " + std::to_string(t));
  return points_[static_cast<std::size_t>(it - times_.begin())];
}

void mono_step(Positions& positions, const ValphaPath& path, const CboParams& params,
               const NoiseStream& noise, std::uint64_t step_index, int workers) {
  params.validate();
  const Vec valpha = path.at(static_cast<double>(step_index) * params.dt);
  if (valpha.size() != positions.dim()) throw DomainError("consensus path has the wrong dimension");
  update_all(positions, valpha, noise, step_index, workers,
             [&](std::span<double> v, std::span<const double> va, std::span<const double> z) {
               euler_maruyama_update(v, va, params, z);
             });
}

ConsensusResult sphere_cbo_step(ParticleEnsemble& ens, const Objective& obj, int workers) {
  check_ensemble(ens, obj);
  for (std::size_t i = 0; i < ens.positions.size(); ++i)
    if (std::abs(std::sqrt(squared_norm(ens.positions[i])) - 1.0) > 1e-8)
      throw DomainError("particle " + std::to_string(i) + " is not on the unit sphere");
  const auto values = evaluate_all(ens.positions, obj, workers);
  ConsensusResult c = consensus_point(ens.positions, values, ens.params.alpha);
  const NoiseStream noise(ens.seed);
  update_all(ens.positions, c.point, noise, ens.step_index, workers,
             [&](std::span<double> v, std::span<const double> va, std::span<const double> z) {
               sphere_update(v, va, ens.params, z);
             });
  ++ens.step_index;
  return c;
}

InitialDistribution::Kind parse_initial_kind(const std::string& name) {
  if (name == "gaussian") return InitialDistribution::Kind::gaussian;
  if (name == "uniform") return InitialDistribution::Kind::uniform;
  if (name == "point") return InitialDistribution::Kind::point;
  throw ConfigError("initial.kind: unknown distribution '" + name + "' (gaussian|uniform|point)");
}

Positions InitialDistribution::sample(std::size_t count, std::size_t dim, std::uint64_t seed) const {
  if (!center.empty() && center.size() != dim)
    throw ConfigError("initial.center: expected " + std::to_string(dim) + " components");
  Positions out(count, dim);
  const NoiseStream stream(seed, StreamTag::initial);
  Vec z(dim);
  for (std::size_t i = 0; i < count; ++i) {
    auto v = out[i];
    switch (kind) {
      case Kind::gaussian:
        stream.gaussian(i, 0, z);
        for (std::size_t j = 0; j < dim; ++j) v[j] = scale * z[j];
        break;
      case Kind::uniform:
        stream.uniform(i, 0, z);
        for (std::size_t j = 0; j < dim; ++j) v[j] = scale * (2.0 * z[j] - 1.0);
        break;
      case Kind::point:
        break;
    }
    if (!center.empty())
      for (std::size_t j = 0; j < dim; ++j) v[j] += center[j];
  }
  return out;
}

std::vector<CouplingRow> run_coupling(const CouplingExperiment& exp, const Objective& obj,
                                      const CboParams& params, int workers) {
  params.validate();
  if (exp.sizes.empty()) throw ConfigError("diagnostics.sizes must not be empty");
  const std::size_t largest = *std::max_element(exp.sizes.begin(), exp.sizes.end());
  if (exp.reference_size < 4 * largest)
    throw ConfigError("diagnostics.reference_size must be at least 4 x the largest ensemble size");
  if (exp.replicates < 1) throw ConfigError("diagnostics.replicates must be >= 1");
  const auto dim = static_cast<std::size_t>(obj.dim);
  const auto steps = static_cast<std::uint64_t>(std::llround(exp.horizon / params.dt));

  std::vector<CouplingRow> rows;
  for (std::size_t n : exp.sizes) rows.push_back({n, 0.0});

  for (std::size_t rep = 0; rep < exp.replicates; ++rep) {
    const std::uint64_t seed = exp.seed + rep;

    ParticleEnsemble reference{exp.initial.sample(exp.reference_size, dim, seed), params, seed, 0};
    std::vector<double> times;
    std::vector<Vec> path;
    for (std::uint64_t k = 0; k < steps; ++k) {
      times.push_back(reference.time());
      path.push_back(cbo_step(reference, obj, workers).point);
    }
    const ValphaPath surrogate = ValphaPath::sampled(std::move(times), std::move(path));
    const NoiseStream noise(seed);

    for (auto& row : rows) {
      ParticleEnsemble system{exp.initial.sample(row.size, dim, seed), params, seed, 0};
      Positions mono = system.positions;
      double worst = 0.0;
      for (std::uint64_t k = 0; k < steps; ++k) {
        cbo_step(system, obj, workers);
        mono_step(mono, surrogate, params, noise, k, workers);
        double sum = 0.0;
        for (std::size_t i = 0; i < row.size; ++i) sum += squared_distance(system.positions[i], mono[i]);
        worst = std::max(worst, sum / static_cast<double>(row.size));
      }
      row.error += worst / static_cast<double>(exp.replicates);
    }
  }
  return rows;
}

}  // namespace cbolab
