#include "cbolab/pde.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "cbolab/consensus.hpp"
#include "cbolab/error.hpp"
#include "cbolab/parallel.hpp"

namespace cbolab {

EquationForm parse_equation_form(const std::string& name) {
  if (name == "gradient_form") return EquationForm::gradient_form;
  if (name == "divergence_form") return EquationForm::divergence_form;
  if (name == "cbo_form") return EquationForm::cbo_form;
  throw ConfigError("pde.form: unknown form '" + name +
                    "' (gradient_form|divergence_form|cbo_form)");
}

ValphaMode parse_valpha_mode(const std::string& name) {
  if (name == "frozen_path") return ValphaMode::frozen_path;
  if (name == "self_consistent") return ValphaMode::self_consistent;
  throw ConfigError("pde.valpha_mode: unknown mode '" + name + "' (frozen_path|self_consistent)");
}

std::string to_string(EquationForm form) {
  switch (form) {
    case EquationForm::gradient_form: return "gradient_form";
    case EquationForm::divergence_form: return "divergence_form";
    case EquationForm::cbo_form: return "cbo_form";
  }
  return "?";
}

std::string to_string(ValphaMode mode) {
  return mode == ValphaMode::frozen_path ? "frozen_path" : "self_consistent";
}

CutoffSpec desk_cutoff(double L) {
  CutoffSpec spec;
  spec.n = L / 11.0;
  spec.R = 9.0 * spec.n;
  return spec;
}

void PdeProblem::validate() const {
  grid.validate();
  if (!(c_cfl > 0.0)) throw ConfigError("pde.c_cfl must be > 0");
  if (truncate) cutoff.validate();
  if (form == EquationForm::cbo_form) {
    if (!(alpha >= 0.0) || !(lambda >= 0.0) || !(sigma >= 0.0))
      throw ConfigError("cbo.alpha, cbo.lambda and cbo.sigma must be >= 0");
    if (valpha_mode == ValphaMode::self_consistent) {
      if (!objective.eval) throw ConfigError("pde: self_consistent mode needs an objective");
      if (objective.dim != grid.dim) throw ConfigError("objective.dim must equal pde.dim");
    }
  } else {
    if (!coefficients.G || !coefficients.J) throw ConfigError("pde: coefficient field is incomplete");
    if (coefficients.dim != grid.dim) throw ConfigError("coefficient dimension must equal pde.dim");
  }
}

struct PdeSolver::Impl {
  PdeProblem problem;
  int workers;
  GridSpec grid;
  SpectralTransform transform;
  std::size_t n;
  std::size_t d;

  std::vector<double> coords;  // n x d
  std::vector<double> taper;   // 1 - S_i, or 1 when truncation is off
  std::vector<double> plateau; // H_i
  std::vector<double> unit;    // v / |v| (n x d), zero at the origin
  std::vector<double> objective_values;
  std::unique_ptr<TruncatedCoefficients> truncated;

  // scratch
  std::vector<std::vector<double>> grad;  // d grids
  std::vector<double> rho;
  std::vector<double> work;
  std::vector<double> G;
  std::vector<double> J;  // n x d
  // what G and J currently hold
  std::optional<Vec> coefficients_for_valpha;
  std::optional<double> coefficients_for_time;

  Impl(PdeProblem p, int w)
      : problem(std::move(p)), workers(w), grid(problem.grid), transform(grid),
        n(grid.grid_size()), d(static_cast<std::size_t>(grid.dim)) {
    coords.resize(n * d);
    for (std::size_t i = 0; i < n; ++i) grid_point(grid, i, std::span(coords).subspan(i * d, d));
    taper.assign(n, 1.0);
    plateau.assign(n, 1.0);
    unit.assign(n * d, 0.0);
    if (problem.truncate) {
      const auto& tables = CutoffTables::standard();
      // the cutoffs are radial about the box center
      Vec u(d);
      for (std::size_t i = 0; i < n; ++i) {
        const auto v = point(i);
        for (std::size_t j = 0; j < d; ++j) u[j] = v[j] - grid.center[j];
        const double r = std::sqrt(squared_norm(u));
        taper[i] = 1.0 - tables.step(r - problem.cutoff.R + 1.0);
        plateau[i] = tables.plateau(r / problem.cutoff.n);
        if (r > 0.0)
          for (std::size_t j = 0; j < d; ++j) unit[i * d + j] = u[j] / r;
      }
      if (problem.form != EquationForm::cbo_form)
        truncated = std::make_unique<TruncatedCoefficients>(centered(problem.coefficients),
                                                            problem.cutoff);
    }
    if (problem.form == EquationForm::cbo_form && problem.objective.eval) {
      objective_values.resize(n);
      for (std::size_t i = 0; i < n; ++i) objective_values[i] = problem.objective(point(i));
    }
    grad.assign(d, std::vector<double>(n));
    rho.resize(n);
    work.resize(n);
    G.resize(n);
    J.resize(n * d);
  }

  // The base field seen from the box center.
  CoefficientField centered(const CoefficientField& base) const {
    const std::array<double, 2> c = grid.center;
    const std::size_t dim = d;
    auto shift = [c, dim](std::span<const double> u) {
      Vec v(u.begin(), u.end());
      for (std::size_t j = 0; j < dim; ++j) v[j] += c[j];
      return v;
    };
    CoefficientField out = base;
    out.G = [g = base.G, shift](std::span<const double> u, double t) { return g(shift(u), t); };
    out.J = [f = base.J, shift](std::span<const double> u, double t, std::span<double> o) {
      f(shift(u), t, o);
    };
    if (base.g)
      out.g = [g = base.g, shift](std::span<const double> u, double t) { return g(shift(u), t); };
    return out;
  }

  std::span<const double> point(std::size_t i) const { return std::span(coords).subspan(i * d, d); }

  static Multiplier derivative(std::size_t j) { return j == 0 ? Multiplier::d0 : Multiplier::d1; }

  void gradient_to_grid(const SpectralField& field) {
    for (std::size_t j = 0; j < d; ++j) transform.to_grid(field, grad[j], derivative(j));
  }

  Vec frozen_consensus(double t) const {
    Vec va = problem.frozen_path.at(t);
    if (va.size() != d) throw ConfigError("pde: frozen consensus path has the wrong dimension");
    return va;
  }

  Vec consensus(const SpectralField& field, double t) {
    if (problem.form != EquationForm::cbo_form) return {};
    if (problem.valpha_mode == ValphaMode::frozen_path) return frozen_consensus(t);
    transform.to_grid(field, rho);
    return consensus_point_grid(grid, rho, objective_values, problem.alpha).point;
  }

  // Truncated CBO coefficients on the grid for a given consensus point.
  void cbo_coefficients_on_grid(std::span<const double> va) {
    if (coefficients_for_valpha && std::ranges::equal(*coefficients_for_valpha, va)) return;
    coefficients_for_valpha = Vec(va.begin(), va.end());
    const bool trunc = problem.truncate;
    const double R = problem.cutoff.R;
    parallel_for(n, workers, [&](std::size_t begin, std::size_t end) {
      Vec diff(d);
      for (std::size_t i = begin; i < end; ++i) {
        const auto v = point(i);
        double g = 0.0;
        for (std::size_t j = 0; j < d; ++j) {
          diff[j] = v[j] - va[j];
          g += diff[j] * diff[j];
        }
        double* Ji = &J[i * d];
        if (!trunc) {
          G[i] = g;
          for (std::size_t j = 0; j < d; ++j) Ji[j] = diff[j];
          continue;
        }
        const double h = plateau[i];
        if (h == 0.0) {
          G[i] = 0.0;
          for (std::size_t j = 0; j < d; ++j) Ji[j] = 0.0;
          continue;
        }
        const double s = 1.0 - taper[i];
        double gbar = g;
        if (s != 0.0) {
          double gR = 0.0;
          for (std::size_t j = 0; j < d; ++j) {
            const double x = grid.center[j] + R * unit[i * d + j] - va[j];
            gR += x * x;
          }
          gbar = g * (1.0 - s) + (1.0 + gR) * s;
          const double outer = std::sqrt(1.0 + gR);
          for (std::size_t j = 0; j < d; ++j) diff[j] = diff[j] * (1.0 - s) + outer * s;
        }
        G[i] = h * h * gbar;
        for (std::size_t j = 0; j < d; ++j) Ji[j] = h * diff[j];
      }
    });
  }

  // G, J of the general forms at time t (truncated if requested).
  void general_coefficients_on_grid(double t) {
    if (coefficients_for_time == t) return;
    coefficients_for_time = t;
    const auto& base = problem.coefficients;
    parallel_for(n, workers, [&](std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i) {
        const auto v = point(i);
        std::span<double> Ji(&J[i * d], d);
        if (truncated) {
          Vec u(v.begin(), v.end());
          for (std::size_t j = 0; j < d; ++j) u[j] -= grid.center[j];
          G[i] = truncated->G(u, t);
          truncated->J(u, t, Ji);
        } else {
          G[i] = base.G(v, t);
          base.J(v, t, Ji);
        }
      }
    });
  }

  double effective_diffusion_scale() const {
    if (problem.form == EquationForm::cbo_form) return 0.5 * problem.sigma * problem.sigma;
    return 1.0;
  }

  double advection_scale() const {
    if (problem.form == EquationForm::cbo_form) return problem.lambda + problem.sigma * problem.sigma;
    return 1.0;
  }

  // out += scale * sum_j d_j (G * grad_j rho)
  void add_diffusion(SpectralField& out, double scale) {
    for (std::size_t j = 0; j < d; ++j) {
      for (std::size_t i = 0; i < n; ++i) work[i] = G[i] * grad[j][i];
      transform.accumulate_from_grid(work, out, derivative(j), scale);
    }
  }

  // out += scale * P(<J, grad rho>)
  void add_transport(SpectralField& out, double scale) {
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < d; ++j) s += J[i * d + j] * grad[j][i];
      work[i] = s;
    }
    transform.accumulate_from_grid(work, out, Multiplier::identity, scale);
  }

  // out += scale * sum_j d_j (J_j rho), needs rho on the grid
  void add_flux_divergence(SpectralField& out, double scale) {
    for (std::size_t j = 0; j < d; ++j) {
      for (std::size_t i = 0; i < n; ++i) work[i] = J[i * d + j] * rho[i];
      transform.accumulate_from_grid(work, out, derivative(j), scale);
    }
  }

  void add_source(SpectralField& out, double t) {
    const auto& base = problem.coefficients;
    if (!base.g) return;
    for (std::size_t i = 0; i < n; ++i) work[i] = base.g(point(i), t) * taper[i];
    transform.accumulate_from_grid(work, out);
  }

  SpectralField rhs(const SpectralField& field, std::span<const double> va, double t) {
    SpectralField out(grid);
    gradient_to_grid(field);
    switch (problem.form) {
      case EquationForm::cbo_form: {
        cbo_coefficients_on_grid(va);
        add_diffusion(out, effective_diffusion_scale());
        const double a = advection_scale();
        add_transport(out, a);
        out.axpy(a * static_cast<double>(d), field);
        break;
      }
      case EquationForm::gradient_form:
        general_coefficients_on_grid(t);
        add_diffusion(out, 1.0);
        add_transport(out, 1.0);
        out += field;
        add_source(out, t);
        break;
      case EquationForm::divergence_form:
        general_coefficients_on_grid(t);
        transform.to_grid(field, rho);
        add_diffusion(out, 1.0);
        add_flux_divergence(out, -1.0);
        out += field;
        add_source(out, t);
        break;
    }
    out.enforce_conjugate_symmetry();
    return out;
  }

  void rk4(SpectralField& field, std::span<const double> va0, double t, double dt) {
    auto stage = [&](const SpectralField& f, double ts) { return rhs(f, consensus(f, ts), ts); };
    const SpectralField k1 = rhs(field, va0, t);
    SpectralField tmp = field;
    tmp.axpy(0.5 * dt, k1);
    const SpectralField k2 = stage(tmp, t + 0.5 * dt);
    tmp = field;
    tmp.axpy(0.5 * dt, k2);
    const SpectralField k3 = stage(tmp, t + 0.5 * dt);
    tmp = field;
    tmp.axpy(dt, k3);
    const SpectralField k4 = stage(tmp, t + dt);
    field.axpy(dt / 6.0, k1);
    field.axpy(dt / 3.0, k2);
    field.axpy(dt / 3.0, k3);
    field.axpy(dt / 6.0, k4);
    field.enforce_conjugate_symmetry();
  }

  double stability_bound(std::span<const double> va, double t) {
    if (problem.form == EquationForm::cbo_form)
      cbo_coefficients_on_grid(va);
    else
      general_coefficients_on_grid(t);
    double gmax = 0.0;
    double jmax = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      gmax = std::max(gmax, G[i]);
      double s = 0.0;
      for (std::size_t j = 0; j < d; ++j) s += J[i * d + j] * J[i * d + j];
      jmax = std::max(jmax, std::sqrt(s));
    }
    // dt lambda must stay inside the RK4 region; the segment from -c_cfl to
    // 2.8i lies inside it for c_cfl <= 2.78, so the two limits add harmonically
    const double k2 = grid.max_wavenumber_sq();
    const double rate = effective_diffusion_scale() * gmax * k2 / problem.c_cfl +
                        advection_scale() * jmax * std::sqrt(k2) / 2.8;
    return rate > 0.0 ? 1.0 / rate : std::numeric_limits<double>::infinity();
  }
};

PdeSolver::PdeSolver(PdeProblem problem, int workers) {
  problem.validate();
  impl_ = std::make_unique<Impl>(std::move(problem), workers);
}
PdeSolver::~PdeSolver() = default;
PdeSolver::PdeSolver(PdeSolver&&) noexcept = default;
PdeSolver& PdeSolver::operator=(PdeSolver&&) noexcept = default;

const PdeProblem& PdeSolver::problem() const noexcept { return impl_->problem; }
const GridSpec& PdeSolver::grid() const noexcept { return impl_->grid; }

SpectralField PdeSolver::project_initial(
    const std::function<double(std::span<const double>)>& density) {
  Impl& im = *impl_;
  std::vector<double> values(im.n);
  for (std::size_t i = 0; i < im.n; ++i) values[i] = density(im.point(i)) * im.taper[i];
  SpectralField f = im.transform.from_grid(values);
  f.enforce_conjugate_symmetry();
  return f;
}

std::vector<double> PdeSolver::grid_values(const SpectralField& field) {
  return impl_->transform.to_grid(field);
}

Vec PdeSolver::consensus(const SpectralField& field, double t) { return impl_->consensus(field, t); }

SpectralField PdeSolver::rhs(const SpectralField& field, double t) {
  const Vec va = impl_->consensus(field, t);
  return impl_->rhs(field, va, t);
}

SpectralField PdeSolver::rhs_with_consensus(const SpectralField& field,
                                            std::span<const double> valpha, double t) {
  if (valpha.size() != impl_->d) throw DomainError("consensus point has the wrong dimension");
  return impl_->rhs(field, valpha, t);
}

double PdeSolver::stability_bound(const SpectralField& field, double t) {
  const Vec va = impl_->consensus(field, t);
  return impl_->stability_bound(va, t);
}

void PdeSolver::step(SpectralField& field, double t, double dt) {
  Impl& im = *impl_;
  const Vec va = im.consensus(field, t);
  const double bound = im.stability_bound(va, t);
  if (dt > bound * (1.0 + 1e-12))
    throw ConfigError("pde.dt = " + std::to_string(dt) + " exceeds the stability bound " +
                      std::to_string(bound) + " at t = " + std::to_string(t));
  im.rk4(field, va, t, dt);
}

double PdeSolver::integrate(SpectralField& field, double horizon, double dt,
                            const Observer& observer) {
  Impl& im = *impl_;
  if (!(horizon >= 0.0)) throw ConfigError("pde.horizon must be >= 0");
  if (dt < 0.0) throw ConfigError("pde.dt must be >= 0");
  std::uint64_t steps;
  if (dt == 0.0) {
    const double bound = stability_bound(field, 0.0);
    if (!std::isfinite(bound)) throw ConfigError("pde.dt = 0 needs a finite stability bound");
    steps = static_cast<std::uint64_t>(std::ceil(horizon / (0.9 * bound)));
    steps = std::max<std::uint64_t>(steps, 1);
    dt = horizon / static_cast<double>(steps);
  } else {
    steps = static_cast<std::uint64_t>(std::llround(horizon / dt));
    if (std::abs(static_cast<double>(steps) * dt - horizon) > 1e-9 * std::max(1.0, horizon))
      throw ConfigError("pde.horizon must be a whole number of pde.dt steps");
  }
  Vec va = im.consensus(field, 0.0);
  if (observer) observer(0.0, field, va);
  for (std::uint64_t k = 0; k < steps; ++k) {
    const double t = static_cast<double>(k) * dt;
    const double bound = im.stability_bound(va, t);
    if (dt > bound * (1.0 + 1e-12))
      throw ConfigError("pde.dt = " + std::to_string(dt) + " exceeds the stability bound " +
                        std::to_string(bound) + " at t = " + std::to_string(t));
    im.rk4(field, va, t, dt);
    const double t1 = static_cast<double>(k + 1) * dt;
    va = im.consensus(field, t1);
    if (observer) observer(t1, field, va);
  }
  return dt;
}

SpectralField project_initial(PdeSolver& solver,
                              const std::function<double(std::span<const double>)>& density) {
  return solver.project_initial(density);
}

SpectralField rhs(PdeSolver& solver, const SpectralField& field, double t) {
  return solver.rhs(field, t);
}

void step(PdeSolver& solver, SpectralField& field, double t, double dt) {
  solver.step(field, t, dt);
}

double mass(const SpectralField& field) { return field.mass(); }

void Bump::validate(int dim) const {
  if (center.size() != static_cast<std::size_t>(dim))
    throw ConfigError("pde.bump_center must have " + std::to_string(dim) + " components");
  if (!(radius > 0.0) || !std::isfinite(radius)) throw ConfigError("pde.bump_radius must be positive");
  if (!(edge > 0.0) || !std::isfinite(edge)) throw ConfigError("pde.bump_edge must be positive");
  if (!(width > 0.0)) throw ConfigError("pde.bump_width must be positive");
}

double Bump::operator()(std::span<const double> v) const {
  const double q = squared_distance(v, center);
  const double s = q / (radius * radius);
  if (s >= 1.0) return 0.0;
  return std::exp(-edge / (1.0 - s) - q / (2.0 * width * width));
}

SpectralField normalized_bump(PdeSolver& solver, const Bump& bump) {
  bump.validate(solver.grid().dim);
  SpectralField f = solver.project_initial(bump);
  const double m = mass(f);
  if (!(m > 0.0)) throw DomainError("normalized_bump: the bump has no mass on the grid");
  f *= 1.0 / m;
  return f;
}

ProbeResult positivity_probe(PdeSolver& solver, const SpectralField& field,
                             std::span<const double> valpha, double r_exclude, double r_outer) {
  const GridSpec& grid = solver.grid();
  if (valpha.size() != static_cast<std::size_t>(grid.dim))
    throw DomainError("positivity_probe: consensus point has the wrong dimension");
  if (!(r_exclude >= 0.0 && r_exclude < r_outer))
    throw DomainError("positivity_probe: need 0 <= r_exclude < r_outer");
  double offset = 0.0;
  for (std::size_t j = 0; j < valpha.size(); ++j) {
    const double x = valpha[j] - grid.center[j];
    offset = solver.problem().truncate ? offset + x * x : std::max(offset, std::abs(x));
  }
  if (solver.problem().truncate) {
    if (std::sqrt(offset) + r_outer > solver.problem().cutoff.R)
      throw DomainError("positivity_probe: annulus reaches past the taper radius");
  } else if (offset + r_outer > grid.L) {
    throw DomainError("positivity_probe: annulus leaves the box");
  }
  const auto values = solver.grid_values(field);
  ProbeResult out;
  out.min_value = std::numeric_limits<double>::infinity();
  Vec v(valpha.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    grid_point(grid, i, v);
    const double r = std::sqrt(squared_distance(v, valpha));
    if (r < r_exclude || r > r_outer) continue;
    ++out.points;
    if (values[i] < out.min_value) {
      out.min_value = values[i];
      out.argmin = v;
    }
  }
  if (out.points == 0) throw DomainError("positivity_probe: no grid point in the annulus");
  return out;
}

double confinement_probe_1d(PdeSolver& solver, const SpectralField& field, double v_star) {
  const GridSpec& grid = solver.grid();
  if (grid.dim != 1) throw DomainError("confinement_probe_1d needs d = 1");
  const auto values = solver.grid_values(field);
  const double h = grid.spacing();
  double sum = 0.0;
  // each grid value stands for the cell [v - h/2, v + h/2]; the cell holding
  // v_star counts with the fraction lying to its right
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double v = grid.coordinate(static_cast<int>(i));
    const double weight = std::clamp((v + 0.5 * h - v_star) / h, 0.0, 1.0);
    sum += weight * std::max(values[i], 0.0);
  }
  return sum * h;
}

std::vector<EnergySample> energy_monitor(PdeSolver& solver, std::span<const Snapshot> history) {
  if (history.empty()) throw DomainError("energy_monitor: empty history");
  PdeSolver::Impl& im = *solver.impl_;
  std::vector<EnergySample> out;
  for (const auto& snap : history) {
    const Vec va = im.consensus(snap.field, snap.time);
    if (im.problem.form == EquationForm::cbo_form)
      im.cbo_coefficients_on_grid(va);
    else
      im.general_coefficients_on_grid(snap.time);
    im.transform.to_grid(snap.field, im.rho);
    im.gradient_to_grid(snap.field);
    double l2 = 0.0;
    double h1 = 0.0;
    for (std::size_t i = 0; i < im.n; ++i) {
      l2 += im.rho[i] * im.rho[i];
      double g2 = 0.0;
      for (std::size_t j = 0; j < im.d; ++j) g2 += im.grad[j][i] * im.grad[j][i];
      h1 += im.G[i] * g2;
    }
    const double w = im.grid.cell_volume();
    out.push_back({snap.time, l2 * w, h1 * w});
  }
  return out;
}

}  // namespace cbolab
