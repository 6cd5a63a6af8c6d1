#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "cbolab/cutoffs.hpp"
#include "cbolab/objectives.hpp"
#include "cbolab/particle.hpp"
#include "cbolab/spectral_field.hpp"

namespace cbolab {

// gradient_form:   div(G grad rho) + <J, grad rho> + rho + g
// divergence_form: div(G grad rho) - div(J rho) + rho + g
// cbo_form:        (sigma^2/2) div(G grad rho) + (lambda + sigma^2)(<J, grad rho> + d rho)
//                  with G = |v - v_alpha|^2, J = v - v_alpha. lambda = 1,
//                  sigma = sqrt 2 gives div(G grad rho) + 3 <J, grad rho> + 3 d rho.
enum class EquationForm { gradient_form, divergence_form, cbo_form };
enum class ValphaMode { frozen_path, self_consistent };

EquationForm parse_equation_form(const std::string& name);  // ConfigError otherwise
ValphaMode parse_valpha_mode(const std::string& name);
std::string to_string(EquationForm form);
std::string to_string(ValphaMode mode);

// Shell radius R = 9n and plateau scale n = L/11, so the truncated
// coefficients vanish before the box edge. The cutoffs are radial about the
// box center.
CutoffSpec desk_cutoff(double L);

struct PdeProblem {
  GridSpec grid;
  EquationForm form = EquationForm::cbo_form;

  // gradient_form / divergence_form
  CoefficientField coefficients;

  // cbo_form
  Objective objective;
  double alpha = 1.0;
  double lambda = 1.0;
  double sigma = 1.4142135623730951;
  ValphaMode valpha_mode = ValphaMode::self_consistent;
  ValphaPath frozen_path = ValphaPath::constant({});

  // When false, coefficients, source and initial data are used untruncated
  // (for analytic periodic test problems).
  bool truncate = true;
  CutoffSpec cutoff = desk_cutoff(1.0);

  double c_cfl = 2.0;

  void validate() const;
};

struct EnergySample {
  double time = 0.0;
  double l2_sq = 0.0;        // integral of rho^2
  double weighted_h1 = 0.0;  // integral of G |grad rho|^2
};

struct Snapshot {
  double time = 0.0;
  SpectralField field;
};

// Pseudospectral Galerkin solver on the periodic box. Variable-coefficient
// products are formed on the M-point grid (M >= 4K, so quadratic products of
// retained modes are alias-free) and projected back onto |k| <= K.
class PdeSolver {
 public:
  explicit PdeSolver(PdeProblem problem, int workers = 1);
  ~PdeSolver();
  PdeSolver(PdeSolver&&) noexcept;
  PdeSolver& operator=(PdeSolver&&) noexcept;

  const PdeProblem& problem() const noexcept;
  const GridSpec& grid() const noexcept;

  // Samples density * taper on the grid and keeps modes |k| <= K.
  SpectralField project_initial(const std::function<double(std::span<const double>)>& density);

  // Grid values of the field.
  std::vector<double> grid_values(const SpectralField& field);

  // Consensus point driving the cbo_form at time t: the frozen path, or the
  // grid quadrature of the field in self_consistent mode.
  Vec consensus(const SpectralField& field, double t);

  SpectralField rhs(const SpectralField& field, double t);

  // rhs with the consensus point given explicitly (cbo_form only).
  SpectralField rhs_with_consensus(const SpectralField& field, std::span<const double> valpha,
                                   double t);

  // c_cfl / (max over grid of the effective diffusion * max |kappa|^2).
  double stability_bound(const SpectralField& field, double t);

  // One classical RK4 step. Throws ConfigError if dt exceeds the stability
  // bound at t.
  void step(SpectralField& field, double t, double dt);

  // Integrates to `horizon` with a fixed step (0 picks 0.9 x the bound at
  // t = 0, trimmed so the horizon is hit exactly). The observer sees the
  // initial state and every step.
  using Observer = std::function<void(double t, const SpectralField&, std::span<const double> valpha)>;
  double integrate(SpectralField& field, double horizon, double dt, const Observer& observer = {});

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;

  friend std::vector<EnergySample> energy_monitor(PdeSolver&, std::span<const Snapshot>);
};

// Compactly supported initial density
//   exp(-edge / (1 - |u|^2 / radius^2) - |u|^2 / (2 width^2)),  u = v - center,
// on |u| < radius and 0 outside (unnormalized). width = inf drops the
// Gaussian factor.
struct Bump {
  Vec center;
  double radius = 1.0;
  double edge = 1.0;
  double width = INFINITY;

  void validate(int dim) const;  // ConfigError naming pde.bump_*
  double operator()(std::span<const double> v) const;
};

// Projects the bump and rescales to unit mass.
SpectralField normalized_bump(PdeSolver& solver, const Bump& bump);

SpectralField project_initial(PdeSolver& solver,
                              const std::function<double(std::span<const double>)>& density);
SpectralField rhs(PdeSolver& solver, const SpectralField& field, double t);
void step(PdeSolver& solver, SpectralField& field, double t, double dt);
double mass(const SpectralField& field);

struct ProbeResult {
  double min_value = 0.0;
  Vec argmin;
  std::size_t points = 0;
};

// Minimum of the raw density over grid points in the annulus
// r_exclude <= |v - v_alpha| <= r_outer. The annulus must stay inside the
// taper ball |v - c| <= R (inside the box when untruncated); DomainError
// otherwise or if no grid point qualifies.
ProbeResult positivity_probe(PdeSolver& solver, const SpectralField& field,
                             std::span<const double> valpha, double r_exclude, double r_outer);

// Grid quadrature of max(rho, 0) over (v_star, L]; d = 1 only.
double confinement_probe_1d(PdeSolver& solver, const SpectralField& field, double v_star);

// Grid quadrature per snapshot, with G the problem's (truncated) diffusion.
std::vector<EnergySample> energy_monitor(PdeSolver& solver, std::span<const Snapshot> history);

}  // namespace cbolab
