#include "experiments.hpp"

#include <fmt/format.h>
#include <fmt/ranges.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <limits>

#include "cbolab/consensus.hpp"
#include "cbolab/cutoffs.hpp"
#include "cbolab/diagnostics.hpp"
#include "cbolab/error.hpp"
#include "cbolab/objectives.hpp"
#include "cbolab/particle.hpp"
#include "cbolab/pde.hpp"
#include "report.hpp"

namespace cbolab::cli {

namespace {

Objective objective_of(const Config& c) {
  return builtin_objective(c.text("objective.name"), static_cast<int>(c.integer("objective.dim")));
}

CboParams params_of(const Config& c) {
  CboParams p{c.real("cbo.lambda"), c.real("cbo.sigma"), c.real("cbo.alpha"), c.real("cbo.dt")};
  p.validate();
  return p;
}

// A point of dimension d; an empty entry means the origin.
Vec point_of(const Config& c, const std::string& key, std::size_t d, Vec fallback = {}) {
  Vec v = c.reals(key);
  if (v.empty()) v = fallback.empty() ? Vec(d, 0.0) : std::move(fallback);
  if (v.size() != d) throw ConfigError(fmt::format("{} must have {} components", key, d));
  return v;
}

InitialDistribution initial_of(const Config& c, std::size_t d) {
  InitialDistribution init;
  init.kind = parse_initial_kind(c.text("initial.kind"));
  init.center = point_of(c, "initial.center", d);
  init.scale = c.real("initial.scale");
  if (!(init.scale >= 0.0)) throw ConfigError("initial.scale must be >= 0");
  return init;
}

std::string format_point(std::span<const double> v) {
  std::vector<std::string> parts;
  for (double x : v) parts.push_back(fmt::format("{:.6g}", x));
  return fmt::format("({})", fmt::join(parts, ", "));
}

PdeProblem problem_of(const Config& c) {
  const auto dim = static_cast<int>(c.integer("pde.dim"));
  PdeProblem p;
  p.grid.dim = dim;
  p.grid.L = c.real("pde.L");
  p.grid.K = static_cast<int>(c.integer("pde.K"));
  const auto M = c.integer("pde.M");
  p.grid.M = M == 0 ? 4 * p.grid.K : static_cast<int>(M);
  const Vec center = point_of(c, "pde.center", static_cast<std::size_t>(dim));
  for (std::size_t j = 0; j < center.size(); ++j) p.grid.center[j] = center[j];
  p.form = parse_equation_form(c.text("pde.form"));
  p.truncate = c.flag("pde.truncate");
  p.c_cfl = c.real("pde.c_cfl");

  CutoffSpec cutoff = desk_cutoff(p.grid.L);
  if (c.real("cutoff.R") != 0.0) cutoff.R = c.real("cutoff.R");
  if (c.real("cutoff.n") != 0.0) cutoff.n = c.real("cutoff.n");
  cutoff.h_table = c.real("cutoff.h_table");
  cutoff.h_fd = c.real("cutoff.h_fd");
  cutoff.validate();
  p.cutoff = cutoff;

  if (p.form == EquationForm::cbo_form) {
    p.objective = builtin_objective(c.text("objective.name"), dim);
    const auto params = params_of(c);
    p.alpha = params.alpha;
    p.lambda = params.lambda;
    p.sigma = params.sigma;
    p.valpha_mode = parse_valpha_mode(c.text("pde.valpha_mode"));
    if (p.valpha_mode == ValphaMode::frozen_path) {
      if (c.text("pde.frozen_valpha").empty())
        throw ConfigError("pde.frozen_valpha is required with pde.valpha_mode = frozen_path");
      p.frozen_path = ValphaPath::constant(point_of(c, "pde.frozen_valpha", static_cast<std::size_t>(dim)));
    }
  } else {
    p.coefficients = builtin_coefficients(c.text("coefficients.name"),
                                          point_of(c, "coefficients.center", static_cast<std::size_t>(dim)));
  }
  p.validate();
  return p;
}

Bump bump_of(const Config& c, const GridSpec& grid) {
  const auto d = static_cast<std::size_t>(grid.dim);
  Bump b;
  b.center = point_of(c, "pde.bump_center", d, Vec(grid.center.begin(), grid.center.begin() + grid.dim));
  b.radius = c.real("pde.bump_radius");
  b.edge = c.real("pde.bump_edge");
  b.width = c.real("pde.bump_width");
  return b;
}

// Fixed step hitting the horizon exactly: pde.dt, or pde.dt_scale times the
// stability bound at t = 0.
double step_of(const Config& c, PdeSolver& solver, const SpectralField& field, double horizon) {
  double dt = c.real("pde.dt");
  if (dt == 0.0) {
    const double scale = c.real("pde.dt_scale");
    if (!(scale > 0.0 && scale <= 1.0)) throw ConfigError("pde.dt_scale must be in (0, 1]");
    dt = scale * solver.stability_bound(field, 0.0);
  }
  if (!(dt > 0.0)) throw ConfigError("pde.dt must be >= 0");
  return horizon / std::ceil(horizon / dt - 1e-9);
}

double horizon_of(const Config& c) {
  const double h = c.real("pde.horizon");
  if (!(h > 0.0)) throw ConfigError("pde.horizon must be positive");
  return h;
}

std::size_t record_every_of(const Config& c) {
  const auto every = c.count("pde.record_every");
  if (every == 0) throw ConfigError("pde.record_every must be >= 1");
  return every;
}

// --- particle experiments ---

Outcome optimize(const RunContext& ctx) {
  const auto& c = ctx.config;
  const auto obj = objective_of(c);
  const auto params = params_of(c);
  const auto d = static_cast<std::size_t>(obj.dim);
  ParticleEnsemble ens{initial_of(c, d).sample(c.count("cbo.particles"), d, c.seed()), params, c.seed()};
  const Vec v_star = obj.known_minimizer.value_or(Vec(d, 0.0));

  std::vector<std::string> header{"t", "spread", "w2_sq", "f_valpha"};
  for (auto& h : indexed("valpha", d)) header.push_back(h);
  CsvWriter csv(ctx.output / "decay.csv", header);
  auto record = [&](const Vec& va) {
    std::vector<std::string> row{num(ens.time()), num(w2_to_dirac(ens.positions, va)),
                                 num(w2_to_dirac(ens.positions, v_star)), num(obj(va))};
    append(row, va);
    csv.row(row);
  };
  Vec va = consensus_point(ens.positions, obj, params.alpha).point;
  record(va);
  const auto steps = c.count("cbo.steps");
  for (std::size_t k = 0; k < steps; ++k) {
    cbo_step(ens, obj, ctx.workers);
    va = consensus_point(ens.positions, obj, params.alpha).point;
    record(va);
  }
  const double spread = w2_to_dirac(ens.positions, va);
  const double tol = c.real("diagnostics.w2_tolerance");
  Outcome out;
  out.summary.push_back(fmt::format("consensus point {} with f = {:.6g} at t = {:.6g}", format_point(va),
                                    obj(va), ens.time()));
  out.summary.push_back(fmt::format("final W2^2 to the consensus point {:.6g} (tolerance {:.3g})", spread, tol));
  out.summary.push_back(fmt::format("final W2^2 to the minimizer {:.6g}", w2_to_dirac(ens.positions, v_star)));
  out.assertions_hold = spread <= tol;
  return out;
}

Outcome decay_fit(const RunContext& ctx) {
  const auto& c = ctx.config;
  const auto obj = objective_of(c);
  if (!obj.known_minimizer) throw ConfigError("decay-fit needs an objective with a known minimizer");
  const auto params = params_of(c);
  const auto d = static_cast<std::size_t>(obj.dim);
  ParticleEnsemble ens{initial_of(c, d).sample(c.count("cbo.particles"), d, c.seed()), params, c.seed()};
  const Vec& v_star = *obj.known_minimizer;
  DecaySeries series{"w2_sq", {}, {}};
  series.push(0.0, w2_to_dirac(ens.positions, v_star));
  const auto steps = c.count("cbo.steps");
  for (std::size_t k = 0; k < steps; ++k) {
    cbo_step(ens, obj, ctx.workers);
    series.push(ens.time(), w2_to_dirac(ens.positions, v_star));
  }
  CsvWriter csv(ctx.output / "decay.csv", {"t", "w2_sq"});
  for (std::size_t i = 0; i < series.times.size(); ++i) csv.row({num(series.times[i]), num(series.values[i])});

  double t0 = c.real("diagnostics.fit_t0");
  double t1 = c.real("diagnostics.fit_t1");
  if (t0 < 0.0) t0 = 5.0 * params.dt;
  if (t1 < 0.0) t1 = series.times.back();
  const auto fit = fit_exponential_rate(series, t0, t1);
  CsvWriter fit_csv(ctx.output / "fit.csv", {"t0", "t1", "rate", "intercept", "r_squared", "samples"});
  fit_csv.row({num(t0), num(t1), num(fit.rate), num(fit.intercept), num(fit.r_squared), std::to_string(fit.samples)});

  const double lo = c.real("diagnostics.rate_min");
  const double hi = c.real("diagnostics.rate_max");
  const double r2 = c.real("diagnostics.r2_min");
  Outcome out;
  out.summary.push_back(fmt::format("fitted rate {:.6g} on [{:.4g}, {:.4g}], r^2 = {:.6f}", fit.rate, t0, t1,
                                    fit.r_squared));
  out.summary.push_back(fmt::format("reference 2 lambda - d sigma^2 = {:.6g}",
                                    2 * params.lambda - static_cast<double>(d) * params.sigma * params.sigma));
  out.summary.push_back(fmt::format("expected rate in [{:.4g}, {:.4g}] with r^2 >= {:.4g}", lo, hi, r2));
  out.assertions_hold = fit.rate >= lo && fit.rate <= hi && fit.r_squared >= r2;
  return out;
}

Outcome mfl_scaling(const RunContext& ctx) {
  const auto& c = ctx.config;
  const auto obj = objective_of(c);
  CouplingExperiment exp;
  exp.sizes = c.counts("diagnostics.sizes");
  exp.reference_size = c.count("diagnostics.reference_size");
  exp.horizon = c.real("diagnostics.horizon");
  exp.seed = c.seed();
  exp.replicates = c.count("diagnostics.replicates");
  exp.initial = initial_of(c, static_cast<std::size_t>(obj.dim));
  const auto rows = run_coupling(exp, obj, params_of(c), ctx.workers);
  CsvWriter csv(ctx.output / "scaling.csv", {"N", "error"});
  for (const auto& r : rows) csv.row({std::to_string(r.size), num(r.error)});
  const auto fit = mfa_scaling_fit(rows);
  const double lo = c.real("diagnostics.slope_min");
  const double hi = c.real("diagnostics.slope_max");
  Outcome out;
  out.summary.push_back(fmt::format("log-log slope {:.6g} over {} sizes (reference N = {})", fit.slope,
                                    fit.used, exp.reference_size));
  out.summary.push_back(fmt::format("expected slope in [{:.4g}, {:.4g}]", lo, hi));
  out.assertions_hold = fit.slope >= lo && fit.slope <= hi;
  return out;
}

Outcome success_prob(const RunContext& ctx) {
  const auto& c = ctx.config;
  SuccessSpec spec;
  spec.objective = objective_of(c);
  spec.params = params_of(c);
  spec.particles = c.count("cbo.particles");
  spec.steps = c.count("cbo.steps");
  spec.initial = initial_of(c, static_cast<std::size_t>(spec.objective.dim));
  spec.base_seed = c.seed();
  const auto report = success_probability(spec, c.count("diagnostics.runs"), c.real("diagnostics.epsilon"),
                                          ctx.workers);
  CsvWriter csv(ctx.output / "success.csv", {"run", "seed", "final_error", "diverged", "hit"});
  for (std::size_t r = 0; r < report.runs; ++r)
    csv.row({std::to_string(r), std::to_string(spec.base_seed + r), num(report.final_error[r]),
             report.diverged[r] ? "1" : "0", report.final_error[r] <= report.epsilon ? "1" : "0"});
  const double floor = c.real("diagnostics.success_min");
  Outcome out;
  out.summary.push_back(fmt::format("success fraction {:.6g} ({} of {} runs within {:.4g})", report.fraction,
                                    report.hits, report.runs, report.epsilon));
  out.summary.push_back(fmt::format("expected fraction >= {:.4g}", floor));
  out.assertions_hold = report.fraction >= floor;
  return out;
}

// --- density experiments ---

// Retained Fourier coefficients, one row per mode.
void write_modes(const std::filesystem::path& path, const SpectralField& field) {
  const auto& grid = field.grid();
  std::vector<std::string> header = indexed("k", static_cast<std::size_t>(grid.dim));
  header.insert(header.end(), {"re", "im"});
  CsvWriter csv(path, header);
  const int K = grid.K;
  const int K2 = grid.dim == 2 ? K : 0;
  for (int k1 = -K; k1 <= K; ++k1)
    for (int k2 = -K2; k2 <= K2; ++k2) {
      const auto z = field.at(k1, k2);
      std::vector<std::string> row{std::to_string(k1)};
      if (grid.dim == 2) row.push_back(std::to_string(k2));
      row.push_back(num(z.real()));
      row.push_back(num(z.imag()));
      csv.row(row);
    }
}

Outcome pde_run(const RunContext& ctx) {
  const auto& c = ctx.config;
  PdeSolver solver(problem_of(c), ctx.workers);
  auto field = normalized_bump(solver, bump_of(c, solver.grid()));
  const double horizon = horizon_of(c);
  const double dt = step_of(c, solver, field, horizon);
  const auto every = record_every_of(c);
  const auto d = static_cast<std::size_t>(solver.grid().dim);
  const bool cbo = solver.problem().form == EquationForm::cbo_form;

  std::vector<std::string> header{"t", "snapshot", "mass", "grid_min", "l2_sq", "weighted_h1"};
  if (cbo)
    for (auto& h : indexed("valpha", d)) header.push_back(h);
  CsvWriter csv(ctx.output / "pde.csv", header);
  std::filesystem::create_directories(ctx.output / "snapshots");
  std::size_t step = 0;
  std::size_t snapshots = 0;
  double worst_mass = 0.0;
  solver.integrate(field, horizon, dt, [&](double t, const SpectralField& f, std::span<const double> va) {
    worst_mass = std::max(worst_mass, std::abs(mass(f) - 1.0));
    if (step++ % every != 0 && std::abs(t - horizon) > 0.5 * dt) return;
    const auto values = solver.grid_values(f);
    const Snapshot snap{t, f};
    const auto energy = energy_monitor(solver, std::span(&snap, 1)).front();
    const auto name = fmt::format("modes_{:04}.csv", snapshots++);
    write_modes(ctx.output / "snapshots" / name, f);
    std::vector<std::string> row{num(t), name, num(mass(f)), num(*std::min_element(values.begin(), values.end())),
                                 num(energy.l2_sq), num(energy.weighted_h1)};
    if (cbo) append(row, va);
    csv.row(row);
  });

  std::vector<std::string> grid_header = indexed("v", d);
  grid_header.push_back("rho");
  CsvWriter density(ctx.output / "density.csv", grid_header);
  const auto values = solver.grid_values(field);
  Vec v(d);
  for (std::size_t i = 0; i < values.size(); ++i) {
    grid_point(solver.grid(), i, v);
    std::vector<std::string> row;
    append(row, v);
    row.push_back(num(values[i]));
    density.row(row);
  }
  Outcome out;
  out.summary.push_back(fmt::format("{} run to t = {:.6g} with dt = {:.6g}", to_string(solver.problem().form),
                                    horizon, dt));
  out.summary.push_back(fmt::format("sup_t |mass - 1| = {:.6g}", worst_mass));
  if (cbo) out.summary.push_back("final consensus point " + format_point(solver.consensus(field, horizon)));
  return out;
}

Outcome positivity(const RunContext& ctx) {
  const auto& c = ctx.config;
  PdeProblem problem = problem_of(c);
  if (problem.form != EquationForm::cbo_form) throw ConfigError("positivity needs pde.form = cbo_form");
  PdeSolver solver(std::move(problem), ctx.workers);
  auto field = normalized_bump(solver, bump_of(c, solver.grid()));
  const double horizon = horizon_of(c);
  const double dt = step_of(c, solver, field, horizon);
  const auto every = record_every_of(c);
  const double r_in = c.real("diagnostics.r_exclude");
  const double r_out = c.real("diagnostics.r_outer");
  const double threshold = c.real("diagnostics.positivity_threshold");
  const auto d = static_cast<std::size_t>(solver.grid().dim);

  std::vector<std::string> header{"t", "mass", "annulus_min"};
  for (auto& h : indexed("valpha", d)) header.push_back(h);
  for (auto& h : indexed("argmin", d)) header.push_back(h);
  CsvWriter csv(ctx.output / "positivity.csv", header);
  std::size_t step = 0;
  double worst_mass = 0.0;
  ProbeResult last;
  Vec last_va;
  solver.integrate(field, horizon, dt, [&](double t, const SpectralField& f, std::span<const double> va) {
    worst_mass = std::max(worst_mass, std::abs(mass(f) - 1.0));
    const bool final = std::abs(t - horizon) <= 0.5 * dt;
    if (step++ % every != 0 && !final) return;
    last = positivity_probe(solver, f, va, r_in, r_out);
    last_va.assign(va.begin(), va.end());
    std::vector<std::string> row{num(t), num(mass(f)), num(last.min_value)};
    append(row, va);
    append(row, last.argmin);
    csv.row(row);
  });
  Outcome out;
  out.assertions_hold = last.min_value > threshold;
  out.summary.push_back(out.assertions_hold
                            ? "min density on annulus > 0"
                            : fmt::format("min density on annulus not above the solver floor {:.3g}", threshold));
  out.summary.push_back(fmt::format("annulus {:.4g} <= |v - v_alpha| <= {:.4g} at t = {:.6g}: min {:.6g} at {} "
                                    "({} grid points)",
                                    r_in, r_out, horizon, last.min_value, format_point(last.argmin), last.points));
  out.summary.push_back("consensus point " + format_point(last_va));
  out.summary.push_back(fmt::format("dt = {:.6g}, sup_t |mass - 1| = {:.6g}", dt, worst_mass));
  return out;
}

Outcome confinement_1d(const RunContext& ctx) {
  const auto& c = ctx.config;
  PdeProblem problem = problem_of(c);
  if (problem.grid.dim != 1) throw ConfigError("confinement-1d needs pde.dim = 1");
  if (problem.form != EquationForm::cbo_form) throw ConfigError("confinement-1d needs pde.form = cbo_form");
  const double v_star = c.real("diagnostics.v_star");
  problem.valpha_mode = ValphaMode::frozen_path;
  problem.frozen_path = ValphaPath::constant({v_star});
  PdeSolver solver(std::move(problem), ctx.workers);
  auto field = normalized_bump(solver, bump_of(c, solver.grid()));
  const double horizon = horizon_of(c);
  const double dt = step_of(c, solver, field, horizon);
  const auto every = record_every_of(c);
  CsvWriter csv(ctx.output / "confinement.csv", {"t", "mass_right", "mass"});
  std::size_t step = 0;
  double worst = 0.0;
  double worst_t = 0.0;
  solver.integrate(field, horizon, dt, [&](double t, const SpectralField& f, std::span<const double>) {
    const double right = confinement_probe_1d(solver, f, v_star);
    if (right > worst) {
      worst = right;
      worst_t = t;
    }
    if (step++ % every == 0 || std::abs(t - horizon) <= 0.5 * dt) csv.row({num(t), num(right), num(mass(f))});
  });
  const double tol = c.real("diagnostics.confinement_tolerance");
  Outcome out;
  out.summary.push_back(fmt::format("sup over t <= {:.6g} of the mass right of v* = {:.6g}: {:.6g} (at t = {:.6g})",
                                    horizon, v_star, worst, worst_t));
  out.summary.push_back(fmt::format("tolerance {:.3g}, dt = {:.6g}", tol, dt));
  out.assertions_hold = worst <= tol;
  return out;
}

// --- coefficient checks ---

void write_ratios(const std::filesystem::path& path, const InequalityReport& report) {
  CsvWriter csv(path, {"quantity", "sup", "inf", "samples", "flagged", "satisfied"});
  for (const auto& r : report.rows)
    csv.row({r.quantity, num(r.sup), num(r.inf), std::to_string(r.samples), std::to_string(r.flagged),
             r.satisfied ? "1" : "0"});
}

Outcome assumptions_check(const RunContext& ctx) {
  const auto& c = ctx.config;
  const auto d = static_cast<std::size_t>(c.integer("objective.dim"));
  const auto base = builtin_coefficients(c.text("coefficients.name"), point_of(c, "coefficients.center", d));
  const double radius = c.real("diagnostics.radius");
  if (!(radius > 0.0)) throw ConfigError("diagnostics.radius must be positive");
  const RadialSampler sampler{{{0.0, radius}}, c.count("diagnostics.samples"), c.seed()};
  const auto report = verify_assumption_g1(base, sampler, static_cast<int>(c.integer("diagnostics.max_order")),
                                           c.real("diagnostics.bound"), 0.0, c.real("cutoff.h_fd"));
  write_ratios(ctx.output / "ratios.csv", report);

  // growth of the objective on the same box
  const auto obj = objective_of(c);
  const GrowthSampler growth{-radius, radius, c.count("diagnostics.samples"), c.seed()};
  const auto raw = check_growth_conditions(obj, growth, GrowthConstants{});
  const auto constants = fit_growth_constants(raw, 0.5 * radius);
  CsvWriter csv(ctx.output / "growth.csv", {"constant", "value"});
  csv.row({"lipschitz", num(constants.lipschitz)});
  csv.row({"upper", num(constants.upper)});
  csv.row({"lower", num(constants.lower)});
  csv.row({"radius_M", num(constants.radius_M)});

  Outcome out;
  for (const auto& r : report.rows)
    out.summary.push_back(fmt::format("{:8} sup {:.6g} inf {:.6g} flagged {} -> {}", r.quantity, r.sup, r.inf,
                                      r.flagged, r.satisfied ? "ok" : "violated"));
  out.summary.push_back(fmt::format("{} growth constants: lipschitz {:.6g}, upper {:.6g}, lower {:.6g} (|v| >= {:.4g})",
                                    obj.name, constants.lipschitz, constants.upper, constants.lower,
                                    constants.radius_M));
  out.assertions_hold = report.all_satisfied();
  return out;
}

Outcome lemma_check(const RunContext& ctx) {
  const auto& c = ctx.config;
  const auto d = static_cast<std::size_t>(c.integer("objective.dim"));
  const Vec center = point_of(c, "coefficients.center", d);
  const auto base = builtin_coefficients(c.text("coefficients.name"), center);
  CutoffSpec spec;
  spec.R = c.real("cutoff.R") != 0.0 ? c.real("cutoff.R") : 5.0;
  // CBO choice n = (R + sup |v_alpha| + 1)^2 unless given
  spec.n = c.real("cutoff.n") != 0.0 ? c.real("cutoff.n")
                                     : std::pow(spec.R + std::sqrt(squared_norm(center)) + 1.0, 2);
  spec.h_table = c.real("cutoff.h_table");
  spec.h_fd = c.real("cutoff.h_fd");
  spec.validate();
  const auto samples = c.count("diagnostics.samples");
  const double bound = c.real("diagnostics.bound");
  const auto coarse = verify_lemma_g4(base, spec, lemma_bands(spec, samples, c.seed()), bound);
  const auto fine = verify_lemma_g4(base, spec, lemma_bands(spec, 2 * samples, c.seed()), bound);
  const double tol = c.real("diagnostics.refine_tolerance");

  CsvWriter csv(ctx.output / "lemma.csv", {"quantity", "sup", "sup_refined", "relative_change", "flagged"});
  Outcome out;
  out.summary.push_back(fmt::format("cutoff R = {:.6g}, n = {:.6g}; {} vs {} samples", spec.R, spec.n, samples,
                                    2 * samples));
  for (const auto& row : coarse.rows) {
    const auto& refined = fine[row.quantity];
    const double change = row.sup == 0.0 ? std::abs(refined.sup) : std::abs(refined.sup - row.sup) / row.sup;
    const bool ok = std::isfinite(row.sup) && std::isfinite(refined.sup) && row.flagged + refined.flagged == 0 &&
                    change <= tol && refined.sup <= bound;
    out.assertions_hold = out.assertions_hold && ok;
    csv.row({row.quantity, num(row.sup), num(refined.sup), num(change), std::to_string(row.flagged + refined.flagged)});
    out.summary.push_back(fmt::format("{:8} sup {:.6g} -> {:.6g} (change {:.3g}) -> {}", row.quantity, row.sup,
                                      refined.sup, change, ok ? "stable" : "unstable"));
  }
  return out;
}

}  // namespace

Outcome run_experiment(const RunContext& ctx) {
  switch (ctx.config.experiment()) {
    case Experiment::optimize: return optimize(ctx);
    case Experiment::pde_run: return pde_run(ctx);
    case Experiment::positivity: return positivity(ctx);
    case Experiment::confinement_1d: return confinement_1d(ctx);
    case Experiment::mfl_scaling: return mfl_scaling(ctx);
    case Experiment::decay_fit: return decay_fit(ctx);
    case Experiment::assumptions_check: return assumptions_check(ctx);
    case Experiment::lemma_check: return lemma_check(ctx);
    case Experiment::success_prob: return success_prob(ctx);
  }
  throw ConfigError("experiment: unhandled");
}

}  // namespace cbolab::cli
