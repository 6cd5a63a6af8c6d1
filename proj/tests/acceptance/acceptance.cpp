// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <fmt/core.h>

#include "cbolab/consensus.hpp"
#include "cbolab/cutoffs.hpp"
#include "cbolab/diagnostics.hpp"
#include "cbolab/galerkin_matrix.hpp"
#include "cbolab/objectives.hpp"
#include "cbolab/particle.hpp"
#include "cbolab/pde.hpp"

using namespace cbolab;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

Verdict dirac_contraction() {
  Stopwatch clock;
  CboParams params{1.0, 0.1, 20.0, 0.01};
  InitialDistribution init{InitialDistribution::Kind::uniform, {0.0, 0.0}, 3.0};
  ParticleEnsemble ens{init.sample(2000, 2, 1), params, 1};
  const auto obj = builtin_objective("quadratic", 2);
  const Vec origin{0.0, 0.0};
  DecaySeries series{"w2_sq", {}, {}};
  series.push(0.0, w2_to_dirac(ens.positions, origin));
  for (int k = 0; k < 400; ++k) {
    cbo_step(ens, obj);
    series.push(ens.time(), w2_to_dirac(ens.positions, origin));
  }
  const auto fit = fit_exponential_rate(series, 5 * params.dt, 4.0);
  const double t = clock.seconds();
  return {fit.rate >= 1.0 && fit.rate <= 2.0 && fit.r_squared >= 0.95 && t < 30.0,
          fmt::format("rate {:.4f} in [1, 2], r2 {:.5f} >= 0.95, {:.1f} s < 30 s", fit.rate,
                      fit.r_squared, t)};
}

Verdict mean_field_scaling() {
  Stopwatch clock;
  CboParams params{1.0, 0.5, 1.0, 0.01};
  CouplingExperiment exp;
  exp.sizes = {64, 256, 1024, 4096};
  exp.reference_size = 16384;
  exp.horizon = 1.0;
  exp.seed = 100;
  exp.replicates = 32;
  exp.initial = {InitialDistribution::Kind::gaussian, {1.0, 1.0}, 1.0};
  const auto rows = run_coupling(exp, builtin_objective("quadratic", 2), params);
  const auto fit = mfa_scaling_fit(rows);
  const double t = clock.seconds();
  std::string errs;
  for (const auto& r : rows) errs += fmt::format(" {}:{:.3g}", r.size, r.error);
  return {fit.slope >= -1.3 && fit.slope <= -0.7 && t < 180.0,
          fmt::format("slope {:.3f} in [-1.3, -0.7],{} ({:.1f} s < 180 s)", fit.slope, errs, t)};
}

// The d = 2 CBO density run shared by criteria 3, 6 and 10.
struct DensityRun {
  double seconds = 0.0;
  double dt = 0.0;
  double min_on_annulus = 0.0;
  double worst_mass_defect = 0.0;
  std::vector<double> times;
  std::vector<Vec> consensus;
};

DensityRun density_run(double dt_scale) {
  GridSpec grid{2, 8.0, 64, 256};
  grid.center = {2.0, 2.0};
  PdeProblem p;
  p.grid = grid;
  p.form = EquationForm::cbo_form;
  p.objective = builtin_objective("quadratic", 2);
  p.alpha = 1.0;
  p.lambda = 0.3;
  p.sigma = 0.5;
  p.valpha_mode = ValphaMode::self_consistent;
  p.cutoff = desk_cutoff(grid.L);
  Stopwatch clock;
  PdeSolver solver(p);
  auto field = normalized_bump(solver, Bump{{2.0, 2.0}, 2.75, 3.0, 1.0});
  const double horizon = 0.5;
  const double bound = solver.stability_bound(field, 0.0);
  const double steps = std::ceil(horizon / (0.9 * bound * dt_scale));
  DensityRun run;
  run.dt = horizon / steps;
  solver.integrate(field, horizon, run.dt, [&](double t, const SpectralField& f, std::span<const double> va) {
    run.times.push_back(t);
    run.consensus.emplace_back(va.begin(), va.end());
    run.worst_mass_defect = std::max(run.worst_mass_defect, std::abs(mass(f) - 1.0));
  });
  run.min_on_annulus = positivity_probe(solver, field, run.consensus.back(), 0.25, 5.0).min_value;
  run.seconds = clock.seconds();
  return run;
}

Verdict positivity(const DensityRun& run) {
  return {run.min_on_annulus > 1e-12 && run.seconds < 120.0,
          fmt::format("min on annulus {:.3g} > 1e-12 at t = 0.5, dt {:.3g}, {:.1f} s < 120 s",
                      run.min_on_annulus, run.dt, run.seconds)};
}

Verdict confinement() {
  Stopwatch clock;
  PdeProblem p;
  p.grid = {1, 8.0, 512, 2048};
  p.form = EquationForm::cbo_form;
  p.objective = builtin_objective("quadratic", 1);
  p.lambda = 1.0;
  p.sigma = 0.2;
  p.valpha_mode = ValphaMode::frozen_path;
  p.frozen_path = ValphaPath::constant({0.0});
  p.cutoff = desk_cutoff(p.grid.L);
  PdeSolver solver(p);
  auto field = normalized_bump(solver, Bump{{-2.25}, 1.75, 1.0});
  double worst = 0.0;
  double worst_t = 0.0;
  solver.integrate(field, 1.0, 0.0, [&](double t, const SpectralField& f, std::span<const double>) {
    const double c = confinement_probe_1d(solver, f, 0.0);
    if (c > worst) {
      worst = c;
      worst_t = t;
    }
  });
  const double t = clock.seconds();
  return {worst <= 1e-8 && t < 30.0,
          fmt::format("sup_t mass right of v* {:.3g} <= 1e-8 (at t = {:.3f}), {:.1f} s < 30 s", worst,
                      worst_t, t)};
}

Verdict form_equivalence() {
  // blobs stay far enough from the box edge that the non-periodic G and J
  // never see them; widths keep the spectrum resolved at K = 40
  const GridSpec grid{2, 10.0, 40, 160};
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * unit(rng); };
  SpectralTransform tr(grid);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const double lambda = uniform(0.1, 2.0);
    const double sigma = uniform(0.1, 2.0);
    const Vec va{uniform(-1.0, 1.0), uniform(-1.0, 1.0)};
    struct Blob {
      Vec c;
      double s;
      double w;
    };
    std::vector<Blob> blobs;
    for (int b = 0; b < 3; ++b)
      blobs.push_back({{uniform(-1.5, 1.5), uniform(-1.5, 1.5)}, uniform(0.7, 1.2), uniform(-0.5, 1.0)});

    PdeProblem p;
    p.grid = grid;
    p.form = EquationForm::cbo_form;
    p.objective = builtin_objective("quadratic", 2);
    p.lambda = lambda;
    p.sigma = sigma;
    p.valpha_mode = ValphaMode::frozen_path;
    p.frozen_path = ValphaPath::constant(va);
    p.truncate = false;
    PdeSolver solver(p);
    const auto rho = solver.project_initial([&](std::span<const double> v) {
      double s = 0.0;
      for (const auto& b : blobs) s += b.w * std::exp(-squared_distance(v, b.c) / (2 * b.s * b.s));
      return s;
    });

    // lambda div(J rho) + (sigma^2 / 2) lap(G rho) from grid products
    const auto values = tr.to_grid(rho);
    std::vector<double> g_rho(values.size()), j0_rho(values.size()), j1_rho(values.size());
    Vec v(2);
    for (std::size_t i = 0; i < values.size(); ++i) {
      grid_point(grid, i, v);
      const double dx = v[0] - va[0];
      const double dy = v[1] - va[1];
      g_rho[i] = (dx * dx + dy * dy) * values[i];
      j0_rho[i] = dx * values[i];
      j1_rho[i] = dy * values[i];
    }
    SpectralField direct(grid);
    tr.accumulate_from_grid(g_rho, direct, Multiplier::laplacian, 0.5 * sigma * sigma);
    tr.accumulate_from_grid(j0_rho, direct, Multiplier::d0, lambda);
    tr.accumulate_from_grid(j1_rho, direct, Multiplier::d1, lambda);

    const auto a = tr.to_grid(solver.rhs(rho, 0.0));
    const auto b = tr.to_grid(direct);
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  }
  return {worst <= 1e-8, fmt::format("max grid difference {:.3g} <= 1e-8 over 20 trials", worst)};
}

Verdict mass_conservation(const DensityRun& run) {
  return {run.worst_mass_defect <= 1e-3,
          fmt::format("sup_t |mass - 1| {:.3g} <= 1e-3 on the criterion 3 run", run.worst_mass_defect)};
}

Verdict galerkin_oracle() {
  const double L = 2.5;
  const double w = std::acos(-1.0) / L;
  CoefficientField f;
  f.dim = 1;
  f.G = [w](std::span<const double> v, double t) { return 1.2 + 0.4 * std::sin(w * v[0] - t); };
  f.J = [w](std::span<const double> v, double t, std::span<double> out) {
    out[0] = -0.2 + 0.5 * std::cos(w * v[0]) * (1.0 + t);
  };
  f.g = [w](std::span<const double> v, double t) { return 0.1 * std::sin(2 * w * v[0]) + 0.02 * t; };
  double worst = 0.0;
  for (auto form : {EquationForm::gradient_form, EquationForm::divergence_form})
    for (int K = 1; K <= 4; ++K)
      for (double t : {0.0, 0.3, 1.1}) {
        const GridSpec grid{1, L, K, 4 * K};
        PdeProblem p;
        p.grid = grid;
        p.form = form;
        p.coefficients = f;
        p.truncate = false;
        PdeSolver solver(p);
        SpectralField rho(grid);
        rho.at(0) = 0.5;
        for (int k = 1; k <= K; ++k) {
          rho.at(k) = {0.15 / k, 0.05 * k};
          rho.at(-k) = std::conj(rho.at(k));
        }
        const auto spectral = to_real_basis(solver.rhs(rho, t));
        const auto matrix = assemble_galerkin(grid, form, f, t).time_derivative(to_real_basis(rho));
        for (std::size_t i = 0; i < matrix.size(); ++i)
          worst = std::max(worst, std::abs(spectral[i] - matrix[i]));
      }
  return {worst <= 1e-10,
          fmt::format("max coefficient difference {:.3g} <= 1e-10 (K = 1..4, both forms)", worst)};
}

Verdict lemma_sups() {
  const auto base = cbo_coefficients(Vec{0.0, 0.0});
  CutoffSpec spec;
  spec.R = 5.0;
  spec.n = std::pow(spec.R + 0.0 + 1.0, 2);  // (R + sup|v_alpha| + 1)^2
  const auto coarse = verify_lemma_g4(base, spec, lemma_bands(spec, 10000, 0));
  const auto fine = verify_lemma_g4(base, spec, lemma_bands(spec, 20000, 0));
  bool ok = true;
  std::string rows;
  for (const auto& row : coarse.rows) {
    const double refined = fine[row.quantity].sup;
    const double change = std::abs(refined - row.sup) / row.sup;
    ok = ok && std::isfinite(row.sup) && std::isfinite(refined) && row.flagged == 0 && change <= 0.05;
    rows += fmt::format(" {} {:.4g}->{:.4g} ({:.2f}%)", row.quantity, row.sup, refined, 100 * change);
  }
  return {ok, "sups finite, change <= 5%:" + rows};
}

Verdict consensus_invariants() {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> size(1, 300);
  std::uniform_int_distribution<int> dim(1, 5);
  std::uniform_int_distribution<int> shift(-4096, 4096);
  std::uniform_real_distribution<double> coord(-10.0, 10.0);
  std::uniform_real_distribution<double> alpha_d(0.0, 100.0);
  std::size_t violations = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const auto n = static_cast<std::size_t>(size(rng));
    const auto d = static_cast<std::size_t>(dim(rng));
    Positions pos(n, d);
    for (double& x : pos.data()) x = coord(rng);
    // values on a dyadic grid so that f + c is exact
    std::vector<double> f(n), g(n);
    const double c = shift(rng);
    for (std::size_t i = 0; i < n; ++i) {
      f[i] = std::ldexp(std::round(std::ldexp(squared_norm(pos[i]) + coord(rng), 16)), -16);
      g[i] = f[i] + c;
    }
    const double alpha = alpha_d(rng);
    const auto a = consensus_point(pos, f, alpha);
    const auto b = consensus_point(pos, g, alpha);
    if (std::sqrt(squared_distance(a.point, b.point)) > 1e-12) ++violations;
    for (std::size_t j = 0; j < d; ++j) {
      double lo = INFINITY;
      double hi = -INFINITY;
      double mean = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        lo = std::min(lo, pos[i][j]);
        hi = std::max(hi, pos[i][j]);
        mean += pos[i][j];
      }
      mean /= static_cast<double>(n);
      if (a.point[j] < lo - 1e-12 || a.point[j] > hi + 1e-12) ++violations;
      if (std::abs(consensus_point(pos, f, 0.0).point[j] - mean) > 1e-12 * (1 + std::abs(mean)))
        ++violations;
    }
  }
  return {violations == 0, fmt::format("{} violations in 1000 random ensembles", violations)};
}

Verdict valpha_regularity(const DensityRun& coarse, const DensityRun& fine) {
  const double a = valpha_rate_check(coarse.times, coarse.consensus).speed;
  const double b = valpha_rate_check(fine.times, fine.consensus).speed;
  return {b < 2.0 * a, fmt::format("sup speed {:.4g} (dt {:.3g}) -> {:.4g} (dt {:.3g}), ratio {:.3f} < 2", a,
                                   coarse.dt, b, fine.dt, b / a)};
}

}  // namespace

// With arguments, only the listed criteria run.
int main(int argc, char** argv) {
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));
  int failures = 0;
  int ran = 0;
  auto report = [&](int id, const char* name, const std::function<Verdict()>& check) {
    if (!selected.empty() && !selected.contains(id)) return;
    ++ran;
    Verdict v;
    try {
      v = check();
    } catch (const std::exception& e) {
      v = {false, std::string("error: ") + e.what()};
    }
    if (!v.pass) ++failures;
    fmt::print("criterion {:2d} {} {}: {}\n", id, v.pass ? "PASS" : "FAIL", name, v.detail);
    std::fflush(stdout);
  };

  std::optional<DensityRun> run;
  auto shared_run = [&]() -> const DensityRun& {
    if (!run) run = density_run(1.0);
    return *run;
  };

  report(1, "dirac contraction", dirac_contraction);
  report(2, "mean-field scaling", mean_field_scaling);
  report(3, "positivity", [&] { return positivity(shared_run()); });
  report(4, "1d confinement", confinement);
  report(5, "form equivalence", form_equivalence);
  report(6, "mass conservation", [&] { return mass_conservation(shared_run()); });
  report(7, "galerkin oracle", galerkin_oracle);
  report(8, "lemma sups", lemma_sups);
  report(9, "consensus invariants", consensus_invariants);
  report(10, "consensus regularity", [&] { return valpha_regularity(shared_run(), density_run(0.5)); });

  fmt::print("{} of {} criteria passed\n", ran - failures, ran);
  return failures == 0 ? 0 : 1;
}
