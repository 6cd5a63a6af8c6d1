#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "cbolab/error.hpp"
#include "cbolab/pde.hpp"
#include "oracle_values.hpp"

using namespace cbolab;

namespace {

constexpr double kPi = std::numbers::pi;

CoefficientField constant_coefficients(int dim, double G, double J = 0.0) {
  CoefficientField f;
  f.dim = dim;
  f.G = [G](std::span<const double>, double) { return G; };
  f.J = [J](std::span<const double>, double, std::span<double> out) {
    for (double& x : out) x = J;
  };
  return f;
}

PdeProblem general_problem(GridSpec grid, CoefficientField f,
                           EquationForm form = EquationForm::gradient_form) {
  PdeProblem p;
  p.grid = grid;
  p.form = form;
  p.coefficients = std::move(f);
  p.truncate = false;
  return p;
}

PdeProblem cbo_problem(GridSpec grid, Vec frozen, bool truncate) {
  PdeProblem p;
  p.grid = grid;
  p.form = EquationForm::cbo_form;
  p.objective = builtin_objective("quadratic", grid.dim);
  p.valpha_mode = ValphaMode::frozen_path;
  p.frozen_path = ValphaPath::constant(std::move(frozen));
  p.truncate = truncate;
  p.cutoff = desk_cutoff(grid.L);
  return p;
}

double gaussian(std::span<const double> v, std::span<const double> c, double s) {
  double r2 = 0.0;
  for (std::size_t j = 0; j < v.size(); ++j) r2 += (v[j] - c[j]) * (v[j] - c[j]);
  return std::exp(-r2 / (2 * s * s)) / std::pow(2 * kPi * s * s, 0.5 * static_cast<double>(v.size()));
}

}  // namespace

TEST(GridSpec, Validation) {
  GridSpec g{1, 2.0, 8, 32};
  EXPECT_NO_THROW(g.validate());
  g.M = 30;
  EXPECT_THROW(g.validate(), ConfigError);
  g = {3, 2.0, 8, 32};
  EXPECT_THROW(g.validate(), ConfigError);
  g = {1, 2.0, 8, 33};
  EXPECT_THROW(g.validate(), ConfigError);
  g = {2, -1.0, 8, 32};
  EXPECT_THROW(g.validate(), ConfigError);
  EXPECT_DOUBLE_EQ((GridSpec{2, 3.0, 4, 16}.box_volume()), 36.0);
  EXPECT_DOUBLE_EQ((GridSpec{1, 2.0, 4, 16}.wavenumber(3)), 3 * kPi / 2.0);
}

TEST(SpectralTransform, RoundTripAndDerivative) {
  const GridSpec grid{1, 3.0, 6, 24};
  SpectralField f(grid);
  f.at(2) = {0.3, -0.1};
  f.at(-2) = std::conj(f.at(2));
  f.at(0) = 0.7;
  SpectralTransform tr(grid);
  const auto values = tr.to_grid(f);
  const auto back = tr.from_grid(values);
  EXPECT_LT(f.max_abs_difference(back), 1e-15);
  Vec v(1);
  for (int j = 0; j < grid.M; j += 5) {
    v[0] = grid.coordinate(j);
    EXPECT_NEAR(values[static_cast<std::size_t>(j)], f.evaluate(v), 1e-14);
  }
  // d/dv of 0.7 + 2 Re(c e^{i kappa v}) is -2 kappa Im(c e^{i kappa v})
  const auto deriv = tr.to_grid(f, Multiplier::d0);
  const double kappa = grid.wavenumber(2);
  for (int j = 0; j < grid.M; ++j) {
    const double x = grid.coordinate(j);
    const auto e = f.at(2) * std::exp(std::complex<double>(0.0, kappa * x));
    EXPECT_NEAR(deriv[static_cast<std::size_t>(j)], -2.0 * kappa * e.imag(), 1e-13);
  }
}

TEST(SpectralField, ConjugateSymmetryAndMass) {
  const GridSpec grid{2, 1.5, 3, 12};
  SpectralField f(grid);
  f.at(0, 0) = 0.25;
  EXPECT_DOUBLE_EQ(f.mass(), 0.25 * 9.0);
  EXPECT_DOUBLE_EQ(mass(SpectralField(grid)), 0.0);
  f.at(1, -2) = {0.1, 0.2};
  EXPECT_GT(f.conjugate_symmetry_defect(), 0.0);
  f.enforce_conjugate_symmetry();
  EXPECT_EQ(f.conjugate_symmetry_defect(), 0.0);
}

TEST(ProjectInitial, ConstantAndCosine) {
  const GridSpec grid{1, 4.0, 8, 32};
  PdeSolver solver(general_problem(grid, constant_coefficients(1, 1.0)));
  const auto c = solver.project_initial([](std::span<const double>) { return 0.125; });
  EXPECT_NEAR(c.at(0).real(), 0.125, 1e-15);
  for (int k = 1; k <= grid.K; ++k) EXPECT_LT(std::abs(c.at(k)), 1e-15);
  EXPECT_NEAR(mass(c), 0.125 * 8.0, 1e-14);

  const auto cosine = solver.project_initial(
      [&](std::span<const double> v) { return std::cos(grid.wavenumber(3) * v[0]); });
  for (int k = -grid.K; k <= grid.K; ++k) {
    const double expected = std::abs(k) == 3 ? 0.5 : 0.0;
    EXPECT_NEAR(cosine.at(k).real(), expected, 1e-14) << k;
    EXPECT_NEAR(cosine.at(k).imag(), 0.0, 1e-14) << k;
  }
}

TEST(ProjectInitial, SpectralAccuracyOfGaussianBump) {
  const Vec center{0.5, -0.3};
  auto error_at = [&](int K) {
    const GridSpec grid{2, 5.0, K, 4 * K};
    PdeSolver solver(general_problem(grid, constant_coefficients(2, 1.0)));
    auto density = [&](std::span<const double> v) { return gaussian(v, center, 0.6); };
    const auto field = solver.project_initial(density);
    const auto values = solver.grid_values(field);
    double err = 0.0;
    Vec v(2);
    for (std::size_t i = 0; i < values.size(); ++i) {
      grid_point(grid, i, v);
      err = std::max(err, std::abs(values[i] - density(v)));
    }
    return err;
  };
  const double e6 = error_at(6);
  const double e12 = error_at(12);
  const double e24 = error_at(24);
  EXPECT_LT(e24, 1e-8);
  // super-algebraic: each doubling gains more than the previous one
  EXPECT_GT(e6 / e12, 16.0);
  EXPECT_GT(std::log(e12 / e24), std::log(e6 / e12));
}

TEST(ProjectInitial, TaperRemovesFarField) {
  const GridSpec grid{1, 11.0, 16, 64};
  PdeSolver solver(cbo_problem(grid, {0.0}, true));
  const auto field = solver.project_initial([](std::span<const double>) { return 1.0; });
  const auto values = solver.grid_values(field);
  // R = 9 here; the taper is zero beyond |v| = 9, up to spectral ringing
  EXPECT_LT(std::abs(values[0]), 0.1);
  EXPECT_NEAR(values[values.size() / 2], 1.0, 0.1);
}

TEST(Rhs, ConstantFieldGradientForm) {
  const GridSpec grid{2, 2.0, 4, 16};
  PdeSolver solver(general_problem(grid, constant_coefficients(2, 3.0, 1.0)));
  SpectralField f(grid);
  f.at(0, 0) = 0.4;
  const auto r = rhs(solver, f, 0.0);
  EXPECT_NEAR(r.at(0, 0).real(), 0.4, 1e-15);
  SpectralField expected(grid);
  expected.at(0, 0) = 0.4;
  EXPECT_LT(r.max_abs_difference(expected), 1e-15);
}

TEST(Rhs, ConstantFieldCboForm) {
  for (int d : {1, 2}) {
    const GridSpec grid{d, 3.0, 4, 16};
    PdeSolver solver(cbo_problem(grid, Vec(static_cast<std::size_t>(d), 0.2), false));
    SpectralField f(grid);
    f.at(0, 0) = 0.5;
    const auto r = solver.rhs(f, 0.0);
    // the mean of the transport term <J, grad rho> vanishes, only 3 d rho is left at k = 0
    EXPECT_NEAR(r.at(0, 0).real(), 3.0 * d * 0.5, 1e-13) << d;
    EXPECT_LT(r.max_abs_difference([&] {
      SpectralField e(grid);
      e.at(0, 0) = 3.0 * d * 0.5;
      return e;
    }()), 1e-13);
  }
}

TEST(Rhs, PlaneWaveEigenvalue) {
  const GridSpec grid{2, kPi, 5, 20};
  const double G = 0.7;
  PdeSolver solver(general_problem(grid, constant_coefficients(2, G)));
  SpectralField f(grid);
  f.at(2, -1) = {0.3, 0.4};
  f.at(-2, 1) = std::conj(f.at(2, -1));
  const auto r = solver.rhs(f, 0.0);
  const double k2 = std::pow(grid.wavenumber(2), 2) + std::pow(grid.wavenumber(1), 2);
  const auto expected = (-G * k2 + 1.0) * f.at(2, -1);
  EXPECT_NEAR(std::abs(r.at(2, -1) - expected), 0.0, 1e-13);
  EXPECT_NEAR(std::abs(r.at(-2, 1) - std::conj(expected)), 0.0, 1e-13);
}

TEST(Rhs, LinearInFieldForFrozenPath) {
  const GridSpec grid{2, 6.0, 12, 48};
  PdeSolver solver(cbo_problem(grid, {0.5, -0.5}, true));
  const Vec c1{1.0, 0.0}, c2{-1.0, 1.0};
  const auto a = solver.project_initial([&](std::span<const double> v) { return gaussian(v, c1, 0.7); });
  const auto b = solver.project_initial([&](std::span<const double> v) { return gaussian(v, c2, 0.9); });
  SpectralField combo = a;
  combo *= 2.5;
  combo.axpy(-0.75, b);
  SpectralField expected = solver.rhs(a, 0.0);
  expected *= 2.5;
  expected.axpy(-0.75, solver.rhs(b, 0.0));
  const auto got = solver.rhs(combo, 0.0);
  EXPECT_LT(got.max_abs_difference(expected), 1e-12);
  EXPECT_EQ(got.conjugate_symmetry_defect(), 0.0);
}

TEST(Rhs, CboFormMatchesDirectDivergenceAssembly) {
  // lambda div(J rho) + (sigma^2 / 2) lap(G rho), assembled from grid products
  const GridSpec grid{2, 7.0, 24, 96};
  const Vec va{0.4, -0.2};
  for (auto [lambda, sigma] : {std::pair{1.0, std::sqrt(2.0)}, std::pair{0.6, 0.9}}) {
    auto problem = cbo_problem(grid, va, false);
    problem.lambda = lambda;
    problem.sigma = sigma;
    PdeSolver solver(problem);
    const Vec c{0.8, 0.3};
    const auto rho = solver.project_initial([&](std::span<const double> v) { return gaussian(v, c, 0.6); });

    SpectralTransform tr(grid);
    const auto values = tr.to_grid(rho);
    std::vector<double> G_rho(values.size()), J0_rho(values.size()), J1_rho(values.size());
    Vec v(2);
    for (std::size_t i = 0; i < values.size(); ++i) {
      grid_point(grid, i, v);
      const double dx = v[0] - va[0], dy = v[1] - va[1];
      G_rho[i] = (dx * dx + dy * dy) * values[i];
      J0_rho[i] = dx * values[i];
      J1_rho[i] = dy * values[i];
    }
    SpectralField direct(grid);
    tr.accumulate_from_grid(G_rho, direct, Multiplier::laplacian, 0.5 * sigma * sigma);
    tr.accumulate_from_grid(J0_rho, direct, Multiplier::d0, lambda);
    tr.accumulate_from_grid(J1_rho, direct, Multiplier::d1, lambda);

    EXPECT_LT(solver.rhs(rho, 0.0).max_abs_difference(direct), 1e-8) << lambda;
  }
}

TEST(Step, ZeroRhsLeavesFieldUnchanged) {
  // gradient form with G = J = 0 and g = -rho frozen
  const GridSpec grid{1, 2.0, 4, 16};
  SpectralField rho(grid);
  rho.at(1) = {0.2, 0.1};
  rho.at(-1) = std::conj(rho.at(1));
  rho.at(0) = 0.3;
  auto f = constant_coefficients(1, 0.0);
  f.g = [&](std::span<const double> v, double) { return -rho.evaluate(v); };
  PdeSolver solver(general_problem(grid, f));
  SpectralField x = rho;
  for (int k = 0; k < 10; ++k) step(solver, x, 0.1 * k, 0.1);
  EXPECT_LT(x.max_abs_difference(rho), 1e-14);
}

TEST(Step, PlaneWaveDecayPerStep) {
  const GridSpec grid{1, kPi, 4, 16};
  const double G = 1.0;
  PdeSolver solver(general_problem(grid, constant_coefficients(1, G)));
  SpectralField f(grid);
  f.at(4) = 0.5;
  f.at(-4) = 0.5;
  const double mu = -G * 16.0 + 1.0;
  for (double dt : {0.02, 0.01}) {
    SpectralField x = f;
    solver.step(x, 0.0, dt);
    // one RK4 step matches exp(mu dt) up to (mu dt)^5 / 120
    const double z = mu * dt;
    EXPECT_NEAR(x.at(4).real(), 0.5 * (1 + z + z * z / 2 + z * z * z / 6 + z * z * z * z / 24), 1e-15);
    EXPECT_NEAR(x.at(4).real(), 0.5 * std::exp(z), 0.5 * std::pow(std::abs(z), 5) / 100.0);
  }
}

TEST(Step, FourthOrderConvergence) {
  const GridSpec grid{1, kPi, 4, 16};
  PdeSolver solver(general_problem(grid, constant_coefficients(1, 1.0)));
  SpectralField f(grid);
  f.at(4) = 0.5;
  f.at(-4) = 0.5;
  auto run = [&](double dt) {
    SpectralField x = f;
    solver.integrate(x, 0.4, dt);
    return x;
  };
  // exact ratio of the RK4 polynomial here is 17.09
  const auto ref = run(0.01 / 8);
  const double e1 = run(0.01).max_abs_difference(ref);
  const double e2 = run(0.005).max_abs_difference(ref);
  EXPECT_GT(e1 / e2, 14.0);
  EXPECT_LT(e1 / e2, 18.0);
}

TEST(Step, RefusesUnstableStep) {
  const GridSpec grid{1, kPi, 4, 16};
  PdeSolver solver(general_problem(grid, constant_coefficients(1, 1.0)));
  SpectralField f(grid);
  f.at(0) = 1.0;
  const double bound = solver.stability_bound(f, 0.0);
  EXPECT_NEAR(bound, 2.0 / 16.0, 1e-12);
  EXPECT_THROW(solver.step(f, 0.0, 1.01 * bound), ConfigError);
  EXPECT_NO_THROW(solver.step(f, 0.0, 0.99 * bound));
  EXPECT_THROW(solver.integrate(f, 1.0, 0.3), ConfigError);
  EXPECT_THROW(solver.integrate(f, -1.0, 0.0), ConfigError);
}

TEST(Integrate, ObserverSeesEveryStepAndAutoStepHitsHorizon) {
  const GridSpec grid{1, kPi, 4, 16};
  PdeSolver solver(general_problem(grid, constant_coefficients(1, 1.0)));
  SpectralField f(grid);
  f.at(0) = 1.0;
  std::vector<double> times;
  const double dt = solver.integrate(f, 1.0, 0.0, [&](double t, const SpectralField&, std::span<const double>) {
    times.push_back(t);
  });
  ASSERT_GE(times.size(), 2u);
  EXPECT_EQ(times.front(), 0.0);
  EXPECT_NEAR(times.back(), 1.0, 1e-12);
  EXPECT_LE(dt, 0.9 * 2.0 / 16.0 + 1e-15);
  EXPECT_NEAR(f.at(0).real(), std::exp(1.0), 1e-5);  // +rho term only
}

TEST(CboSolver, MatchesFiniteDifferenceOracle) {
  const GridSpec grid{1, 8.0, 128, 512};
  PdeProblem p;
  p.grid = grid;
  p.form = EquationForm::cbo_form;
  p.objective = builtin_objective("quadratic", 1);
  p.alpha = 1.0;
  p.lambda = 1.0;
  p.sigma = 1.0;
  p.valpha_mode = ValphaMode::self_consistent;
  p.cutoff = desk_cutoff(grid.L);
  PdeSolver solver(p);
  auto field = solver.project_initial([](std::span<const double> v) {
    const Vec c{1.0};
    return gaussian(v, c, 0.5);
  });
  EXPECT_NEAR(mass(field), 1.0, 1e-10);
  solver.integrate(field, 0.1, 0.0);
  Vec v(1);
  double worst = 0.0;
  for (std::size_t i = 0; i < oracle::fd_probes.size(); ++i) {
    v[0] = oracle::fd_probes[i];
    worst = std::max(worst, std::abs(field.evaluate(v) - oracle::fd_values[i]));
  }
  EXPECT_LE(worst, 1e-4);
  EXPECT_NEAR(mass(field), 1.0, 1e-3);
}

TEST(CboSolver, SelfConsistentConsensusOfSymmetricBump) {
  const GridSpec grid{2, 6.0, 16, 64};
  PdeProblem p = cbo_problem(grid, {0.0, 0.0}, true);
  p.valpha_mode = ValphaMode::self_consistent;
  PdeSolver solver(p);
  const auto field = solver.project_initial([](std::span<const double> v) {
    const Vec c{0.0, 0.0};
    return gaussian(v, c, 0.8);
  });
  const auto va = solver.consensus(field, 0.0);
  EXPECT_NEAR(va[0], 0.0, 1e-12);
  EXPECT_NEAR(va[1], 0.0, 1e-12);
}

TEST(Probes, PositivityOfConstantAndFreshBump) {
  const GridSpec grid{2, 4.0, 32, 128};
  PdeSolver solver(general_problem(grid, constant_coefficients(2, 1.0)));
  SpectralField f(grid);
  f.at(0, 0) = 0.3;
  const Vec va{0.0, 0.0};
  const auto pr = positivity_probe(solver, f, va, 0.5, 2.0);
  EXPECT_NEAR(pr.min_value, 0.3, 1e-15);
  EXPECT_GT(pr.points, 0u);
  EXPECT_THROW(positivity_probe(solver, f, va, 0.01, 0.02), DomainError);

  const auto bump = solver.project_initial([](std::span<const double> v) {
    const Vec c{1.5, 0.0};
    return gaussian(v, c, 0.3);
  });
  // far side of the annulus carries no mass yet, up to spectral ringing
  EXPECT_LT(std::abs(positivity_probe(solver, bump, va, 1.0, 2.0).min_value), 1e-8);
}

TEST(Probes, PositivityAnnulusMustAvoidTaper) {
  GridSpec grid{2, 8.0, 8, 32};
  grid.center = {2.0, 2.0};
  PdeSolver solver(cbo_problem(grid, {1.0, 1.0}, true));
  SpectralField f(grid);
  f.at(0, 0) = 0.1;
  // R = 72/11 = 6.545; |va - c| = 1.414
  EXPECT_NO_THROW(positivity_probe(solver, f, Vec{1.0, 1.0}, 0.25, 5.0));
  EXPECT_THROW(positivity_probe(solver, f, Vec{1.0, 1.0}, 0.25, 5.2), DomainError);
  EXPECT_THROW(positivity_probe(solver, f, Vec{1.0, 1.0}, 2.0, 1.0), DomainError);

  PdeSolver open(general_problem(GridSpec{2, 4.0, 8, 32}, constant_coefficients(2, 1.0)));
  SpectralField g(open.grid());
  EXPECT_THROW(positivity_probe(open, g, Vec{1.0, 0.0}, 0.5, 3.5), DomainError);
}

TEST(Probes, ConfinementOfSymmetricAndLeftSupported) {
  const GridSpec grid{1, 6.0, 64, 256};
  PdeSolver solver(general_problem(grid, constant_coefficients(1, 1.0)));
  const double on_grid = grid.coordinate(139);
  const auto sym = solver.project_initial([&](std::span<const double> v) {
    const Vec c{on_grid};
    return gaussian(v, c, 0.7);
  });
  EXPECT_NEAR(confinement_probe_1d(solver, sym, on_grid), 0.5, 1e-12);
  const auto off = solver.project_initial([](std::span<const double> v) {
    const Vec c{0.5};
    return gaussian(v, c, 0.7);
  });
  EXPECT_NEAR(confinement_probe_1d(solver, off, 0.5), 0.5, 1e-4);
  const auto left = solver.project_initial([](std::span<const double> v) {
    const Vec c{-2.0};
    return gaussian(v, c, 0.3);
  });
  EXPECT_LT(confinement_probe_1d(solver, left, 0.0), 1e-10);

  const GridSpec grid2{2, 6.0, 8, 32};
  PdeSolver solver2(general_problem(grid2, constant_coefficients(2, 1.0)));
  EXPECT_THROW(confinement_probe_1d(solver2, SpectralField(grid2), 0.0), DomainError);
}

TEST(Energy, ZeroAndPlaneWave) {
  const GridSpec grid{2, 2.0, 4, 16};
  PdeSolver solver(general_problem(grid, constant_coefficients(2, 2.0)));
  const double a = 0.6;
  SpectralField wave(grid);
  wave.at(1, 2) = a / 2;
  wave.at(-1, -2) = a / 2;
  std::vector<Snapshot> history{{0.0, SpectralField(grid)}, {0.5, wave}};
  const auto e = energy_monitor(solver, history);
  ASSERT_EQ(e.size(), 2u);
  EXPECT_EQ(e[0].l2_sq, 0.0);
  EXPECT_EQ(e[0].weighted_h1, 0.0);
  EXPECT_NEAR(e[1].l2_sq, a * a * grid.box_volume() / 2, 1e-13);
  const double k2 = std::pow(grid.wavenumber(1), 2) + std::pow(grid.wavenumber(2), 2);
  EXPECT_NEAR(e[1].weighted_h1, 2.0 * k2 * a * a * grid.box_volume() / 2, 1e-12);
  EXPECT_EQ(e[1].time, 0.5);
  EXPECT_THROW(energy_monitor(solver, {}), DomainError);
}

TEST(PdeProblem, Validation) {
  auto p = cbo_problem({1, 4.0, 8, 32}, {0.0}, true);
  EXPECT_NO_THROW(p.validate());
  p.objective = builtin_objective("quadratic", 2);
  p.valpha_mode = ValphaMode::self_consistent;
  EXPECT_THROW(p.validate(), ConfigError);
  EXPECT_THROW(parse_equation_form("strong"), ConfigError);
  EXPECT_EQ(parse_equation_form(to_string(EquationForm::divergence_form)), EquationForm::divergence_form);
  EXPECT_EQ(parse_valpha_mode("frozen_path"), ValphaMode::frozen_path);
  const auto desk = desk_cutoff(11.0);
  EXPECT_DOUBLE_EQ(desk.n, 1.0);
  EXPECT_DOUBLE_EQ(desk.R, 9.0);
}

TEST(GridCenter, TranslatedProblemGivesTranslatedRhs) {
  const Vec shift{1.0, -2.0};
  auto make = [&](const Vec& c) {
    GridSpec grid{2, 6.0, 12, 48};
    grid.center = {c[0], c[1]};
    PdeProblem p = cbo_problem(grid, {c[0] + 0.3, c[1] - 0.1}, true);
    p.objective.eval = [c](std::span<const double> v) {
      return (v[0] - c[0]) * (v[0] - c[0]) + (v[1] - c[1]) * (v[1] - c[1]);
    };
    return PdeSolver(p);
  };
  PdeSolver plain = make({0.0, 0.0});
  PdeSolver moved = make(shift);
  const Vec c0{0.4, 0.2};
  const Vec c1{c0[0] + shift[0], c0[1] + shift[1]};
  const auto f0 = plain.project_initial([&](std::span<const double> v) { return gaussian(v, c0, 0.7); });
  const auto f1 = moved.project_initial([&](std::span<const double> v) { return gaussian(v, c1, 0.7); });
  EXPECT_LT(f0.max_abs_difference(f1), 1e-14);
  EXPECT_LT(plain.rhs(f0, 0.0).max_abs_difference(moved.rhs(f1, 0.0)), 1e-12);
  const Vec p0{1.1, -0.7};
  const Vec p1{p0[0] + shift[0], p0[1] + shift[1]};
  EXPECT_NEAR(f0.evaluate(p0), f1.evaluate(p1), 1e-14);
  EXPECT_DOUBLE_EQ(moved.grid().coordinate(0, 1), shift[1] - 6.0);
}

TEST(GridCenter, MustBeFinite) {
  GridSpec g{2, 2.0, 4, 16};
  g.center = {0.0, NAN};
  EXPECT_THROW(g.validate(), ConfigError);
}

TEST(Bump, ValuesSupportAndNormalization) {
  const Bump b{{2.0, 2.0}, 2.0, 1.0, 1.5};
  EXPECT_DOUBLE_EQ(b(Vec{2.0, 2.0}), std::exp(-1.0));
  // |u|^2 = 1: exp(-1 / (3/4) - 1 / 4.5)
  EXPECT_NEAR(b(Vec{3.0, 2.0}), std::exp(-4.0 / 3.0 - 1.0 / 4.5), 1e-15);
  EXPECT_EQ(b(Vec{4.0, 2.0}), 0.0);
  EXPECT_EQ(b(Vec{0.0, 0.0}), 0.0);

  const GridSpec grid{2, 6.0, 24, 96};
  PdeSolver solver(cbo_problem(grid, {0.0, 0.0}, false));
  EXPECT_NEAR(mass(normalized_bump(solver, b)), 1.0, 1e-14);
  EXPECT_THROW(normalized_bump(solver, Bump{{1.0}, 1.0, 1.0}), ConfigError);
  EXPECT_THROW(normalized_bump(solver, Bump{{1.0, 1.0}, -1.0, 1.0}), ConfigError);
  EXPECT_THROW(normalized_bump(solver, Bump{{1.0, 1.0}, 1.0, 0.0}), ConfigError);
}
