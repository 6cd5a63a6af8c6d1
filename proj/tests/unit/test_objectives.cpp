#include <gtest/gtest.h>

#include <cmath>

#include "cbolab/error.hpp"
#include "cbolab/objectives.hpp"
#include "oracle_values.hpp"

using namespace cbolab;

TEST(Objectives, BuiltinValues) {
  EXPECT_EQ(builtin_objective("quadratic", 2)(Vec{0.0, 0.0}), 0.0);
  EXPECT_EQ(builtin_objective("rastrigin", 1)(Vec{0.0}), 0.0);
  EXPECT_DOUBLE_EQ(builtin_objective("quadratic", 3)(Vec{1.0, 1.0, 1.0}), 3.0);
  EXPECT_NEAR(builtin_objective("ackley", 2)(Vec{0.0, 0.0}), 0.0, 1e-14);
}

TEST(Objectives, MetadataAndErrors) {
  for (const char* name : {"quadratic", "rastrigin", "ackley"}) {
    const auto obj = builtin_objective(name, 3);
    ASSERT_TRUE(obj.known_minimizer.has_value());
    EXPECT_EQ(*obj.known_minimizer, Vec(3, 0.0));
    EXPECT_EQ(obj.dim, 3);
  }
  EXPECT_TRUE(builtin_objective("quadratic", 2).has_grad());
  EXPECT_TRUE(builtin_objective("rastrigin", 2).has_laplacian());
  EXPECT_FALSE(builtin_objective("ackley", 2).has_grad());
  EXPECT_THROW(builtin_objective("himmelblau", 2), ConfigError);
  EXPECT_THROW(builtin_objective("quadratic", 0), ConfigError);
}

TEST(Objectives, MinimizerIsMinimalOnGrid) {
  for (const char* name : {"quadratic", "rastrigin", "ackley"}) {
    const auto obj = builtin_objective(name, 2);
    const double best = obj(*obj.known_minimizer);
    for (double x = -3.0; x <= 3.0; x += 0.05)
      for (double y = -3.0; y <= 3.0; y += 0.05) {
        const double fv = obj(Vec{x, y});
        ASSERT_TRUE(std::isfinite(fv));
        ASSERT_LE(best, fv + 1e-12) << name << " at " << x << "," << y;
      }
  }
}

TEST(Objectives, AnalyticDerivativesMatchDifferences) {
  const auto obj = builtin_objective("rastrigin", 2);
  const Vec v{0.37, -1.21};
  Vec g(2);
  obj.grad(v, g);
  const double h = 1e-6;
  for (std::size_t j = 0; j < 2; ++j) {
    Vec up = v, down = v;
    up[j] += h;
    down[j] -= h;
    EXPECT_NEAR(g[j], (obj(up) - obj(down)) / (2 * h), 1e-5);
  }
  const double h2 = 1e-4;
  double lap = 0.0;
  for (std::size_t j = 0; j < 2; ++j) {
    Vec up = v, down = v;
    up[j] += h2;
    down[j] -= h2;
    lap += (obj(up) - 2 * obj(v) + obj(down)) / (h2 * h2);
  }
  EXPECT_NEAR(obj.laplacian(v), lap, 1e-3);
}

TEST(GrowthConditions, QuadraticSatisfiesUnitConstants) {
  const auto obj = builtin_objective("quadratic", 2);
  GrowthConstants c;
  c.lipschitz = 1.0;
  c.upper = 1.0;
  c.lower = 1.0;
  c.radius_M = 0.0;
  const auto report = check_growth_conditions(obj, {-4.0, 4.0, 5000, 7}, c);
  EXPECT_TRUE(report.lipschitz_ok && report.upper_ok && report.lower_ok);
  EXPECT_LE(report.lipschitz_ratio_max, 1.0 + 1e-12);
  EXPECT_EQ(report.sample_count, 10000u);
}

TEST(GrowthConditions, RastriginWithScannedConstants) {
  const auto obj = builtin_objective("rastrigin", 2);
  GrowthConstants c;
  c.lipschitz = oracle::rastrigin_lipschitz;
  c.upper = oracle::rastrigin_upper;
  c.lower = oracle::rastrigin_lower;
  c.radius_M = 2.0;
  const auto report = check_growth_conditions(obj, {-5.12, 5.12, 10000, 0}, c);
  EXPECT_TRUE(report.lipschitz_ok) << report.lipschitz_ratio_max;
  EXPECT_TRUE(report.upper_ok) << report.upper_quadratic_ratio_max;
  EXPECT_TRUE(report.lower_ok) << report.lower_quadratic_ratio_min;
}

TEST(GrowthConditions, NormViolatesQuadraticLowerBound) {
  Objective obj;
  obj.dim = 2;
  obj.eval = [](std::span<const double> v) { return std::sqrt(squared_norm(v)); };
  GrowthConstants c;
  c.lipschitz = 10.0;
  c.upper = 10.0;
  c.lower = 1.0;
  c.radius_M = 1.0;
  const auto report = check_growth_conditions(obj, {-10.0, 10.0, 2000, 0}, c);
  EXPECT_FALSE(report.lower_ok);
  EXPECT_LT(report.lower_quadratic_ratio_min, 1.0);
}

TEST(GrowthConditions, LipschitzRatioIsShiftInvariant) {
  const auto base = builtin_objective("ackley", 2);
  Objective shifted = base;
  shifted.eval = [base](std::span<const double> v) { return base(v) + 17.25; };
  shifted.lower_bound = 17.25;
  GrowthConstants c;
  const GrowthSampler s{-3.0, 3.0, 3000, 11};
  const double a = check_growth_conditions(base, s, c).lipschitz_ratio_max;
  const double b = check_growth_conditions(shifted, s, c).lipschitz_ratio_max;
  EXPECT_NEAR(a, b, 1e-9 * a);
}

TEST(GrowthConditions, CoincidentPairsAreSkipped) {
  const auto obj = builtin_objective("quadratic", 1);
  // a zero-width box is rejected, but pairs at the origin are skipped
  EXPECT_THROW(check_growth_conditions(obj, {1.0, 1.0, 10, 0}, {}), DomainError);
  EXPECT_THROW(check_growth_conditions(obj, {-1.0, 1.0, 1, 0}, {}), DomainError);
  const auto report = check_growth_conditions(obj, {-1.0, 1.0, 64, 0}, {});
  EXPECT_GE(report.skipped_pairs, 1u);  // the first Sobol point is the box centre twice
}

TEST(GrowthConditions, SameSeedSameReport) {
  const auto obj = builtin_objective("rastrigin", 2);
  const auto a = check_growth_conditions(obj, {-2.0, 2.0, 500, 3}, {});
  const auto b = check_growth_conditions(obj, {-2.0, 2.0, 500, 3}, {});
  EXPECT_EQ(a.lipschitz_ratio_max, b.lipschitz_ratio_max);
  EXPECT_EQ(a.upper_quadratic_ratio_max, b.upper_quadratic_ratio_max);
  const auto fitted = fit_growth_constants(a, 2.0);
  EXPECT_GT(fitted.lipschitz, a.lipschitz_ratio_max);
}
