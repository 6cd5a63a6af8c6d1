#include "cbolab/objectives.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "cbolab/error.hpp"
#include "qmc.hpp"

namespace cbolab {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Objective make_quadratic(int dim) {
  Objective obj;
  obj.name = "quadratic";
  obj.dim = dim;
  obj.eval = [](std::span<const double> v) { return squared_norm(v); };
  obj.grad = [](std::span<const double> v, std::span<double> g) {
    for (std::size_t j = 0; j < v.size(); ++j) g[j] = 2.0 * v[j];
  };
  obj.laplacian = [dim](std::span<const double>) { return 2.0 * dim; };
  return obj;
}

Objective make_rastrigin(int dim) {
  Objective obj;
  obj.name = "rastrigin";
  obj.dim = dim;
  obj.eval = [](std::span<const double> v) {
    double s = 10.0 * static_cast<double>(v.size());
    for (double x : v) s += x * x - 10.0 * std::cos(kTwoPi * x);
    return s;
  };
  obj.grad = [](std::span<const double> v, std::span<double> g) {
    for (std::size_t j = 0; j < v.size(); ++j)
      g[j] = 2.0 * v[j] + 10.0 * kTwoPi * std::sin(kTwoPi * v[j]);
  };
  obj.laplacian = [](std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += 2.0 + 10.0 * kTwoPi * kTwoPi * std::cos(kTwoPi * x);
    return s;
  };
  return obj;
}

Objective make_ackley(int dim) {
  Objective obj;
  obj.name = "ackley";
  obj.dim = dim;
  obj.eval = [](std::span<const double> v) {
    const double n = static_cast<double>(v.size());
    double sq = 0.0;
    double cs = 0.0;
    for (double x : v) {
      sq += x * x;
      cs += std::cos(kTwoPi * x);
    }
    return -20.0 * std::exp(-0.2 * std::sqrt(sq / n)) - std::exp(cs / n) + 20.0 +
           std::numbers::e;
  };
  return obj;
}

}  // namespace

Objective builtin_objective(std::string_view name, int dim) {
  if (dim < 1) throw ConfigError("objective.dim must be >= 1");
  Objective obj;
  if (name == "quadratic") {
    obj = make_quadratic(dim);
  } else if (name == "rastrigin") {
    obj = make_rastrigin(dim);
  } else if (name == "ackley") {
    obj = make_ackley(dim);
  } else {
    throw ConfigError("objective.name: unknown objective '" + std::string(name) + "'");
  }
  obj.known_minimizer = Vec(static_cast<std::size_t>(dim), 0.0);
  obj.lower_bound = 0.0;
  return obj;
}

bool GrowthReport::all_satisfied() const {
  return lipschitz_ok && upper_ok && lower_ok && grad_ok.value_or(true) &&
         laplacian_ok.value_or(true);
}

GrowthReport check_growth_conditions(const Objective& obj, const GrowthSampler& sampler,
                                     const GrowthConstants& constants) {
  if (!(sampler.hi > sampler.lo)) throw DomainError("growth sampler box is degenerate");
  if (sampler.pairs < 2) throw DomainError("growth sampler needs at least 2 pairs");

  const std::size_t d = static_cast<std::size_t>(obj.dim);
  detail::SobolPoints qmc(2 * d, sampler.seed);
  Vec unit(2 * d), v(d), u(d), g(d);
  const double width = sampler.hi - sampler.lo;
  const double fmin = obj.lower_bound;

  GrowthReport report;
  report.lower_quadratic_ratio_min = std::numeric_limits<double>::infinity();
  double grad_max = 0.0;
  double lap_max = 0.0;

  auto visit_point = [&](std::span<const double> x, double fx) {
    const double r2 = squared_norm(x);
    report.upper_quadratic_ratio_max =
        std::max(report.upper_quadratic_ratio_max, (fx - fmin) / (1.0 + r2));
    if (r2 > 0.0 && std::sqrt(r2) >= constants.radius_M)
      report.lower_quadratic_ratio_min =
          std::min(report.lower_quadratic_ratio_min, (fx - fmin) / r2);
    const double r = std::sqrt(r2);
    if (obj.has_grad()) {
      obj.grad(x, g);
      grad_max = std::max(grad_max, std::sqrt(squared_norm(g)) / (1.0 + std::pow(r, constants.q)));
    }
    if (obj.has_laplacian())
      lap_max = std::max(lap_max, std::abs(obj.laplacian(x)) / (1.0 + std::pow(r, constants.p)));
    ++report.sample_count;
  };

  for (std::size_t s = 0; s < sampler.pairs; ++s) {
    qmc.next(unit);
    for (std::size_t j = 0; j < d; ++j) {
      v[j] = sampler.lo + width * unit[j];
      u[j] = sampler.lo + width * unit[d + j];
    }
    const double fv = obj(v);
    const double fu = obj(u);
    visit_point(v, fv);
    visit_point(u, fu);
    const double dist = std::sqrt(squared_distance(v, u));
    const double scale = std::sqrt(squared_norm(v)) + std::sqrt(squared_norm(u));
    if (dist == 0.0 || scale == 0.0) {
      ++report.skipped_pairs;
      continue;
    }
    report.lipschitz_ratio_max =
        std::max(report.lipschitz_ratio_max, std::abs(fv - fu) / (scale * dist));
  }

  report.lipschitz_ok = report.lipschitz_ratio_max <= constants.lipschitz;
  report.upper_ok = report.upper_quadratic_ratio_max <= constants.upper;
  report.lower_ok = report.lower_quadratic_ratio_min >= constants.lower;
  if (obj.has_grad()) {
    report.grad_ratio_max = grad_max;
    if (constants.poly_constant) report.grad_ok = grad_max <= *constants.poly_constant;
  }
  if (obj.has_laplacian()) {
    report.laplacian_ratio_max = lap_max;
    if (constants.poly_constant) report.laplacian_ok = lap_max <= *constants.poly_constant;
  }
  return report;
}

GrowthConstants fit_growth_constants(const GrowthReport& report, double radius_M,
                                     double margin) {
  GrowthConstants c;
  c.radius_M = radius_M;
  c.lipschitz = report.lipschitz_ratio_max * margin;
  c.upper = report.upper_quadratic_ratio_max * margin;
  c.lower = std::isfinite(report.lower_quadratic_ratio_min)
                ? report.lower_quadratic_ratio_min / margin
                : 0.0;
  if (report.grad_ratio_max || report.laplacian_ratio_max)
    c.poly_constant = std::max(report.grad_ratio_max.value_or(0.0),
                               report.laplacian_ratio_max.value_or(0.0)) *
                      margin;
  return c;
}

}  // namespace cbolab
