#include "cbolab/cutoffs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/erf.hpp>

#include "cbolab/error.hpp"
#include "qmc.hpp"

namespace cbolab {
namespace {

double bump(double x) noexcept {
  if (!(std::abs(x) < 1.0)) return 0.0;
  return std::exp(-1.0 / (1.0 - x * x));
}

double integrate(double (*f)(double), double a, double b, unsigned max_depth) {
  using boost::math::quadrature::gauss_kronrod;
  return gauss_kronrod<double, 31>::integrate(f, a, b, max_depth, 1e-14);
}

}  // namespace

CutoffTables::CutoffTables(double h_table) {
  if (!(h_table > 0.0 && h_table <= 0.1)) throw ConfigError("cutoff.h_table must be in (0, 0.1]");
  const auto cells = static_cast<std::size_t>(std::ceil(1.0 / h_table));
  h_ = 1.0 / static_cast<double>(cells);
  normalizer_ = integrate(bump, -1.0, 1.0, 15);
  cdf_.assign(cells + 1, 0.0);
  for (std::size_t i = 0; i < cells; ++i) {
    const double a = -1.0 + static_cast<double>(i) * h_;
    cdf_[i + 1] = cdf_[i] + integrate(bump, a, a + h_, 0);
  }
  // Pin Phi(0) = 1/2 so the mirrored half matches exactly.
  const double scale = 0.5 / cdf_.back();
  for (double& c : cdf_) c *= scale;
}

const CutoffTables& CutoffTables::standard() {
  static const CutoffTables tables;
  return tables;
}

double CutoffTables::mollifier(double x) const noexcept { return bump(x) / normalizer_; }

double CutoffTables::mollifier_cdf(double x) const noexcept {
  if (x <= -1.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const bool upper = x > 0.0;
  const double y = upper ? -x : x;
  const double pos = (y + 1.0) / h_;
  const std::size_t last = cdf_.size() - 2;
  const std::size_t i = std::min(static_cast<std::size_t>(pos), last);
  const double s = pos - static_cast<double>(i);
  const double x0 = -1.0 + static_cast<double>(i) * h_;
  const double m0 = mollifier(x0) * h_;
  const double m1 = mollifier(x0 + h_) * h_;
  const double s2 = s * s;
  const double s3 = s2 * s;
  const double value = std::clamp((2 * s3 - 3 * s2 + 1) * cdf_[i] + (s3 - 2 * s2 + s) * m0 +
                                      (-2 * s3 + 3 * s2) * cdf_[i + 1] + (s3 - s2) * m1,
                                  cdf_[i], cdf_[i + 1]);
  return upper ? 1.0 - value : value;
}

double CutoffTables::step(double x) const noexcept { return mollifier_cdf(8.0 * (x - 0.5)); }

double CutoffTables::step_derivative(double x) const noexcept {
  return 8.0 * mollifier(8.0 * (x - 0.5));
}

// H(x) = Phi(x + 10) - Phi(x - 10) = Phi(10 - |x|), written so the roll-off
// keeps full relative precision.
double CutoffTables::plateau(double x) const noexcept { return mollifier_cdf(10.0 - std::abs(x)); }

double CutoffTables::plateau_derivative(double x) const noexcept {
  const double m = mollifier(10.0 - std::abs(x));
  return x > 0.0 ? -m : m;
}

void CutoffSpec::validate() const {
  if (!(R > 1.0)) throw ConfigError("cutoff.R must be > 1");
  if (!(n > 0.0)) throw ConfigError("cutoff.n must be > 0");
  if (!(h_table > 0.0 && h_table <= 0.1)) throw ConfigError("cutoff.h_table must be in (0, 0.1]");
  if (!(h_fd > 0.0 && h_fd < 0.1)) throw ConfigError("cutoff.h_fd must be in (0, 0.1)");
}

double step_function_S(double x) { return CutoffTables::standard().step(x); }

double shell_cutoff_Si(std::span<const double> v, double R) {
  return step_function_S(std::sqrt(squared_norm(v)) - R + 1.0);
}

double plateau_Hi(std::span<const double> v, double n) {
  return CutoffTables::standard().plateau(std::sqrt(squared_norm(v)) / n);
}

CoefficientField cbo_coefficients(int dim, std::function<Vec(double)> center) {
  CoefficientField f;
  f.dim = dim;
  f.G = [center](std::span<const double> v, double t) {
    return squared_distance(v, center(t));
  };
  f.J = [center](std::span<const double> v, double t, std::span<double> out) {
    const Vec c = center(t);
    for (std::size_t j = 0; j < v.size(); ++j) out[j] = v[j] - c[j];
  };
  return f;
}

CoefficientField cbo_coefficients(Vec center) {
  const int dim = static_cast<int>(center.size());
  return cbo_coefficients(dim, [c = std::move(center)](double) { return c; });
}

CoefficientField builtin_coefficients(const std::string& name, Vec center) {
  if (center.empty()) throw ConfigError("coefficients.center must have at least one component");
  if (name == "cbo") return cbo_coefficients(std::move(center));
  if (name == "quartic") {
    CoefficientField f = cbo_coefficients(center);
    f.G = [c = center](std::span<const double> v, double) {
      const double r2 = squared_distance(v, c);
      return r2 * r2;
    };
    return f;
  }
  throw ConfigError("coefficients.name: unknown family '" + name + "' (cbo|quartic)");
}

// ---------------------------------------------------------------------------

TruncatedCoefficients::TruncatedCoefficients(CoefficientField base, CutoffSpec spec)
    : base_(std::move(base)), spec_(spec) {
  spec_.validate();
  if (spec_.h_table == 1e-3)
    tables_ = std::shared_ptr<const CutoffTables>(&CutoffTables::standard(), [](const CutoffTables*) {});
  else
    tables_ = std::make_shared<const CutoffTables>(spec_.h_table);
}

double TruncatedCoefficients::G(std::span<const double> v, double t) const {
  const double r = std::sqrt(squared_norm(v));
  const double h = tables_->plateau(r / spec_.n);
  if (h == 0.0) return 0.0;
  const double s = tables_->step(r - spec_.R + 1.0);
  const double g = base_.G(v, t);
  if (s == 0.0) return h * h * g;
  if (r == 0.0) throw DegenerateProjection("radial projection at the origin");
  Vec u(v.begin(), v.end());
  for (double& x : u) x *= spec_.R / r;
  const double bar = g * (1.0 - s) + (1.0 + base_.G(u, t)) * s;
  return h * h * bar;
}

void TruncatedCoefficients::J(std::span<const double> v, double t, std::span<double> out) const {
  const double r = std::sqrt(squared_norm(v));
  const double h = tables_->plateau(r / spec_.n);
  if (h == 0.0) {
    std::fill(out.begin(), out.end(), 0.0);
    return;
  }
  const double s = tables_->step(r - spec_.R + 1.0);
  base_.J(v, t, out);
  if (s != 0.0) {
    if (r == 0.0) throw DegenerateProjection("radial projection at the origin");
    Vec u(v.begin(), v.end());
    for (double& x : u) x *= spec_.R / r;
    const double outer = std::sqrt(1.0 + base_.G(u, t));
    for (double& x : out) x = x * (1.0 - s) + outer * s;
  }
  for (double& x : out) x *= h;
}

namespace {

template <typename F>
void fd_gradient(const F& f, std::span<const double> v, double step, std::span<double> out) {
  Vec x(v.begin(), v.end());
  for (std::size_t j = 0; j < v.size(); ++j) {
    x[j] = v[j] + step;
    const double up = f(x);
    x[j] = v[j] - step;
    const double down = f(x);
    x[j] = v[j];
    out[j] = (up - down) / (2.0 * step);
  }
}

template <typename F>
double fd_hessian_max(const F& f, std::span<const double> v, double step) {
  Vec x(v.begin(), v.end());
  const std::size_t d = v.size();
  const double f0 = f(x);
  double worst = 0.0;
  for (std::size_t a = 0; a < d; ++a) {
    x[a] = v[a] + step;
    const double up = f(x);
    x[a] = v[a] - step;
    const double down = f(x);
    x[a] = v[a];
    worst = std::max(worst, std::abs((up - 2.0 * f0 + down) / (step * step)));
    for (std::size_t b = a + 1; b < d; ++b) {
      auto at = [&](double sa, double sb) {
        x[a] = v[a] + sa * step;
        x[b] = v[b] + sb * step;
        const double val = f(x);
        x[a] = v[a];
        x[b] = v[b];
        return val;
      };
      const double mixed = (at(1, 1) - at(1, -1) - at(-1, 1) + at(-1, -1)) / (4.0 * step * step);
      worst = std::max(worst, std::abs(mixed));
    }
  }
  return worst;
}

// Frobenius norm of the central-difference Jacobian of a vector field.
template <typename F>
double fd_jacobian_norm(const F& f, std::span<const double> v, double step) {
  const std::size_t d = v.size();
  Vec x(v.begin(), v.end()), up(d), down(d);
  double sum = 0.0;
  for (std::size_t j = 0; j < d; ++j) {
    x[j] = v[j] + step;
    f(x, up);
    x[j] = v[j] - step;
    f(x, down);
    x[j] = v[j];
    for (std::size_t i = 0; i < d; ++i) {
      const double dij = (up[i] - down[i]) / (2.0 * step);
      sum += dij * dij;
    }
  }
  return std::sqrt(sum);
}

double first_step(std::span<const double> v, double h_fd) {
  return h_fd * (1.0 + std::sqrt(squared_norm(v)));
}

struct Accumulator {
  RatioStat stat;
  explicit Accumulator(std::string name) {
    stat.quantity = std::move(name);
    stat.sup = 0.0;
    stat.inf = std::numeric_limits<double>::infinity();
  }
  void add(double ratio) {
    stat.sup = std::max(stat.sup, ratio);
    stat.inf = std::min(stat.inf, ratio);
    ++stat.samples;
  }
  // numerator / denominator where the denominator may vanish.
  void add_guarded(double numerator, double denominator) {
    if (denominator > 0.0) {
      add(numerator / denominator);
    } else if (numerator <= 1e-12) {
      add(0.0);
    } else {
      ++stat.flagged;
      ++stat.samples;
    }
  }
  RatioStat finish(double bound) {
    if (stat.samples == 0) stat.inf = 0.0;
    stat.satisfied = stat.flagged == 0 && stat.sup <= bound;
    return stat;
  }
};

using ScalarFn = std::function<double(std::span<const double>)>;
using VectorFn = std::function<void(std::span<const double>, std::span<double>)>;

InequalityReport ratio_families(const ScalarFn& G, const VectorFn& J, const Positions& samples,
                                int max_order, double bound, double h_fd) {
  Accumulator grad_G("grad_G"), hess_G("hess_G"), J_sq("J_sq"), grad_J("grad_J");
  const std::size_t d = samples.dim();
  Vec grad(d), jv(d);
  const double second_step = 100.0 * h_fd;
  for (std::size_t s = 0; s < samples.size(); ++s) {
    const auto v = samples[s];
    const double g = G(v);
    const double root = std::sqrt(std::max(g, 0.0));
    fd_gradient(G, v, first_step(v, h_fd), grad);
    grad_G.add_guarded(std::sqrt(squared_norm(grad)), root * (1.0 + root));
    if (max_order >= 2) hess_G.add(fd_hessian_max(G, v, second_step) / (1.0 + g));
    J(v, jv);
    J_sq.add_guarded(squared_norm(jv), g);
    grad_J.add(fd_jacobian_norm(J, v, first_step(v, h_fd)) / (1.0 + root));
  }
  InequalityReport report;
  report.rows.push_back(grad_G.finish(bound));
  if (max_order >= 2) report.rows.push_back(hess_G.finish(bound));
  report.rows.push_back(J_sq.finish(bound));
  report.rows.push_back(grad_J.finish(bound));
  return report;
}

}  // namespace

TruncatedValue TruncatedCoefficients::evaluate(std::span<const double> v, double t) const {
  TruncatedValue out;
  const std::size_t d = v.size();
  out.G = G(v, t);
  out.J.resize(d);
  J(v, t, out.J);
  out.gradG.resize(d);
  fd_gradient([&](std::span<const double> x) { return G(x, t); }, v, first_step(v, spec_.h_fd),
              out.gradG);
  return out;
}

TruncatedValue truncated_coefficients(const CoefficientField& base, const CutoffSpec& spec,
                                      std::span<const double> v, double t) {
  return TruncatedCoefficients(base, spec).evaluate(v, t);
}

Positions RadialSampler::draw(int dim) const {
  std::vector<std::pair<double, double>> live;
  for (const auto& b : bands)
    if (b.second > b.first) live.push_back(b);
  if (live.empty()) throw DomainError("radial sampler has no nonempty band");
  const auto d = static_cast<std::size_t>(dim);
  Positions out(count, d);
  detail::SobolPoints qmc(d + 1, seed);
  Vec unit(d + 1);
  for (std::size_t i = 0; i < count; ++i) {
    qmc.next(unit);
    // band by index, so the first `count` points of a larger draw coincide
    const auto& band = live[i % live.size()];
    const double r = band.first + (band.second - band.first) * unit[0];
    auto v = out[i];
    double norm_sq = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      const double u = std::clamp(unit[j + 1], 1e-15, 1.0 - 1e-15);
      v[j] = std::sqrt(2.0) * boost::math::erf_inv(2.0 * u - 1.0);
      norm_sq += v[j] * v[j];
    }
    const double scale = norm_sq > 0.0 ? r / std::sqrt(norm_sq) : 0.0;
    for (double& x : v) x *= scale;
    if (norm_sq == 0.0) v[0] = r;
  }
  return out;
}

RadialSampler lemma_bands(const CutoffSpec& spec, std::size_t count, std::uint64_t seed) {
  RadialSampler s;
  s.bands = {{0.0, spec.R - 1.0},
             {spec.R - 1.0, spec.R},
             {spec.R, 9.0 * spec.n},
             {9.0 * spec.n, 11.0 * spec.n},
             {11.0 * spec.n, 12.0 * spec.n}};
  s.count = count;
  s.seed = seed;
  return s;
}

bool InequalityReport::all_satisfied() const {
  return std::all_of(rows.begin(), rows.end(), [](const RatioStat& r) { return r.satisfied; });
}

const RatioStat& InequalityReport::operator[](const std::string& quantity) const {
  for (const auto& r : rows)
    if (r.quantity == quantity) return r;
  throw std::out_of_range("no report row '" + quantity + "'");
}

InequalityReport verify_assumption_g1(const CoefficientField& base, const RadialSampler& sampler,
                                      int max_order, double bound, double t, double h_fd) {
  const Positions samples = sampler.draw(base.dim);
  return ratio_families([&](std::span<const double> v) { return base.G(v, t); },
                        [&](std::span<const double> v, std::span<double> out) { base.J(v, t, out); },
                        samples, max_order, bound, h_fd);
}

InequalityReport verify_lemma_g4(const CoefficientField& base, const CutoffSpec& spec,
                                 const RadialSampler& sampler, double bound, double t) {
  const TruncatedCoefficients trunc(base, spec);
  const Positions samples = sampler.draw(base.dim);
  return ratio_families([&](std::span<const double> v) { return trunc.G(v, t); },
                        [&](std::span<const double> v, std::span<double> out) { trunc.J(v, t, out); },
                        samples, 2, bound, spec.h_fd);
}

InequalityReport verify_assumption_g3_Q(const CoefficientField& base, const CutoffSpec& spec,
                                        std::span<const double> t_samples,
                                        const RadialSampler& sampler, double t0, double bound,
                                        double box, int quadrature_points) {
  if (t_samples.empty()) throw DomainError("verify_assumption_g3_Q needs at least one time sample");
  const TruncatedCoefficients trunc(base, spec);
  const Positions samples = sampler.draw(base.dim);
  const std::size_t d = samples.dim();
  const double h_fd = spec.h_fd;
  auto Q = [&](std::span<const double> v) { return trunc.G(v, t0); };

  Accumulator grad_Q("grad_Q"), comparability("comparability"), premise_grad("premise_grad_G"),
      premise_time("premise_time");
  Vec grad(d);
  for (std::size_t s = 0; s < samples.size(); ++s) {
    const auto v = samples[s];
    const double q = Q(v);
    fd_gradient(Q, v, first_step(v, h_fd), grad);
    grad_Q.add(std::sqrt(squared_norm(grad)) / (1.0 + std::sqrt(std::max(q, 0.0))));
    for (double t : t_samples) comparability.add((q + 1.0) / (1.0 + trunc.G(v, t)));

    for (double t1 : t_samples) {
      auto G1 = [&](std::span<const double> x) { return base.G(x, t1); };
      const double g1 = G1(v);
      fd_gradient(G1, v, first_step(v, h_fd), grad);
      premise_grad.add(std::sqrt(squared_norm(grad)) / (1.0 + std::sqrt(std::max(g1, 0.0))));
      for (double t2 : t_samples) premise_time.add((base.G(v, t2) + 1.0) / (1.0 + g1));
    }
  }

  Accumulator source("source");
  const double half = box > 0.0 ? box : 11.0 * spec.n;
  const int m = std::max(2, quadrature_points);
  const double cell = 2.0 * half / m;
  const double weight = std::pow(cell, static_cast<double>(d));
  for (double t : t_samples) {
    double total = 0.0;
    if (base.g) {
      std::size_t points = 1;
      for (std::size_t j = 0; j < d; ++j) points *= static_cast<std::size_t>(m);
      Vec v(d);
      auto g_at = [&](std::span<const double> x) { return base.source(x, t); };
      for (std::size_t flat = 0; flat < points; ++flat) {
        std::size_t rest = flat;
        for (std::size_t j = 0; j < d; ++j) {
          v[j] = -half + (static_cast<double>(rest % m) + 0.5) * cell;
          rest /= m;
        }
        const double gv = g_at(v);
        fd_gradient(g_at, v, first_step(v, h_fd), grad);
        const double G = base.G(v, t);
        total += (1.0 + G * G) * (gv * gv + squared_norm(grad)) * weight;
      }
    }
    source.add(total);
  }

  InequalityReport report;
  report.rows.push_back(grad_Q.finish(bound));
  RatioStat comp = comparability.finish(bound);
  comp.satisfied = comp.satisfied && comp.inf > 0.0 &&
                   (std::isinf(bound) || comp.inf >= 1.0 / bound);
  report.rows.push_back(comp);
  report.rows.push_back(source.finish(bound));
  report.rows.push_back(premise_grad.finish(bound));
  report.rows.push_back(premise_time.finish(bound));
  return report;
}

}  // namespace cbolab
