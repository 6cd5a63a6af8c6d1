#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cbolab/points.hpp"

namespace cbolab {

// The standard mollifier phi(x) = exp(-1/(1-x^2)) / I on (-1, 1), its
// cumulative Phi, and the step/plateau functions built from them:
//   S(x) = Phi(8 (x - 1/2))          (0 below 0, 1 above 1)
//   H(x) = Phi(x + 10) - Phi(x - 10) (1 on [-9, 9], 0 outside (-11, 11))
// Phi is tabulated on [-1, 0] with spacing h (each cell integrated by
// Gauss-Kronrod), mirrored to (0, 1], and read back with cubic Hermite
// interpolation using the exact derivative phi.
class CutoffTables {
 public:
  explicit CutoffTables(double h_table = 1e-3);

  // Process-wide tables at the default spacing.
  static const CutoffTables& standard();

  double spacing() const noexcept { return h_; }
  double normalizer() const noexcept { return normalizer_; }  // I

  double mollifier(double x) const noexcept;
  double mollifier_cdf(double x) const noexcept;
  double step(double x) const noexcept;
  double step_derivative(double x) const noexcept;
  double plateau(double x) const noexcept;
  double plateau_derivative(double x) const noexcept;

  // Table knots of Phi on [-1, 0], exposed for invariant checks.
  std::span<const double> cdf_knots() const noexcept { return cdf_; }

 private:
  double h_;
  double normalizer_;
  std::vector<double> cdf_;
};

struct CutoffSpec {
  double R = 5.0;   // shell radius, > 1
  double n = 50.0;  // plateau scale, > 0
  double h_table = 1e-3;
  double h_fd = 1e-5;

  void validate() const;  // ConfigError naming cutoff.*
};

double step_function_S(double x);
// S(|v| - R + 1): 0 inside B_{R-1}, 1 outside B_R.
double shell_cutoff_Si(std::span<const double> v, double R);
// H(|v| / n): 1 inside B_{9n}, 0 outside B_{11n}.
double plateau_Hi(std::span<const double> v, double n);

// Coefficients of the drift-diffusion equation as functions of (v, t).
struct CoefficientField {
  using Scalar = std::function<double(std::span<const double>, double)>;
  using Vector = std::function<void(std::span<const double>, double, std::span<double>)>;

  int dim = 1;
  Scalar G;  // diffusion, >= 0
  Vector J;  // drift
  Scalar g;  // source; empty means 0
  double holder_exponent = 1.0;

  double source(std::span<const double> v, double t) const { return g ? g(v, t) : 0.0; }
};

// G = |v - c(t)|^2, J = v - c(t), g = 0.
CoefficientField cbo_coefficients(int dim, std::function<Vec(double)> center);
CoefficientField cbo_coefficients(Vec center);

// Named families for configuration: "cbo" (as above, fixed center) and
// "quartic" (G = |v - c|^4, J = v - c). Throws ConfigError otherwise.
CoefficientField builtin_coefficients(const std::string& name, Vec center);

struct TruncatedValue {
  double G = 0.0;
  Vec J;
  Vec gradG;
};

// Bounded, compactly supported version of a coefficient field:
//   Gbar = G (1 - S_i) + (1 + G(R v/|v|)) S_i
//   Jbar = J (1 - S_i) + sqrt(1 + G(R v/|v|)) e S_i,   e = (1, ..., 1)
//   G_i = H_i^2 Gbar,  J_i = H_i Jbar.
class TruncatedCoefficients {
 public:
  TruncatedCoefficients(CoefficientField base, CutoffSpec spec);

  const CoefficientField& base() const noexcept { return base_; }
  const CutoffSpec& spec() const noexcept { return spec_; }
  const CutoffTables& tables() const noexcept { return *tables_; }

  double G(std::span<const double> v, double t) const;
  void J(std::span<const double> v, double t, std::span<double> out) const;
  // G, J and a central-difference gradient of G (step h_fd (1 + |v|)).
  TruncatedValue evaluate(std::span<const double> v, double t) const;

 private:
  CoefficientField base_;
  CutoffSpec spec_;
  std::shared_ptr<const CutoffTables> tables_;
};

TruncatedValue truncated_coefficients(const CoefficientField& base, const CutoffSpec& spec,
                                      std::span<const double> v, double t);

// Quasi-random points whose radius is uniform within each band and whose
// direction is uniform on the sphere. Samples are split evenly over bands;
// empty bands (hi <= lo) are ignored.
struct RadialSampler {
  std::vector<std::pair<double, double>> bands{{0.0, 1.0}};
  std::size_t count = 10000;
  std::uint64_t seed = 0;

  Positions draw(int dim) const;
};

// Bands covering the inner ball, the shell, the plateau and its roll-off.
RadialSampler lemma_bands(const CutoffSpec& spec, std::size_t count, std::uint64_t seed = 0);

struct RatioStat {
  std::string quantity;
  double sup = 0.0;
  double inf = 0.0;
  std::size_t samples = 0;
  std::size_t flagged = 0;  // points where the ratio is undefined and the bound fails
  bool satisfied = false;
};

struct InequalityReport {
  std::vector<RatioStat> rows;

  bool all_satisfied() const;
  // Throws std::out_of_range for an unknown quantity.
  const RatioStat& operator[](const std::string& quantity) const;
};

// Ratio families of the regularity assumption on (G, J), at time t:
//   grad_G   |grad G| / (sqrt G (1 + sqrt G))
//   hess_G   max |d2 G| / (1 + G)                (max_order >= 2)
//   J_sq     |J|^2 / G
//   grad_J   |dJ| / (1 + sqrt G)
// Derivatives are central differences. Where G = 0 a ratio is admitted as 0
// only if its numerator vanishes too; otherwise the point is flagged.
// Each row is satisfied iff sup <= bound and nothing was flagged.
InequalityReport verify_assumption_g1(const CoefficientField& base, const RadialSampler& sampler,
                                      int max_order = 2, double bound = INFINITY, double t = 0.0,
                                      double h_fd = 1e-5);

// The same four families for the truncated coefficients G_i, J_i.
InequalityReport verify_lemma_g4(const CoefficientField& base, const CutoffSpec& spec,
                                 const RadialSampler& sampler, double bound = INFINITY,
                                 double t = 0.0);

// With Q := G_i(., t0), reports
//   grad_Q         |grad Q| / (1 + sqrt Q)
//   comparability  (Q + 1) / (1 + G_i(., t)) over t in t_samples (sup and inf)
//   source         quadrature of (1 + G^2)(g^2 + |grad g|^2) over [-box, box]^d
//                  for each t, on `quadrature_points` per axis
// and the premises: premise_grad_G |grad G| / (1 + sqrt G) and
// premise_time (G(., t2) + 1) / (1 + G(., t1)) over sampled time pairs.
InequalityReport verify_assumption_g3_Q(const CoefficientField& base, const CutoffSpec& spec,
                                        std::span<const double> t_samples,
                                        const RadialSampler& sampler, double t0 = 0.0,
                                        double bound = INFINITY, double box = 0.0,
                                        int quadrature_points = 64);

}  // namespace cbolab
