#include "cbolab/galerkin_matrix.hpp"

#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss.hpp>

#include "cbolab/error.hpp"

namespace cbolab {
namespace {

// Basis index 0 is the constant, 2k-1 is cos(kappa_k v), 2k is sin(kappa_k v).
struct RealBasis {
  int K;
  double L;

  void values(double v, std::vector<double>& psi, std::vector<double>& dpsi) const {
    psi[0] = 1.0;
    dpsi[0] = 0.0;
    for (int k = 1; k <= K; ++k) {
      const double kappa = std::numbers::pi * k / L;
      const double c = std::cos(kappa * v);
      const double s = std::sin(kappa * v);
      psi[2 * k - 1] = c;
      psi[2 * k] = s;
      dpsi[2 * k - 1] = -kappa * s;
      dpsi[2 * k] = kappa * c;
    }
  }
};

}  // namespace

GalerkinSystem assemble_galerkin(const GridSpec& grid, EquationForm form,
                                 const CoefficientField& coefficients, double t,
                                 int quadrature_cells) {
  if (grid.dim != 1) throw DomainError("assemble_galerkin supports d = 1 only");
  if (grid.K > 4) throw DomainError("assemble_galerkin is an oracle for K <= 4");
  if (form == EquationForm::cbo_form) throw DomainError("assemble_galerkin: use gradient_form or divergence_form");
  using Rule = boost::math::quadrature::gauss<double, 20>;

  GalerkinSystem sys;
  sys.K = grid.K;
  const std::size_t m = sys.size();
  sys.A.assign(m * m, 0.0);
  sys.B.assign(m * m, 0.0);
  sys.load.assign(m, 0.0);

  const RealBasis basis{grid.K, grid.L};
  std::vector<double> psi(m), dpsi(m);
  double J = 0.0;
  const double cell = 2.0 * grid.L / quadrature_cells;
  const auto& nodes = Rule::abscissa();
  const auto& weights = Rule::weights();

  auto accumulate = [&](double v, double w) {
    basis.values(v, psi, dpsi);
    const double pt[1] = {v};
    const double G = coefficients.G(pt, t);
    coefficients.J(pt, t, std::span<double>(&J, 1));
    const double g = coefficients.source(pt, t);
    for (std::size_t k = 0; k < m; ++k) {
      sys.load[k] += w * g * psi[k];
      for (std::size_t j = 0; j < m; ++j) {
        sys.A[k * m + j] += w * psi[k] * psi[j];
        double b = -G * dpsi[k] * dpsi[j] + psi[k] * psi[j];
        if (form == EquationForm::gradient_form)
          b += J * dpsi[k] * psi[j];
        else
          b += J * psi[k] * dpsi[j];
        sys.B[k * m + j] += w * b;
      }
    }
  };

  for (int c = 0; c < quadrature_cells; ++c) {
    const double mid = -grid.L + (c + 0.5) * cell;
    const double half = 0.5 * cell;
    for (std::size_t q = 0; q < nodes.size(); ++q) {
      const double w = weights[q] * half;
      accumulate(mid + half * nodes[q], w);
      if (nodes[q] != 0.0) accumulate(mid - half * nodes[q], w);
    }
  }
  return sys;
}

std::vector<double> GalerkinSystem::time_derivative(const std::vector<double>& c) const {
  const std::size_t m = size();
  if (c.size() != m) throw DomainError("coefficient vector has the wrong size");
  std::vector<double> out(m);
  for (std::size_t j = 0; j < m; ++j) {
    double s = load[j];
    for (std::size_t k = 0; k < m; ++k) s += B[k * m + j] * c[k];
    out[j] = s / A[j * m + j];
  }
  return out;
}

std::vector<double> to_real_basis(const SpectralField& field) {
  const int K = field.grid().K;
  std::vector<double> out(static_cast<std::size_t>(2 * K + 1));
  out[0] = field.at(0).real();
  for (int k = 1; k <= K; ++k) {
    out[2 * k - 1] = 2.0 * field.at(k).real();
    out[2 * k] = -2.0 * field.at(k).imag();
  }
  return out;
}

SpectralField from_real_basis(const GridSpec& grid, const std::vector<double>& c) {
  if (grid.dim != 1) throw DomainError("from_real_basis supports d = 1 only");
  SpectralField f(grid);
  f.at(0) = c.at(0);
  for (int k = 1; k <= grid.K; ++k) {
    const std::complex<double> ck(0.5 * c.at(2 * k - 1), -0.5 * c.at(2 * k));
    f.at(k) = ck;
    f.at(-k) = std::conj(ck);
  }
  return f;
}

}  // namespace cbolab
