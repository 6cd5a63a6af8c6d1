#pragma once

#include <vector>

#include "cbolab/cutoffs.hpp"
#include "cbolab/pde.hpp"
#include "cbolab/spectral_field.hpp"

namespace cbolab {

// Dense Galerkin system in the real trigonometric basis on [-L, L]:
//   psi = 1, cos(pi k v / L), sin(pi k v / L), k = 1..K
// A = mass matrix (diagonal), B(t) and the load vector g(t) assembled by
// composite Gauss-Legendre quadrature. Only for d = 1 and small K; serves as
// an independent check of the pseudospectral rhs.
struct GalerkinSystem {
  int K = 0;
  std::vector<double> A;  // (2K+1)^2, row-major
  std::vector<double> B;
  std::vector<double> load;

  std::size_t size() const noexcept { return static_cast<std::size_t>(2 * K + 1); }

  // dC/dt = A^{-1} (B^T C + load) in the real basis.
  std::vector<double> time_derivative(const std::vector<double>& real_coeffs) const;
};

// gradient_form or divergence_form, coefficients used as given (no cutoffs).
GalerkinSystem assemble_galerkin(const GridSpec& grid, EquationForm form,
                                 const CoefficientField& coefficients, double t,
                                 int quadrature_cells = 256);

// Conversions between the complex and real bases:
// a0 = c0, a_k = 2 Re c_k, b_k = -2 Im c_k.
std::vector<double> to_real_basis(const SpectralField& field);
SpectralField from_real_basis(const GridSpec& grid, const std::vector<double>& real_coeffs);

}  // namespace cbolab
