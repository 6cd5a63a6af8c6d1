#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace cbolab {

// Periodic box c + [-L, L]^d with Fourier modes |k|_inf <= K and an M^d
// quadrature grid v_j = c - L + j (2L/M). The basis is exp(i pi k.(v - c) / L).
struct GridSpec {
  int dim = 1;
  double L = 1.0;
  int K = 8;
  int M = 32;
  std::array<double, 2> center{0.0, 0.0};  // c; unused components ignored

  std::size_t modes_per_axis() const noexcept { return static_cast<std::size_t>(2 * K + 1); }
  std::size_t mode_count() const noexcept;
  std::size_t grid_size() const noexcept;
  double spacing() const noexcept { return 2.0 * L / M; }
  double cell_volume() const noexcept;
  double box_volume() const noexcept;
  double wavenumber(int k) const noexcept;
  double coordinate(int j, int axis = 0) const noexcept {
    return center[static_cast<std::size_t>(axis)] - L + j * spacing();
  }
  // Largest |kappa|^2 over retained modes.
  double max_wavenumber_sq() const noexcept;

  // Throws ConfigError unless dim in {1,2}, L > 0, K >= 1, M even, M >= 4K
  // and c finite.
  void validate() const;

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

// Truncated Fourier representation of a real density. Coefficients are kept
// for the full index set {-K..K}^d; conjugate symmetry c_{-k} = conj(c_k) is
// an invariant every operation preserves.
class SpectralField {
 public:
  using Complex = std::complex<double>;

  SpectralField() = default;
  explicit SpectralField(const GridSpec& grid);

  const GridSpec& grid() const noexcept { return grid_; }

  Complex& at(int k1, int k2 = 0) { return coeffs_[index(k1, k2)]; }
  const Complex& at(int k1, int k2 = 0) const { return coeffs_[index(k1, k2)]; }
  std::size_t index(int k1, int k2 = 0) const noexcept;

  std::span<Complex> coefficients() noexcept { return coeffs_; }
  std::span<const Complex> coefficients() const noexcept { return coeffs_; }

  // k = 0 coefficient times (2L)^d.
  double mass() const;

  // Direct synthesis at an arbitrary point (O(K^d)).
  double evaluate(std::span<const double> v) const;

  void enforce_conjugate_symmetry();
  double conjugate_symmetry_defect() const;

  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator-=(const SpectralField& other);
  SpectralField& operator*=(double s);
  // this += s * other
  SpectralField& axpy(double s, const SpectralField& other);

  double max_abs_difference(const SpectralField& other) const;

 private:
  GridSpec grid_;
  std::vector<Complex> coeffs_;
};

// Spectral multiplier applied on the way to or from the grid.
enum class Multiplier { identity, d0, d1, laplacian };

// FFT-backed synthesis/analysis between SpectralField and grid values.
// Owns its plans and buffers; one instance must not be used from two threads
// at the same time.
class SpectralTransform {
 public:
  explicit SpectralTransform(const GridSpec& grid);
  ~SpectralTransform();
  SpectralTransform(SpectralTransform&&) noexcept;
  SpectralTransform& operator=(SpectralTransform&&) noexcept;
  SpectralTransform(const SpectralTransform&) = delete;
  SpectralTransform& operator=(const SpectralTransform&) = delete;

  const GridSpec& grid() const noexcept;

  // Grid values of (multiplier applied to) the field; out has grid_size().
  void to_grid(const SpectralField& field, std::span<double> out,
               Multiplier m = Multiplier::identity);
  std::vector<double> to_grid(const SpectralField& field, Multiplier m = Multiplier::identity);

  // out += scale * multiplier(P_K values), where P_K is the truncated
  // discrete Fourier analysis of the grid values.
  void accumulate_from_grid(std::span<const double> values, SpectralField& out,
                            Multiplier m = Multiplier::identity, double scale = 1.0);
  SpectralField from_grid(std::span<const double> values);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Grid coordinates of flat grid index `flat` (row-major, axis 0 slowest).
void grid_point(const GridSpec& grid, std::size_t flat, std::span<double> out);

}  // namespace cbolab
