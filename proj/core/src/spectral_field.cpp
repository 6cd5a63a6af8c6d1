#include "cbolab/spectral_field.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <string>

#include "cbolab/error.hpp"

namespace cbolab {

std::size_t GridSpec::mode_count() const noexcept {
  const std::size_t n = modes_per_axis();
  return dim == 1 ? n : n * n;
}

std::size_t GridSpec::grid_size() const noexcept {
  const auto m = static_cast<std::size_t>(M);
  return dim == 1 ? m : m * m;
}

double GridSpec::cell_volume() const noexcept { return std::pow(spacing(), dim); }

double GridSpec::box_volume() const noexcept { return std::pow(2.0 * L, dim); }

double GridSpec::wavenumber(int k) const noexcept { return std::numbers::pi * k / L; }

double GridSpec::max_wavenumber_sq() const noexcept {
  const double kmax = wavenumber(K);
  return dim * kmax * kmax;
}

void GridSpec::validate() const {
  if (dim != 1 && dim != 2) throw ConfigError("pde.dim must be 1 or 2");
  if (!(L > 0.0)) throw ConfigError("pde.L must be positive");
  if (K < 1) throw ConfigError("pde.K must be >= 1");
  if (!std::isfinite(center[0]) || !std::isfinite(center[1]))
    throw ConfigError("pde.center must be finite");
  if (M % 2 != 0 || M < 4 * K)
    throw ConfigError("pde.M must be even and >= 4K (got M=" + std::to_string(M) +
                      ", K=" + std::to_string(K) + ")");
}

void grid_point(const GridSpec& grid, std::size_t flat, std::span<double> out) {
  if (grid.dim == 1) {
    out[0] = grid.coordinate(static_cast<int>(flat));
    return;
  }
  const auto m = static_cast<std::size_t>(grid.M);
  out[0] = grid.coordinate(static_cast<int>(flat / m), 0);
  out[1] = grid.coordinate(static_cast<int>(flat % m), 1);
}

// ---------------------------------------------------------------------------

SpectralField::SpectralField(const GridSpec& grid) : grid_(grid), coeffs_(grid.mode_count()) {}

std::size_t SpectralField::index(int k1, int k2) const noexcept {
  const auto n = grid_.modes_per_axis();
  const auto i1 = static_cast<std::size_t>(k1 + grid_.K);
  if (grid_.dim == 1) return i1;
  return i1 * n + static_cast<std::size_t>(k2 + grid_.K);
}

double SpectralField::mass() const { return at(0, 0).real() * grid_.box_volume(); }

double SpectralField::evaluate(std::span<const double> v) const {
  const int K = grid_.K;
  double sum = 0.0;
  if (grid_.dim == 1) {
    for (int k = -K; k <= K; ++k) {
      const double ph = grid_.wavenumber(k) * (v[0] - grid_.center[0]);
      sum += (at(k) * Complex(std::cos(ph), std::sin(ph))).real();
    }
    return sum;
  }
  for (int k1 = -K; k1 <= K; ++k1)
    for (int k2 = -K; k2 <= K; ++k2) {
      const double ph = grid_.wavenumber(k1) * (v[0] - grid_.center[0]) +
                        grid_.wavenumber(k2) * (v[1] - grid_.center[1]);
      sum += (at(k1, k2) * Complex(std::cos(ph), std::sin(ph))).real();
    }
  return sum;
}

void SpectralField::enforce_conjugate_symmetry() {
  const int K = grid_.K;
  if (grid_.dim == 1) {
    for (int k = 1; k <= K; ++k) {
      const Complex avg = 0.5 * (at(k) + std::conj(at(-k)));
      at(k) = avg;
      at(-k) = std::conj(avg);
    }
    at(0).imag(0.0);
    return;
  }
  for (int k1 = -K; k1 <= K; ++k1)
    for (int k2 = -K; k2 <= K; ++k2) {
      // visit each {k, -k} pair once
      if (k1 > 0 || (k1 == 0 && k2 > 0)) {
        const Complex avg = 0.5 * (at(k1, k2) + std::conj(at(-k1, -k2)));
        at(k1, k2) = avg;
        at(-k1, -k2) = std::conj(avg);
      }
    }
  at(0, 0).imag(0.0);
}

double SpectralField::conjugate_symmetry_defect() const {
  const int K = grid_.K;
  double worst = 0.0;
  const int K2 = grid_.dim == 1 ? 0 : K;
  for (int k1 = -K; k1 <= K; ++k1)
    for (int k2 = -K2; k2 <= K2; ++k2)
      worst = std::max(worst, std::abs(at(k1, k2) - std::conj(at(-k1, -k2))));
  return worst;
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

SpectralField& SpectralField::operator*=(double s) {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

SpectralField& SpectralField::axpy(double s, const SpectralField& other) {
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += s * other.coeffs_[i];
  return *this;
}

double SpectralField::max_abs_difference(const SpectralField& other) const {
  double worst = 0.0;
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    worst = std::max(worst, std::abs(coeffs_[i] - other.coeffs_[i]));
  return worst;
}

// ---------------------------------------------------------------------------

namespace {

// FFTW's planner is not re-entrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

struct SpectralTransform::Impl {
  GridSpec grid;
  std::size_t half = 0;  // complex entries of the r2c output
  double* real = nullptr;
  fftw_complex* spec = nullptr;
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;

  explicit Impl(const GridSpec& g) : grid(g) {
    grid.validate();
    const int M = grid.M;
    half = grid.dim == 1 ? static_cast<std::size_t>(M / 2 + 1)
                         : static_cast<std::size_t>(M) * (M / 2 + 1);
    std::lock_guard lock(planner_mutex());
    real = fftw_alloc_real(grid.grid_size());
    spec = fftw_alloc_complex(half);
    // FFTW_ESTIMATE keeps the plan choice, and therefore the rounding, fixed
    // from run to run.
    if (grid.dim == 1) {
      forward = fftw_plan_dft_r2c_1d(M, real, spec, FFTW_ESTIMATE);
      backward = fftw_plan_dft_c2r_1d(M, spec, real, FFTW_ESTIMATE);
    } else {
      forward = fftw_plan_dft_r2c_2d(M, M, real, spec, FFTW_ESTIMATE);
      backward = fftw_plan_dft_c2r_2d(M, M, spec, real, FFTW_ESTIMATE);
    }
  }

  ~Impl() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(forward);
    fftw_destroy_plan(backward);
    fftw_free(real);
    fftw_free(spec);
  }

  std::complex<double> multiplier(Multiplier m, int k1, int k2) const {
    using C = std::complex<double>;
    switch (m) {
      case Multiplier::identity:
        return 1.0;
      case Multiplier::d0:
        return C(0.0, grid.wavenumber(k1));
      case Multiplier::d1:
        return C(0.0, grid.wavenumber(k2));
      case Multiplier::laplacian: {
        const double a = grid.wavenumber(k1);
        const double b = grid.wavenumber(k2);
        return -(a * a + b * b);
      }
    }
    return 1.0;
  }

  // Position of mode k in the r2c layout, requires k2 >= 0 (or k1 >= 0 in 1D).
  std::size_t slot(int k1, int k2) const {
    const int M = grid.M;
    if (grid.dim == 1) return static_cast<std::size_t>(k1);
    const int i1 = k1 >= 0 ? k1 : k1 + M;
    return static_cast<std::size_t>(i1) * static_cast<std::size_t>(M / 2 + 1) +
           static_cast<std::size_t>(k2);
  }
};

SpectralTransform::SpectralTransform(const GridSpec& grid) : impl_(std::make_unique<Impl>(grid)) {}
SpectralTransform::~SpectralTransform() = default;
SpectralTransform::SpectralTransform(SpectralTransform&&) noexcept = default;
SpectralTransform& SpectralTransform::operator=(SpectralTransform&&) noexcept = default;

const GridSpec& SpectralTransform::grid() const noexcept { return impl_->grid; }

void SpectralTransform::to_grid(const SpectralField& field, std::span<double> out, Multiplier m) {
  Impl& im = *impl_;
  const GridSpec& g = im.grid;
  const int K = g.K;
  std::fill_n(reinterpret_cast<double*>(im.spec), 2 * im.half, 0.0);
  auto put = [&](int k1, int k2) {
    // grid starts at -L, hence the (-1)^(k1+k2) phase
    const double sign = ((k1 + k2) & 1) ? -1.0 : 1.0;
    const std::complex<double> c = sign * im.multiplier(m, k1, k2) * field.at(k1, k2);
    fftw_complex& dst = im.spec[im.slot(k1, k2)];
    dst[0] = c.real();
    dst[1] = c.imag();
  };
  if (g.dim == 1) {
    for (int k = 0; k <= K; ++k) put(k, 0);
  } else {
    for (int k1 = -K; k1 <= K; ++k1)
      for (int k2 = 0; k2 <= K; ++k2) put(k1, k2);
  }
  fftw_execute(im.backward);
  std::copy_n(im.real, g.grid_size(), out.begin());
}

std::vector<double> SpectralTransform::to_grid(const SpectralField& field, Multiplier m) {
  std::vector<double> out(impl_->grid.grid_size());
  to_grid(field, out, m);
  return out;
}

void SpectralTransform::accumulate_from_grid(std::span<const double> values, SpectralField& out,
                                             Multiplier m, double scale) {
  Impl& im = *impl_;
  const GridSpec& g = im.grid;
  const int K = g.K;
  std::copy_n(values.begin(), g.grid_size(), im.real);
  fftw_execute(im.forward);
  const double norm = scale / static_cast<double>(g.grid_size());
  auto take = [&](int k1, int k2) {
    const double sign = ((k1 + k2) & 1) ? -1.0 : 1.0;
    const fftw_complex& src = im.spec[im.slot(k1, k2)];
    return sign * norm * im.multiplier(m, k1, k2) * std::complex<double>(src[0], src[1]);
  };
  if (g.dim == 1) {
    for (int k = 0; k <= K; ++k) {
      const auto c = take(k, 0);
      out.at(k) += c;
      if (k > 0) out.at(-k) += std::conj(c);
    }
  } else {
    for (int k1 = -K; k1 <= K; ++k1)
      for (int k2 = 1; k2 <= K; ++k2) {
        const auto c = take(k1, k2);
        out.at(k1, k2) += c;
        out.at(-k1, -k2) += std::conj(c);
      }
    // the k2 = 0 column: use k1 >= 0 and mirror, which keeps symmetry exact
    for (int k1 = 0; k1 <= K; ++k1) {
      auto c = take(k1, 0);
      if (k1 == 0) c.imag(0.0);
      out.at(k1, 0) += c;
      if (k1 > 0) out.at(-k1, 0) += std::conj(c);
    }
  }
}

SpectralField SpectralTransform::from_grid(std::span<const double> values) {
  SpectralField f(impl_->grid);
  accumulate_from_grid(values, f);
  return f;
}

}  // namespace cbolab
