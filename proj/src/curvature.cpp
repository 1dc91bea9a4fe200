#include "distal_beam/curvature.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "distal_beam/errors.hpp"
#include "distal_beam/kernels.hpp"

namespace distal_beam {

ArcGrid::ArcGrid(double length, std::size_t samples) : length_(length) {
  if (!(length > 0.0) || !std::isfinite(length))
    throw DomainError("grid length must be positive and finite");
  if (samples < 3 || samples % 2 == 0)
    throw DomainError("grid sample count must be odd and >= 3, got " + std::to_string(samples));
  const std::size_t intervals = samples - 1;
  spacing_ = length / static_cast<double>(intervals);
  nodes_.resize(samples);
  for (std::size_t i = 0; i < samples; ++i)
    nodes_[i] = length * static_cast<double>(i) / static_cast<double>(intervals);
  nodes_.back() = length;
}

double eval_basis(int mode, BasisKind kind, double s, double length) {
  if (mode < 1) throw DomainError("Fourier mode index must be >= 1");
  if (!(s >= 0.0 && s <= length)) throw DomainError("arc length outside [0, L]");
  const double arg = mode * std::numbers::pi * s / length;
  return kind == BasisKind::cos ? std::cos(arg) : std::sin(arg);
}

FourierCurvature::FourierCurvature(std::vector<double> coeffs, double length)
    : coeffs_(std::move(coeffs)), length_(length) {
  if (coeffs_.empty() || coeffs_.size() % 2 != 0)
    throw DomainError("curvature coefficient vector must have even, positive length 2M");
  if (!(length_ > 0.0) || !std::isfinite(length_))
    throw DomainError("beam length must be positive and finite");
  for (double c : coeffs_)
    if (!std::isfinite(c)) throw DomainError("curvature coefficients must be finite");
}

FourierCurvature FourierCurvature::zero(int modes, double length) {
  if (modes < 1) throw DomainError("mode count must be >= 1");
  return FourierCurvature(std::vector<double>(2 * static_cast<std::size_t>(modes), 0.0), length);
}

FourierCurvature FourierCurvature::plus(std::span<const double> direction, double alpha) const {
  if (direction.size() != coeffs_.size())
    throw ShapeError("deformation direction has the wrong number of coefficients");
  std::vector<double> c(coeffs_);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += alpha * direction[i];
  return FourierCurvature(std::move(c), length_);
}

FourierCurvature operator+(const FourierCurvature& a, const FourierCurvature& b) {
  if (a.length_ != b.length_) throw ShapeError("curvatures defined on different lengths");
  return a.plus(b.coeffs_, 1.0);
}

double eval_curvature(const FourierCurvature& kappa, double s) {
  const double length = kappa.length();
  if (!(s >= 0.0 && s <= length)) throw DomainError("arc length outside [0, L]");
  const int m_count = kappa.modes();
  double value = 0.0;
  for (int m = 1; m <= m_count; ++m) {
    const double arg = m * std::numbers::pi * s / length;
    value += kappa.cos_coeff(m) * std::cos(arg) + kappa.sin_coeff(m) * std::sin(arg);
  }
  return value;
}

double eval_tangent_angle(const FourierCurvature& kappa, double s) {
  const double length = kappa.length();
  if (!(s >= 0.0 && s <= length)) throw DomainError("arc length outside [0, L]");
  double value = 0.0;
  for (int m = 1; m <= kappa.modes(); ++m) {
    const double w = m * std::numbers::pi / length;
    value += kappa.cos_coeff(m) * std::sin(w * s) / w +
             kappa.sin_coeff(m) * (1.0 - std::cos(w * s)) / w;
  }
  return value;
}

BasisTable::BasisTable(int modes, const ArcGrid& grid) : modes_(modes), grid_(grid) {
  if (modes < 1) throw DomainError("mode count must be >= 1");
  const std::size_t n = grid.samples();
  rows_.resize(2 * static_cast<std::size_t>(modes) * n);
  for (int m = 1; m <= modes; ++m) {
    double* c_row = rows_.data() + static_cast<std::size_t>(m - 1) * n;
    double* s_row = rows_.data() + static_cast<std::size_t>(modes + m - 1) * n;
    for (std::size_t i = 0; i < n; ++i) {
      const double arg = m * std::numbers::pi * grid[i] / grid.length();
      c_row[i] = std::cos(arg);
      s_row[i] = std::sin(arg);
    }
  }
}

std::span<const double> BasisTable::row(std::size_t j) const {
  const std::size_t n = grid_.samples();
  return std::span<const double>(rows_).subspan(j * n, n);
}

std::vector<double> BasisTable::combine(std::span<const double> coeffs) const {
  if (coeffs.size() != 2 * static_cast<std::size_t>(modes_))
    throw ShapeError("coefficient count does not match basis table");
  std::vector<double> out(grid_.samples());
  kernels::active().combine_rows(coeffs, rows_.data(), grid_.samples(), out);
  return out;
}

std::vector<double> sample_curvature(const FourierCurvature& kappa, const ArcGrid& grid) {
  if (kappa.length() != grid.length()) throw ShapeError("curvature and grid lengths differ");
  return BasisTable(kappa.modes(), grid).combine(kappa.coeffs());
}

std::vector<double> cumulative_integral(std::span<const double> f, const ArcGrid& grid) {
  const std::size_t n = grid.samples();
  if (f.size() != n)
    throw ShapeError("sampled function has " + std::to_string(f.size()) +
                     " values, grid has " + std::to_string(n));
  const double h = grid.spacing();
  std::vector<double> inc(n - 1);
  if (n == 3) {
    inc[0] = h / 12.0 * (5.0 * f[0] + 8.0 * f[1] - f[2]);
    inc[1] = h / 12.0 * (5.0 * f[2] + 8.0 * f[1] - f[0]);
  } else {
    kernels::active().interval_increments(f, h, inc);
  }
  std::vector<double> out(n);
  out[0] = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) out[i + 1] = out[i] + inc[i];
  return out;
}

double definite_integral(std::span<const double> f, const ArcGrid& grid) {
  return cumulative_integral(f, grid).back();
}

}  // namespace distal_beam
