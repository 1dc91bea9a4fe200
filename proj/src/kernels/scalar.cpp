#include "distal_beam/kernels.hpp"

#include <cmath>
#include <limits>

namespace distal_beam::kernels {
namespace {

void combine_rows(std::span<const double> coeffs, const double* rows,
                  std::size_t stride, std::span<double> out) {
  const std::size_t n = out.size();
  for (std::size_t i = 0; i < n; ++i) out[i] = 0.0;
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    const double c = coeffs[j];
    const double* row = rows + j * stride;
    for (std::size_t i = 0; i < n; ++i) out[i] += c * row[i];
  }
}

void interval_increments(std::span<const double> f, double h,
                         std::span<double> inc) {
  const std::size_t m = inc.size();
  const double w = h / 24.0;
  inc[0] = w * (9.0 * f[0] + 19.0 * f[1] - 5.0 * f[2] + f[3]);
  for (std::size_t i = 1; i + 1 < m; ++i)
    inc[i] = w * (13.0 * (f[i] + f[i + 1]) - (f[i - 1] + f[i + 2]));
  inc[m - 1] = w * (9.0 * f[m] + 19.0 * f[m - 1] - 5.0 * f[m - 2] + f[m - 3]);
}

void offset_points(std::span<const double> x, std::span<const double> y,
                   std::span<const double> cos_t, std::span<const double> sin_t,
                   std::span<const double> w, std::span<double> out_x,
                   std::span<double> out_y) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    out_x[i] = x[i] - w[i] * sin_t[i];
    out_y[i] = y[i] + w[i] * cos_t[i];
  }
}

double polyline_length(std::span<const double> x, std::span<const double> y) {
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const double dx = x[i + 1] - x[i];
    const double dy = y[i + 1] - y[i];
    total += std::sqrt(dx * dx + dy * dy);
  }
  return total;
}

void taper_norm(std::span<const double> kappa, std::span<const double> taper,
                double c, std::span<double> out) {
  const double c2 = c * c;
  for (std::size_t i = 0; i < kappa.size(); ++i) {
    const double t = 1.0 - taper[i] * kappa[i];
    out[i] = std::sqrt(t * t + c2);
  }
}

double max_scaled(std::span<const double> kappa, double a) {
  double m = -std::numeric_limits<double>::infinity();
  for (double k : kappa) m = std::max(m, a * k);
  return m;
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{combine_rows,    interval_increments,
                                 offset_points,   polyline_length,
                                 taper_norm,      max_scaled};
  return table;
}

}  // namespace distal_beam::kernels
