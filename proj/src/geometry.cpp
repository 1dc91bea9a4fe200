#include "distal_beam/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "distal_beam/errors.hpp"
#include "distal_beam/kernels.hpp"

namespace distal_beam {
namespace {

void check_grid(std::size_t size, const ArcGrid& grid) {
  if (size != grid.samples()) throw ShapeError("curve samples do not match the grid");
}

SampledCurve offset_by(const SampledCurve& ref, std::span<const double> weights) {
  const std::size_t n = ref.size();
  std::vector<double> c(n), s(n);
  for (std::size_t i = 0; i < n; ++i) {
    c[i] = std::cos(ref.theta[i]);
    s[i] = std::sin(ref.theta[i]);
  }
  SampledCurve out{ref.grid, ref.theta, ref.kappa, std::vector<double>(n), std::vector<double>(n)};
  kernels::active().offset_points(ref.x, ref.y, c, s, weights, out.x, out.y);
  return out;
}

}  // namespace

BeamConfig::BeamConfig(double length, double offset, int modes, std::size_t grid_samples)
    : length_(length), offset_(offset), modes_(modes), grid_(length, grid_samples) {
  if (!(offset > 0.0)) throw DomainError("rod offset a0 must be positive");
  if (!(offset < length)) throw DomainError("rod offset a0 must be smaller than the length L");
  if (modes < 2) throw DomainError("Fourier mode count M must be >= 2");
}

BeamConfig BeamConfig::with_grid(std::size_t grid_samples) const {
  return BeamConfig(length_, offset_, modes_, grid_samples);
}

SampledCurve integrate_curve(std::vector<double> kappa_samples, const ArcGrid& grid) {
  check_grid(kappa_samples.size(), grid);
  SampledCurve curve{grid, cumulative_integral(kappa_samples, grid), std::move(kappa_samples), {},
                     {}};
  const std::size_t n = grid.samples();
  std::vector<double> c(n), s(n);
  for (std::size_t i = 0; i < n; ++i) {
    c[i] = std::cos(curve.theta[i]);
    s[i] = std::sin(curve.theta[i]);
  }
  curve.x = cumulative_integral(c, grid);
  curve.y = cumulative_integral(s, grid);
  return curve;
}

SampledCurve integrate_reference_curve(const FourierCurvature& kappa, const BeamConfig& cfg) {
  if (kappa.length() != cfg.length())
    throw ShapeError("curvature length does not match the beam configuration");
  if (kappa.modes() != cfg.modes())
    throw ShapeError("curvature mode count does not match the beam configuration");
  return integrate_curve(sample_curvature(kappa, cfg.grid()), cfg.grid());
}

SampledCurve offset_parallel(const SampledCurve& ref, double offset) {
  return offset_by(ref, std::vector<double>(ref.size(), offset));
}

SampledCurve offset_convergent(const SampledCurve& ref, double offset, double length) {
  std::vector<double> w(ref.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = offset * (1.0 - ref.grid[i] / length);
  return offset_by(ref, w);
}

double length_numeric(const SampledCurve& curve) {
  return kernels::active().polyline_length(curve.x, curve.y);
}

double length_numeric_extrapolated(const SampledCurve& curve) {
  const std::size_t n = curve.size();
  if (n < 3 || n % 2 == 0) return length_numeric(curve);
  std::vector<double> cx((n + 1) / 2), cy((n + 1) / 2);
  for (std::size_t i = 0; i < cx.size(); ++i) {
    cx[i] = curve.x[2 * i];
    cy[i] = curve.y[2 * i];
  }
  const double fine = length_numeric(curve);
  const double coarse = kernels::active().polyline_length(cx, cy);
  return (4.0 * fine - coarse) / 3.0;
}

double length_parallel_exact(double theta_tip, const BeamConfig& cfg) {
  return cfg.length() - cfg.offset() * theta_tip;
}

double length_parallel_exact(const SampledCurve& ref, const BeamConfig& cfg) {
  check_grid(ref.size(), cfg.grid());
  const double worst = kernels::active().max_scaled(ref.kappa, cfg.offset());
  if (worst >= 1.0) {
    const auto it = std::max_element(ref.kappa.begin(), ref.kappa.end());
    const auto i = static_cast<std::size_t>(it - ref.kappa.begin());
    throw SelfIntersectError(worst, ref.grid[i]);
  }
  return cfg.length() - cfg.offset() * (ref.theta.back() - ref.theta.front());
}

double length_convergent_exact(std::span<const double> kappa_samples, const BeamConfig& cfg) {
  const ArcGrid& grid = cfg.grid();
  check_grid(kappa_samples.size(), grid);
  std::vector<double> taper(grid.samples());
  for (std::size_t i = 0; i < taper.size(); ++i)
    taper[i] = cfg.offset() * (1.0 - grid[i] / cfg.length());
  std::vector<double> speed(grid.samples());
  kernels::active().taper_norm(kappa_samples, taper, cfg.offset() / cfg.length(), speed);
  return definite_integral(speed, grid);
}

double length_convergent_exact(const FourierCurvature& kappa, const BeamConfig& cfg) {
  return length_convergent_exact(sample_curvature(kappa, cfg.grid()), cfg);
}

double length_convergent_approx(double theta_bar, const BeamConfig& cfg) {
  const double L = cfg.length();
  const double a0 = cfg.offset();
  const double diag = std::sqrt(L * L + a0 * a0);
  return diag - a0 / diag * L * theta_bar;
}

double tip_angle_from_lengths(double l2, const BeamConfig& cfg) {
  return (cfg.length() - l2) / cfg.offset();
}

double average_angle(std::span<const double> theta, const BeamConfig& cfg) {
  return definite_integral(theta, cfg.grid()) / cfg.length();
}

TipPosture tip_posture(const SampledCurve& curve) {
  const Point tip = curve.tip();
  if (std::abs(tip.x) < 1e-9 * curve.grid.length()) throw DegenerateTipError(tip.x);
  return {curve.theta.back(), tip.y / tip.x, tip};
}

InvariantReport invariant_report(const FourierCurvature& kappa, const BeamConfig& cfg,
                                 double alpha) {
  const SampledCurve ref = integrate_reference_curve(kappa, cfg);
  InvariantReport r;
  r.alpha = alpha;
  r.max_offset_curvature = kernels::active().max_scaled(ref.kappa, cfg.offset());
  r.L2 = length_parallel_exact(ref, cfg);
  r.L1 = length_numeric_extrapolated(ref);
  r.Lc = length_convergent_exact(ref.kappa, cfg);
  const TipPosture posture = tip_posture(ref);
  r.theta_tip = posture.theta_tip;
  r.tip_ratio = posture.tip_ratio;
  r.tip = posture.tip;
  r.theta_bar = average_angle(ref.theta, cfg);
  r.L2_polyline = length_numeric(offset_parallel(ref, cfg.offset()));
  r.Lc_polyline = length_numeric(offset_convergent(ref, cfg.offset(), cfg.length()));
  r.Lc_approx = length_convergent_approx(r.theta_bar, cfg);
  return r;
}

}  // namespace distal_beam
