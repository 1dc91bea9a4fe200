#pragma once

#include <span>
#include <vector>

#include "distal_beam/curvature.hpp"

namespace distal_beam {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// Geometric constants of one beam: reference length L, base rod spacing a0,
/// Fourier mode count M and the arc-length grid.
class BeamConfig {
 public:
  BeamConfig(double length, double offset, int modes = kDefaultModes,
             std::size_t grid_samples = kDefaultGridSamples);

  double length() const noexcept { return length_; }
  double offset() const noexcept { return offset_; }
  int modes() const noexcept { return modes_; }
  const ArcGrid& grid() const noexcept { return grid_; }

  BeamConfig with_grid(std::size_t grid_samples) const;

 private:
  double length_;
  double offset_;
  int modes_;
  ArcGrid grid_;
};

/// A planar curve sampled on an arc-length grid. For offset rods the grid is
/// the reference parameter s, not the rod's own arc length; theta and kappa
/// are always the backbone tangent angle and curvature at that station.
struct SampledCurve {
  ArcGrid grid;
  std::vector<double> theta;
  std::vector<double> kappa;
  std::vector<double> x;
  std::vector<double> y;

  std::size_t size() const noexcept { return x.size(); }
  Point point(std::size_t i) const { return {x[i], y[i]}; }
  Point tip() const { return {x.back(), y.back()}; }
};

struct TipPosture {
  double theta_tip = 0.0;
  double tip_ratio = 0.0;
  Point tip;
};

/// One row of the invariant table plus diagnostics.
struct InvariantReport {
  double alpha = 0.0;
  double L1 = 0.0;  // extrapolated polyline length of the reference rod
  double L2 = 0.0;  // closed form L - a0 (theta(L) - theta(0))
  double Lc = 0.0;  // quadrature of the convergent-rod speed
  double theta_tip = 0.0;
  double theta_bar = 0.0;
  double tip_ratio = 0.0;
  Point tip;

  // diagnostics
  double L2_polyline = 0.0;
  double Lc_polyline = 0.0;
  double Lc_approx = 0.0;
  double max_offset_curvature = 0.0;  // max_s a0 kappa(s)
};

/// theta = integral of kappa, r1 = integral of (cos theta, sin theta), with
/// r1(0) = (0, 0) and theta(0) = 0.
SampledCurve integrate_reference_curve(const FourierCurvature& kappa, const BeamConfig& cfg);

/// Same integration for curvature given directly as grid samples (constant
/// curvature arcs and other shapes outside the Fourier family).
SampledCurve integrate_curve(std::vector<double> kappa_samples, const ArcGrid& grid);

/// r2 = r1 + a0 n, n = (-sin theta, cos theta).
SampledCurve offset_parallel(const SampledCurve& ref, double offset);

/// rc = r1 + a0 (1 - s/L) n. The last point is exactly the reference tip.
SampledCurve offset_convergent(const SampledCurve& ref, double offset, double length);

/// Polyline length through the grid points.
double length_numeric(const SampledCurve& curve);

/// Richardson combination of the polyline on h and 2h: O(h^4) for smooth
/// curves. Falls back to length_numeric on even sample counts.
double length_numeric_extrapolated(const SampledCurve& curve);

/// L - a0 (theta(L) - theta(0)) with theta(0) = 0; no validity check.
double length_parallel_exact(double theta_tip, const BeamConfig& cfg);

/// Closed-form L2 for a reference curve. Throws SelfIntersectError when
/// a0 kappa >= 1 at any node.
double length_parallel_exact(const SampledCurve& ref, const BeamConfig& cfg);

/// integral_0^L sqrt((1 - a0 (1 - s/L) kappa)^2 + (a0/L)^2) ds
double length_convergent_exact(const FourierCurvature& kappa, const BeamConfig& cfg);
double length_convergent_exact(std::span<const double> kappa_samples, const BeamConfig& cfg);

/// First-order approximation sqrt(L^2+a0^2) - a0 L theta_bar / sqrt(L^2+a0^2).
double length_convergent_approx(double theta_bar, const BeamConfig& cfg);

/// (L - L2) / a0
double tip_angle_from_lengths(double l2, const BeamConfig& cfg);

/// (1/L) integral_0^L theta ds
double average_angle(std::span<const double> theta, const BeamConfig& cfg);

/// theta(L), y(L)/x(L) and the tip point. Throws DegenerateTipError when
/// |x(L)| < 1e-9 L.
TipPosture tip_posture(const SampledCurve& curve);

InvariantReport invariant_report(const FourierCurvature& kappa, const BeamConfig& cfg,
                                 double alpha = 0.0);

}  // namespace distal_beam
