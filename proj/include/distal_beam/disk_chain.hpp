#pragma once

// Discrete counterpart of the three-rod beam: N rigid guide disks at stations
// s_k = k L / (N - 1). Disk k is rotated by beta_k = phi_0 + ... + phi_{k-1}
// (beta_0 = 0, clamped base); the backbone segment joining disks k and k+1 is
// a rigid link of length L / (N - 1) along (beta_k + beta_{k+1}) / 2. The
// rods pass through holes on each disk's normal line at offsets 0, a0 and
// a0 (1 - s_k / L).

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "distal_beam/curvature.hpp"
#include "distal_beam/geometry.hpp"

namespace distal_beam {

inline constexpr int kDefaultDisks = 41;

class DiskChain {
 public:
  DiskChain(double length, double offset, std::vector<double> joint_angles);

  std::size_t disks() const noexcept { return joint_angles_.size() + 1; }
  double length() const noexcept { return length_; }
  double offset() const noexcept { return offset_; }
  double segment_length() const noexcept { return length_ / static_cast<double>(disks() - 1); }
  double station(std::size_t k) const { return length_ * static_cast<double>(k) / (disks() - 1); }
  std::span<const double> joint_angles() const noexcept { return joint_angles_; }

  std::vector<double> disk_angles() const;
  std::vector<Point> backbone() const;
  /// Hole centres at normal offset weight(k) on every disk.
  std::vector<Point> holes(std::span<const double> weights) const;
  std::vector<double> parallel_weights() const;
  std::vector<double> convergent_weights() const;

  DiskChain perturbed(std::span<const double> delta) const;

 private:
  double length_;
  double offset_;
  std::vector<double> joint_angles_;
};

struct RodLengths {
  double l1 = 0.0;
  double l2 = 0.0;
  double lc = 0.0;
};

/// phi_k = theta(s_{k+1}) - theta(s_k) from the continuum tangent angle.
DiskChain chain_from_curvature(const FourierCurvature& kappa, const BeamConfig& cfg,
                               int n_disks = kDefaultDisks);

RodLengths rod_lengths(const DiskChain& chain);

/// Rows d l2 / d phi and d lc / d phi.
Eigen::Matrix<double, 2, Eigen::Dynamic> rod_length_jacobian(const DiskChain& chain);

/// -J^T (J J^T)^{-1} r for r = (l2 - target.l2, lc - target.lc).
Eigen::VectorXd minimal_norm_correction(const DiskChain& chain, const RodLengths& target);

struct Projection {
  DiskChain chain;
  int iterations = 0;
  double residual = 0.0;  // max |l - target| over the two constrained rods
};

/// Applies the perturbation, then Gauss-Newton corrections until both rod
/// lengths match the target within 1e-10 L (at most 50 iterations). l1 needs
/// no correction: links are rigid. Throws NonConvergenceError.
Projection project_to_constraints(const DiskChain& chain, const RodLengths& target,
                                  std::span<const double> perturbation);

/// Gaussian bump of extra bending, amplitude * h * exp(-((s - c L) / (w L))^2)
/// evaluated at link midpoints.
std::vector<double> bump_perturbation(const DiskChain& chain, double amplitude, double center,
                                      double width);

InvariantReport discrete_invariant_report(const DiskChain& chain);

/// Perpendicular distance from p to the line through the origin at angle
/// `angle`.
double line_distance(Point p, double angle);

}  // namespace distal_beam
