#pragma once

#include <Eigen/Dense>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "distal_beam/curvature.hpp"
#include "distal_beam/geometry.hpp"

namespace distal_beam {

/// Linear length constraints on the Fourier coefficients:
///   row 0: integral_0^L B_i(s) ds     (tip angle)
///   row 1: integral_0^L s B_i(s) ds   (first moment / average angle)
class ConstraintMatrix {
 public:
  explicit ConstraintMatrix(Eigen::Matrix<double, 2, Eigen::Dynamic> rows);

  int modes() const noexcept { return static_cast<int>(rows_.cols() / 2); }
  Eigen::Index cols() const noexcept { return rows_.cols(); }
  const Eigen::Matrix<double, 2, Eigen::Dynamic>& matrix() const noexcept { return rows_; }
  double operator()(int row, int col) const { return rows_(row, col); }

 private:
  Eigen::Matrix<double, 2, Eigen::Dynamic> rows_;
};

ConstraintMatrix build_constraint_matrix(int modes, double length);
ConstraintMatrix build_constraint_matrix(const BeamConfig& cfg);

/// Orthonormal basis of ker(A), stored as columns. Each column's first
/// nonzero component is positive.
class DeformationBasis {
 public:
  explicit DeformationBasis(Eigen::MatrixXd vectors) : vectors_(std::move(vectors)) {}

  Eigen::Index size() const noexcept { return vectors_.cols(); }
  Eigen::Index dimension() const noexcept { return vectors_.rows(); }
  const Eigen::MatrixXd& vectors() const noexcept { return vectors_; }
  std::vector<double> vector(Eigen::Index i) const;

 private:
  Eigen::MatrixXd vectors_;
};

/// Kernel of A from the right singular vectors of its SVD. Throws
/// DomainError for M < 2 and RankDeficientError when rank(A) < 2.
DeformationBasis nullspace(const ConstraintMatrix& a);

struct PostureTargets {
  double theta_tip = 0.0;
  double theta_bar = 0.0;
};

/// Minimum-norm C with int kappa = theta_tip and
/// int s kappa = L theta_tip - L theta_bar.
FourierCurvature fit_initial_curvature(const PostureTargets& targets, const BeamConfig& cfg);

/// Index of the basis vector with the largest |delta kappa(L/2)|.
Eigen::Index midspan_direction(const DeformationBasis& basis, const BeamConfig& cfg);

/// Largest alpha > 0 such that a0 (kappa0 + alpha d)(s_i) < 1 at every grid
/// node; +inf if d never raises the curvature. Requires kappa0 itself valid.
double self_intersection_bound(const FourierCurvature& kappa0, std::span<const double> direction,
                               const BeamConfig& cfg);

struct SweepRow {
  double alpha = 0.0;
  std::optional<InvariantReport> report;
  std::string error;  // set when report is empty
};

/// kappa = kappa0 + alpha d for each alpha, in input order. Numerical
/// failures are recorded per row instead of aborting the sweep.
std::vector<SweepRow> sweep(const FourierCurvature& kappa0, std::span<const double> direction,
                            std::span<const double> alphas, const BeamConfig& cfg);

struct TipTargets {
  double theta_tip = 0.0;
  Point tip;
};

struct TipFit {
  FourierCurvature kappa;
  int iterations = 0;
  double residual_norm = 0.0;
};

/// Gauss-Newton on (theta(L) - theta*, x(L) - x*, y(L) - y*) with a
/// forward-difference Jacobian, started from fit_initial_curvature. Throws
/// NonConvergenceError when the residual stays above 1e-8 after 100
/// iterations or stops decreasing.
TipFit fit_tip_position(const TipTargets& targets, const BeamConfig& cfg);

}  // namespace distal_beam
