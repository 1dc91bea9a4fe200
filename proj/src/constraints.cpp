#include "distal_beam/constraints.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "distal_beam/errors.hpp"

namespace distal_beam {
namespace {

constexpr double kTipTolerance = 1e-8;
constexpr double kJacobianStep = 1e-6;
constexpr int kMaxTipIterations = 100;

Eigen::Vector3d tip_residual(std::span<const double> coeffs, const TipTargets& t,
                             const BeamConfig& cfg) {
  const SampledCurve c = integrate_reference_curve(
      FourierCurvature(std::vector<double>(coeffs.begin(), coeffs.end()), cfg.length()), cfg);
  return {c.theta.back() - t.theta_tip, c.x.back() - t.tip.x, c.y.back() - t.tip.y};
}

std::vector<double> to_std(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

}  // namespace

ConstraintMatrix::ConstraintMatrix(Eigen::Matrix<double, 2, Eigen::Dynamic> rows)
    : rows_(std::move(rows)) {
  if (rows_.cols() == 0 || rows_.cols() % 2 != 0)
    throw ShapeError("constraint matrix must have 2M columns");
}

ConstraintMatrix build_constraint_matrix(int modes, double length) {
  if (modes < 1) throw DomainError("mode count must be >= 1");
  const double L = length;
  Eigen::Matrix<double, 2, Eigen::Dynamic> a(2, 2 * modes);
  for (int n = 1; n <= modes; ++n) {
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;  // (-1)^n
    const double npi = n * std::numbers::pi;
    const int c = n - 1;
    const int s = modes + n - 1;
    a(0, c) = 0.0;
    a(0, s) = L / npi * (1.0 - sign);
    a(1, c) = L * L / (npi * npi) * (sign - 1.0);
    a(1, s) = -L * L * sign / npi;
  }
  return ConstraintMatrix(std::move(a));
}

ConstraintMatrix build_constraint_matrix(const BeamConfig& cfg) {
  return build_constraint_matrix(cfg.modes(), cfg.length());
}

std::vector<double> DeformationBasis::vector(Eigen::Index i) const {
  return to_std(vectors_.col(i));
}

DeformationBasis nullspace(const ConstraintMatrix& a) {
  if (a.modes() < 2)
    throw DomainError("the deformation basis needs M >= 2; with M = 1 the kernel is empty");
  const Eigen::MatrixXd m = a.matrix();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
  const int rank = static_cast<int>(svd.rank());
  if (rank < 2) throw RankDeficientError(rank, 2);

  Eigen::MatrixXd kernel = svd.matrixV().rightCols(m.cols() - rank);
  for (Eigen::Index j = 0; j < kernel.cols(); ++j) {
    for (Eigen::Index i = 0; i < kernel.rows(); ++i) {
      if (std::abs(kernel(i, j)) > 1e-12) {
        if (kernel(i, j) < 0.0) kernel.col(j) *= -1.0;
        break;
      }
    }
  }
  return DeformationBasis(std::move(kernel));
}

FourierCurvature fit_initial_curvature(const PostureTargets& targets, const BeamConfig& cfg) {
  const ConstraintMatrix a = build_constraint_matrix(cfg);
  const Eigen::MatrixXd m = a.matrix();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.rank() < 2) throw RankDeficientError(static_cast<int>(svd.rank()), 2);
  const double L = cfg.length();
  const Eigen::Vector2d rhs(targets.theta_tip, L * targets.theta_tip - L * targets.theta_bar);
  const Eigen::VectorXd c = svd.solve(rhs);
  return FourierCurvature(to_std(c), L);
}

Eigen::Index midspan_direction(const DeformationBasis& basis, const BeamConfig& cfg) {
  const double mid = 0.5 * cfg.length();
  Eigen::Index best = 0;
  double best_value = -1.0;
  for (Eigen::Index j = 0; j < basis.size(); ++j) {
    const double v = std::abs(eval_curvature(FourierCurvature(basis.vector(j), cfg.length()), mid));
    if (v > best_value) {
      best_value = v;
      best = j;
    }
  }
  return best;
}

double self_intersection_bound(const FourierCurvature& kappa0, std::span<const double> direction,
                               const BeamConfig& cfg) {
  const std::vector<double> k0 = sample_curvature(kappa0, cfg.grid());
  const std::vector<double> d =
      sample_curvature(FourierCurvature({direction.begin(), direction.end()}, cfg.length()),
                       cfg.grid());
  const double limit = 1.0 / cfg.offset();
  double bound = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < k0.size(); ++i) {
    if (k0[i] >= limit) throw SelfIntersectError(cfg.offset() * k0[i], cfg.grid()[i]);
    if (d[i] > 0.0) bound = std::min(bound, (limit - k0[i]) / d[i]);
  }
  return bound;
}

std::vector<SweepRow> sweep(const FourierCurvature& kappa0, std::span<const double> direction,
                            std::span<const double> alphas, const BeamConfig& cfg) {
  std::vector<SweepRow> rows;
  rows.reserve(alphas.size());
  for (double alpha : alphas) {
    SweepRow row;
    row.alpha = alpha;
    try {
      row.report = invariant_report(kappa0.plus(direction, alpha), cfg, alpha);
    } catch (const NumericalError& e) {
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

TipFit fit_tip_position(const TipTargets& targets, const BeamConfig& cfg) {
  const double theta_bar_guess = std::atan2(targets.tip.y, targets.tip.x);
  const FourierCurvature start = fit_initial_curvature({targets.theta_tip, theta_bar_guess}, cfg);
  std::vector<double> c(start.coeffs().begin(), start.coeffs().end());
  const auto n = static_cast<Eigen::Index>(c.size());

  Eigen::Vector3d r = tip_residual(c, targets, cfg);
  int it = 0;
  for (; it < kMaxTipIterations && r.norm() > kTipTolerance; ++it) {
    Eigen::Matrix<double, 3, Eigen::Dynamic> jac(3, n);
    for (Eigen::Index j = 0; j < n; ++j) {
      std::vector<double> probe = c;
      probe[j] += kJacobianStep;
      jac.col(j) = (tip_residual(probe, targets, cfg) - r) / kJacobianStep;
    }
    const Eigen::VectorXd step =
        Eigen::MatrixXd(jac).jacobiSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(-r);

    // Backtrack until the residual decreases; a target past the inextensible
    // reach stalls here.
    double t = 1.0;
    bool improved = false;
    for (int k = 0; k < 30 && !improved; ++k, t *= 0.5) {
      std::vector<double> trial = c;
      for (Eigen::Index j = 0; j < n; ++j) trial[j] += t * step(j);
      const Eigen::Vector3d rt = tip_residual(trial, targets, cfg);
      if (rt.allFinite() && rt.norm() < r.norm()) {
        c = std::move(trial);
        r = rt;
        improved = true;
      }
    }
    if (!improved) break;
  }
  if (r.norm() > kTipTolerance)
    throw NonConvergenceError("tip-position fit did not converge", to_std(r), it);
  return {FourierCurvature(std::move(c), cfg.length()), it, r.norm()};
}

}  // namespace distal_beam
