#include "distal_beam/disk_chain.hpp"

#include <cmath>
#include <string>

#include "distal_beam/errors.hpp"
#include "distal_beam/kernels.hpp"

namespace distal_beam {
namespace {

constexpr int kMaxProjectionIterations = 50;
constexpr double kProjectionTolerance = 1e-10;

double rod_length(const std::vector<Point>& pts) {
  std::vector<double> x(pts.size()), y(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    x[i] = pts[i].x;
    y[i] = pts[i].y;
  }
  return kernels::active().polyline_length(x, y);
}

// d l / d phi for the rod through the holes at the given weights.
Eigen::RowVectorXd length_gradient(const DiskChain& chain, std::span<const double> weights) {
  const std::size_t n = chain.disks();
  const double h = chain.segment_length();
  const std::vector<double> beta = chain.disk_angles();
  const std::vector<Point> q = chain.holes(weights);

  std::vector<Point> u(n - 1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const double dx = q[k + 1].x - q[k].x;
    const double dy = q[k + 1].y - q[k].y;
    const double len = std::sqrt(dx * dx + dy * dy);
    u[k] = {dx / len, dy / len};
  }

  // e_k = h n(psi_k) . u_k ; f_m = w_m g_m . t(beta_m), g_m = u_{m-1} - u_m
  std::vector<double> e(n - 1), f(n);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const double psi = 0.5 * (beta[k] + beta[k + 1]);
    e[k] = h * (-std::sin(psi) * u[k].x + std::cos(psi) * u[k].y);
  }
  for (std::size_t m = 0; m < n; ++m) {
    const Point prev = m > 0 ? u[m - 1] : Point{};
    const Point next = m + 1 < n ? u[m] : Point{};
    f[m] = weights[m] * ((prev.x - next.x) * std::cos(beta[m]) +
                         (prev.y - next.y) * std::sin(beta[m]));
  }

  Eigen::RowVectorXd grad(static_cast<Eigen::Index>(n - 1));
  double e_tail = 0.0;
  double f_tail = f[n - 1];
  for (std::size_t j = n - 1; j-- > 0;) {
    grad(static_cast<Eigen::Index>(j)) = e_tail + 0.5 * e[j] - f_tail;
    e_tail += e[j];
    f_tail += f[j];
  }
  return grad;
}

}  // namespace

DiskChain::DiskChain(double length, double offset, std::vector<double> joint_angles)
    : length_(length), offset_(offset), joint_angles_(std::move(joint_angles)) {
  if (joint_angles_.size() < 2) throw DomainError("a disk chain needs at least 3 disks");
  if (!(length > 0.0)) throw DomainError("chain length must be positive");
  if (!(offset > 0.0)) throw DomainError("rod offset must be positive");
}

std::vector<double> DiskChain::disk_angles() const {
  std::vector<double> beta(disks());
  beta[0] = 0.0;
  for (std::size_t k = 0; k < joint_angles_.size(); ++k) beta[k + 1] = beta[k] + joint_angles_[k];
  return beta;
}

std::vector<Point> DiskChain::backbone() const {
  const std::vector<double> beta = disk_angles();
  const double h = segment_length();
  std::vector<Point> p(disks());
  for (std::size_t k = 0; k + 1 < p.size(); ++k) {
    const double psi = 0.5 * (beta[k] + beta[k + 1]);
    p[k + 1] = {p[k].x + h * std::cos(psi), p[k].y + h * std::sin(psi)};
  }
  return p;
}

std::vector<Point> DiskChain::holes(std::span<const double> weights) const {
  if (weights.size() != disks()) throw ShapeError("one hole weight per disk expected");
  const std::vector<double> beta = disk_angles();
  std::vector<Point> p = backbone();
  for (std::size_t k = 0; k < p.size(); ++k) {
    p[k].x -= weights[k] * std::sin(beta[k]);
    p[k].y += weights[k] * std::cos(beta[k]);
  }
  return p;
}

std::vector<double> DiskChain::parallel_weights() const {
  return std::vector<double>(disks(), offset_);
}

std::vector<double> DiskChain::convergent_weights() const {
  std::vector<double> w(disks());
  for (std::size_t k = 0; k < w.size(); ++k) w[k] = offset_ * (1.0 - station(k) / length_);
  w.back() = 0.0;
  return w;
}

DiskChain DiskChain::perturbed(std::span<const double> delta) const {
  if (delta.size() != joint_angles_.size()) throw ShapeError("one perturbation per joint expected");
  std::vector<double> phi(joint_angles_);
  for (std::size_t k = 0; k < phi.size(); ++k) phi[k] += delta[k];
  return DiskChain(length_, offset_, std::move(phi));
}

DiskChain chain_from_curvature(const FourierCurvature& kappa, const BeamConfig& cfg, int n_disks) {
  if (n_disks < 3) throw DomainError("n_disks must be >= 3");
  const auto joints = static_cast<std::size_t>(n_disks - 1);
  std::vector<double> theta(joints + 1);
  for (std::size_t k = 0; k <= joints; ++k) {
    const double s = k == joints ? cfg.length()
                                 : cfg.length() * static_cast<double>(k) / static_cast<double>(joints);
    theta[k] = eval_tangent_angle(kappa, s);
  }
  std::vector<double> phi(joints);
  for (std::size_t k = 0; k < joints; ++k) phi[k] = theta[k + 1] - theta[k];
  return DiskChain(cfg.length(), cfg.offset(), std::move(phi));
}

RodLengths rod_lengths(const DiskChain& chain) {
  return {rod_length(chain.backbone()), rod_length(chain.holes(chain.parallel_weights())),
          rod_length(chain.holes(chain.convergent_weights()))};
}

Eigen::Matrix<double, 2, Eigen::Dynamic> rod_length_jacobian(const DiskChain& chain) {
  Eigen::Matrix<double, 2, Eigen::Dynamic> j(2, static_cast<Eigen::Index>(chain.disks() - 1));
  j.row(0) = length_gradient(chain, chain.parallel_weights());
  j.row(1) = length_gradient(chain, chain.convergent_weights());
  return j;
}

Eigen::VectorXd minimal_norm_correction(const DiskChain& chain, const RodLengths& target) {
  const RodLengths now = rod_lengths(chain);
  const Eigen::Vector2d r(now.l2 - target.l2, now.lc - target.lc);
  const Eigen::Matrix<double, 2, Eigen::Dynamic> j = rod_length_jacobian(chain);
  const Eigen::Matrix2d gram = j * j.transpose();
  const Eigen::Vector2d y = gram.ldlt().solve(r);
  return -(j.transpose() * y);
}

Projection project_to_constraints(const DiskChain& chain, const RodLengths& target,
                                  std::span<const double> perturbation) {
  DiskChain current = chain.perturbed(perturbation);
  const double tol = kProjectionTolerance * chain.length();
  auto residual_of = [&](const DiskChain& c) {
    const RodLengths l = rod_lengths(c);
    return std::max(std::abs(l.l2 - target.l2), std::abs(l.lc - target.lc));
  };

  double r = residual_of(current);
  int it = 0;
  while (r > tol) {
    if (it == kMaxProjectionIterations) break;
    const Eigen::VectorXd step = minimal_norm_correction(current, target);
    // Halve the step while the residual grows.
    double t = 1.0;
    DiskChain trial = current;
    double rt = r;
    for (int k = 0; k < 20; ++k, t *= 0.5) {
      std::vector<double> delta(static_cast<std::size_t>(step.size()));
      for (Eigen::Index i = 0; i < step.size(); ++i) delta[static_cast<std::size_t>(i)] = t * step(i);
      trial = current.perturbed(delta);
      rt = residual_of(trial);
      if (rt < r) break;
    }
    ++it;
    if (!(rt < r)) break;
    current = std::move(trial);
    r = rt;
  }
  if (r > tol) {
    const RodLengths l = rod_lengths(current);
    throw NonConvergenceError("disk-chain projection did not converge",
                              {l.l2 - target.l2, l.lc - target.lc}, it);
  }
  return {std::move(current), it, r};
}

std::vector<double> bump_perturbation(const DiskChain& chain, double amplitude, double center,
                                      double width) {
  const double h = chain.segment_length();
  const double L = chain.length();
  std::vector<double> delta(chain.disks() - 1);
  for (std::size_t k = 0; k < delta.size(); ++k) {
    const double z = (chain.station(k) + 0.5 * h - center * L) / (width * L);
    delta[k] = amplitude * h * std::exp(-z * z);
  }
  return delta;
}

InvariantReport discrete_invariant_report(const DiskChain& chain) {
  const RodLengths l = rod_lengths(chain);
  const std::vector<double> beta = chain.disk_angles();
  const Point tip = chain.backbone().back();
  if (std::abs(tip.x) < 1e-9 * chain.length()) throw DegenerateTipError(tip.x);

  double integral = 0.0;
  const double h = chain.segment_length();
  for (std::size_t k = 0; k + 1 < beta.size(); ++k) integral += 0.5 * h * (beta[k] + beta[k + 1]);

  InvariantReport r;
  r.L1 = l.l1;
  r.L2 = l.l2;
  r.Lc = l.lc;
  r.L2_polyline = l.l2;
  r.Lc_polyline = l.lc;
  r.theta_tip = beta.back();
  r.theta_bar = integral / chain.length();
  r.tip = tip;
  r.tip_ratio = tip.y / tip.x;
  return r;
}

double line_distance(Point p, double angle) {
  return std::abs(-std::sin(angle) * p.x + std::cos(angle) * p.y);
}

}  // namespace distal_beam
