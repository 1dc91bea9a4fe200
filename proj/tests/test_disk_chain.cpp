#include <doctest.h>

#include <cmath>
#include <numeric>

#include "distal_beam/constraints.hpp"
#include "distal_beam/disk_chain.hpp"
#include "distal_beam/errors.hpp"

using namespace distal_beam;

namespace {

constexpr double kTableOffset = 0.08 / 0.52;

BeamConfig table_config() { return BeamConfig(1.0, kTableOffset); }

FourierCurvature table_shape() {
  return fit_initial_curvature({0.52, std::atan(0.053)}, table_config());
}

double polyline(const std::vector<Point>& p) {
  double s = 0.0;
  for (std::size_t i = 1; i < p.size(); ++i) s += std::hypot(p[i].x - p[i - 1].x, p[i].y - p[i - 1].y);
  return s;
}

}  // namespace

TEST_CASE("chain construction") {
  CHECK_THROWS(DiskChain(1.0, 0.1, {0.1}));
  const DiskChain c(2.0, 0.1, std::vector<double>(40, 0.0));
  CHECK(c.disks() == 41);
  CHECK(c.segment_length() == doctest::Approx(0.05));
  CHECK(c.station(40) == 2.0);
}

TEST_CASE("straight chain") {
  const DiskChain c = chain_from_curvature(FourierCurvature::zero(3, 1.0), table_config(), 41);
  for (double phi : c.joint_angles()) CHECK(phi == 0.0);
  const RodLengths l = rod_lengths(c);
  CHECK(std::abs(l.l1 - 1.0) <= 2e-4);
  CHECK(std::abs(l.l2 - 1.0) <= 2e-4);
  CHECK(std::abs(l.lc - std::sqrt(1 + kTableOffset * kTableOffset)) <= 2e-4);
  const InvariantReport r = discrete_invariant_report(c);
  CHECK(r.theta_tip == 0.0);
  CHECK(r.theta_bar == 0.0);
  CHECK(r.tip_ratio == 0.0);
}

TEST_CASE("uniform bending") {
  const double kb = 0.7;
  // constant curvature is outside the Fourier span, so build the chain directly
  const int n = 41;
  const DiskChain c(1.0, kTableOffset, std::vector<double>(n - 1, kb / (n - 1)));
  const auto beta = c.disk_angles();
  CHECK(beta.back() == doctest::Approx(kb).epsilon(1e-14));
  // disk stations sit on a circle of radius 1/kb up to O(h^2)
  CHECK(std::abs(rod_lengths(c).l2 - (1.0 - kTableOffset * kb)) <= 1e-3);

  double prev = 0.0;
  for (int m : {21, 41, 81, 161}) {
    const DiskChain cm(1.0, kTableOffset, std::vector<double>(m - 1, kb / (m - 1)));
    const double err = std::abs(rod_lengths(cm).l2 - (1.0 - kTableOffset * kb));
    if (prev > 0.0) CHECK(prev / err >= 3.5);
    prev = err;
  }
}

TEST_CASE("joint angles sample the continuum tangent") {
  const FourierCurvature k = table_shape();
  const DiskChain c = chain_from_curvature(k, table_config(), 41);
  const auto beta = c.disk_angles();
  for (std::size_t j = 0; j < beta.size(); ++j)
    CHECK(beta[j] == doctest::Approx(eval_tangent_angle(k, c.station(j))).epsilon(1e-12));
}

TEST_CASE("backbone length is exact for any joint angles") {
  std::vector<double> phi(30);
  for (std::size_t i = 0; i < phi.size(); ++i) phi[i] = 0.3 * std::sin(1.7 * i);
  const DiskChain c(1.3, 0.1, phi);
  CHECK(polyline(c.backbone()) == doctest::Approx(1.3).epsilon(1e-14));
  CHECK(rod_lengths(c).l1 == doctest::Approx(1.3).epsilon(1e-14));
  CHECK(discrete_invariant_report(c).theta_tip ==
        doctest::Approx(std::accumulate(phi.begin(), phi.end(), 0.0)).epsilon(1e-14));
}

TEST_CASE("holes lie on the disk normal line") {
  const DiskChain c = chain_from_curvature(table_shape(), table_config(), 21);
  const auto back = c.backbone();
  const auto holes = c.holes(c.convergent_weights());
  const auto beta = c.disk_angles();
  for (std::size_t k = 0; k < back.size(); ++k) {
    const double dx = holes[k].x - back[k].x;
    const double dy = holes[k].y - back[k].y;
    CHECK(std::abs(dx * std::cos(beta[k]) + dy * std::sin(beta[k])) <= 1e-15);
  }
  CHECK(holes.back().x == back.back().x);
  CHECK(holes.back().y == back.back().y);
}

TEST_CASE("analytic rod-length jacobian against finite differences") {
  const DiskChain c = chain_from_curvature(table_shape(), table_config(), 21);
  const auto J = rod_length_jacobian(c);
  const double h = 1e-7;
  for (std::size_t j = 0; j < c.joint_angles().size(); ++j) {
    std::vector<double> d(c.joint_angles().size(), 0.0);
    d[j] = h;
    const RodLengths up = rod_lengths(c.perturbed(d));
    d[j] = -h;
    const RodLengths dn = rod_lengths(c.perturbed(d));
    CHECK(J(0, j) == doctest::Approx((up.l2 - dn.l2) / (2 * h)).epsilon(1e-6));
    CHECK(J(1, j) == doctest::Approx((up.lc - dn.lc) / (2 * h)).epsilon(1e-6));
  }
}

TEST_CASE("minimal-norm correction lies in the jacobian row space") {
  const DiskChain c = chain_from_curvature(table_shape(), table_config(), 41);
  const RodLengths target = rod_lengths(c);
  const DiskChain moved = c.perturbed(bump_perturbation(c, 1.0, 0.4, 0.1));
  const Eigen::VectorXd step = minimal_norm_correction(moved, target);
  const Eigen::MatrixXd Jt = rod_length_jacobian(moved).transpose();
  const Eigen::VectorXd coef = Jt.colPivHouseholderQr().solve(step);
  CHECK((Jt * coef - step).norm() <= 1e-10);
}

TEST_CASE("projection") {
  const DiskChain c = chain_from_curvature(table_shape(), table_config(), 41);
  const RodLengths target = rod_lengths(c);

  const Projection idle = project_to_constraints(c, target, std::vector<double>(40, 0.0));
  CHECK(idle.iterations == 0);
  for (std::size_t i = 0; i < 40; ++i)
    CHECK(std::abs(idle.chain.joint_angles()[i] - c.joint_angles()[i]) <= 1e-12);

  const double theta_bar = std::atan(0.053);
  const Projection p = project_to_constraints(c, target, bump_perturbation(c, 3.0, 0.5, 0.1));
  const RodLengths got = rod_lengths(p.chain);
  CHECK(std::abs(got.l2 - target.l2) <= 1e-10);
  CHECK(std::abs(got.lc - target.lc) <= 1e-10);
  const InvariantReport before = discrete_invariant_report(c);
  const InvariantReport after = discrete_invariant_report(p.chain);
  CHECK(std::abs(after.theta_tip - before.theta_tip) <= 1e-3);
  CHECK(line_distance(after.tip, theta_bar) <= 1e-2);
  CHECK(std::hypot(after.tip.x - before.tip.x, after.tip.y - before.tip.y) > 1e-3);

  const Projection again = project_to_constraints(p.chain, target, std::vector<double>(40, 0.0));
  for (std::size_t i = 0; i < 40; ++i)
    CHECK(std::abs(again.chain.joint_angles()[i] - p.chain.joint_angles()[i]) <= 1e-12);
}

TEST_CASE("projection failure reports the residual") {
  const DiskChain c = chain_from_curvature(table_shape(), table_config(), 21);
  RodLengths target = rod_lengths(c);
  // each hole-to-hole segment is at most h + 2 a0, far below this
  target.l2 = 100.0;
  CHECK_THROWS_AS(project_to_constraints(c, target, std::vector<double>(20, 0.0)),
                  NonConvergenceError);
}

TEST_CASE("discrete model converges to the continuum") {
  const BeamConfig cfg = table_config();
  const FourierCurvature k = table_shape();
  const InvariantReport cont = invariant_report(k, cfg);

  const InvariantReport d41 = discrete_invariant_report(chain_from_curvature(k, cfg, 41));
  CHECK(std::abs(d41.theta_tip - cont.theta_tip) <= 0.01);

  double prev_lc = 0.0, prev_ratio = 0.0;
  for (int n : {21, 41, 81, 161}) {
    const InvariantReport d = discrete_invariant_report(chain_from_curvature(k, cfg, n));
    const double lc = std::abs(d.Lc - cont.Lc);
    const double ratio = std::abs(d.tip_ratio - cont.tip_ratio);
    if (prev_lc > 0.0) {
      CHECK(prev_lc / lc >= 3.5);
      CHECK(prev_ratio / ratio >= 3.5);
    }
    prev_lc = lc;
    prev_ratio = ratio;
  }
}

TEST_CASE("line distance") {
  CHECK(line_distance({1.0, 0.0}, 0.0) == 0.0);
  CHECK(line_distance({0.0, 2.0}, 0.0) == doctest::Approx(2.0));
  CHECK(line_distance({1.0, 1.0}, std::atan(1.0)) == doctest::Approx(0.0).epsilon(1e-15));
}
