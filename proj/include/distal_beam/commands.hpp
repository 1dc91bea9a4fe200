#pragma once

// The three CLI workflows. compute_* return the numbers; run_* also write the
// CSV/SVG artifacts and map failures to exit codes.

#include <Eigen/Dense>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "distal_beam/constraints.hpp"
#include "distal_beam/disk_chain.hpp"
#include "distal_beam/scenario.hpp"

namespace distal_beam {

enum ExitCode : int { kExitOk = 0, kExitConfig = 2, kExitNumerical = 3 };

struct SweepResult {
  FourierCurvature kappa0;
  Eigen::Index direction_index = 0;
  std::vector<double> direction;
  double alpha_bound = 0.0;  // self-intersection bound along the direction
  std::vector<SweepRow> rows;
};

SweepResult compute_sweep(const Scenario& scenario);

struct OracleRow {
  int n_disks = 0;
  std::string error;  // non-empty when this resolution failed
  InvariantReport discrete;
  double tip_angle_error = 0.0;
  double tip_ratio_error = 0.0;
  double theta_bar_error = 0.0;
  double l1_error = 0.0;
  double l2_error = 0.0;
  double lc_error = 0.0;
};

struct ConvergenceOrder {
  std::string quantity;
  // One entry per consecutive pair of resolutions; empty optional when both
  // errors are at round-off level.
  std::vector<std::optional<double>> orders;
};

struct ProjectionCase {
  int n_disks = 0;
  std::string error;
  int iterations = 0;
  double residual = 0.0;
  double tip_angle_change = 0.0;
  double line_distance = 0.0;  // |tip| distance from the line at theta_bar
  double tip_displacement = 0.0;
  double max_joint_change = 0.0;
};

struct OracleResult {
  InvariantReport continuum;
  std::vector<OracleRow> rows;
  std::vector<ConvergenceOrder> orders;
  std::vector<ProjectionCase> projections;
};

/// Round-off floor below which an oracle error counts as exact.
inline constexpr double kExactErrorFloor = 1e-10;

OracleResult compute_oracle(const Scenario& scenario);

/// order = log(e_coarse / e_fine) / log((n_fine - 1) / (n_coarse - 1))
std::optional<double> convergence_order(double e_coarse, double e_fine, int n_coarse, int n_fine);

int run_shape(const Scenario& scenario, const std::filesystem::path& out, std::ostream& log);
int run_sweep(const Scenario& scenario, const std::filesystem::path& out, std::ostream& log);
int run_oracle(const Scenario& scenario, const std::filesystem::path& out, std::ostream& log);

}  // namespace distal_beam
