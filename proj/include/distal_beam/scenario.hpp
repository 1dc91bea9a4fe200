#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "distal_beam/constraints.hpp"
#include "distal_beam/geometry.hpp"

namespace distal_beam {

inline constexpr int kScenarioSchemaVersion = 1;

/// Invalid scenario file. `field()` is the dotted JSON path of the offending
/// entry, or empty for syntax errors (whose message carries line/column).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message);
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

struct SweepSpec {
  std::optional<int> direction_index;  // empty: basis vector with largest mid-span curvature
  std::vector<double> alphas;
  bool fractions_of_bound = false;  // alphas scale the self-intersection bound
};

struct PerturbationSpec {
  double amplitude = 3.0;  // 1/length
  double center = 0.5;     // fraction of L
  double width = 0.1;      // fraction of L
};

struct OracleSpec {
  std::vector<int> n_disks{21, 41, 81, 161};
  std::optional<PerturbationSpec> perturbation;
};

struct OutputSpec {
  bool csv = true;
  bool svg = true;
};

struct Scenario {
  std::string name;
  BeamConfig beam;
  std::optional<PostureTargets> targets;
  std::optional<std::vector<double>> coefficients;
  std::optional<SweepSpec> sweep;
  std::optional<OracleSpec> oracle;
  OutputSpec output;
};

Scenario parse_scenario(const std::string& text,
                        std::optional<std::size_t> grid_override = std::nullopt);
Scenario load_scenario(const std::filesystem::path& path,
                       std::optional<std::size_t> grid_override = std::nullopt);

/// kappa_0 from explicit coefficients or the minimum-norm posture fit.
FourierCurvature initial_curvature(const Scenario& scenario);

}  // namespace distal_beam
