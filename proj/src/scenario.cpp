#include "distal_beam/scenario.hpp"

#include <cmath>
#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>

#include "distal_beam/errors.hpp"

namespace distal_beam {
namespace {

using nlohmann::json;

void only_keys(const json& obj, const std::string& where, std::set<std::string> allowed) {
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.count(key))
      throw ConfigError(where.empty() ? key : where + "." + key, "unknown field");
  }
}

const json& object_at(const json& parent, const std::string& key, const std::string& path) {
  const json& v = parent.at(key);
  if (!v.is_object()) throw ConfigError(path, "must be an object");
  return v;
}

double number_at(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.contains(key)) throw ConfigError(path, "missing required field");
  const json& v = obj.at(key);
  if (!v.is_number()) throw ConfigError(path, "must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ConfigError(path, "must be finite");
  return d;
}

std::vector<double> number_list(const json& v, const std::string& path) {
  if (!v.is_array()) throw ConfigError(path, "must be an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) throw ConfigError(path + "[" + std::to_string(i) + "]", "must be a number");
    const double d = v[i].get<double>();
    if (!std::isfinite(d)) throw ConfigError(path + "[" + std::to_string(i) + "]", "must be finite");
    out.push_back(d);
  }
  return out;
}

BeamConfig parse_beam(const json& b, std::optional<std::size_t> grid_override) {
  only_keys(b, "beam", {"length", "offset", "modes", "grid_samples"});
  const double length = number_at(b, "length", "beam.length");
  if (!(length > 0.0)) throw ConfigError("beam.length", "must be > 0");
  const double offset = number_at(b, "offset", "beam.offset");
  if (!(offset > 0.0)) throw ConfigError("beam.offset", "must be > 0");
  if (!(offset < length)) throw ConfigError("beam.offset", "must be smaller than beam.length");

  int modes = kDefaultModes;
  if (b.contains("modes")) {
    if (!b["modes"].is_number_integer()) throw ConfigError("beam.modes", "must be an integer");
    modes = b["modes"].get<int>();
    if (modes < 2) throw ConfigError("beam.modes", "must be >= 2");
  }
  long long samples = static_cast<long long>(kDefaultGridSamples);
  if (b.contains("grid_samples")) {
    if (!b["grid_samples"].is_number_integer())
      throw ConfigError("beam.grid_samples", "must be an integer");
    samples = b["grid_samples"].get<long long>();
  }
  std::string samples_field = "beam.grid_samples";
  if (grid_override) {
    samples = static_cast<long long>(*grid_override);
    samples_field = "--grid-n";
  }
  if (samples < 5 || samples % 2 == 0) throw ConfigError(samples_field, "must be odd and >= 5");
  return BeamConfig(length, offset, modes, static_cast<std::size_t>(samples));
}

SweepSpec parse_sweep(const json& s) {
  only_keys(s, "sweep", {"direction", "alphas", "alpha_fractions"});
  SweepSpec spec;
  if (s.contains("direction")) {
    const json& d = s["direction"];
    if (d.is_string()) {
      if (d.get<std::string>() != "midspan")
        throw ConfigError("sweep.direction", "must be \"midspan\" or a basis index");
    } else if (d.is_number_integer() && d.get<int>() >= 0) {
      spec.direction_index = d.get<int>();
    } else {
      throw ConfigError("sweep.direction", "must be \"midspan\" or a non-negative integer");
    }
  }
  const bool abs = s.contains("alphas");
  const bool frac = s.contains("alpha_fractions");
  if (abs == frac) throw ConfigError("sweep", "exactly one of alphas / alpha_fractions is required");
  spec.fractions_of_bound = frac;
  spec.alphas = number_list(frac ? s["alpha_fractions"] : s["alphas"],
                            frac ? "sweep.alpha_fractions" : "sweep.alphas");
  if (spec.alphas.empty()) throw ConfigError(frac ? "sweep.alpha_fractions" : "sweep.alphas", "must not be empty");
  if (frac) {
    for (std::size_t i = 0; i < spec.alphas.size(); ++i)
      if (std::abs(spec.alphas[i]) >= 1.0)
        throw ConfigError("sweep.alpha_fractions[" + std::to_string(i) + "]",
                          "must lie strictly inside (-1, 1)");
  }
  return spec;
}

OracleSpec parse_oracle(const json& o) {
  only_keys(o, "oracle", {"n_disks", "perturbation"});
  OracleSpec spec;
  if (o.contains("n_disks")) {
    const json& n = o["n_disks"];
    if (!n.is_array() || n.empty()) throw ConfigError("oracle.n_disks", "must be a non-empty array");
    spec.n_disks.clear();
    for (std::size_t i = 0; i < n.size(); ++i) {
      const std::string path = "oracle.n_disks[" + std::to_string(i) + "]";
      if (!n[i].is_number_integer() || n[i].get<int>() < 3) throw ConfigError(path, "must be an integer >= 3");
      spec.n_disks.push_back(n[i].get<int>());
    }
  }
  if (o.contains("perturbation")) {
    const json& p = object_at(o, "perturbation", "oracle.perturbation");
    only_keys(p, "oracle.perturbation", {"amplitude", "center", "width"});
    PerturbationSpec ps;
    if (p.contains("amplitude")) ps.amplitude = number_at(p, "amplitude", "oracle.perturbation.amplitude");
    if (p.contains("center")) ps.center = number_at(p, "center", "oracle.perturbation.center");
    if (p.contains("width")) ps.width = number_at(p, "width", "oracle.perturbation.width");
    if (!(ps.center >= 0.0 && ps.center <= 1.0))
      throw ConfigError("oracle.perturbation.center", "must lie in [0, 1]");
    if (!(ps.width > 0.0)) throw ConfigError("oracle.perturbation.width", "must be > 0");
    spec.perturbation = ps;
  }
  return spec;
}

}  // namespace

ConfigError::ConfigError(std::string field, const std::string& message)
    : std::runtime_error(field.empty() ? message : field + ": " + message), field_(std::move(field)) {}

Scenario parse_scenario(const std::string& text, std::optional<std::size_t> grid_override) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("malformed JSON: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("", "scenario must be a JSON object");
  only_keys(root, "", {"schema_version", "name", "beam", "targets", "coefficients", "sweep", "oracle",
                       "output"});

  if (!root.contains("schema_version") || !root["schema_version"].is_number_integer())
    throw ConfigError("schema_version", "missing or not an integer");
  if (root["schema_version"].get<int>() != kScenarioSchemaVersion)
    throw ConfigError("schema_version", "unsupported version (expected " +
                                            std::to_string(kScenarioSchemaVersion) + ")");
  if (!root.contains("beam")) throw ConfigError("beam", "missing required field");

  Scenario sc{root.value("name", std::string("scenario")),
              parse_beam(object_at(root, "beam", "beam"), grid_override),
              std::nullopt, std::nullopt, std::nullopt, std::nullopt, {}};

  const bool has_targets = root.contains("targets");
  const bool has_coeffs = root.contains("coefficients");
  if (has_targets == has_coeffs)
    throw ConfigError("targets", "exactly one of targets / coefficients is required");
  if (has_targets) {
    const json& t = object_at(root, "targets", "targets");
    only_keys(t, "targets", {"theta_tip", "theta_bar", "tip_ratio"});
    PostureTargets pt;
    pt.theta_tip = number_at(t, "theta_tip", "targets.theta_tip");
    const bool bar = t.contains("theta_bar");
    const bool ratio = t.contains("tip_ratio");
    if (bar == ratio) throw ConfigError("targets", "exactly one of theta_bar / tip_ratio is required");
    pt.theta_bar = bar ? number_at(t, "theta_bar", "targets.theta_bar")
                       : std::atan(number_at(t, "tip_ratio", "targets.tip_ratio"));
    sc.targets = pt;
  } else {
    std::vector<double> c = number_list(root["coefficients"], "coefficients");
    if (c.size() != 2 * static_cast<std::size_t>(sc.beam.modes()))
      throw ConfigError("coefficients", "must have 2 * beam.modes entries");
    sc.coefficients = std::move(c);
  }

  if (root.contains("sweep")) sc.sweep = parse_sweep(object_at(root, "sweep", "sweep"));
  if (root.contains("oracle")) sc.oracle = parse_oracle(object_at(root, "oracle", "oracle"));
  if (root.contains("output")) {
    const json& o = object_at(root, "output", "output");
    only_keys(o, "output", {"formats"});
    if (o.contains("formats")) {
      const json& f = o["formats"];
      if (!f.is_array()) throw ConfigError("output.formats", "must be an array");
      sc.output.csv = sc.output.svg = false;
      for (const json& item : f) {
        const std::string v = item.is_string() ? item.get<std::string>() : "";
        if (v == "csv") sc.output.csv = true;
        else if (v == "svg") sc.output.svg = true;
        else throw ConfigError("output.formats", "entries must be \"csv\" or \"svg\"");
      }
    }
  }
  return sc;
}

Scenario load_scenario(const std::filesystem::path& path, std::optional<std::size_t> grid_override) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot open scenario file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str(), grid_override);
}

FourierCurvature initial_curvature(const Scenario& scenario) {
  if (scenario.coefficients) return FourierCurvature(*scenario.coefficients, scenario.beam.length());
  return fit_initial_curvature(*scenario.targets, scenario.beam);
}

}  // namespace distal_beam
