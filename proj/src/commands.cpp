#include "distal_beam/commands.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "distal_beam/errors.hpp"
#include "distal_beam/export.hpp"

namespace distal_beam {
namespace {

std::string frame_name(std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "frame_%03zu.csv", i);
  return buf;
}

void plot_rods(SvgPlot& plot, const SampledCurve& ref, const BeamConfig& cfg, double opacity) {
  plot.polyline(ref, "#1f4e9c", 2.0, false, opacity);
  plot.polyline(offset_parallel(ref, cfg.offset()), "#2a9d3a", 1.5, false, opacity);
  plot.polyline(offset_convergent(ref, cfg.offset(), cfg.length()), "#c0392b", 1.5, false, opacity);
}

void log_report(std::ostream& log, const InvariantReport& r) {
  log << "alpha=" << format_number(r.alpha) << " L1=" << format_number(r.L1)
      << " L2=" << format_number(r.L2) << " Lc=" << format_number(r.Lc)
      << " theta(L)=" << format_number(r.theta_tip) << " theta_bar=" << format_number(r.theta_bar)
      << " y/x=" << format_number(r.tip_ratio) << "\n";
}

std::string order_cell(const std::optional<double>& o) { return o ? format_number(*o) : "exact"; }

}  // namespace

std::optional<double> convergence_order(double e_coarse, double e_fine, int n_coarse, int n_fine) {
  if (e_coarse <= kExactErrorFloor && e_fine <= kExactErrorFloor) return std::nullopt;
  const double refine = static_cast<double>(n_fine - 1) / static_cast<double>(n_coarse - 1);
  return std::log(e_coarse / e_fine) / std::log(refine);
}

SweepResult compute_sweep(const Scenario& scenario) {
  if (!scenario.sweep) throw ConfigError("sweep", "the sweep command needs a sweep section");
  const BeamConfig& cfg = scenario.beam;
  const FourierCurvature kappa0 = initial_curvature(scenario);
  const DeformationBasis basis = nullspace(build_constraint_matrix(cfg));

  SweepResult result{kappa0, 0, {}, 0.0, {}};
  const SweepSpec& spec = *scenario.sweep;
  if (spec.direction_index) {
    if (*spec.direction_index >= basis.size())
      throw ConfigError("sweep.direction",
                        "basis index out of range (basis has " + std::to_string(basis.size()) +
                            " vectors)");
    result.direction_index = *spec.direction_index;
  } else {
    result.direction_index = midspan_direction(basis, cfg);
  }
  result.direction = basis.vector(result.direction_index);
  result.alpha_bound = self_intersection_bound(kappa0, result.direction, cfg);

  std::vector<double> alphas = spec.alphas;
  if (spec.fractions_of_bound) {
    if (!std::isfinite(result.alpha_bound))
      throw ConfigError("sweep.alpha_fractions",
                        "direction never approaches self-intersection; use absolute alphas");
    for (double& a : alphas) a *= result.alpha_bound;
  }
  result.rows = sweep(kappa0, result.direction, alphas, cfg);
  return result;
}

OracleResult compute_oracle(const Scenario& scenario) {
  const BeamConfig& cfg = scenario.beam;
  const OracleSpec spec = scenario.oracle.value_or(OracleSpec{});
  const FourierCurvature kappa0 = initial_curvature(scenario);

  OracleResult result;
  result.continuum = invariant_report(kappa0, cfg);
  const InvariantReport& c = result.continuum;

  for (int n : spec.n_disks) {
    OracleRow row;
    row.n_disks = n;
    try {
      const DiskChain chain = chain_from_curvature(kappa0, cfg, n);
      row.discrete = discrete_invariant_report(chain);
      const InvariantReport& d = row.discrete;
      row.tip_angle_error = std::abs(d.theta_tip - c.theta_tip);
      row.tip_ratio_error = std::abs(d.tip_ratio - c.tip_ratio);
      row.theta_bar_error = std::abs(d.theta_bar - c.theta_bar);
      row.l1_error = std::abs(d.L1 - cfg.length());
      row.l2_error = std::abs(d.L2 - c.L2);
      row.lc_error = std::abs(d.Lc - c.Lc);
    } catch (const NumericalError& e) {
      row.error = e.what();
    }
    result.rows.push_back(row);
  }

  const std::pair<const char*, double OracleRow::*> quantities[] = {
      {"tip_angle", &OracleRow::tip_angle_error}, {"tip_ratio", &OracleRow::tip_ratio_error},
      {"theta_bar", &OracleRow::theta_bar_error}, {"l2", &OracleRow::l2_error},
      {"lc", &OracleRow::lc_error}};
  for (const auto& [name, field] : quantities) {
    ConvergenceOrder co{name, {}};
    for (std::size_t i = 0; i + 1 < result.rows.size(); ++i) {
      const OracleRow& a = result.rows[i];
      const OracleRow& b = result.rows[i + 1];
      if (!a.error.empty() || !b.error.empty()) {
        co.orders.push_back(std::nullopt);
        continue;
      }
      co.orders.push_back(convergence_order(a.*field, b.*field, a.n_disks, b.n_disks));
    }
    result.orders.push_back(std::move(co));
  }

  if (spec.perturbation) {
    const PerturbationSpec& p = *spec.perturbation;
    for (int n : spec.n_disks) {
      ProjectionCase pc;
      pc.n_disks = n;
      try {
        const DiskChain chain = chain_from_curvature(kappa0, cfg, n);
        const InvariantReport before = discrete_invariant_report(chain);
        const Projection proj = project_to_constraints(
            chain, rod_lengths(chain), bump_perturbation(chain, p.amplitude, p.center, p.width));
        const InvariantReport after = discrete_invariant_report(proj.chain);
        pc.iterations = proj.iterations;
        pc.residual = proj.residual;
        pc.tip_angle_change = std::abs(after.theta_tip - before.theta_tip);
        pc.line_distance = line_distance(after.tip, c.theta_bar);
        pc.tip_displacement = std::hypot(after.tip.x - before.tip.x, after.tip.y - before.tip.y);
        for (std::size_t k = 0; k < chain.joint_angles().size(); ++k)
          pc.max_joint_change = std::max(
              pc.max_joint_change, std::abs(proj.chain.joint_angles()[k] - chain.joint_angles()[k]));
      } catch (const NumericalError& e) {
        pc.error = e.what();
      }
      result.projections.push_back(pc);
    }
  }
  return result;
}

int run_shape(const Scenario& scenario, const std::filesystem::path& out, std::ostream& log) {
  const BeamConfig& cfg = scenario.beam;
  const FourierCurvature kappa = initial_curvature(scenario);
  InvariantReport report;
  try {
    report = invariant_report(kappa, cfg);
  } catch (const NumericalError& e) {
    log << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  const SampledCurve ref = integrate_reference_curve(kappa, cfg);
  const SampledCurve par = offset_parallel(ref, cfg.offset());
  const SampledCurve conv = offset_convergent(ref, cfg.offset(), cfg.length());

  if (scenario.output.csv) {
    rod_curves_table(ref, par, conv).write(out / "shape_curves.csv");
    CsvTable table = invariant_table();
    add_report_row(table, report);
    table.write(out / "shape_report.csv");
    CsvTable diag = diagnostics_table();
    add_diagnostics_row(diag, report);
    diag.write(out / "shape_diagnostics.csv");
  }
  if (scenario.output.svg) {
    SvgPlot plot;
    plot.title(scenario.name + ": rod geometry");
    plot_rods(plot, ref, cfg, 1.0);
    plot.marker({0.0, 0.0}, "black");
    plot.marker(ref.tip(), "#1f4e9c");
    plot.write(out / "shape.svg");
  }
  log_report(log, report);
  return kExitOk;
}

int run_sweep(const Scenario& scenario, const std::filesystem::path& out, std::ostream& log) {
  const SweepResult result = compute_sweep(scenario);
  const BeamConfig& cfg = scenario.beam;
  log << "direction: basis vector " << result.direction_index
      << ", self-intersection bound alpha < " << format_number(result.alpha_bound) << "\n";

  CsvTable table = invariant_table();
  CsvTable diag = diagnostics_table();
  SvgPlot plot;
  plot.title(scenario.name + ": length-preserving sweep");
  std::size_t ok = 0;
  std::optional<Point> first_tip;

  for (std::size_t i = 0; i < result.rows.size(); ++i) {
    const SweepRow& row = result.rows[i];
    if (!row.report) {
      add_failed_row(table, row.alpha, row.error);
      log << "alpha=" << format_number(row.alpha) << " failed: " << row.error << "\n";
      continue;
    }
    ++ok;
    add_report_row(table, *row.report);
    add_diagnostics_row(diag, *row.report);
    log_report(log, *row.report);

    const SampledCurve ref = integrate_reference_curve(result.kappa0.plus(result.direction, row.alpha), cfg);
    if (scenario.output.csv) {
      rod_curves_table(ref, offset_parallel(ref, cfg.offset()),
                       offset_convergent(ref, cfg.offset(), cfg.length()))
          .write(out / "frames" / frame_name(i));
    }
    const double fade = result.rows.size() > 1 ? 0.35 + 0.65 * static_cast<double>(i) /
                                                            static_cast<double>(result.rows.size() - 1)
                                               : 1.0;
    plot_rods(plot, ref, cfg, fade);
    plot.marker(ref.tip(), "#1f4e9c");
    if (!first_tip) first_tip = ref.tip();
  }

  if (scenario.output.csv) {
    table.write(out / "sweep_table.csv");
    diag.write(out / "sweep_diagnostics.csv");
  }
  if (scenario.output.svg) {
    if (first_tip) {
      // base-to-initial-tip line, extended past the tip
      plot.polyline(std::vector<Point>{{0.0, 0.0}, {1.15 * first_tip->x, 1.15 * first_tip->y}}, "black",
                    1.0, true);
    }
    plot.marker({0.0, 0.0}, "black");
    plot.write(out / "sweep.svg");
  }
  return ok == 0 ? kExitNumerical : kExitOk;
}

int run_oracle(const Scenario& scenario, const std::filesystem::path& out, std::ostream& log) {
  const OracleResult result = compute_oracle(scenario);

  CsvTable table({"n_disks", "tip_angle_error", "tip_ratio_error", "theta_bar_error", "l1_error",
                  "l2_error", "lc_error", "status"});
  std::size_t ok = 0;
  for (const OracleRow& r : result.rows) {
    if (!r.error.empty()) {
      table.add_row({std::to_string(r.n_disks), "", "", "", "", "", "", "error: " + r.error});
      continue;
    }
    ++ok;
    table.add_row({std::to_string(r.n_disks), format_number(r.tip_angle_error),
                   format_number(r.tip_ratio_error), format_number(r.theta_bar_error),
                   format_number(r.l1_error), format_number(r.l2_error), format_number(r.lc_error),
                   "ok"});
    log << "n_disks=" << r.n_disks << " tip angle err=" << format_number(r.tip_angle_error)
        << " tip ratio err=" << format_number(r.tip_ratio_error)
        << " lc err=" << format_number(r.lc_error) << "\n";
  }

  std::vector<std::string> header{"quantity"};
  for (std::size_t i = 0; i + 1 < result.rows.size(); ++i)
    header.push_back("order_" + std::to_string(result.rows[i].n_disks) + "_" +
                     std::to_string(result.rows[i + 1].n_disks));
  CsvTable orders(header);
  for (const ConvergenceOrder& co : result.orders) {
    std::vector<std::string> cells{co.quantity};
    for (const auto& o : co.orders) cells.push_back(order_cell(o));
    orders.add_row(cells);
  }

  CsvTable proj({"n_disks", "iterations", "residual", "tip_angle_change", "line_distance",
                 "tip_displacement", "max_joint_change", "status"});
  for (const ProjectionCase& p : result.projections) {
    if (!p.error.empty()) {
      proj.add_row({std::to_string(p.n_disks), "", "", "", "", "", "", "error: " + p.error});
      continue;
    }
    proj.add_row({std::to_string(p.n_disks), std::to_string(p.iterations), format_number(p.residual),
                  format_number(p.tip_angle_change), format_number(p.line_distance),
                  format_number(p.tip_displacement), format_number(p.max_joint_change), "ok"});
  }

  if (scenario.output.csv) {
    table.write(out / "oracle_table.csv");
    orders.write(out / "oracle_orders.csv");
    if (!result.projections.empty()) proj.write(out / "oracle_projection.csv");
  }
  if (scenario.output.svg) {
    SvgPlot plot;
    plot.title(scenario.name + ": continuum vs disk chain");
    const SampledCurve ref = integrate_reference_curve(initial_curvature(scenario), scenario.beam);
    plot.polyline(ref, "#1f4e9c", 2.0);
    if (!scenario.oracle.value_or(OracleSpec{}).n_disks.empty()) {
      const DiskChain chain =
          chain_from_curvature(initial_curvature(scenario), scenario.beam,
                               scenario.oracle.value_or(OracleSpec{}).n_disks.front());
      plot.polyline(chain.backbone(), "#555555", 1.0, true);
      plot.polyline(chain.holes(chain.parallel_weights()), "#2a9d3a", 1.0, true);
      plot.polyline(chain.holes(chain.convergent_weights()), "#c0392b", 1.0, true);
    }
    plot.marker({0.0, 0.0}, "black");
    plot.write(out / "oracle.svg");
  }
  return ok == 0 ? kExitNumerical : kExitOk;
}

}  // namespace distal_beam
