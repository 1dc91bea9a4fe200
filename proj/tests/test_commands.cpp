#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "distal_beam/commands.hpp"

using namespace distal_beam;
namespace fs = std::filesystem;

namespace {

const fs::path kScenarios = DISTAL_BEAM_SCENARIO_DIR;
const fs::path kData = DISTAL_BEAM_TEST_DATA;

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("distal_beam_test_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int cli(const std::string& args) {
  const std::string cmd = std::string(DISTAL_BEAM_CLI) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("convergence order") {
  CHECK(*convergence_order(4e-4, 1e-4, 21, 41) == doctest::Approx(2.0));
  CHECK(*convergence_order(1e-3, 1e-3, 21, 41) == doctest::Approx(0.0));
  CHECK_FALSE(convergence_order(1e-14, 0.0, 21, 41));
}

TEST_CASE("shape output is byte-stable") {
  const Scenario s = load_scenario(kScenarios / "straight.json");
  std::ostringstream log;
  const fs::path a = scratch("shape_a"), b = scratch("shape_b");
  REQUIRE(run_shape(s, a, log) == kExitOk);
  REQUIRE(run_shape(s, b, log) == kExitOk);
  for (const char* f : {"shape_curves.csv", "shape_report.csv", "shape_diagnostics.csv", "shape.svg"}) {
    CAPTURE(f);
    CHECK(fs::exists(a / f));
    CHECK(slurp(a / f) == slurp(b / f));
  }
  const std::string report = slurp(a / "shape_report.csv");
  CHECK(report.find('\r') == std::string::npos);
  CHECK(report.rfind("alpha,L1,L2,Lc,theta_tip,theta_bar,tip_ratio,status\n", 0) == 0);

  const std::string curves = slurp(a / "shape_curves.csv");
  CHECK(curves.find("convergent,1,0,1,0\n") != std::string::npos);
  CHECK(curves.find("parallel,1,0,1,0.153846153846\n") != std::string::npos);
}

TEST_CASE("sweep with a zero amplitude reproduces the shape report") {
  Scenario s = load_scenario(kScenarios / "table1.json");
  s.sweep->alphas = {0.0};
  s.sweep->fractions_of_bound = false;
  std::ostringstream log;
  const fs::path a = scratch("sweep0"), b = scratch("shape0");
  REQUIRE(run_sweep(s, a, log) == kExitOk);
  REQUIRE(run_shape(s, b, log) == kExitOk);
  CHECK(slurp(a / "sweep_table.csv") == slurp(b / "shape_report.csv"));
  CHECK(fs::exists(a / "frames" / "frame_000.csv"));
}

TEST_CASE("table sweep tips stay near the base line") {
  const Scenario s = load_scenario(kScenarios / "table1.json");
  const SweepResult r = compute_sweep(s);
  REQUIRE(r.rows.size() == 3);
  const Point first = r.rows[0].report->tip;
  const double angle = std::atan2(first.y, first.x);
  for (const SweepRow& row : r.rows) {
    REQUIRE(row.report);
    CHECK(line_distance(row.report->tip, angle) <= 1e-2);
  }
  const std::string svg = [&] {
    std::ostringstream log;
    const fs::path out = scratch("sweep_svg");
    run_sweep(s, out, log);
    return slurp(out / "sweep.svg");
  }();
  CHECK(svg.find("stroke-dasharray") != std::string::npos);
}

TEST_CASE("oracle on a straight beam is exact") {
  const OracleResult r = compute_oracle(load_scenario(kScenarios / "straight.json"));
  for (const OracleRow& row : r.rows) {
    CHECK(row.error.empty());
    CHECK(row.tip_angle_error <= 2e-4);
    CHECK(row.tip_ratio_error <= 2e-4);
    CHECK(row.lc_error <= 2e-4);
  }
}

TEST_CASE("oracle refinement") {
  const OracleResult r = compute_oracle(load_scenario(kScenarios / "oracle_refinement.json"));
  REQUIRE(r.rows.size() == 4);
  for (std::size_t i = 0; i + 1 < r.rows.size(); ++i) {
    CHECK(r.rows[i].tip_ratio_error / r.rows[i + 1].tip_ratio_error >= 3.5);
    CHECK(r.rows[i].lc_error / r.rows[i + 1].lc_error >= 3.5);
  }
  REQUIRE(r.projections.size() == 4);
  for (const ProjectionCase& p : r.projections) {
    CHECK(p.error.empty());
    CHECK(p.tip_angle_change <= 1e-3);
  }
}

TEST_CASE("exit codes") {
  const fs::path out = scratch("cli");
  CHECK(cli("shape --config " + (kScenarios / "straight.json").string() + " --out " + out.string()) == 0);
  CHECK(cli("shape --config " + (kScenarios / "table1.json").string() + " --out " + out.string() +
            " --seed 7") == 0);
  CHECK(cli("shape --config " + (kData / "bad_offset.json").string() + " --out " + out.string()) == 2);
  CHECK(cli("shape --config " + (kData / "missing.json").string() + " --out " + out.string()) == 2);
  CHECK(cli("shape --config " + (kScenarios / "table1.json").string() + " --out " + out.string() +
            " --grid-n 256") == 2);
  CHECK(cli("sweep --config " + (kScenarios / "oracle_refinement.json").string() + " --out " +
            out.string()) == 2);
  CHECK(cli("shape --out " + out.string()) == 2);
  CHECK(cli("") == 2);
  CHECK(cli("sweep --config " + (kData / "self_intersecting.json").string() + " --out " +
            out.string()) == 3);
  CHECK(cli("shape --config " + (kData / "self_intersecting.json").string() + " --out " +
            out.string()) == 3);
}
