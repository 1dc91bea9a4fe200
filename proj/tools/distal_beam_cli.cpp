#include <CLI11.hpp>
#include <iostream>
#include <optional>

#include "distal_beam/commands.hpp"
#include "distal_beam/errors.hpp"
#include "distal_beam/kernels.hpp"

namespace db = distal_beam;

namespace {

struct Options {
  std::string config;
  std::string out;
  std::optional<long long> grid_n;
  std::optional<long long> seed;  // accepted for interface stability; all workflows are deterministic
};

void add_common(CLI::App* sub, Options& opt) {
  sub->add_option("--config", opt.config, "scenario JSON file")->required();
  sub->add_option("--out", opt.out, "output directory")->required();
  sub->add_option("--grid-n", opt.grid_n, "arc-length grid samples (odd, >= 5)");
  sub->add_option("--seed", opt.seed, "random seed (unused: no workflow draws random numbers)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kinematics of a three-rod distal beam"};
  app.require_subcommand(1);
  Options opt;
  CLI::App* shape = app.add_subcommand("shape", "fit or load a curvature and export rod geometry");
  CLI::App* sweep = app.add_subcommand("sweep", "sweep along a length-preserving direction");
  CLI::App* oracle = app.add_subcommand("oracle", "compare against the disk-chain model");
  for (CLI::App* sub : {shape, sweep, oracle}) add_common(sub, opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : db::kExitConfig;
  }

  try {
    std::optional<std::size_t> grid;
    if (opt.grid_n) {
      if (*opt.grid_n < 5 || *opt.grid_n % 2 == 0)
        throw db::ConfigError("--grid-n", "must be odd and >= 5");
      grid = static_cast<std::size_t>(*opt.grid_n);
    }
    const db::Scenario sc = db::load_scenario(opt.config, grid);
    std::cerr << "kernels: " << db::kernels::backend_name(db::kernels::active_backend()) << "\n";
    if (shape->parsed()) return db::run_shape(sc, opt.out, std::cout);
    if (sweep->parsed()) return db::run_sweep(sc, opt.out, std::cout);
    return db::run_oracle(sc, opt.out, std::cout);
  } catch (const db::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return db::kExitConfig;
  } catch (const db::DomainError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return db::kExitConfig;
  } catch (const db::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return db::kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
