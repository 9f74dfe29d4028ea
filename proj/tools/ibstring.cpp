#include "ibstring/commands.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <string>

int main(int argc, char** argv) {
  CLI::App app{"Contour-dynamics simulator for an elastic string in 2-D Stokes flow"};
  app.require_subcommand(1);

  std::string config_path;
  std::string snapshot_path;
  int max_k = 0;
  bool full = false;

  auto* simulate = app.add_subcommand("simulate", "run a simulation from a JSON config");
  simulate->add_option("config", config_path, "config file")->required();

  auto* field = app.add_subcommand("field", "sample velocity and pressure around a snapshot");
  field->add_option("config", config_path, "config file with a field_grid section")->required();
  field->add_option("snapshot", snapshot_path, "curve snapshot")->required();

  auto* spectrum = app.add_subcommand("spectrum", "linearized eigenvalues for k = 0..K");
  spectrum->add_option("K", max_k, "largest wavenumber")->required();

  auto* fit = app.add_subcommand("fit", "closest equilibrium of a snapshot");
  fit->add_option("snapshot", snapshot_path, "curve snapshot")->required();

  auto* verify = app.add_subcommand("verify", "run the self-check suite");
  verify->add_flag("--full", full, "include the acceptance criteria (about a minute)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : ibstring::exit_code::config_error;
  }

  using namespace ibstring;
  if (*simulate) return cmd_simulate(config_path, std::cout, std::cerr);
  if (*field) return cmd_field(config_path, snapshot_path, std::cout, std::cerr);
  if (*spectrum) return cmd_spectrum(max_k, std::cout, std::cerr);
  if (*fit) return cmd_fit(snapshot_path, std::cout, std::cerr);
  if (*verify) return cmd_verify(full ? VerifyLevel::full : VerifyLevel::quick, std::cout, std::cerr);
  return exit_code::config_error;
}
