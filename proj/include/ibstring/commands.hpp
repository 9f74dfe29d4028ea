#pragma once

#include "ibstring/verify.hpp"

#include <filesystem>
#include <iosfwd>

namespace ibstring {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int io_error = 1;
inline constexpr int config_error = 2;
inline constexpr int lambda_abort = 3;
inline constexpr int non_finite = 4;
inline constexpr int verify_failed = 5;
}  // namespace exit_code

/// Runs the configured simulation. Writes config.json (canonical),
/// diagnostics.csv, snap_<step>.csv and final.svg into output_dir, and a short
/// summary to `out`.
int cmd_simulate(const std::filesystem::path& config, std::ostream& out, std::ostream& err);

/// Velocity and pressure of the snapshot's flow on the config's field_grid
/// lattice, as CSV on `out`. Lattice points that coincide with curve samples
/// are reported as nan.
int cmd_field(const std::filesystem::path& config, const std::filesystem::path& snapshot,
              std::ostream& out, std::ostream& err);

/// Linearized spectrum for k = 0..max_k as CSV.
int cmd_spectrum(int max_k, std::ostream& out, std::ostream& err);

/// Closest-equilibrium report for a snapshot, one key=value per line.
int cmd_fit(const std::filesystem::path& snapshot, std::ostream& out, std::ostream& err);

int cmd_verify(VerifyLevel level, std::ostream& out, std::ostream& err);

}  // namespace ibstring
