#pragma once

#include "ibstring/curve.hpp"
#include "ibstring/dynamics.hpp"

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace ibstring {

struct CircleInit {
  double radius = 1.0;
  double theta = 0.0;
  Vec2 center = Vec2::Zero();
  friend bool operator==(const CircleInit&, const CircleInit&) = default;
};

struct PerturbedCircleInit {
  double radius = 1.0;
  std::vector<PerturbationMode> modes;
  friend bool operator==(const PerturbedCircleInit&, const PerturbedCircleInit&) = default;
};

struct ReparamCircleInit {
  double radius = 1.0;
  double beta = 0.0;
  friend bool operator==(const ReparamCircleInit&, const ReparamCircleInit&) = default;
};

/// A snapshot file; relative paths are resolved against the working directory.
struct FileInit {
  std::string path;
  friend bool operator==(const FileInit&, const FileInit&) = default;
};

using InitialCondition = std::variant<CircleInit, PerturbedCircleInit, ReparamCircleInit, FileInit>;

/// Rectangular lattice for velocity and pressure sampling.
struct FieldGrid {
  double xmin = -2.0;
  double xmax = 2.0;
  double ymin = -2.0;
  double ymax = 2.0;
  std::size_t nx = 41;
  std::size_t ny = 41;
  friend bool operator==(const FieldGrid&, const FieldGrid&) = default;
};

enum class DealiasMode { automatic, on, off };

struct RunConfig {
  std::size_t grid_n = 256;
  Scheme scheme = Scheme::exp_euler;
  double dt = 1e-2;
  double t_end = 10.0;
  DealiasMode dealias = DealiasMode::automatic;
  double cutoff_fraction = 2.0 / 3.0;
  double krasny_floor = 1e-13;
  std::optional<double> lambda_abort;
  std::size_t snapshot_every = 100;
  std::string output_dir = "ibstring_out";
  InitialCondition initial = CircleInit{};
  std::optional<FieldGrid> field_grid;

  StepperConfig stepper() const;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Strict JSON parsing: unknown keys, wrong types and out-of-range values
/// raise ConfigError naming the offending field path (for example
/// "initial.modes[1].k"). The initial condition is built once to check that it
/// is readable and well-stretched.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& file);

/// Canonical JSON with every field spelled out; parse_config(emit_config(c)) == c.
std::string emit_config(const RunConfig& cfg);

/// Samples the initial condition on grid_n points. Throws ConfigError for a
/// snapshot of the wrong size, an unreadable file or a non-well-stretched curve.
CurveState build_initial(const RunConfig& cfg);

}  // namespace ibstring
