#include "ibstring/commands.hpp"

#include "ibstring/config.hpp"
#include "ibstring/dynamics.hpp"
#include "ibstring/equilibrium.hpp"
#include "ibstring/errors.hpp"
#include "ibstring/io.hpp"
#include "ibstring/stokeslet.hpp"
#include "ibstring/svg.hpp"

#include <fmt/format.h>

#include <cmath>
#include <limits>
#include <ostream>
#include <vector>

namespace ibstring {

namespace {

namespace fs = std::filesystem;

// Maps exceptions to exit codes; every command body runs inside this.
template <typename Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return exit_code::config_error;
  } catch (const IoError& e) {
    err << "io error: " << e.what() << '\n';
    return exit_code::io_error;
  } catch (const fs::filesystem_error& e) {
    err << "io error: " << e.what() << '\n';
    return exit_code::io_error;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::io_error;
  }
}

void write_text(const fs::path& file, const std::string& text) {
  auto out = open_for_write(file);
  out << text;
  if (!out) throw IoError("write failed: " + file.string());
}

}  // namespace

int cmd_simulate(const fs::path& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const RunConfig cfg = load_config(config);
    const CurveState initial = build_initial(cfg);
    const fs::path dir(cfg.output_dir);
    fs::create_directories(dir);
    write_text(dir / "config.json", emit_config(cfg));

    StepperConfig stepper = cfg.stepper();
    RunResult result;
    try {
      result = run(initial, stepper, [&](const Snapshot& snap) {
        write_snapshot(dir / snapshot_filename(snap.step), snap.state);
      });
    } catch (const InvalidArgument& e) {
      throw ConfigError("lambda_abort", e.what());
    }

    {
      auto csv = open_for_write(dir / "diagnostics.csv");
      write_diagnostics_csv(csv, result.rows);
      if (!csv) throw IoError("write failed: " + (dir / "diagnostics.csv").string());
    }
    const EquilibriumFit fit = closest_equilibrium(result.final_state);
    write_text(dir / "final.svg", render_svg(result.final_state, &fit));

    const DiagnosticsRow& last = result.rows.back();
    out << fmt::format("steps {}  t {:.6g}  energy {:.12g}  dissipation {:.6e}  lambda {:.6g}  "
                       "dist_h1 {:.6e}\n",
                       result.rows.size() - 1, last.t, last.energy, last.dissipation, last.lambda,
                       last.dist_h1);
    out << "output written to " << dir.string() << '\n';

    if (result.abort) {
      err << "run aborted at step " << result.abort->step << " (t = " << result.abort->t
          << "): " << result.abort->message << '\n';
      return result.abort->reason == AbortReason::lambda ? exit_code::lambda_abort
                                                         : exit_code::non_finite;
    }
    return exit_code::ok;
  });
}

int cmd_field(const fs::path& config, const fs::path& snapshot, std::ostream& out,
              std::ostream& err) {
  return guarded(err, [&] {
    const RunConfig cfg = load_config(config);
    if (!cfg.field_grid) throw ConfigError("field_grid", "required by the field command");
    const FieldGrid& g = *cfg.field_grid;
    const CurveState X = read_snapshot(snapshot);

    auto coord = [](double lo, double hi, std::size_t i, std::size_t count) {
      return count == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
    };
    std::vector<FlowSample> samples;
    samples.reserve(g.nx * g.ny);
    std::size_t skipped = 0;
    for (std::size_t iy = 0; iy < g.ny; ++iy) {
      for (std::size_t ix = 0; ix < g.nx; ++ix) {
        const Vec2 x(coord(g.xmin, g.xmax, ix, g.nx), coord(g.ymin, g.ymax, iy, g.ny));
        try {
          samples.push_back(sample_flow(X, x));
        } catch (const InvalidArgument&) {
          const double nan = std::numeric_limits<double>::quiet_NaN();
          samples.push_back(FlowSample{x, Vec2(nan, nan), nan});
          ++skipped;
        }
      }
    }
    write_field_csv(out, samples);
    if (skipped) err << skipped << " lattice points lie on curve samples; reported as nan\n";
    return exit_code::ok;
  });
}

int cmd_spectrum(int max_k, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (max_k < 0) throw ConfigError("K", "must be a nonnegative integer");
    write_spectrum_csv(out, max_k);
    return exit_code::ok;
  });
}

int cmd_fit(const fs::path& snapshot, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const CurveState Y = read_snapshot(snapshot);
    const EquilibriumFit fit = closest_equilibrium(Y);
    const GridField gap = Y.samples() - fit.samples;
    out << "theta_star=" << format_double(fit.theta_star) << '\n'
        << "xstar_x=" << format_double(fit.x_star.x()) << '\n'
        << "xstar_y=" << format_double(fit.x_star.y()) << '\n'
        << "radius=" << format_double(fit.radius) << '\n'
        << "degenerate=" << (fit.degenerate ? "true" : "false") << '\n'
        << "dist_l2=" << format_double(sobolev_seminorm(gap, 0.0)) << '\n'
        << "dist_h1=" << format_double(sobolev_seminorm(gap, 1.0)) << '\n'
        << "dist_h52=" << format_double(sobolev_seminorm(gap, 2.5)) << '\n'
        << "first_order_residual=" << format_double(first_order_residual(Y, fit)) << '\n'
        << "energy=" << format_double(elastic_energy(Y)) << '\n'
        << "equilibrium_energy=" << format_double(kPi * fit.radius * fit.radius) << '\n'
        << "lambda=" << format_double(well_stretched_constant(Y)) << '\n';
    return exit_code::ok;
  });
}

int cmd_verify(VerifyLevel level, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const bool ok = run_suite(verify_suite(level), out);
    out << (ok ? "verify: all checks passed\n" : "verify: FAILED\n");
    return ok ? exit_code::ok : exit_code::verify_failed;
  });
}

}  // namespace ibstring
