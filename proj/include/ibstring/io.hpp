#pragma once

// Text formats. Every floating-point value is written with 17 significant
// digits so that files round-trip bit-exactly.
//
//   snapshot     "# ibstring-curve v1 N=<N>" then N lines "s_j,x_j,y_j"
//   diagnostics  t,energy,dissipation,lambda,radius,area,dist_h1,dist_h52,
//                theta_star,xstar_x,xstar_y
//   field        x,y,u,v,p
//   spectrum     k,eig_minus,eig_plus

#include "ibstring/curve.hpp"
#include "ibstring/diagnostics.hpp"
#include "ibstring/stokeslet.hpp"

#include <filesystem>
#include <fstream>
#include <iosfwd>
#include <span>
#include <string>

namespace ibstring {

std::string format_double(double v);

void write_snapshot(std::ostream& out, const CurveState& X);
void write_snapshot(const std::filesystem::path& file, const CurveState& X);

/// Parses a snapshot. Throws IoError on malformed content, including node
/// values s_j that do not match the uniform grid.
CurveState read_snapshot(std::istream& in, const std::string& source = "<stream>");
CurveState read_snapshot(const std::filesystem::path& file);

/// "snap_00000042.csv"
std::string snapshot_filename(std::size_t step);

void write_diagnostics_csv(std::ostream& out, std::span<const DiagnosticsRow> rows);
void write_field_csv(std::ostream& out, std::span<const FlowSample> samples);
/// Rows k = 0..max_k of mode_block eigenvalues.
void write_spectrum_csv(std::ostream& out, int max_k);

/// Opens a file for writing or throws IoError.
std::ofstream open_for_write(const std::filesystem::path& file);

}  // namespace ibstring
