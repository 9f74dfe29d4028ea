#include "ibstring/io.hpp"

#include "ibstring/equilibrium.hpp"
#include "ibstring/errors.hpp"

#include <array>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <vector>

namespace ibstring {

namespace {

constexpr const char* kSnapshotMagic = "# ibstring-curve v1 N=";

double parse_number(std::string_view text, const std::string& where) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  while (first < last && (*first == ' ' || *first == '\t')) ++first;
  while (last > first && (last[-1] == ' ' || last[-1] == '\t' || last[-1] == '\r')) --last;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) {
    throw IoError(where + ": cannot parse number '" + std::string(text) + "'");
  }
  return v;
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::ofstream open_for_write(const std::filesystem::path& file) {
  std::ofstream out(file);
  if (!out) {
    throw IoError("cannot open " + file.string() + " for writing: " + std::strerror(errno));
  }
  return out;
}

void write_snapshot(std::ostream& out, const CurveState& X) {
  out << kSnapshotMagic << X.size() << '\n';
  for (std::size_t j = 0; j < X.size(); ++j) {
    out << format_double(X.node(j)) << ',' << format_double(X[j].x()) << ','
        << format_double(X[j].y()) << '\n';
  }
}

void write_snapshot(const std::filesystem::path& file, const CurveState& X) {
  auto out = open_for_write(file);
  write_snapshot(out, X);
  if (!out) throw IoError("write failed: " + file.string());
}

CurveState read_snapshot(std::istream& in, const std::string& source) {
  std::string line;
  if (!std::getline(in, line)) throw IoError(source + ": empty snapshot");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const std::string magic = kSnapshotMagic;
  if (line.rfind(magic, 0) != 0) {
    throw IoError(source + ": missing header '" + magic + "<N>'");
  }
  const std::string count_text = line.substr(magic.size());
  std::size_t n = 0;
  {
    const auto [ptr, ec] =
        std::from_chars(count_text.data(), count_text.data() + count_text.size(), n);
    if (ec != std::errc() || ptr != count_text.data() + count_text.size()) {
      throw IoError(source + ": bad sample count '" + count_text + "'");
    }
  }
  try {
    require_grid_size(n);
  } catch (const InvalidArgument& e) {
    throw IoError(source + ": " + e.what());
  }

  std::vector<Vec2> values;
  values.reserve(n);
  const double h = kTwoPi / static_cast<double>(n);
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::string where = source + ":" + std::to_string(line_no);
    if (values.size() == n) throw IoError(where + ": more than N=" + std::to_string(n) + " rows");

    std::string_view rest(line);
    std::array<double, 3> fields{};
    for (int f = 0; f < 3; ++f) {
      const auto comma = rest.find(',');
      if ((f < 2) != (comma != std::string_view::npos)) {
        throw IoError(where + ": expected three comma-separated values");
      }
      fields[f] = parse_number(rest.substr(0, comma), where);
      if (comma != std::string_view::npos) rest.remove_prefix(comma + 1);
    }
    const double expected = h * static_cast<double>(values.size());
    if (std::abs(fields[0] - expected) > 1e-9) {
      throw IoError(where + ": node " + format_double(fields[0]) + " is not on the uniform grid");
    }
    if (!std::isfinite(fields[1]) || !std::isfinite(fields[2])) {
      throw IoError(where + ": non-finite coordinate");
    }
    values.emplace_back(fields[1], fields[2]);
  }
  if (values.size() != n) {
    throw IoError(source + ": expected " + std::to_string(n) + " rows, found " +
                  std::to_string(values.size()));
  }
  return CurveState(GridField(std::move(values)));
}

CurveState read_snapshot(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw IoError("cannot open " + file.string() + ": " + std::strerror(errno));
  return read_snapshot(in, file.string());
}

std::string snapshot_filename(std::size_t step) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "snap_%08zu.csv", step);
  return buf;
}

void write_diagnostics_csv(std::ostream& out, std::span<const DiagnosticsRow> rows) {
  out << "t,energy,dissipation,lambda,radius,area,dist_h1,dist_h52,theta_star,xstar_x,xstar_y\n";
  for (const auto& r : rows) {
    const double cols[] = {r.t,       r.energy,  r.dissipation, r.lambda,     r.radius,
                           r.area,    r.dist_h1, r.dist_h52,    r.theta_star, r.xstar.x(),
                           r.xstar.y()};
    for (std::size_t c = 0; c < std::size(cols); ++c) {
      if (c) out << ',';
      out << format_double(cols[c]);
    }
    out << '\n';
  }
}

void write_field_csv(std::ostream& out, std::span<const FlowSample> samples) {
  out << "x,y,u,v,p\n";
  for (const auto& f : samples) {
    out << format_double(f.location.x()) << ',' << format_double(f.location.y()) << ','
        << format_double(f.u.x()) << ',' << format_double(f.u.y()) << ',' << format_double(f.p)
        << '\n';
  }
}

void write_spectrum_csv(std::ostream& out, int max_k) {
  if (max_k < 0) throw InvalidArgument("spectrum bound K must be nonnegative");
  out << "k,eig_minus,eig_plus\n";
  for (int k = 0; k <= max_k; ++k) {
    const ModeBlock mb = mode_block(k);
    out << k << ',' << format_double(mb.eig_minus) << ',' << format_double(mb.eig_plus) << '\n';
  }
}

}  // namespace ibstring
