#include "ibstring/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace ibstring {

namespace {

constexpr double kSize = 800.0;
constexpr double kMargin = 40.0;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

}  // namespace

std::string render_svg(const CurveState& X, const EquilibriumFit* fit) {
  double xmin = X[0].x(), xmax = xmin, ymin = X[0].y(), ymax = ymin;
  for (std::size_t j = 0; j < X.size(); ++j) {
    xmin = std::min(xmin, X[j].x());
    xmax = std::max(xmax, X[j].x());
    ymin = std::min(ymin, X[j].y());
    ymax = std::max(ymax, X[j].y());
  }
  if (fit) {
    xmin = std::min(xmin, fit->x_star.x() - fit->radius);
    xmax = std::max(xmax, fit->x_star.x() + fit->radius);
    ymin = std::min(ymin, fit->x_star.y() - fit->radius);
    ymax = std::max(ymax, fit->x_star.y() + fit->radius);
  }

  // One scale for both axes keeps circles round.
  const double span = std::max({xmax - xmin, ymax - ymin, 1e-12});
  const double scale = (kSize - 2.0 * kMargin) / span;
  const double cx = 0.5 * (xmin + xmax);
  const double cy = 0.5 * (ymin + ymax);
  auto px = [&](double x) { return kSize / 2.0 + (x - cx) * scale; };
  auto py = [&](double y) { return kSize / 2.0 - (y - cy) * scale; };  // SVG y points down

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" "
         "viewBox=\"0 0 800 800\">\n";
  svg << "  <rect width=\"800\" height=\"800\" fill=\"white\"/>\n";
  if (fit) {
    svg << "  <circle cx=\"" << fmt(px(fit->x_star.x())) << "\" cy=\"" << fmt(py(fit->x_star.y()))
        << "\" r=\"" << fmt(fit->radius * scale)
        << "\" fill=\"none\" stroke=\"#888888\" stroke-width=\"1.5\" "
           "stroke-dasharray=\"8 6\"/>\n";
  }
  svg << "  <polygon fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"2\" points=\"";
  for (std::size_t j = 0; j < X.size(); ++j) {
    if (j) svg << ' ';
    svg << fmt(px(X[j].x())) << ',' << fmt(py(X[j].y()));
  }
  svg << "\"/>\n</svg>\n";
  return svg.str();
}

}  // namespace ibstring
