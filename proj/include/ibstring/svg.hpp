#pragma once

#include "ibstring/curve.hpp"
#include "ibstring/equilibrium.hpp"

#include <string>

namespace ibstring {

/// 800x800 equal-aspect plot: the curve as a closed polyline and, if given,
/// the fitted equilibrium circle dashed.
std::string render_svg(const CurveState& X, const EquilibriumFit* fit = nullptr);

}  // namespace ibstring
