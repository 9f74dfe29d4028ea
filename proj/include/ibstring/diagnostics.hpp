#pragma once

#include "ibstring/spectral.hpp"

namespace ibstring {

/// Per-step scalars recorded along a trajectory.
struct DiagnosticsRow {
  double t = 0.0;
  double energy = 0.0;
  double dissipation = 0.0;
  double lambda = 0.0;
  double radius = 0.0;
  double area = 0.0;
  double dist_h1 = 0.0;   // |X - X_*| in the H^1 seminorm
  double dist_h52 = 0.0;  // |X - X_*| in the H^{5/2} seminorm
  double theta_star = 0.0;
  Vec2 xstar = Vec2::Zero();
};

}  // namespace ibstring
