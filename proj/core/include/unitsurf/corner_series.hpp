#pragma once

// Power series of the separatrix at the degenerate corner (theta, z) = (0, 1),
// in the arc length s measured from the corner. The coefficients solve
// theta'^2 z^2 = z^2 - cos^2(theta), z' = sin(theta), x' = cos(theta)
// order by order; the truncated series satisfies the constraint to O(s^14).

#include "unitsurf/phase_field.hpp"

namespace unitsurf::corner_series {

struct SeriesState {
  double s = 0.0;
  double theta = 0.0;
  double lift = 0.0;  // z - 1
  double x = 0.0;     // abscissa measured from the corner
  double dtheta = 0.0;
  double d2theta = 0.0;
  double d3theta = 0.0;
};

SeriesState evaluate(double s);

// |theta'_series^2 + cos^2(theta)/z^2 - 1| at s, with theta' taken from the
// series derivative. O(s^14) for small s.
double constraint_residual(double s);

// Largest s at which the series is used in place of integrated data when
// evaluating separatrix profiles; the truncation error there is below 1e-16.
inline constexpr double kTrustRadius = 0.05;

}  // namespace unitsurf::corner_series
