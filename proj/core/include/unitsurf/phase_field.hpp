#pragma once

// Closed-form evaluation of the planar vector field whose trajectories are
// the tangent-angle/height pairs (theta, z) of rotational profile curves
// with |A| = 1, i.e. theta'^2 + cos^2(theta)/z^2 = 1 and z' = sin(theta).

#include <cmath>
#include <numbers>

namespace unitsurf {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kSqrt2 = std::numbers::sqrt2;

// A point of the (theta, z) phase plane. The height is stored as its offset
// from the cylinder level, lift = z - 1, so that states next to the
// degenerate corner (0, 1) keep full relative precision in z - cos(theta).
// theta is an unwrapped angle. Points on or outside the domain boundary
// are representable so that trajectory limits can be recorded.
struct PhasePoint {
  double theta = 0.0;
  double lift = 0.0;

  static constexpr PhasePoint at(double theta, double z) { return {theta, z - 1.0}; }
  static constexpr PhasePoint from_lift(double theta, double lift) { return {theta, lift}; }

  constexpr double z() const { return 1.0 + lift; }

  friend constexpr bool operator==(const PhasePoint&, const PhasePoint&) = default;
};

struct PhaseVelocity {
  double dtheta = 0.0;
  double dz = 0.0;
};

struct CurvaturePair {
  double k1 = 0.0;  // meridian curvature, theta'
  double k2 = 0.0;  // parallel curvature, -cos(theta)/z
};

// Ratios whose limits at the separatrix end certify the C^3 gluing.
struct AsymptoticReport {
  double r1 = 0.0;      // sin^2(theta) / theta'^2
  double r2 = 0.0;      // (z - cos(theta)) / sin(theta)
  double r3 = 0.0;      // sin^{3/2}(theta) / (z - cos(theta))
  double r4 = 0.0;      // sin^2(theta) / (z - cos(theta))^{3/2}
  double theta2 = 0.0;  // theta'' from the closed form
};

// z - cos(theta), evaluated without cancellation near theta = 0 (mod 2pi).
double lower_gap(const PhasePoint& p);
// z + cos(theta), evaluated without cancellation near theta = pi (mod 2pi).
double upper_gap(const PhasePoint& p);
// z - |cos(theta)|; positive exactly on the domain.
double boundary_gap(const PhasePoint& p);

bool in_domain(const PhasePoint& p);

// X(theta, z) = (sqrt(1 - cos^2(theta)/z^2), sin(theta)). Throws DomainError
// outside the domain.
PhaseVelocity field_eval(const PhasePoint& p);

// theta' without the domain guard: clamps to 0 on and beyond the boundary.
// For integrator stages that may probe the boundary.
double slope_unchecked(const PhasePoint& p);

CurvaturePair curvatures(const PhasePoint& p);

// Closed form of theta'' along a trajectory. Throws SlopeZeroError when
// theta' = 0.
double theta_second(const PhasePoint& p);

AsymptoticReport asymptotics(const PhasePoint& p);

// Exact limit of r4 at the separatrix end.
inline const double kSeparatrixR4Limit = 4.0 * kSqrt2 / 3.0;
// Exact limit of theta''' at the separatrix end.
inline constexpr double kSeparatrixThirdDerivativeLimit = 1.0 / 3.0;

}  // namespace unitsurf
