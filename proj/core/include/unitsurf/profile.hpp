#pragma once

// Arc-length profile curves (x(t), z(t)) with tangent angle theta, the
// closed-form sphere and cylinder profiles, and checks on them.

#include <cstddef>
#include <vector>

#include "unitsurf/integrator.hpp"
#include "unitsurf/shooting.hpp"

namespace unitsurf {

enum class ProfileKind { Generic, Sphere, Cylinder, Separatrix, Extension };

std::string_view to_string(ProfileKind kind);

struct ProfileSample {
  double t = 0.0;
  double x = 0.0;
  double z = 0.0;
  double theta = 0.0;
};

struct ProfileCurve {
  std::vector<ProfileSample> samples;  // strictly increasing t
  ProfileKind kind = ProfileKind::Generic;

  double t_min() const { return samples.front().t; }
  double t_max() const { return samples.back().t; }

  // Position at t from the quintic Hermite interpolant through three
  // neighbouring samples (values and unit tangents). Throws RangeError
  // outside [t_min, t_max], TooFewSamples below three samples.
  std::pair<double, double> position(double t) const;
};

// Default sample spacing of profiles built from trajectories.
inline constexpr double kDefaultProfileSpacing = 5e-3;

// Samples traj on a uniform t-grid (endpoints included) of spacing at most
// `spacing`.
ProfileCurve build_profile(const Trajectory& traj, ProfileKind kind = ProfileKind::Generic,
                           double spacing = kDefaultProfileSpacing);

// n closed-form samples of the sphere profile
// (-sqrt2 sin(t/sqrt2) - sqrt2, sqrt2 cos(t/sqrt2)), strictly inside
// (-sqrt2 pi/2, sqrt2 pi/2). Throws InvalidInput for n < 2.
ProfileCurve sphere_profile(std::size_t n);

// Horizontal segment z = 1, theta = 0, x = t on [0, length].
ProfileCurve cylinder_profile(double length, std::size_t n);

// Profile of the lambda-trajectory on [-span, span], clamped to the
// maximal interval for the incomplete cases. A non-positive span selects
// the default: the whole curve when it is finite, two periods otherwise.
ProfileCurve lambda_profile(double lambda, double span, const IntegratorConfig& cfg,
                            double spacing = kDefaultProfileSpacing);

// The separatrix on [-b, b], from the corner (0, 1) to (2pi, 1).
Trajectory separatrix_trajectory(const IntegratorConfig& cfg);

struct VerificationReport {
  double h = 0.0;
  std::size_t resampled = 0;
  double max_curvature_residual = 0.0;  // max |k1^2 + k2^2 - 1|
  double max_speed_violation = 0.0;     // max |speed^2 - 1|
  std::size_t monotonicity_violations = 0;
};

// Resamples on a uniform grid of step h, recovers theta from chord
// directions with unwrapping, and checks the unit-norm condition with
// k1 = dtheta/dt (central differences) and k2 = -cos(theta)/z. Throws
// TooFewSamples for fewer than three samples and InvalidInput for h not
// in (0, span/4).
VerificationReport verify_profile(const ProfileCurve& profile, double h);

struct PeriodInfo {
  double t0 = 0.0;
  double period = 0.0;
  double x_shift = 0.0;
  // Residuals over the overlap window [-t0, t0].
  double z_residual = 0.0;
  double theta_residual = 0.0;
  double x_shift_residual = 0.0;
};

// Period of a lambda > lambda0 profile, checked against an independent
// forward run. Throws NotPeriodic unless lambda classifies as Periodic.
PeriodInfo find_period(double lambda, const IntegratorConfig& cfg, std::size_t checks = 2001);

struct IntersectionInfo {
  double t2 = 0.0;
  double x = 0.0;  // x(t2), zero up to the root tolerance
  double z = 0.0;
  double x_minus = 0.0;  // x(-t2)
  double z_minus = 0.0;  // z(-t2)
};

// Root t2 in (t1, t0) of x(-t) = 0 on a profile symmetric about t = 0.
// Throws NoSignChange unless x(-t0) < 0 < x(-t1), RangeError if the
// profile does not cover [-t0, t0].
IntersectionInfo find_self_intersection(const ProfileCurve& profile, double t0, double t1);

}  // namespace unitsurf
