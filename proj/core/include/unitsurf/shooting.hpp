#pragma once

// Classification of the profile through (theta, z) = (pi, lambda) by the
// fate of its backward trajectory, and the search for the separatrix
// height lambda0.

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "unitsurf/integrator.hpp"

namespace unitsurf {

enum class LambdaTag { Sphere, Periodic, Separatrix, IncompleteLow, IncompleteHigh };

std::string_view to_string(LambdaTag tag);

struct ClassifyOptions {
  // |lambda - sqrt2| at or below this is the sphere.
  double sphere_tol = 1e-9;
  // A boundary limit with theta and |z - 1| both within this band is the
  // corner (0, 1), i.e. the separatrix.
  double separatrix_band = 1e-9;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double width() const { return hi - lo; }
  bool contains(double v) const { return lo <= v && v <= hi; }
};

struct LambdaClass {
  LambdaTag tag = LambdaTag::Sphere;
  double lambda = 0.0;
  // Boundary limit of the backward run (incomplete cases; (pi/2, 0) for the sphere).
  std::optional<PhasePoint> limit_point;
  // z where the backward run crosses theta = 0 (periodic case).
  std::optional<double> crossing_height;
  // Reported for the separatrix.
  std::optional<Interval> lambda0_bracket;
  // Arc length from (pi, lambda) back to the end of the backward run:
  // b_lambda for the finite cases, t0 for the periodic case.
  double half_span = 0.0;
  // Backward half, samples on [-half_span, 0].
  Trajectory backward;
};

// Integrates backward from (pi, lambda) and assigns the case. Throws
// InvalidLambda for lambda <= 1 and NumericFailure when the run hits the
// time cap without an event.
LambdaClass classify_lambda(double lambda, const IntegratorConfig& cfg,
                            const ClassifyOptions& opts = {});

struct Lambda0Estimate {
  double value = 0.0;
  Interval bracket;
  int iterations = 0;
};

// True when the backward run from (pi, lambda) crosses theta = 0.
bool crosses_axis(double lambda, const IntegratorConfig& cfg);

// Bisection on crosses_axis, with the upper end found by doubling from
// sqrt2. Throws InvalidInput for tol <= 0, BracketFailure when no
// lambda <= 2^16 crosses.
Lambda0Estimate find_lambda0(const IntegratorConfig& cfg, double tol);

struct PortraitEntry {
  double lambda = 0.0;
  std::optional<LambdaClass> cls;
  std::string error;  // set when classification failed
  std::vector<std::pair<double, double>> polyline;  // (theta, z)
};

struct PortraitReport {
  Lambda0Estimate lambda0;
  std::vector<PortraitEntry> entries;  // sorted by lambda
};

struct PortraitOptions {
  double lambda0_tol = 1e-10;
  std::size_t max_polyline_points = 512;
  ClassifyOptions classify;
};

// Classifies every lambda (concurrently) and attaches a decimated (theta, z)
// polyline of the full symmetric trajectory. Per-entry failures are recorded
// in the entry, not thrown.
PortraitReport portrait(const std::vector<double>& lambdas, const IntegratorConfig& cfg,
                        const PortraitOptions& opts = {});

// Uniformly spaced (in t) samples of traj, endpoints included.
std::vector<std::pair<double, double>> decimate_phase(const Trajectory& traj, std::size_t max_points);

}  // namespace unitsurf
