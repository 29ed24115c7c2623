#pragma once

// Adaptive Dormand-Prince 5(4) integration of the phase field, with the
// profile abscissa x co-integrated (x' = cos(theta)). Trajectories are
// stored with increasing arc length t regardless of the direction in which
// they were integrated, so theta increases from sample to sample.

#include <array>
#include <optional>
#include <variant>
#include <vector>

#include "unitsurf/phase_field.hpp"

namespace unitsurf {

struct IntegratorConfig {
  double rel_tol = 1e-12;
  double abs_tol = 1e-14;
  double max_step = 0.05;
  double min_step = 1e-15;
  double initial_step = 1e-3;
  // Terminate on boundary contact once z - |cos(theta)| drops below this
  // while still decreasing.
  double boundary_eps = 1e-10;
  double max_time = 200.0;
  // Terminal events: the first crossing of any of these angles ends the run.
  std::vector<double> theta_targets;
  // If positive, stop with SeriesOrigin when both |theta - 2k*pi| and
  // |z - 1| fall below this band.
  double corner_band = 1e-9;
  long max_steps = 5'000'000;

  // Throws InvalidInput when the invariants do not hold.
  void validate() const;
};

enum class Direction { Forward, Backward };

struct TrajectorySample {
  double t = 0.0;
  double theta = 0.0;
  double lift = 0.0;  // z - 1
  double x = 0.0;
  double dtheta = 0.0;
  double dz = 0.0;

  double z() const { return 1.0 + lift; }
  PhasePoint point() const { return PhasePoint::from_lift(theta, lift); }
};

struct ThetaCrossing {
  double target = 0.0;
  double t = 0.0;
};

struct BoundaryContact {
  PhasePoint limit;  // extrapolated point of the boundary
  double t = 0.0;    // extrapolated time of contact
};

struct TimeCap {
  double t = 0.0;
};

struct SeriesOrigin {
  double t = 0.0;
};

using Termination = std::variant<ThetaCrossing, BoundaryContact, TimeCap, SeriesOrigin>;

// Where a trajectory meets the corner (2k*pi, 1) along the separatrix.
// Near it, theta = theta_base + sign * theta_series(s), x = x_corner +
// sign * x_series(s) with s = sign * (t - t_corner) >= 0.
struct CornerAnchor {
  double t_corner = 0.0;
  double x_corner = 0.0;
  double theta_base = 0.0;
  double sign = 1.0;
};

// One accepted step with its dense-output coefficients. The state at
// sigma in [0, sigma_end] is the DP5 continuous extension, at time
// t_begin + sigma * h (h is negative for steps that run backward in t).
struct DenseStep {
  double t_begin = 0.0;
  double h = 0.0;
  double sigma_end = 1.0;
  std::array<std::array<double, 3>, 5> coeff{};

  double t_end() const { return t_begin + sigma_end * h; }
  double t_lo() const { return h >= 0.0 ? t_begin : t_end(); }
  double t_hi() const { return h >= 0.0 ? t_end() : t_begin; }
  std::array<double, 3> state(double sigma) const;
};

class Trajectory {
 public:
  Trajectory() = default;
  Trajectory(std::vector<TrajectorySample> samples, std::vector<DenseStep> steps,
             Termination termination, std::vector<CornerAnchor> corners = {});

  const std::vector<TrajectorySample>& samples() const { return samples_; }
  const std::vector<DenseStep>& steps() const { return steps_; }
  const Termination& termination() const { return termination_; }
  const std::vector<CornerAnchor>& corners() const { return corners_; }

  double t_min() const { return samples_.front().t; }
  double t_max() const { return samples_.back().t; }
  const TrajectorySample& front() const { return samples_.front(); }
  const TrajectorySample& back() const { return samples_.back(); }

  // Interpolated state at t. Reproduces stored samples exactly at their
  // times. Throws RangeError outside [t_min, t_max].
  TrajectorySample dense_eval(double t) const;

  // Time at which theta equals target (theta is monotone), if within span.
  std::optional<double> time_at_theta(double target) const;

 private:
  std::vector<TrajectorySample> samples_;
  std::vector<DenseStep> steps_;  // sorted by t_lo
  Termination termination_ = TimeCap{};
  std::vector<CornerAnchor> corners_;
};

// Integrates the field from start. Backward integration follows the negated
// field; the returned samples are still ordered by increasing t (t <= 0).
// Throws DomainError if start is outside the domain, StepUnderflow if the
// controller needs a step below min_step away from the boundary.
Trajectory integrate(const PhasePoint& start, Direction direction, const IntegratorConfig& cfg);

inline TrajectorySample dense_eval(const Trajectory& traj, double t) { return traj.dense_eval(t); }

// Default arc length of the series seed for the separatrix launch.
inline constexpr double kDefaultSeedArcLength = 1e-3;

// Launches the separatrix from the corner series at arc length seed_s and
// integrates forward until theta = pi. Times and abscissae are shifted so
// that the terminal state (pi, lambda0) sits at t = 0, x = 0; the corner is
// at t = -b. The first sample is the corner itself. Throws SeedInvalid if
// the seed violates the constraint beyond tolerance.
Trajectory launch_separatrix(const IntegratorConfig& cfg, double seed_s = kDefaultSeedArcLength);

// Mirror image about theta = n*pi: (t, theta, z, x) -> (2tc - t, 2n*pi -
// theta, z, 2x(tc) - x), where tc is the time of the sample with
// theta = n*pi. Throws NotOnAxis if there is no such sample.
Trajectory reflect(const Trajectory& traj, int n);

// Concatenates two trajectories that share an endpoint (earlier.back()
// coincides with later.front()). Throws InvalidInput otherwise.
Trajectory join(const Trajectory& earlier, const Trajectory& later);

// Backward half from (pi, lambda) to its natural end, mirrored about
// theta = pi. Spans [t_min, -t_min].
Trajectory symmetric_through(const Trajectory& backward_half);

// max |theta'^2 + cos^2(theta)/z^2 - 1| over interior samples, with theta'
// taken from the stored slope.
double max_constraint_residual(const Trajectory& traj);

}  // namespace unitsurf
