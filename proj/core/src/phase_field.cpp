#include "unitsurf/phase_field.hpp"

#include <algorithm>
#include <string>

#include "unitsurf/errors.hpp"

namespace unitsurf {

namespace {

std::string describe(const PhasePoint& p) {
  return "(theta=" + std::to_string(p.theta) + ", z=" + std::to_string(p.z()) + ")";
}

void require_domain(const PhasePoint& p) {
  if (!in_domain(p)) throw DomainError("point outside the phase domain " + describe(p));
}

}  // namespace

// Below this height the offset form loses more than the direct one.
constexpr double kDirectFormLift = -0.5;

double lower_gap(const PhasePoint& p) {
  if (p.lift < kDirectFormLift) return p.z() - std::cos(p.theta);
  const double s = std::sin(0.5 * p.theta);
  return p.lift + 2.0 * s * s;
}

double upper_gap(const PhasePoint& p) {
  if (p.lift < kDirectFormLift) return p.z() + std::cos(p.theta);
  const double c = std::cos(0.5 * p.theta);
  return p.lift + 2.0 * c * c;
}

double boundary_gap(const PhasePoint& p) {
  return std::min(lower_gap(p), upper_gap(p));
}

bool in_domain(const PhasePoint& p) {
  return p.z() > 0.0 && boundary_gap(p) > 0.0;
}

double slope_unchecked(const PhasePoint& p) {
  const double lo = lower_gap(p);
  const double hi = upper_gap(p);
  if (lo <= 0.0 || hi <= 0.0) return 0.0;
  const double z = p.z();
  // 1 - cos^2/z^2 = (z - cos)(z + cos) / z^2
  return std::sqrt(lo * hi) / z;
}

PhaseVelocity field_eval(const PhasePoint& p) {
  require_domain(p);
  return {slope_unchecked(p), std::sin(p.theta)};
}

CurvaturePair curvatures(const PhasePoint& p) {
  const PhaseVelocity v = field_eval(p);
  return {v.dtheta, -std::cos(p.theta) / p.z()};
}

double theta_second(const PhasePoint& p) {
  const PhaseVelocity v = field_eval(p);
  if (v.dtheta == 0.0) throw SlopeZeroError("theta'' is singular where theta' = 0 " + describe(p));
  const double z = p.z();
  const double s = std::sin(p.theta);
  const double c = std::cos(p.theta);
  return s / (z * v.dtheta) + s * c / (z * z) - v.dtheta * s / z;
}

AsymptoticReport asymptotics(const PhasePoint& p) {
  const PhaseVelocity v = field_eval(p);
  if (v.dtheta == 0.0) throw SlopeZeroError("asymptotic ratios need theta' > 0 " + describe(p));
  const double s = std::sin(p.theta);
  const double gap = lower_gap(p);
  AsymptoticReport r;
  r.r1 = (s * s) / (v.dtheta * v.dtheta);
  r.r2 = gap / s;
  r.r3 = std::pow(s, 1.5) / gap;
  r.r4 = (s * s) / std::pow(gap, 1.5);
  r.theta2 = theta_second(p);
  return r;
}

}  // namespace unitsurf
