#include "unitsurf/profile.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "unitsurf/errors.hpp"

namespace unitsurf {

namespace {

// Confluent Hermite interpolation through up to four nodes carrying values
// and first derivatives, evaluated in Newton form about the first node.
class HermiteStencil {
 public:
  void add(double t, double f, double df) {
    t_[m_] = t;
    f_[m_] = f;
    df_[m_] = df;
    ++m_;
  }

  double eval(double t) const {
    const std::size_t n = 2 * m_;
    std::array<double, 8> z{};
    std::array<std::array<double, 8>, 8> q{};
    for (std::size_t i = 0; i < n; ++i) {
      z[i] = t_[i / 2] - t_[0];
      q[i][0] = f_[i / 2];
    }
    for (std::size_t i = 1; i < n; ++i) {
      q[i][1] = (i % 2 == 1) ? df_[i / 2] : (q[i][0] - q[i - 1][0]) / (z[i] - z[i - 1]);
    }
    for (std::size_t j = 2; j < n; ++j) {
      for (std::size_t i = j; i < n; ++i) {
        q[i][j] = (q[i][j - 1] - q[i - 1][j - 1]) / (z[i] - z[i - j]);
      }
    }
    const double u = t - t_[0];
    double acc = q[n - 1][n - 1];
    for (std::size_t k = n - 1; k-- > 0;) acc = acc * (u - z[k]) + q[k][k];
    return acc;
  }

 private:
  std::size_t m_ = 0;
  std::array<double, 4> t_{}, f_{}, df_{};
};

ProfileCurve sample_uniform(const Trajectory& traj, double a, double b, ProfileKind kind, double spacing) {
  if (!(spacing > 0.0)) throw InvalidInput("profile spacing must be positive");
  ProfileCurve out;
  out.kind = kind;
  const auto n = static_cast<std::size_t>(std::max(2.0, std::ceil((b - a) / spacing)));
  out.samples.reserve(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    const double t = i == n ? b : a + (b - a) * static_cast<double>(i) / static_cast<double>(n);
    const auto s = traj.dense_eval(t);
    out.samples.push_back({t, s.x, s.z(), s.theta});
  }
  return out;
}

double unwrap_near(double angle, double reference) {
  return angle + 2.0 * kPi * std::round((reference - angle) / (2.0 * kPi));
}

}  // namespace

std::string_view to_string(ProfileKind kind) {
  switch (kind) {
    case ProfileKind::Generic:
      return "Generic";
    case ProfileKind::Sphere:
      return "Sphere";
    case ProfileKind::Cylinder:
      return "Cylinder";
    case ProfileKind::Separatrix:
      return "Separatrix";
    case ProfileKind::Extension:
      return "Extension";
  }
  return "Unknown";
}

std::pair<double, double> ProfileCurve::position(double t) const {
  const std::size_t n = samples.size();
  if (n < 3) throw TooFewSamples("profile needs at least 3 samples");
  if (!(t >= t_min() && t <= t_max())) throw RangeError("t outside the profile span");
  auto it = std::upper_bound(samples.begin(), samples.end(), t,
                             [](double v, const ProfileSample& s) { return v < s.t; });
  std::size_t k = it == samples.begin() ? 0 : static_cast<std::size_t>(it - samples.begin()) - 1;
  k = std::min(k, n - 2);
  // Cell [k, k+1] plus one neighbour on each side where available.
  const std::size_t lo = k == 0 ? 0 : k - 1;
  const std::size_t hi = std::min(n - 1, k + 2);
  HermiteStencil hx, hz;
  for (std::size_t i = lo; i <= hi; ++i) {
    const auto& s = samples[i];
    hx.add(s.t, s.x, std::cos(s.theta));
    hz.add(s.t, s.z, std::sin(s.theta));
  }
  return {hx.eval(t), hz.eval(t)};
}

ProfileCurve build_profile(const Trajectory& traj, ProfileKind kind, double spacing) {
  return sample_uniform(traj, traj.t_min(), traj.t_max(), kind, spacing);
}

ProfileCurve sphere_profile(std::size_t n) {
  if (n < 2) throw InvalidInput("sphere profile needs n >= 2");
  ProfileCurve out;
  out.kind = ProfileKind::Sphere;
  const double half = kSqrt2 * kPi / 2.0;
  out.samples.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = -half + 2.0 * half * static_cast<double>(i + 1) / static_cast<double>(n + 1);
    const double u = t / kSqrt2;
    out.samples.push_back({t, -kSqrt2 * std::sin(u) - kSqrt2, kSqrt2 * std::cos(u), kPi + u});
  }
  return out;
}

ProfileCurve cylinder_profile(double length, std::size_t n) {
  if (!(length > 0.0)) throw InvalidInput("cylinder length must be positive");
  if (n < 2) throw InvalidInput("cylinder profile needs n >= 2");
  ProfileCurve out;
  out.kind = ProfileKind::Cylinder;
  out.samples.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = i + 1 == n ? length : length * static_cast<double>(i) / static_cast<double>(n - 1);
    out.samples.push_back({t, t, 1.0, 0.0});
  }
  return out;
}

Trajectory separatrix_trajectory(const IntegratorConfig& cfg) {
  return symmetric_through(launch_separatrix(cfg));
}

ProfileCurve lambda_profile(double lambda, double span, const IntegratorConfig& cfg, double spacing) {
  const LambdaClass cls = classify_lambda(lambda, cfg);
  if (cls.tag == LambdaTag::Periodic) {
    const double half = span > 0.0 ? span : 2.0 * cls.half_span;
    IntegratorConfig run = cfg;
    run.theta_targets.clear();
    run.corner_band = 0.0;
    run.max_time = half;
    const Trajectory fwd = integrate(PhasePoint::at(kPi, lambda), Direction::Forward, run);
    return build_profile(join(reflect(fwd, 1), fwd), ProfileKind::Generic, spacing);
  }
  const Trajectory full = symmetric_through(cls.backward);
  const double reach = full.t_max();
  const double half = span > 0.0 ? std::min(span, reach) : reach;
  const ProfileKind kind = cls.tag == LambdaTag::Sphere       ? ProfileKind::Sphere
                           : cls.tag == LambdaTag::Separatrix ? ProfileKind::Separatrix
                                                              : ProfileKind::Generic;
  return sample_uniform(full, -half, half, kind, spacing);
}

VerificationReport verify_profile(const ProfileCurve& profile, double h) {
  if (profile.samples.size() < 3) throw TooFewSamples("verification needs at least 3 samples");
  const double span = profile.t_max() - profile.t_min();
  if (!(h > 0.0 && h < span / 4.0)) throw InvalidInput("resample step must lie in (0, span/4)");

  const auto n = static_cast<std::size_t>(std::floor(span / h * (1.0 + 1e-15))) + 1;
  std::vector<double> xs(n), zs(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = std::min(profile.t_min() + h * static_cast<double>(i), profile.t_max());
    std::tie(xs[i], zs[i]) = profile.position(t);
  }

  VerificationReport rep;
  rep.h = h;
  rep.resampled = n;
  // Tangent angle at i from the symmetric chord i-1 -> i+1.
  std::vector<double> theta(n, 0.0);
  double prev = profile.samples.front().theta;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double dx = xs[i + 1] - xs[i - 1];
    const double dz = zs[i + 1] - zs[i - 1];
    const double speed2 = (dx * dx + dz * dz) / (4.0 * h * h);
    rep.max_speed_violation = std::max(rep.max_speed_violation, std::abs(speed2 - 1.0));
    theta[i] = unwrap_near(std::atan2(dz, dx), prev);
    if (i > 1 && theta[i] < prev - 1e-9) ++rep.monotonicity_violations;
    prev = theta[i];
  }
  for (std::size_t i = 2; i + 2 < n; ++i) {
    const double k1 = (theta[i + 1] - theta[i - 1]) / (2.0 * h);
    const double k2 = -std::cos(theta[i]) / zs[i];
    rep.max_curvature_residual = std::max(rep.max_curvature_residual, std::abs(k1 * k1 + k2 * k2 - 1.0));
  }
  return rep;
}

PeriodInfo find_period(double lambda, const IntegratorConfig& cfg, std::size_t checks) {
  const LambdaClass cls = classify_lambda(lambda, cfg);
  if (cls.tag != LambdaTag::Periodic) {
    throw NotPeriodic("lambda " + std::to_string(lambda) + " classifies as " + std::string(to_string(cls.tag)));
  }
  PeriodInfo info;
  info.t0 = cls.half_span;
  info.period = 2.0 * info.t0;
  const Trajectory sym = symmetric_through(cls.backward);

  IntegratorConfig run = cfg;
  run.theta_targets = {4.0 * kPi};
  run.corner_band = 0.0;
  const Trajectory fwd = integrate(PhasePoint::at(kPi, lambda), Direction::Forward, run);
  info.x_shift = fwd.dense_eval(info.period).x;

  const std::size_t m = std::max<std::size_t>(2, checks);
  for (std::size_t i = 0; i < m; ++i) {
    const double t = std::clamp(-info.t0 + info.period * static_cast<double>(i) / static_cast<double>(m - 1),
                                sym.t_min(), sym.t_max());
    const double u = std::min(t + info.period, fwd.t_max());
    const auto a = sym.dense_eval(t);
    const auto b = fwd.dense_eval(u);
    info.z_residual = std::max(info.z_residual, std::abs(b.lift - a.lift));
    info.theta_residual = std::max(info.theta_residual, std::abs(b.theta - a.theta - 2.0 * kPi));
    info.x_shift_residual = std::max(info.x_shift_residual, std::abs(b.x - a.x - info.x_shift));
  }
  return info;
}

IntersectionInfo find_self_intersection(const ProfileCurve& profile, double t0, double t1) {
  if (!(t1 > 0.0 && t1 < t0)) throw InvalidInput("need 0 < t1 < t0");
  if (profile.t_min() > -t0 || profile.t_max() < t0) throw RangeError("profile does not cover [-t0, t0]");
  auto x_back = [&](double t) { return profile.position(-t).first; };
  double lo = t1;  // x(-lo) > 0
  double hi = t0;  // x(-hi) < 0
  if (!(x_back(hi) < 0.0 && x_back(lo) > 0.0)) {
    throw NoSignChange("x(-t0) < 0 < x(-t1) does not hold; lambda must exceed lambda0");
  }
  for (int i = 0; i < 200 && hi - lo > 0.0; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (x_back(mid) > 0.0 ? lo : hi) = mid;
  }
  IntersectionInfo info;
  info.t2 = std::abs(x_back(lo)) <= std::abs(x_back(hi)) ? lo : hi;
  std::tie(info.x, info.z) = profile.position(info.t2);
  std::tie(info.x_minus, info.z_minus) = profile.position(-info.t2);
  return info;
}

}  // namespace unitsurf
