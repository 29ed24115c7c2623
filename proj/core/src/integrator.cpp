#include "unitsurf/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "unitsurf/corner_series.hpp"
#include "unitsurf/errors.hpp"

namespace unitsurf {

namespace {

using State = std::array<double, 3>;  // theta, lift, x

// Dormand-Prince 5(4) tableau.
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                 a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                 a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
constexpr double a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0, a74 = 125.0 / 192.0,
                 a75 = -2187.0 / 6784.0, a76 = 11.0 / 84.0;
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                 e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
// Dense output (Hairer & Wanner, dopri5 contd5).
constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

// Below this gap a step-size underflow is read as boundary contact.
constexpr double kUnderflowContactGap = 1e-6;

State rhs(const State& y, double dir) {
  const PhasePoint p = PhasePoint::from_lift(y[0], y[1]);
  return {dir * slope_unchecked(p), dir * std::sin(y[0]), dir * std::cos(y[0])};
}

State axpy(const State& y, double h, std::initializer_list<std::pair<double, const State*>> terms) {
  State out = y;
  for (const auto& [a, k] : terms) {
    for (std::size_t i = 0; i < 3; ++i) out[i] += h * a * (*k)[i];
  }
  return out;
}

double gap_of(const State& y) { return boundary_gap(PhasePoint::from_lift(y[0], y[1])); }

TrajectorySample make_sample(double t, const State& y) {
  const PhasePoint p = PhasePoint::from_lift(y[0], y[1]);
  return {t, y[0], y[1], y[2], slope_unchecked(p), std::sin(y[0])};
}

TrajectorySample series_sample(const CornerAnchor& a, double t) {
  const double s = a.sign * (t - a.t_corner);
  const auto st = corner_series::evaluate(s);
  TrajectorySample out;
  out.t = t;
  out.theta = a.theta_base + a.sign * st.theta;
  out.lift = st.lift;
  out.x = a.x_corner + a.sign * st.x;
  out.dtheta = st.dtheta;
  out.dz = std::sin(out.theta);
  return out;
}

// Quadratic extrapolation of the last samples (in integration order) to
// the zero of the boundary gap.
BoundaryContact extrapolate_contact(const std::vector<TrajectorySample>& samples) {
  const TrajectorySample& last = samples.back();
  BoundaryContact contact{last.point(), last.t};
  if (samples.size() < 3) return contact;
  const TrajectorySample& s0 = samples[samples.size() - 3];
  const TrajectorySample& s1 = samples[samples.size() - 2];
  const TrajectorySample& s2 = last;
  const double t0 = s0.t, t1 = s1.t, t2 = s2.t;
  if (t0 == t1 || t1 == t2 || t0 == t2) return contact;

  auto lagrange = [&](double f0, double f1, double f2, double t) {
    return f0 * (t - t1) * (t - t2) / ((t0 - t1) * (t0 - t2)) +
           f1 * (t - t0) * (t - t2) / ((t1 - t0) * (t1 - t2)) +
           f2 * (t - t0) * (t - t1) / ((t2 - t0) * (t2 - t1));
  };
  const double g0 = boundary_gap(s0.point()), g1 = boundary_gap(s1.point()),
               g2 = boundary_gap(s2.point());
  // Secant on the last two points, refined by Newton on the quadratic.
  const double dir = t2 > t1 ? 1.0 : -1.0;
  const double slope = (g2 - g1) / (t2 - t1);
  if (!(slope * dir < 0.0)) return contact;
  double tb = t2 - g2 / slope;
  for (int it = 0; it < 8; ++it) {
    const double g = lagrange(g0, g1, g2, tb);
    const double eps = 1e-6 * std::abs(t2 - t1);
    const double dg = (lagrange(g0, g1, g2, tb + eps) - lagrange(g0, g1, g2, tb - eps)) / (2 * eps);
    if (dg == 0.0) break;
    tb -= g / dg;
  }
  const double reach = std::abs(tb - t2);
  if (!std::isfinite(tb) || (tb - t2) * dir < 0.0 || reach > 2.0 * std::abs(t2 - t1)) return contact;
  contact.t = tb;
  contact.limit = PhasePoint::from_lift(lagrange(s0.theta, s1.theta, s2.theta, tb),
                                        lagrange(s0.lift, s1.lift, s2.lift, tb));
  return contact;
}

Trajectory shifted(const Trajectory& traj, double dt, double dx) {
  auto samples = traj.samples();
  for (auto& s : samples) {
    s.t += dt;
    s.x += dx;
  }
  auto steps = traj.steps();
  for (auto& st : steps) {
    st.t_begin += dt;
    st.coeff[0][2] += dx;
  }
  auto corners = traj.corners();
  for (auto& c : corners) {
    c.t_corner += dt;
    c.x_corner += dx;
  }
  Termination term = traj.termination();
  std::visit([&](auto& e) { e.t += dt; }, term);
  return Trajectory(std::move(samples), std::move(steps), term, std::move(corners));
}

Trajectory integrate_impl(const State& start, Direction direction, const IntegratorConfig& cfg,
                          double initial_step) {
  const double dir = direction == Direction::Forward ? 1.0 : -1.0;
  std::vector<TrajectorySample> samples;  // in integration order, t = dir * tau
  std::vector<DenseStep> steps;
  std::optional<Termination> term;

  State y = start;
  double tau = 0.0;
  double h = std::min({initial_step, cfg.max_step, cfg.max_time});
  State k1 = rhs(y, dir);
  samples.push_back(make_sample(0.0, y));
  double gap_prev = gap_of(y);
  long n_steps = 0;

  auto underflow = [&](double step) {
    if (gap_prev < kUnderflowContactGap) {
      term = extrapolate_contact(samples);
      return true;
    }
    throw StepUnderflow("step " + std::to_string(step) + " below min_step at theta=" +
                        std::to_string(y[0]) + ", z=" + std::to_string(1.0 + y[1]));
  };

  while (!term) {
    if (++n_steps > cfg.max_steps) throw NumericFailure("integration exceeded max_steps");
    h = std::min(h, cfg.max_time - tau);
    if (h < cfg.min_step && cfg.max_time - tau > cfg.min_step) {
      if (underflow(h)) break;
    }

    const State k2 = rhs(axpy(y, h, {{a21, &k1}}), dir);
    const State k3 = rhs(axpy(y, h, {{a31, &k1}, {a32, &k2}}), dir);
    const State k4 = rhs(axpy(y, h, {{a41, &k1}, {a42, &k2}, {a43, &k3}}), dir);
    const State k5 = rhs(axpy(y, h, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}), dir);
    const State k6 =
        rhs(axpy(y, h, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}), dir);
    const State y_new =
        axpy(y, h, {{a71, &k1}, {a73, &k3}, {a74, &k4}, {a75, &k5}, {a76, &k6}});
    const State k7 = rhs(y_new, dir);

    double err = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
      const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                            e7 * k7[i]);
      const double sk = cfg.abs_tol + cfg.rel_tol * std::max(std::abs(y[i]), std::abs(y_new[i]));
      err += (e / sk) * (e / sk);
    }
    err = std::sqrt(err / 3.0);

    const double gap_new = gap_of(y_new);
    if (!std::isfinite(err) || (gap_new <= 0.0 && gap_prev > 0.0)) {
      // Overshot the boundary: aim short of the linearly predicted contact.
      double ratio = 0.5;
      if (std::isfinite(gap_new) && gap_prev > gap_new) ratio = 0.9 * gap_prev / (gap_prev - gap_new);
      h *= std::clamp(ratio, 0.05, 0.9);
      if (h < cfg.min_step && underflow(h)) break;
      continue;
    }
    if (err > 1.0) {
      h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
      if (h < cfg.min_step && underflow(h)) break;
      continue;
    }

    DenseStep step;
    step.t_begin = dir * tau;
    step.h = dir * h;
    for (std::size_t i = 0; i < 3; ++i) {
      const double r2 = y_new[i] - y[i];
      const double r3 = h * k1[i] - r2;
      step.coeff[0][i] = y[i];
      step.coeff[1][i] = r2;
      step.coeff[2][i] = r3;
      step.coeff[3][i] = r2 - h * k7[i] - r3;
      step.coeff[4][i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] +
                              d7 * k7[i]);
    }

    // Earliest requested theta crossing inside the step.
    double best_sigma = 2.0;
    double best_target = 0.0;
    for (double target : cfg.theta_targets) {
      const double f0 = y[0] - target;
      const double f1 = y_new[0] - target;
      if (f0 == 0.0 || f0 * f1 > 0.0) continue;
      double lo = 0.0, hi = 1.0;
      for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double fm = step.state(mid)[0] - target;
        if ((fm > 0.0) == (f0 > 0.0) && fm != 0.0) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      if (hi < best_sigma) {
        best_sigma = hi;
        best_target = target;
      }
    }
    if (best_sigma <= 1.0) {
      step.sigma_end = best_sigma;
      State yc = step.state(best_sigma);
      yc[0] = best_target;
      const double tc = dir * (tau + best_sigma * h);
      samples.push_back(make_sample(tc, yc));
      steps.push_back(step);
      term = ThetaCrossing{best_target, tc};
      break;
    }

    steps.push_back(step);
    tau += h;
    y = y_new;
    k1 = k7;
    samples.push_back(make_sample(dir * tau, y));

    if (cfg.corner_band > 0.0) {
      const double turns = std::round(y[0] / (2.0 * kPi));
      if (std::abs(y[0] - 2.0 * kPi * turns) <= cfg.corner_band &&
          std::abs(y[1]) <= cfg.corner_band) {
        term = SeriesOrigin{dir * tau};
        break;
      }
    }
    if (gap_new < cfg.boundary_eps && gap_new < gap_prev) {
      term = extrapolate_contact(samples);
      break;
    }
    gap_prev = gap_new;
    if (tau >= cfg.max_time) {
      term = TimeCap{dir * tau};
      break;
    }

    const double fac = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
    h = std::min(h * fac, cfg.max_step);
  }

  if (direction == Direction::Backward) {
    std::reverse(samples.begin(), samples.end());
    std::reverse(steps.begin(), steps.end());
  }
  return Trajectory(std::move(samples), std::move(steps), *term);
}

}  // namespace

void IntegratorConfig::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) throw InvalidInput("tolerances must be positive");
  if (!(min_step > 0.0) || !(min_step < max_step))
    throw InvalidInput("need 0 < min_step < max_step");
  if (!(boundary_eps > 0.0)) throw InvalidInput("boundary_eps must be positive");
  if (!(max_time > 0.0)) throw InvalidInput("max_time must be positive");
  if (!(initial_step > 0.0)) throw InvalidInput("initial_step must be positive");
}

std::array<double, 3> DenseStep::state(double sigma) const {
  const double u = 1.0 - sigma;
  std::array<double, 3> y{};
  for (std::size_t i = 0; i < 3; ++i) {
    y[i] = coeff[0][i] +
           sigma * (coeff[1][i] + u * (coeff[2][i] + sigma * (coeff[3][i] + u * coeff[4][i])));
  }
  return y;
}

Trajectory::Trajectory(std::vector<TrajectorySample> samples, std::vector<DenseStep> steps,
                       Termination termination, std::vector<CornerAnchor> corners)
    : samples_(std::move(samples)),
      steps_(std::move(steps)),
      termination_(termination),
      corners_(std::move(corners)) {
  if (samples_.empty()) throw InvalidInput("trajectory needs at least one sample");
}

TrajectorySample Trajectory::dense_eval(double t) const {
  if (!(t >= t_min() && t <= t_max())) {
    throw RangeError("time " + std::to_string(t) + " outside trajectory span [" +
                     std::to_string(t_min()) + ", " + std::to_string(t_max()) + "]");
  }
  const auto it = std::lower_bound(samples_.begin(), samples_.end(), t,
                                   [](const TrajectorySample& s, double v) { return s.t < v; });
  if (it != samples_.end() && it->t == t) return *it;

  for (const auto& a : corners_) {
    const double s = a.sign * (t - a.t_corner);
    if (s >= 0.0 && s <= corner_series::kTrustRadius) return series_sample(a, t);
  }

  auto st = std::upper_bound(steps_.begin(), steps_.end(), t,
                             [](double v, const DenseStep& s) { return v < s.t_lo(); });
  if (st != steps_.begin()) --st;
  // Neighbouring steps share endpoints; pick the one that actually covers t.
  while (st != steps_.end() && st->t_hi() < t) ++st;
  if (st == steps_.end() || t < st->t_lo()) {
    throw RangeError("no dense-output step covers time " + std::to_string(t));
  }
  const double sigma = std::clamp((t - st->t_begin) / st->h, 0.0, st->sigma_end);
  const auto y = st->state(sigma);
  return make_sample(t, y);
}

std::optional<double> Trajectory::time_at_theta(double target) const {
  if (target < front().theta || target > back().theta) return std::nullopt;
  const auto it = std::lower_bound(samples_.begin(), samples_.end(), target,
                                   [](const TrajectorySample& s, double v) { return s.theta < v; });
  if (it->theta == target) return it->t;
  double lo = std::prev(it)->t;
  double hi = it->t;
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (dense_eval(mid).theta < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

Trajectory integrate(const PhasePoint& start, Direction direction, const IntegratorConfig& cfg) {
  cfg.validate();
  if (!in_domain(start)) {
    throw DomainError("integration start outside the phase domain (theta=" +
                      std::to_string(start.theta) + ", z=" + std::to_string(start.z()) + ")");
  }
  return integrate_impl({start.theta, start.lift, 0.0}, direction, cfg, cfg.initial_step);
}

Trajectory launch_separatrix(const IntegratorConfig& cfg, double seed_s) {
  cfg.validate();
  if (!(seed_s > 0.0 && seed_s < corner_series::kTrustRadius)) {
    throw SeedInvalid("seed arc length must lie in (0, " +
                      std::to_string(corner_series::kTrustRadius) + ")");
  }
  const auto seed = corner_series::evaluate(seed_s);
  const PhasePoint p = PhasePoint::from_lift(seed.theta, seed.lift);
  const double residual = corner_series::constraint_residual(seed_s);
  if (!in_domain(p) || residual > 1e-8 * seed.dtheta * seed.dtheta) {
    throw SeedInvalid("series seed violates the constraint (residual " + std::to_string(residual) +
                      ")");
  }

  IntegratorConfig run = cfg;
  run.theta_targets = {kPi};
  run.corner_band = 0.0;
  Trajectory fwd = integrate_impl({seed.theta, seed.lift, seed.x}, Direction::Forward, run,
                                  std::min(cfg.initial_step, 0.1 * seed_s));
  if (!std::holds_alternative<ThetaCrossing>(fwd.termination())) {
    throw NumericFailure("separatrix launch did not reach theta = pi");
  }
  // Seed sits at t = 0 in the raw run; the corner is seed_s earlier.
  const double t_end = fwd.back().t;
  const double x_end = fwd.back().x;

  std::vector<TrajectorySample> samples;
  samples.reserve(fwd.samples().size() + 1);
  samples.push_back({-seed_s, 0.0, 0.0, 0.0, 0.0, 0.0});
  for (auto s : fwd.samples()) samples.push_back(s);
  Trajectory with_corner(std::move(samples), fwd.steps(), fwd.termination(),
                         {CornerAnchor{-seed_s, 0.0, 0.0, 1.0}});
  return shifted(with_corner, -t_end, -x_end);
}

Trajectory reflect(const Trajectory& traj, int n) {
  const double axis = n * kPi;
  const double tol = 1e-9 * std::max(1.0, std::abs(axis));
  const auto& src = traj.samples();
  const auto pivot = std::find_if(src.begin(), src.end(),
                                  [&](const TrajectorySample& s) { return std::abs(s.theta - axis) <= tol; });
  if (pivot == src.end()) {
    throw NotOnAxis("trajectory has no sample on theta = " + std::to_string(n) + "*pi");
  }
  const double tc = pivot->t;
  const double xc = pivot->x;

  std::vector<TrajectorySample> samples;
  samples.reserve(src.size());
  for (auto it = src.rbegin(); it != src.rend(); ++it) {
    TrajectorySample s = *it;
    s.t = 2.0 * tc - s.t;
    s.theta = 2.0 * axis - s.theta;
    s.x = 2.0 * xc - s.x;
    s.dz = -s.dz;
    samples.push_back(s);
  }

  std::vector<DenseStep> steps;
  steps.reserve(traj.steps().size());
  for (auto it = traj.steps().rbegin(); it != traj.steps().rend(); ++it) {
    DenseStep st = *it;
    st.t_begin = 2.0 * tc - st.t_begin;
    st.h = -st.h;
    st.coeff[0][0] = 2.0 * axis - st.coeff[0][0];
    st.coeff[0][2] = 2.0 * xc - st.coeff[0][2];
    for (std::size_t k = 1; k < 5; ++k) {
      st.coeff[k][0] = -st.coeff[k][0];
      st.coeff[k][2] = -st.coeff[k][2];
    }
    steps.push_back(st);
  }

  std::vector<CornerAnchor> corners;
  for (auto c : traj.corners()) {
    c.t_corner = 2.0 * tc - c.t_corner;
    c.x_corner = 2.0 * xc - c.x_corner;
    c.theta_base = 2.0 * axis - c.theta_base;
    c.sign = -c.sign;
    corners.push_back(c);
  }

  Termination term = std::visit(
      [&](auto e) -> Termination {
        e.t = 2.0 * tc - e.t;
        if constexpr (std::is_same_v<decltype(e), ThetaCrossing>) e.target = 2.0 * axis - e.target;
        if constexpr (std::is_same_v<decltype(e), BoundaryContact>)
          e.limit.theta = 2.0 * axis - e.limit.theta;
        return e;
      },
      traj.termination());
  return Trajectory(std::move(samples), std::move(steps), term, std::move(corners));
}

Trajectory join(const Trajectory& earlier, const Trajectory& later) {
  const auto& a = earlier.back();
  const auto& b = later.front();
  const double scale = std::max({1.0, std::abs(a.t), std::abs(a.theta), std::abs(a.x)});
  if (std::abs(a.t - b.t) > 1e-12 * scale || std::abs(a.theta - b.theta) > 1e-9 * scale ||
      std::abs(a.lift - b.lift) > 1e-9 * scale || std::abs(a.x - b.x) > 1e-9 * scale) {
    throw InvalidInput("trajectories do not share an endpoint");
  }
  std::vector<TrajectorySample> samples = earlier.samples();
  samples.insert(samples.end(), later.samples().begin() + 1, later.samples().end());
  std::vector<DenseStep> steps = earlier.steps();
  steps.insert(steps.end(), later.steps().begin(), later.steps().end());
  std::vector<CornerAnchor> corners = earlier.corners();
  corners.insert(corners.end(), later.corners().begin(), later.corners().end());
  return Trajectory(std::move(samples), std::move(steps), later.termination(), std::move(corners));
}

Trajectory symmetric_through(const Trajectory& backward_half) {
  return join(backward_half, reflect(backward_half, 1));
}

double max_constraint_residual(const Trajectory& traj) {
  double worst = 0.0;
  for (const auto& s : traj.samples()) {
    const PhasePoint p = s.point();
    if (!in_domain(p)) continue;
    const double c = std::cos(s.theta);
    const double z = s.z();
    worst = std::max(worst, std::abs(s.dtheta * s.dtheta + c * c / (z * z) - 1.0));
  }
  return worst;
}

}  // namespace unitsurf
