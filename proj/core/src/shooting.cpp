#include "unitsurf/shooting.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numeric>

#include "unitsurf/errors.hpp"

namespace unitsurf {

namespace {

constexpr double kMaxBracketLambda = 65536.0;

Trajectory backward_run(double lambda, const IntegratorConfig& cfg) {
  IntegratorConfig run = cfg;
  run.theta_targets = {0.0};
  return integrate(PhasePoint::at(kPi, lambda), Direction::Backward, run);
}

bool near_corner(const PhasePoint& p, double band) {
  return std::abs(p.theta) <= band && std::abs(p.lift) <= band;
}

}  // namespace

std::string_view to_string(LambdaTag tag) {
  switch (tag) {
    case LambdaTag::Sphere:
      return "Sphere";
    case LambdaTag::Periodic:
      return "Periodic";
    case LambdaTag::Separatrix:
      return "Separatrix";
    case LambdaTag::IncompleteLow:
      return "IncompleteLow";
    case LambdaTag::IncompleteHigh:
      return "IncompleteHigh";
  }
  return "Unknown";
}

LambdaClass classify_lambda(double lambda, const IntegratorConfig& cfg, const ClassifyOptions& opts) {
  if (!(lambda > 1.0)) throw InvalidLambda("lambda must exceed 1, got " + std::to_string(lambda));

  LambdaClass out;
  out.lambda = lambda;
  IntegratorConfig run = cfg;
  run.corner_band = opts.separatrix_band;
  out.backward = backward_run(lambda, run);
  out.half_span = -out.backward.t_min();

  if (std::abs(lambda - kSqrt2) <= opts.sphere_tol) {
    // The run above is psi up to rounding; the witness is the exact pole.
    out.tag = LambdaTag::Sphere;
    out.limit_point = PhasePoint::at(kPi / 2, 0.0);
    out.half_span = kPi / kSqrt2;
    return out;
  }

  const Termination& term = out.backward.termination();
  if (const auto* hit = std::get_if<ThetaCrossing>(&term)) {
    const double z = out.backward.front().z();
    if (out.backward.front().lift <= opts.separatrix_band) {
      out.tag = LambdaTag::Separatrix;
      out.lambda0_bracket = Interval{lambda - opts.separatrix_band, lambda + opts.separatrix_band};
    } else {
      out.tag = LambdaTag::Periodic;
      out.crossing_height = z;
    }
    out.half_span = -hit->t;
    return out;
  }
  if (std::holds_alternative<SeriesOrigin>(term)) {
    out.tag = LambdaTag::Separatrix;
    out.lambda0_bracket = Interval{lambda - opts.separatrix_band, lambda + opts.separatrix_band};
    return out;
  }
  if (const auto* contact = std::get_if<BoundaryContact>(&term)) {
    const PhasePoint limit = contact->limit;
    out.limit_point = limit;
    out.half_span = -contact->t;
    // A genuine incomplete end lies on z = cos(theta) < 1; anything at or
    // above height 1 can only be the corner.
    if (near_corner(limit, opts.separatrix_band) || limit.lift >= 0.0) {
      out.tag = LambdaTag::Separatrix;
      out.lambda0_bracket = Interval{lambda - opts.separatrix_band, lambda + opts.separatrix_band};
      return out;
    }
    if (!(limit.z() > 0.0)) {
      throw NumericFailure("boundary limit below the axis for lambda " + std::to_string(lambda));
    }
    out.tag = lambda < kSqrt2 ? LambdaTag::IncompleteLow : LambdaTag::IncompleteHigh;
    return out;
  }
  throw NumericFailure("backward run from lambda " + std::to_string(lambda) +
                       " reached the time cap without an event");
}

bool crosses_axis(double lambda, const IntegratorConfig& cfg) {
  IntegratorConfig run = cfg;
  run.corner_band = 0.0;
  return std::holds_alternative<ThetaCrossing>(backward_run(lambda, run).termination());
}

Lambda0Estimate find_lambda0(const IntegratorConfig& cfg, double tol) {
  if (!(tol > 0.0)) throw InvalidInput("lambda0 tolerance must be positive");
  // sqrt2 is the sphere, which ends at the pole: below the threshold.
  double lo = kSqrt2;
  double hi = 2.0 * kSqrt2;
  while (!crosses_axis(hi, cfg)) {
    lo = hi;
    hi *= 2.0;
    if (hi > kMaxBracketLambda) {
      throw BracketFailure("no lambda up to 2^16 crosses theta = 0; check the integrator settings");
    }
  }
  Lambda0Estimate est;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (crosses_axis(mid, cfg)) {
      hi = mid;
    } else {
      lo = mid;
    }
    ++est.iterations;
  }
  est.bracket = {lo, hi};
  est.value = 0.5 * (lo + hi);
  return est;
}

std::vector<std::pair<double, double>> decimate_phase(const Trajectory& traj, std::size_t max_points) {
  std::vector<std::pair<double, double>> out;
  const std::size_t n = std::max<std::size_t>(2, max_points);
  out.reserve(n);
  const double a = traj.t_min();
  const double b = traj.t_max();
  for (std::size_t i = 0; i < n; ++i) {
    const double t = i + 1 == n ? b : a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
    const auto s = traj.dense_eval(t);
    out.emplace_back(s.theta, s.z());
  }
  return out;
}

PortraitReport portrait(const std::vector<double>& lambdas, const IntegratorConfig& cfg,
                        const PortraitOptions& opts) {
  PortraitReport report;
  report.lambda0 = find_lambda0(cfg, opts.lambda0_tol);

  std::vector<double> sorted = lambdas;
  std::sort(sorted.begin(), sorted.end());

  auto work = [&](double lambda) {
    PortraitEntry entry;
    entry.lambda = lambda;
    try {
      LambdaClass cls = classify_lambda(lambda, cfg, opts.classify);
      entry.polyline = decimate_phase(symmetric_through(cls.backward), opts.max_polyline_points);
      entry.cls = std::move(cls);
    } catch (const Error& e) {
      entry.error = e.what();
    }
    return entry;
  };

  std::vector<std::future<PortraitEntry>> jobs;
  jobs.reserve(sorted.size());
  for (double lambda : sorted) jobs.push_back(std::async(std::launch::async, work, lambda));
  for (auto& job : jobs) report.entries.push_back(job.get());
  return report;
}

}  // namespace unitsurf
