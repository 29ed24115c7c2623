// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdarg>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "property_suite.hpp"
#include "reference_values.hpp"
#include "unitsurf/extension.hpp"
#include "unitsurf/profile.hpp"
#include "unitsurf/shooting.hpp"

#if defined(UNITSURF_WITH_CLI)
#include "unitsurf_tools/cli.hpp"
#endif

namespace {

using namespace unitsurf;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* format, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* format, ...) {
  char buf[1024];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof buf, format, args);
  va_end(args);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

const IntegratorConfig kCfg{};

double lambda0() {
  static const double value = find_lambda0(kCfg, 1e-10).value;
  return value;
}

Outcome sphere_oracle() {
  const auto start = std::chrono::steady_clock::now();
  const PhasePoint top = PhasePoint::at(kPi, kSqrt2);
  const Trajectory back = integrate(top, Direction::Backward, kCfg);
  const Trajectory fwd = integrate(top, Direction::Forward, kCfg);
  const double half = kPi / kSqrt2;
  const double band = 1e-3;
  double worst = 0.0;
  std::size_t checked = 0;
  for (const Trajectory* traj : {&back, &fwd}) {
    const double a = std::max(traj->t_min(), -half + band);
    const double b = std::min(traj->t_max(), half - band);
    for (int i = 0; i <= 20000; ++i) {
      const double t = a + (b - a) * i / 20000.0;
      const auto s = traj->dense_eval(t);
      worst = std::max({worst, std::abs(s.theta - (kPi + t / kSqrt2)), std::abs(s.z() - kSqrt2 * std::cos(t / kSqrt2))});
      ++checked;
    }
  }
  const double covered = (std::min(fwd.t_max(), half - band) - std::max(back.t_min(), -half + band)) / (2.0 * half);
  const double elapsed = seconds_since(start);
  return {worst <= 1e-8 && covered >= 0.99 && elapsed < 1.0,
          fmt("max |error| %.2e on %.2f%% of the span (<= 1e-8, >= 99%%), %zu points, %.3f s (< 1 s)", worst,
              100.0 * covered, checked, elapsed)};
}

Outcome lambda0_agreement() {
  const double bisect = lambda0();
  const double launch = launch_separatrix(kCfg).back().z();
  IntegratorConfig tight = kCfg;
  tight.rel_tol /= 10.0;
  tight.abs_tol /= 10.0;
  const double bisect_tight = find_lambda0(tight, 1e-10).value;
  const double launch_tight = launch_separatrix(tight).back().z();
  const double diff = std::abs(bisect - launch);
  const double drift = std::max(std::abs(bisect - bisect_tight), std::abs(launch - launch_tight));
  const double vs_oracle = std::abs(bisect - unitsurf::testing::kLambda0Reference);
  return {diff <= 1e-6 && drift <= 1e-6 && bisect > kSqrt2 && vs_oracle <= 1e-6,
          fmt("lambda0 = %.12f, |bisection - launch| %.2e (<= 1e-6), drift under 10x tighter tolerances %.2e "
              "(<= 1e-6), |vs RK4 oracle| %.2e, > sqrt2",
              bisect, diff, drift, vs_oracle)};
}

Outcome unit_norm_reconstruction() {
  const auto sphere = verify_profile(sphere_profile(1000), 1e-3);
  const auto cylinder = verify_profile(cylinder_profile(5.0, 1000), 1e-3);
  const auto periodic = verify_profile(lambda_profile(lambda0() + 1.0, 0.0, kCfg), 1e-3);
  return {sphere.max_curvature_residual <= 1e-8 && cylinder.max_curvature_residual <= 1e-8 &&
              periodic.max_curvature_residual <= 1e-4,
          fmt("residual sphere %.2e, cylinder %.2e (<= 1e-8), periodic two periods %.2e (<= 1e-4) at h = 1e-3",
              sphere.max_curvature_residual, cylinder.max_curvature_residual, periodic.max_curvature_residual)};
}

struct CornerDiagnostics {
  double r4 = 0.0;
  double third = 0.0;
};

CornerDiagnostics corner_diagnostics(const Trajectory& sep, double theta) {
  const double t = *sep.time_at_theta(theta);
  const double d = 1e-3 * std::cbrt(theta / 1e-2);
  auto th = [&](double u) { return sep.dense_eval(u).theta; };
  CornerDiagnostics out;
  out.r4 = asymptotics(sep.dense_eval(t).point()).r4;
  out.third = (th(t + 2 * d) - 2 * th(t + d) + 2 * th(t - d) - th(t - 2 * d)) / (2 * d * d * d);
  return out;
}

Outcome separatrix_asymptotics() {
  const Trajectory sep = launch_separatrix(kCfg);
  const auto at = corner_diagnostics(sep, 1e-2);
  const double r4_dev = at.r4 / kSeparatrixR4Limit - 1.0;
  const double third_dev = at.third / kSeparatrixThirdDerivativeLimit - 1.0;
  std::string trend;
  for (double theta : {1e-3, 1e-4}) {
    const auto c = corner_diagnostics(sep, theta);
    trend += fmt("; theta=%g: %+.2f%%, %+.2f%%", theta, 100.0 * (c.r4 / kSeparatrixR4Limit - 1.0),
                 100.0 * (c.third / kSeparatrixThirdDerivativeLimit - 1.0));
  }
  return {std::abs(r4_dev) <= 0.01 && std::abs(third_dev) <= 0.01,
          fmt("at theta = 1e-2: r4 %.6f (%+.2f%% vs 4sqrt2/3), theta''' %.6f (%+.2f%% vs 1/3), bound 1%%", at.r4,
              100.0 * r4_dev, at.third, 100.0 * third_dev) +
              " [trend" + trend + "]"};
}

Outcome periodicity() {
  const auto info = find_period(lambda0() + 1.0, kCfg);
  return {info.z_residual <= 1e-8 && info.theta_residual <= 1e-8 && info.x_shift_residual <= 1e-8,
          fmt("t0 = %.10f, max |z(t+2t0)-z(t)| %.2e, |theta shift - 2pi| %.2e, x shift spread %.2e (all <= 1e-8)",
              info.t0, info.z_residual, info.theta_residual, info.x_shift_residual)};
}

Outcome self_intersection() {
  const auto cls = classify_lambda(lambda0() + 1.0, kCfg);
  const double t0 = cls.half_span;
  const double t1 = -*cls.backward.time_at_theta(kPi / 2);
  const ProfileCurve p = build_profile(symmetric_through(cls.backward));
  const double x_t0 = p.position(-t0).first;
  const double x_t1 = p.position(-t1).first;
  const auto hit = find_self_intersection(p, t0, t1);
  const double xerr = std::max(std::abs(hit.x), std::abs(hit.x_minus));
  const double zerr = std::abs(hit.z - hit.z_minus);
  return {x_t0 < 0.0 && x_t1 > 0.0 && xerr <= 1e-8 && zerr <= 1e-8 && hit.t2 > t1 && hit.t2 < t0,
          fmt("x(-t0) = %.4f < 0 < x(-t1) = %.4f, t2 = %.10f in (%.4f, %.4f), |x(+-t2)| %.2e, |z(t2)-z(-t2)| %.2e "
              "(<= 1e-8)",
              x_t0, x_t1, hit.t2, t1, t0, xerr, zerr)};
}

Outcome classification_sweep() {
  const double l0 = lambda0();
  const std::vector<double> lambdas{1.2, kSqrt2, 0.5 * (kSqrt2 + l0), l0 + 0.5, 10.0};
  const std::vector<LambdaTag> expected{LambdaTag::IncompleteLow, LambdaTag::Sphere, LambdaTag::IncompleteHigh,
                                        LambdaTag::Periodic, LambdaTag::Periodic};
  bool pass = true;
  std::string detail;
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    const auto c = classify_lambda(lambdas[i], kCfg);
    pass = pass && c.tag == expected[i];
    detail += fmt("%s%.4f->%s", i ? ", " : "", lambdas[i], std::string(to_string(c.tag)).c_str());
    if (c.tag == LambdaTag::IncompleteLow || c.tag == LambdaTag::IncompleteHigh) {
      const double z0 = c.limit_point->z();
      pass = pass && z0 > 0.0 && z0 < 1.0 && std::isfinite(c.half_span);
      detail += fmt(" (z0 %.4f, b %.4f)", z0, c.half_span);
    }
  }
  return {pass, detail};
}

Outcome lemma_properties() {
  const auto r = unitsurf::testing::run_property_suite();
  const bool pass = r.samples >= 100000 && r.constraint_residual <= 1e-8 && r.lemma2_violations == 0 &&
                    r.monotonicity_violations == 0 && r.symmetry_z <= 1e-8 && r.symmetry_theta <= 1e-8 &&
                    r.barrier_failures == 0 && r.reach_failures == 0;
  return {pass, fmt("%zu samples: constraint %.2e (<= 1e-8; interpolant slope %.2e), slope bound violations %zu, "
                    "non-increasing theta %zu, symmetry z %.2e theta %.2e (<= 1e-8), %zu forward runs with %zu "
                    "barrier and %zu reach failures",
                    r.samples, r.constraint_residual, r.fd_constraint_residual, r.lemma2_violations,
                    r.monotonicity_violations, r.symmetry_z, r.symmetry_theta, r.forward_runs, r.barrier_failures,
                    r.reach_failures)};
}

Outcome extension_regularity() {
  const Trajectory sep = separatrix_trajectory(kCfg);
  const auto seg = extend_separatrix(ExtensionSpec{2, {1.0}}, sep).regularity;
  const auto direct = extend_separatrix(ExtensionSpec{2, {0.0}}, sep).regularity;
  bool pass = seg.junctions.size() == 2 && direct.junctions.size() == 1;
  double worst_rel = 0.0;
  for (const auto& j : seg.junctions) {
    worst_rel = std::max(worst_rel, std::abs(j.jumps[3] * 3.0 - 1.0));
    pass = pass && j.order == Continuity::C3;
  }
  pass = pass && worst_rel <= 0.1 && direct.junctions[0].order == Continuity::C4Plus;
  return {pass, fmt("segment [1]: %s/%s, theta''' jump %.6f (%.3f%% from 1/3, <= 10%%); segment [0]: %s, "
                    "theta''' jump %.2e < %.2e",
                    std::string(to_string(seg.junctions[0].order)).c_str(),
                    std::string(to_string(seg.junctions[1].order)).c_str(), seg.junctions[0].jumps[3],
                    100.0 * worst_rel, std::string(to_string(direct.junctions[0].order)).c_str(),
                    direct.junctions[0].jumps[3], direct.junctions[0].thresholds[3])};
}

Outcome determinism() {
#if defined(UNITSURF_WITH_CLI)
  namespace fs = std::filesystem;
  const fs::path dir = fs::path(UNITSURF_TEST_TMPDIR);
  fs::create_directories(dir);
  auto slurp = [](const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>());
  };
  struct Job {
    std::vector<std::string> args;
    std::vector<std::string> files;
  };
  const std::string d = dir.string() + "/";
  std::ofstream(d + "run.conf") << "rel-tol=1e-12\nabs-tol=1e-14\n";
  const std::vector<Job> jobs{
      {{"portrait", "--lambdas", "1.2,1.4142135623730951,2.5,4.2", "--out", d + "p.json"},
       {"p.json", "p_0.csv", "p_1.csv", "p_2.csv", "p_3.csv"}},
      {{"find-lambda0", "--out", d + "l0.json"}, {"l0.json"}},
      {{"classify", "--lambda", "3.0", "--out", d + "c.json"}, {"c.json"}},
      {{"curve", "--lambda", "4.2", "--out", d + "curve.csv", "--report", d + "curve.json"},
       {"curve.csv", "curve.json"}},
      {{"curve", "--builtin", "sphere", "--out", d + "sphere.csv", "--report", d + "sphere.json"},
       {"sphere.csv", "sphere.json"}},
      {{"mesh", "--lambda", "1.2", "--n-angular", "24", "--out", d + "m.obj"}, {"m.obj"}},
      {{"mesh", "--builtin", "sphere", "--format", "csv", "--out", d + "m.csv"}, {"m.csv"}},
      {{"extend", "--copies", "3", "--segments", "1,0", "--out", d + "e.csv"}, {"e.csv", "e_regularity.json"}},
      {{"verify", "--in", d + "sphere.csv", "--out", d + "v.json"}, {"v.json"}},
  };
  std::size_t compared = 0;
  std::size_t bytes = 0;
  for (const auto& job : jobs) {
    std::vector<std::string> first;
    for (int round = 0; round < 2; ++round) {
      std::vector<std::string> args{"unitsurf"};
      args.insert(args.end(), job.args.begin(), job.args.end());
      args.insert(args.end(), {"--config", d + "run.conf"});
      std::vector<const char*> argv;
      for (const auto& a : args) argv.push_back(a.c_str());
      std::ostringstream out, err;
      const int code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
      if (code != 0) return {false, "command " + job.args[0] + " exited " + std::to_string(code) + ": " + err.str()};
      for (std::size_t k = 0; k < job.files.size(); ++k) {
        const std::string content = slurp(d + job.files[k]);
        if (round == 0) {
          first.push_back(content);
        } else if (content != first[k]) {
          return {false, "file " + job.files[k] + " differs between identical runs"};
        } else {
          ++compared;
          bytes += content.size();
        }
      }
    }
  }
  return {true, fmt("%zu files from %zu commands byte-identical across reruns (%zu bytes)", compared, jobs.size(),
                    bytes)};
#else
  return {false, "CLI not built"};
#endif
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"sphere oracle", sphere_oracle},
      {"lambda0 dual-method agreement", lambda0_agreement},
      {"|A| = 1 reconstruction", unit_norm_reconstruction},
      {"separatrix asymptotics", separatrix_asymptotics},
      {"periodicity", periodicity},
      {"self-intersection witness", self_intersection},
      {"classification sweep", classification_sweep},
      {"lemma property suite", lemma_properties},
      {"extension regularity", extension_regularity},
      {"determinism", determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("[%s] %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - static_cast<std::size_t>(failures), criteria.size());
  return failures == 0 ? 0 : 1;
}
