#include "unitsurf_tools/cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json_text.hpp"
#include "unitsurf/errors.hpp"
#include "unitsurf/extension.hpp"
#include "unitsurf/number_format.hpp"
#include "unitsurf/shooting.hpp"
#include "unitsurf/surface.hpp"

namespace unitsurf::cli {

namespace {

namespace fs = std::filesystem;

double parse_double(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\r')) text.remove_suffix(1);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw InvalidInput("not a number: '" + std::string(text) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

Json interval_json(const Interval& i) { return Json::array({i.lo, i.hi}); }

Json class_json(const LambdaClass& c) {
  Json j;
  j["lambda"] = c.lambda;
  j["class"] = std::string(to_string(c.tag));
  j["half_span"] = c.half_span;
  Json w = Json::object();
  if (c.limit_point) w["limit_point"] = Json::array({c.limit_point->theta, c.limit_point->z()});
  if (c.crossing_height) w["crossing_height"] = *c.crossing_height;
  if (c.lambda0_bracket) w["lambda0_bracket"] = interval_json(*c.lambda0_bracket);
  j["witness"] = w;
  return j;
}

void emit_json(const Json& j, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << to_text(j);
  } else {
    write_json(j, path);
  }
}

double require_lambda(const RunConfig& cfg) {
  if (!cfg.lambda) throw InvalidInput("--lambda is required");
  return *cfg.lambda;
}

std::string out_or(const RunConfig& cfg, const char* fallback) { return cfg.out.empty() ? fallback : cfg.out; }

fs::path sibling(const fs::path& base, const std::string& suffix) {
  return base.parent_path() / (base.stem().string() + suffix);
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw SinkError("cannot open " + path.string() + " for writing");
  f.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!f) throw SinkError("write to " + path.string() + " failed");
}

int cmd_portrait(const RunConfig& cfg, std::ostream& out) {
  if (cfg.lambdas.empty()) throw InvalidInput("--lambdas is required");
  for (double l : cfg.lambdas) {
    if (!(l > 1.0)) throw InvalidLambda("all lambdas must exceed 1");
  }
  PortraitOptions opts;
  opts.lambda0_tol = cfg.tol;
  const PortraitReport rep = portrait(cfg.lambdas, cfg.integrator, opts);

  const fs::path path = out_or(cfg, "portrait.json");
  Json j;
  j["lambda0"] = {{"value", rep.lambda0.value}, {"bracket", interval_json(rep.lambda0.bracket)}};
  Json entries = Json::array();
  bool failed = false;
  for (std::size_t i = 0; i < rep.entries.size(); ++i) {
    const auto& e = rep.entries[i];
    Json je;
    je["lambda"] = e.lambda;
    if (e.cls) {
      je["class"] = std::string(to_string(e.cls->tag));
      const Json c = class_json(*e.cls);
      je["half_span"] = c["half_span"];
      je["witness"] = c["witness"];
    } else {
      je["class"] = nullptr;
      je["error"] = e.error;
      failed = true;
    }
    Json poly = Json::array();
    std::string csv = "theta,z\n";
    for (const auto& [theta, z] : e.polyline) {
      poly.push_back(Json::array({theta, z}));
      append_double(csv, theta);
      csv += ',';
      append_double(csv, z);
      csv += '\n';
    }
    je["polyline"] = std::move(poly);
    entries.push_back(std::move(je));
    write_text(sibling(path, "_" + std::to_string(i) + ".csv"), csv);
  }
  j["entries"] = std::move(entries);
  write_json(j, path);
  out << "wrote " << path.string() << " (" << rep.entries.size() << " entries, lambda0 "
      << format_double(rep.lambda0.value) << ")\n";
  return failed ? kExitNumericFailure : kExitOk;
}

int cmd_find_lambda0(const RunConfig& cfg, std::ostream& out) {
  const Lambda0Estimate est = find_lambda0(cfg.integrator, cfg.tol);
  const Trajectory launch = launch_separatrix(cfg.integrator);
  const double launched = launch.back().z();
  Json j;
  j["bisection"] = {{"value", est.value},
                    {"bracket", interval_json(est.bracket)},
                    {"iterations", est.iterations},
                    {"tol", cfg.tol}};
  j["launch"] = {{"value", launched},
                 {"seed_arc_length", kDefaultSeedArcLength},
                 {"half_span", -launch.t_min()}};
  j["difference"] = std::abs(est.value - launched);
  emit_json(j, cfg.out, out);
  return kExitOk;
}

int cmd_classify(const RunConfig& cfg, std::ostream& out) {
  ClassifyOptions opts;
  emit_json(class_json(classify_lambda(require_lambda(cfg), cfg.integrator, opts)), cfg.out, out);
  return kExitOk;
}

ProfileCurve builtin_profile(const RunConfig& cfg) {
  if (cfg.builtin == "sphere") return sphere_profile(cfg.samples);
  if (cfg.builtin == "cylinder") return cylinder_profile(cfg.span > 0.0 ? cfg.span : 4.0, cfg.samples);
  throw InvalidInput("--builtin must be sphere or cylinder");
}

int cmd_curve(const RunConfig& cfg, std::ostream& out) {
  if (!cfg.builtin.empty()) {
    const ProfileCurve p = builtin_profile(cfg);
    const fs::path path = out_or(cfg, "curve.csv");
    write_profile_csv(p, path);
    Json j;
    j["builtin"] = cfg.builtin;
    j["span"] = Json::array({p.t_min(), p.t_max()});
    j["samples"] = p.samples.size();
    j["csv"] = path.string();
    emit_json(j, cfg.report, out);
    return kExitOk;
  }
  const double lambda = require_lambda(cfg);
  const LambdaClass cls = classify_lambda(lambda, cfg.integrator);
  const ProfileCurve p = lambda_profile(lambda, cfg.span, cfg.integrator);
  const fs::path path = out_or(cfg, "curve.csv");
  write_profile_csv(p, path);
  Json j;
  j["lambda"] = lambda;
  j["class"] = std::string(to_string(cls.tag));
  j["span"] = Json::array({p.t_min(), p.t_max()});
  j["finite"] = cls.tag != LambdaTag::Periodic;
  if (cls.limit_point) j["terminal"] = {{"theta", cls.limit_point->theta}, {"z", cls.limit_point->z()}};
  j["samples"] = p.samples.size();
  j["csv"] = path.string();
  emit_json(j, cfg.report, out);
  return kExitOk;
}

int cmd_mesh(const RunConfig& cfg, std::ostream& out) {
  const ProfileCurve p = cfg.builtin.empty() ? lambda_profile(require_lambda(cfg), cfg.span, cfg.integrator)
                                             : builtin_profile(cfg);
  const Mesh mesh = revolve(p, cfg.n_angular);
  if (cfg.format == "obj") {
    const fs::path path = out_or(cfg, "mesh.obj");
    export_obj(mesh, path);
    out << "wrote " << path.string() << " (" << mesh.vertices.size() << " vertices, " << mesh.faces.size()
        << " faces)\n";
  } else if (cfg.format == "csv") {
    const fs::path path = out_or(cfg, "mesh.csv");
    export_mesh_csv(mesh, path);
    out << "wrote " << path.string() << " (" << mesh.vertices.size() << " vertices)\n";
  } else {
    throw InvalidInput("--format must be obj or csv");
  }
  return kExitOk;
}

int cmd_extend(const RunConfig& cfg, std::ostream& out) {
  const ExtensionSpec spec{cfg.copies, cfg.segments};
  spec.validate();
  const Extension ext = extend_separatrix(spec, cfg.integrator, kDefaultProfileSpacing, cfg.h);
  const fs::path path = out_or(cfg, "extension.csv");
  write_profile_csv(ext.profile, path);
  Json j;
  j["copies"] = spec.copies;
  j["segment_lengths"] = spec.segment_lengths;
  j["h"] = ext.regularity.h;
  Json junctions = Json::array();
  for (const auto& r : ext.regularity.junctions) {
    Json jj;
    jj["t"] = r.t;
    jj["left"] = r.left == PieceKind::Copy ? "copy" : "segment";
    jj["right"] = r.right == PieceKind::Copy ? "copy" : "segment";
    jj["order"] = std::string(to_string(r.order));
    jj["theta_jumps"] = Json::array({r.jumps[0], r.jumps[1], r.jumps[2], r.jumps[3]});
    jj["thresholds"] = Json::array({r.thresholds[0], r.thresholds[1], r.thresholds[2], r.thresholds[3]});
    jj["third_derivative_jump"] = r.jumps[3];
    jj["position_jump"] = r.position_jump;
    junctions.push_back(std::move(jj));
  }
  j["junctions"] = std::move(junctions);
  const fs::path report = cfg.report.empty() ? sibling(path, "_regularity.json") : fs::path(cfg.report);
  write_json(j, report);
  out << "wrote " << path.string() << " and " << report.string() << "\n";
  return kExitOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  if (cfg.in.empty()) throw InvalidInput("--in is required");
  const ProfileCurve p = read_profile_csv(cfg.in);
  const VerificationReport r = verify_profile(p, cfg.h);
  const double max_speed = cfg.max_speed > 0.0 ? cfg.max_speed : cfg.h * cfg.h;
  const bool pass = r.max_curvature_residual <= cfg.max_residual && r.max_speed_violation <= max_speed &&
                    r.monotonicity_violations == 0;
  Json j;
  j["input"] = cfg.in;
  j["h"] = r.h;
  j["resampled"] = r.resampled;
  j["max_curvature_residual"] = r.max_curvature_residual;
  j["max_speed_violation"] = r.max_speed_violation;
  j["monotonicity_violations"] = r.monotonicity_violations;
  j["thresholds"] = {{"max_residual", cfg.max_residual}, {"max_speed", max_speed}};
  j["result"] = pass ? "PASS" : "FAIL";
  emit_json(j, cfg.out, out);
  return pass ? kExitOk : kExitVerificationFailure;
}

}  // namespace

std::vector<double> parse_lambda_spec(const std::string& spec) {
  if (spec.empty()) throw InvalidInput("empty lambda spec");
  std::vector<double> out;
  if (spec.find(':') != std::string::npos) {
    const auto parts = split(spec, ':');
    if (parts.size() != 3) throw InvalidInput("range spec must be lo:hi:n");
    const double lo = parse_double(parts[0]);
    const double hi = parse_double(parts[1]);
    const double n = parse_double(parts[2]);
    if (!(n >= 1.0) || n != std::floor(n) || n > 1e6) throw InvalidInput("range count must be a positive integer");
    if (!(hi >= lo)) throw InvalidInput("range must have lo <= hi");
    const auto count = static_cast<std::size_t>(n);
    for (std::size_t i = 0; i < count; ++i) {
      out.push_back(count == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1));
    }
  } else {
    for (auto part : split(spec, ',')) out.push_back(parse_double(part));
  }
  for (double v : out) {
    if (!std::isfinite(v)) throw InvalidInput("lambda values must be finite");
  }
  return out;
}

std::optional<RunConfig> parse_run_config(int argc, const char* const* argv, std::ostream& out) {
  RunConfig cfg;
  std::string lambdas;
  double lambda = 0.0;

  CLI::App app{"Rotational surfaces with |A| = 1: phase portraits, profiles, meshes"};
  app.set_config("--config", "", "Plain key=value file; flags override its values");
  app.require_subcommand(1);
  app.fallthrough();

  app.add_option("--lambdas", lambdas, "List a,b,c or range lo:hi:n");
  auto* lambda_opt = app.add_option("--lambda", lambda, "Height at theta = pi");
  app.add_option("--tol", cfg.tol, "Bisection tolerance for lambda0");
  app.add_option("--rel-tol", cfg.integrator.rel_tol, "Integrator relative tolerance");
  app.add_option("--abs-tol", cfg.integrator.abs_tol, "Integrator absolute tolerance");
  app.add_option("--boundary-eps", cfg.integrator.boundary_eps, "Boundary contact threshold");
  app.add_option("--max-step", cfg.integrator.max_step, "Integrator step cap");
  app.add_option("--max-time", cfg.integrator.max_time, "Arc-length cap per run");
  app.add_option("--n-angular", cfg.n_angular, "Angular samples of the mesh");
  app.add_option("--samples", cfg.samples, "Samples of the builtin profiles");
  app.add_option("--span", cfg.span, "Half arc length of the curve (0: default)");
  app.add_option("--builtin", cfg.builtin, "sphere or cylinder");
  app.add_option("--copies", cfg.copies, "Separatrix copies");
  app.add_option("--segments", cfg.segments, "Segment lengths between copies")->delimiter(',');
  app.add_option("--out", cfg.out, "Output path");
  app.add_option("--in", cfg.in, "Input profile CSV");
  app.add_option("--report", cfg.report, "Secondary report path");
  app.add_option("--format", cfg.format, "Mesh format: obj or csv");
  app.add_option("--step", cfg.h, "Resample or stencil step");
  app.add_option("--max-residual", cfg.max_residual, "Verification threshold on |k1^2 + k2^2 - 1|");
  app.add_option("--max-speed", cfg.max_speed, "Verification threshold on |speed^2 - 1| (0: h^2)");

  for (const char* name : {"portrait", "find-lambda0", "classify", "curve", "mesh", "extend", "verify"}) {
    app.add_subcommand(name, "")->callback([&cfg, name] { cfg.command = name; });
  }
  app.get_subcommand("portrait")->description("Classify a lambda family (JSON + CSV polylines)");
  app.get_subcommand("find-lambda0")->description("Separatrix height by bisection and series launch");
  app.get_subcommand("classify")->description("Classify one lambda");
  app.get_subcommand("curve")->description("Profile CSV for one lambda");
  app.get_subcommand("mesh")->description("Surface of revolution mesh");
  app.get_subcommand("extend")->description("Glued separatrix copies and segments");
  app.get_subcommand("verify")->description("Check |A| = 1 on a profile CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return std::nullopt;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw InvalidInput(e.what());
  }
  if (lambda_opt->count() > 0) cfg.lambda = lambda;
  if (!lambdas.empty()) cfg.lambdas = parse_lambda_spec(lambdas);
  cfg.integrator.validate();
  if (!(cfg.tol > 0.0)) throw InvalidInput("--tol must be positive");
  if (!(cfg.h > 0.0)) throw InvalidInput("--step must be positive");
  if (!(cfg.max_residual > 0.0)) throw InvalidInput("--max-residual must be positive");
  if (cfg.max_speed < 0.0) throw InvalidInput("--max-speed must be non-negative");
  return cfg;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& /*err*/) {
  if (cfg.command == "portrait") return cmd_portrait(cfg, out);
  if (cfg.command == "find-lambda0") return cmd_find_lambda0(cfg, out);
  if (cfg.command == "classify") return cmd_classify(cfg, out);
  if (cfg.command == "curve") return cmd_curve(cfg, out);
  if (cfg.command == "mesh") return cmd_mesh(cfg, out);
  if (cfg.command == "extend") return cmd_extend(cfg, out);
  if (cfg.command == "verify") return cmd_verify(cfg, out);
  throw InvalidInput("unknown command '" + cfg.command + "'");
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  try {
    const auto cfg = parse_run_config(argc, argv, out);
    if (!cfg) return kExitOk;
    return run(*cfg, out, err);
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const SinkError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const Error& e) {
    err << "numeric failure: " << e.what() << "\n";
    return kExitNumericFailure;
  } catch (const std::exception& e) {
    err << "failure: " << e.what() << "\n";
    return kExitNumericFailure;
  }
}

void write_profile_csv(const ProfileCurve& profile, const std::filesystem::path& path) {
  std::string text = "t,x,z,theta\n";
  for (const auto& s : profile.samples) {
    append_double(text, s.t);
    text += ',';
    append_double(text, s.x);
    text += ',';
    append_double(text, s.z);
    text += ',';
    append_double(text, s.theta);
    text += '\n';
  }
  write_text(path, text);
}

ProfileCurve read_profile_csv(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw InvalidInput("cannot read " + path.string());
  std::string line;
  if (!std::getline(f, line)) throw InvalidInput(path.string() + " is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "t,x,z,theta") throw InvalidInput(path.string() + ": expected header t,x,z,theta");
  ProfileCurve p;
  std::size_t row = 1;
  while (std::getline(f, line)) {
    ++row;
    if (line.empty() || line == "\r") continue;
    const auto parts = split(line, ',');
    if (parts.size() != 4) throw InvalidInput(path.string() + ": row " + std::to_string(row) + " needs 4 fields");
    ProfileSample s{parse_double(parts[0]), parse_double(parts[1]), parse_double(parts[2]), parse_double(parts[3])};
    if (!p.samples.empty() && !(s.t > p.samples.back().t)) {
      throw InvalidInput(path.string() + ": t must increase (row " + std::to_string(row) + ")");
    }
    p.samples.push_back(s);
  }
  return p;
}

}  // namespace unitsurf::cli
