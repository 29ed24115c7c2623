#pragma once

// Command-line front end. Exit codes: 0 success, 2 invalid input,
// 3 numeric failure, 4 verification failure.

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "unitsurf/integrator.hpp"
#include "unitsurf/profile.hpp"

namespace unitsurf::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalidInput = 2;
inline constexpr int kExitNumericFailure = 3;
inline constexpr int kExitVerificationFailure = 4;

struct RunConfig {
  std::string command;
  IntegratorConfig integrator;
  std::vector<double> lambdas;
  std::optional<double> lambda;
  double tol = 1e-10;
  double span = 0.0;  // 0: default span
  std::string builtin;
  std::size_t n_angular = 64;
  std::size_t samples = 400;
  int copies = 1;
  std::vector<double> segments;
  std::string out;
  std::string in;
  std::string report;
  std::string format = "obj";
  double h = 1e-3;
  double max_residual = 1e-4;
  double max_speed = 0.0;  // 0: h^2
};

// "a,b,c" or the inclusive range "lo:hi:n". Throws InvalidInput.
std::vector<double> parse_lambda_spec(const std::string& spec);

// Parses flags and the optional key=value file given by --config (flags
// win). Throws InvalidInput on bad usage; returns nullopt after printing
// help.
std::optional<RunConfig> parse_run_config(int argc, const char* const* argv, std::ostream& out);

// Executes a parsed configuration; messages go to out/err.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// parse_run_config + run with the exit-code mapping.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// Header t,x,z,theta, 17 significant digits.
void write_profile_csv(const ProfileCurve& profile, const std::filesystem::path& path);
ProfileCurve read_profile_csv(const std::filesystem::path& path);

}  // namespace unitsurf::cli
