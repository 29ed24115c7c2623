#include "unitsurf_tools/cli.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "unitsurf/errors.hpp"
#include "unitsurf/phase_field.hpp"

namespace unitsurf::cli {
namespace {

namespace fs = std::filesystem;

fs::path tmp(const std::string& name) {
  const fs::path dir = fs::path(UNITSURF_TEST_TMPDIR);
  fs::create_directories(dir);
  return dir / name;
}

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "unitsurf");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

nlohmann::json read_json(const fs::path& p) { return nlohmann::json::parse(slurp(p)); }

TEST(LambdaSpec, ListAndRange) {
  EXPECT_EQ(parse_lambda_spec("1.2,2.5"), (std::vector<double>{1.2, 2.5}));
  EXPECT_EQ(parse_lambda_spec("2"), (std::vector<double>{2.0}));
  EXPECT_EQ(parse_lambda_spec("1:3:3"), (std::vector<double>{1.0, 2.0, 3.0}));
  EXPECT_THROW(parse_lambda_spec(""), InvalidInput);
  EXPECT_THROW(parse_lambda_spec("1.2,abc"), InvalidInput);
  EXPECT_THROW(parse_lambda_spec("1:2"), InvalidInput);
  EXPECT_THROW(parse_lambda_spec("1:2:0"), InvalidInput);
  EXPECT_THROW(parse_lambda_spec("3:2:4"), InvalidInput);
}

TEST(Cli, PortraitWritesJsonAndPolylines) {
  const fs::path out = tmp("portrait.json");
  const auto r = invoke({"portrait", "--lambdas", "1.2,2.5", "--out", out.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = read_json(out);
  ASSERT_EQ(j["entries"].size(), 2u);
  EXPECT_EQ(j["entries"][0]["class"], "IncompleteLow");
  EXPECT_EQ(j["entries"][1]["class"], "IncompleteHigh");
  EXPECT_GT(j["lambda0"]["value"].get<double>(), kSqrt2);
  EXPECT_EQ(j["lambda0"]["bracket"].size(), 2u);
  EXPECT_TRUE(j["entries"][0]["polyline"][0].is_array());
  EXPECT_TRUE(fs::exists(tmp("portrait_0.csv")));
  EXPECT_EQ(slurp(tmp("portrait_1.csv")).rfind("theta,z\n", 0), 0u);

  const std::string first = slurp(out);
  ASSERT_EQ(invoke({"portrait", "--lambdas", "1.2,2.5", "--out", out.string()}).code, 0);
  EXPECT_EQ(slurp(out), first);
}

TEST(Cli, PortraitRejectsBadSpec) {
  EXPECT_EQ(invoke({"portrait", "--lambdas", "0.5,2", "--out", tmp("bad.json").string()}).code, kExitInvalidInput);
  EXPECT_EQ(invoke({"portrait", "--lambdas", "x", "--out", tmp("bad.json").string()}).code, kExitInvalidInput);
  EXPECT_EQ(invoke({"portrait"}).code, kExitInvalidInput);
}

TEST(Cli, FindLambda0ReportsBothEstimates) {
  const fs::path out = tmp("lambda0.json");
  ASSERT_EQ(invoke({"find-lambda0", "--out", out.string()}).code, 0);
  const auto j = read_json(out);
  EXPECT_LE(j["difference"].get<double>(), 1e-6);
  EXPECT_GT(j["bisection"]["value"].get<double>(), kSqrt2);
  EXPECT_NEAR(j["launch"]["value"].get<double>(), j["bisection"]["value"].get<double>(), 1e-6);

  ASSERT_EQ(invoke({"find-lambda0", "--tol", "1e-6", "--out", out.string()}).code, 0);
  const auto coarse = read_json(out);
  const auto width = [](const nlohmann::json& b) { return b[1].get<double>() - b[0].get<double>(); };
  EXPECT_LT(width(j["bisection"]["bracket"]), width(coarse["bisection"]["bracket"]));
}

TEST(Cli, ClassifyAndInvalidLambda) {
  const auto r = invoke({"classify", "--lambda", "4"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(nlohmann::json::parse(r.out)["class"], "Periodic");
  EXPECT_EQ(invoke({"classify", "--lambda", "0.5"}).code, kExitInvalidInput);
  EXPECT_EQ(invoke({"classify"}).code, kExitInvalidInput);
  EXPECT_EQ(invoke({"classify", "--lambda", "2", "--rel-tol", "-1"}).code, kExitInvalidInput);
  EXPECT_EQ(invoke({"bogus"}).code, kExitInvalidInput);
}

TEST(Cli, NumericFailureExitCode) {
  EXPECT_EQ(invoke({"classify", "--lambda", "4", "--max-time", "0.5"}).code, kExitNumericFailure);
}

TEST(Cli, CurveForIncompleteLambdaIsFinite) {
  const fs::path csv = tmp("curve.csv");
  const auto r = invoke({"curve", "--lambda", "1.2", "--span", "100", "--out", csv.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_TRUE(j["finite"].get<bool>());
  EXPECT_LT(j["span"][1].get<double>(), 100.0);
  const double z0 = j["terminal"]["z"].get<double>();
  EXPECT_GT(z0, 0.0);
  EXPECT_LT(z0, 1.0);
  EXPECT_EQ(slurp(csv).rfind("t,x,z,theta\n", 0), 0u);
}

TEST(Cli, MeshBuiltinSphere) {
  const fs::path obj = tmp("sphere.obj");
  ASSERT_EQ(invoke({"mesh", "--builtin", "sphere", "--n-angular", "32", "--out", obj.string()}).code, 0);
  std::istringstream in(slurp(obj));
  std::string tag;
  std::size_t vertices = 0;
  while (in >> tag) {
    if (tag == "v") {
      double x, y, z;
      in >> x >> y >> z;
      ASSERT_NEAR(std::sqrt((x + kSqrt2) * (x + kSqrt2) + y * y + z * z), kSqrt2, 1e-12);
      ++vertices;
    } else {
      std::string rest;
      std::getline(in, rest);
    }
  }
  EXPECT_EQ(vertices, 400u * 32u);
  EXPECT_EQ(invoke({"mesh", "--builtin", "torus", "--out", obj.string()}).code, kExitInvalidInput);
}

TEST(Cli, MeshCsvFormat) {
  const fs::path csv = tmp("cyl.csv");
  ASSERT_EQ(invoke({"mesh", "--builtin", "cylinder", "--samples", "3", "--n-angular", "4", "--format", "csv",
                    "--out", csv.string()})
                .code,
            0);
  EXPECT_EQ(slurp(csv).rfind("i,j,x,y,z\n", 0), 0u);
}

TEST(Cli, VerifyPassesOnSphereAndFailsOnWrongCurve) {
  ProfileCurve sphere = sphere_profile(1000);
  write_profile_csv(sphere, tmp("sphere_curve.csv"));
  const auto ok = invoke({"verify", "--in", tmp("sphere_curve.csv").string(), "--step", "1e-3"});
  ASSERT_EQ(ok.code, 0) << ok.out << ok.err;
  const auto j = nlohmann::json::parse(ok.out);
  EXPECT_LE(j["max_curvature_residual"].get<double>(), 1e-8);
  EXPECT_EQ(j["result"], "PASS");

  ProfileCurve wrong;
  for (int i = 0; i < 400; ++i) {
    const double t = -2.0 + 0.01 * i;
    wrong.samples.push_back({t, 2.0 * std::sin(t / 2.0), 3.0 + 2.0 * std::cos(t / 2.0), t / 2.0 + kPi / 2});
  }
  write_profile_csv(wrong, tmp("wrong.csv"));
  EXPECT_EQ(invoke({"verify", "--in", tmp("wrong.csv").string()}).code, kExitVerificationFailure);
  EXPECT_EQ(invoke({"verify", "--in", tmp("missing.csv").string()}).code, kExitInvalidInput);
}

TEST(Cli, ProfileCsvRoundTrip) {
  const ProfileCurve p = sphere_profile(50);
  write_profile_csv(p, tmp("rt.csv"));
  const ProfileCurve q = read_profile_csv(tmp("rt.csv"));
  ASSERT_EQ(q.samples.size(), p.samples.size());
  for (std::size_t i = 0; i < p.samples.size(); ++i) {
    EXPECT_EQ(q.samples[i].t, p.samples[i].t);
    EXPECT_EQ(q.samples[i].x, p.samples[i].x);
    EXPECT_EQ(q.samples[i].z, p.samples[i].z);
    EXPECT_EQ(q.samples[i].theta, p.samples[i].theta);
  }
  std::ofstream(tmp("bad.csv")) << "a,b\n1,2\n";
  EXPECT_THROW(read_profile_csv(tmp("bad.csv")), InvalidInput);
}

TEST(Cli, ExtendWritesRegularityReport) {
  const fs::path csv = tmp("ext.csv");
  ASSERT_EQ(invoke({"extend", "--copies", "2", "--segments", "1", "--out", csv.string()}).code, 0);
  const auto j = read_json(tmp("ext_regularity.json"));
  ASSERT_EQ(j["junctions"].size(), 2u);
  for (const auto& jj : j["junctions"]) {
    EXPECT_EQ(jj["order"], "C3");
    EXPECT_NEAR(jj["third_derivative_jump"].get<double>(), 1.0 / 3.0, 1e-3);
  }
  EXPECT_EQ(invoke({"extend", "--copies", "2", "--out", csv.string()}).code, kExitInvalidInput);
}

TEST(Cli, ConfigFileWithFlagOverride) {
  const fs::path conf = tmp("run.conf");
  std::ofstream(conf) << "# classification run\nlambda=2.5\nrel-tol=1e-11\n";
  const auto from_file = invoke({"classify", "--config", conf.string()});
  ASSERT_EQ(from_file.code, 0) << from_file.err;
  EXPECT_EQ(nlohmann::json::parse(from_file.out)["class"], "IncompleteHigh");
  const auto overridden = invoke({"classify", "--config", conf.string(), "--lambda", "4"});
  ASSERT_EQ(overridden.code, 0) << overridden.err;
  EXPECT_EQ(nlohmann::json::parse(overridden.out)["class"], "Periodic");

  std::ostringstream sink;
  const char* argv[] = {"unitsurf", "classify", "--config", nullptr, "--abs-tol", "1e-13"};
  const std::string path = conf.string();
  argv[3] = path.c_str();
  const auto cfg = parse_run_config(6, argv, sink);
  ASSERT_TRUE(cfg.has_value());
  EXPECT_EQ(cfg->integrator.rel_tol, 1e-11);
  EXPECT_EQ(cfg->integrator.abs_tol, 1e-13);
  EXPECT_EQ(*cfg->lambda, 2.5);
}

}  // namespace
}  // namespace unitsurf::cli
