#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <json.hpp>

#include "run_config.hpp"

namespace {

using cointoss::cli::ConfigError;
using cointoss::cli::RunConfig;
using nlohmann::json;

struct CliResult {
  int code = -1;
  std::string out;
};

CliResult run(const std::string& args) {
  const std::string cmd = std::string(COINTOSS_CLI_PATH) + " " + args + " 2>/dev/null";
  CliResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  char buf[4096];
  std::size_t n = 0;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

std::vector<double> fields(const std::string& line) {
  std::vector<double> v;
  std::istringstream in(line);
  for (std::string f; std::getline(in, f, ',');) v.push_back(std::stod(f));
  return v;
}

class TempFile {
 public:
  TempFile(const std::string& name, const std::string& text)
      : path_(std::filesystem::temp_directory_path() / ("cointoss_test_" + name)) {
    std::ofstream(path_) << text;
  }
  ~TempFile() { std::filesystem::remove(path_); }
  std::string path() const { return path_.string(); }

 private:
  std::filesystem::path path_;
};

TEST(Config, RoundTripThroughJson) {
  RunConfig c;
  c.ix = 1.5;
  c.beta = 0.3;
  c.theta_law = "arcsine";
  c.mc_n = 1234;
  c.seed = 99;
  c.output = "out.csv";
  EXPECT_EQ(cointoss::cli::parse_config(cointoss::cli::to_json(c).dump()), c);
  EXPECT_EQ(cointoss::cli::parse_config(cointoss::cli::to_json(RunConfig{}).dump()), RunConfig{});
}

TEST(Config, MissingFieldsKeepDefaults) {
  const RunConfig c = cointoss::cli::parse_config(R"({"initial": {"theta0": 0.5}})");
  EXPECT_EQ(c.theta0, 0.5);
  EXPECT_EQ(c.ix, RunConfig{}.ix);
  EXPECT_EQ(c.effective_beta(), 0.5);
}

TEST(Config, ErrorsNameTheProblem) {
  try {
    cointoss::cli::parse_config(R"({"initial": {"theta1": 0.5}})");
    FAIL() << "unknown field accepted";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("initial.theta1"), std::string::npos) << e.what();
  }
  try {
    cointoss::cli::parse_config("{\n  \"inertia\": {\"ix\": }\n}");
    FAIL() << "syntax error accepted";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
  }
  EXPECT_THROW(cointoss::cli::parse_config(R"({"inertia": {"ix": "big"}})"), ConfigError);
}

TEST(Cli, PrintConfigRoundTrips) {
  const CliResult r = run("--theta0 30 --degrees --seed 7 --print-config bounds");
  ASSERT_EQ(r.code, 0);
  const RunConfig c = cointoss::cli::parse_config(r.out);
  EXPECT_NEAR(c.theta0, std::numbers::pi / 6.0, 1e-15);
  EXPECT_EQ(c.seed, 7u);
}

TEST(Cli, BoundsJson) {
  const CliResult r = run("bounds");
  ASSERT_EQ(r.code, 0);
  const json doc = json::parse(r.out);
  EXPECT_LT(doc["theta_m"].get<double>(), std::numbers::pi / 3.0 + 1e-12);
  EXPECT_GT(doc["theta_M"].get<double>(), std::numbers::pi / 3.0 - 1e-12);
  EXPECT_FALSE(doc["fair"].get<bool>());
  EXPECT_EQ(doc["parameters"]["beta"].get<double>(), doc["parameters"]["theta0"].get<double>());
}

TEST(Cli, ExitCodes) {
  TempFile bad("bad.json", "{ \"inertia\": ");
  TempFile unknown("unknown.json", R"({"inertia": {"iw": 1.0}})");
  EXPECT_EQ(run("--config " + bad.path() + " bounds").code, 2);
  EXPECT_EQ(run("--config " + unknown.path() + " bounds").code, 2);
  EXPECT_EQ(run("--ix -1 bounds").code, 2);
  EXPECT_EQ(run("--theta0 4 prob").code, 2);
  EXPECT_EQ(run("--no-such-flag bounds").code, 2);
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("--quadrature-target 1e-30 prob").code, 3);
  EXPECT_EQ(run("prob").code, 0);
}

TEST(Cli, ProbMatchesUniformClosedForm) {
  const CliResult r = run("--ix 5 --iy 5 --iz 10 --theta0 1.0 --beta 0.8 prob");
  ASSERT_EQ(r.code, 0);
  const json doc = json::parse(r.out);
  EXPECT_EQ(doc["method_tag"], "closed-form-uniform");
  const double expected =
      0.5 + std::asin(1.0 / (std::tan(0.8) * std::tan(1.0))) / std::numbers::pi;
  EXPECT_NEAR(doc["p"].get<double>(), expected, 1e-14);
}

TEST(Cli, SimulateCsv) {
  const CliResult r = run("simulate");
  ASSERT_EQ(r.code, 0);
  const auto lines = lines_of(r.out);
  ASSERT_EQ(lines.size(), 100002u);
  EXPECT_EQ(lines[0].substr(0, 2), "t,");
  EXPECT_EQ(fields(lines[1])[0], 0.0);
  EXPECT_NEAR(fields(lines.back())[0], 1.0, 1e-12);
}

TEST(Cli, SimulateUniformKeepsThetaConstant) {
  const CliResult r = run("--ix 5 --iy 5 --iz 10 --t-end 0.1 --dt 1e-4 simulate");
  ASSERT_EQ(r.code, 0);
  const auto lines = lines_of(r.out);
  ASSERT_EQ(lines.size(), 1002u);
  const auto header = lines_of([&] {
    std::string h = lines[0];
    for (char& ch : h) ch = ch == ',' ? '\n' : ch;
    return h;
  }());
  std::size_t theta_col = header.size();
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == "theta") theta_col = i;
  }
  ASSERT_LT(theta_col, header.size());
  for (std::size_t i = 1; i < lines.size(); ++i) {
    EXPECT_NEAR(fields(lines[i])[theta_col], std::numbers::pi / 3.0, 1e-10);
  }
}

TEST(Cli, FairRegionGrid) {
  const CliResult r = run("fair-region");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(lines_of(r.out).size(), 65537u);
}

double trapezoid(const std::vector<std::string>& lines) {
  double sum = 0.0;
  for (std::size_t i = 2; i < lines.size(); ++i) {
    const auto a = fields(lines[i - 1]), b = fields(lines[i]);
    sum += 0.5 * (a[1] + b[1]) * (b[0] - a[0]);
  }
  return sum;
}

TEST(Cli, PdfThetaIntegratesToOne) {
  for (const char* law : {"dwell", "arcsine"}) {
    const CliResult r = run(std::string("--theta-law ") + law + " pdf-theta");
    ASSERT_EQ(r.code, 0) << law;
    const auto lines = lines_of(r.out);
    ASSERT_EQ(lines.size(), 4097u);
    EXPECT_EQ(lines[0], "theta,pdf");
    EXPECT_NEAR(trapezoid(lines), 1.0, 1e-3) << law;
  }
}

TEST(Cli, PdfThetaSupplementaryIsSymmetric) {
  // Near-fair start: phi0 = 0 puts the long axis in the plane, theta0 close to pi/2.
  const CliResult b = run("--phi0 0 --theta0 1.45 bounds");
  ASSERT_EQ(b.code, 0);
  const json bounds = json::parse(b.out);
  ASSERT_EQ(bounds["case_tag"], "supplementary") << b.out;
  const CliResult r = run("--phi0 0 --theta0 1.45 --samples 200 pdf-theta");
  ASSERT_EQ(r.code, 0);
  const auto lines = lines_of(r.out);
  ASSERT_EQ(lines.size(), 201u);
  for (std::size_t k = 1; k <= 100; ++k) {
    const auto lo = fields(lines[k]), hi = fields(lines[201 - k]);
    EXPECT_NEAR(lo[0] + hi[0], std::numbers::pi, 1e-12);
    EXPECT_NEAR(lo[1], hi[1], 1e-9 * lo[1]);
  }
}

TEST(Cli, PdfThetaUniformIsSingleRow) {
  const CliResult r = run("--ix 5 --iy 5 --iz 10 pdf-theta");
  ASSERT_EQ(r.code, 0);
  const auto lines = lines_of(r.out);
  ASSERT_EQ(lines.size(), 2u);
  EXPECT_EQ(lines[1].substr(lines[1].find(',')), ",inf");
}

TEST(Cli, MonteCarloIsDeterministic) {
  const std::string args = "--n 2000 --t-eval 10 --seed 11 montecarlo";
  const CliResult a = run(args), b = run(args);
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  const json doc = json::parse(a.out);
  EXPECT_EQ(doc["n"], 2000);
  EXPECT_EQ(doc["seed"], 11);
  EXPECT_EQ(doc["doubled_t_eval"]["t_eval"].get<double>(), 20.0);
  EXPECT_NE(run("--n 2000 --t-eval 10 --seed 12 montecarlo").out, a.out);
}

TEST(Cli, OutputFile) {
  const std::string path =
      (std::filesystem::temp_directory_path() / "cointoss_test_out.json").string();
  ASSERT_EQ(run("--out " + path + " prob").code, 0);
  std::ifstream in(path);
  const json doc = json::parse(in);
  EXPECT_EQ(doc["method_tag"], "quadrature");
  std::filesystem::remove(path);
}

}  // namespace
