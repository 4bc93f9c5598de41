#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <json.hpp>

#include "cli/commands.hpp"
#include "cli/run_config.hpp"
#include "diffrakt/error.hpp"

namespace fs = std::filesystem;
using namespace diffrakt;
using namespace diffrakt::cli;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("diffrakt_cli_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

struct CliResult {
  int code;
  std::string err;
};

CliResult run_cli(const std::string& args, const std::string& env = "") {
  const fs::path err = fs::temp_directory_path() / "diffrakt_cli_test_stderr.txt";
  const std::string cmd = env + " " + DIFFRAKT_CLI_PATH + " " + args + " > /dev/null 2> " + err.string();
  const int status = std::system(cmd.c_str());
  return {WEXITSTATUS(status), slurp(err)};
}

}  // namespace

TEST(RunConfig, JsonRoundTrip) {
  RunConfig c;
  c.process = "perm-gauss";
  c.p = 0.5;
  c.alpha = 0.25;
  c.d = 2;
  c.N = 128;
  c.window = "0:20 x 0:20";
  c.seed = 1234567890123ull;
  c.realizations = 7;
  c.bins = 33;
  c.rmax = 2.5;
  c.tgrid = "0.1:2:20";
  c.out = "/tmp/x";
  c.grid = 256;
  c.engine = "matrix";
  c.mutate = 1e-3;
  const RunConfig back = from_json(nlohmann::json::parse(to_json(c).dump()));
  EXPECT_EQ(to_json(back).dump(), to_json(c).dump());
}

TEST(RunConfig, RejectsUnknownKeysAndBadValues) {
  EXPECT_THROW(from_json(nlohmann::json::parse(R"({"proces": "sine"})")), InvalidArgument);
  EXPECT_THROW(from_json(nlohmann::json::parse(R"({"p": "half"})")), InvalidArgument);
  EXPECT_THROW(from_json(nlohmann::json::parse(R"([1, 2])")), InvalidArgument);
  RunConfig c;
  c.realizations = 0;
  EXPECT_THROW(c.check(), InvalidArgument);
  c = RunConfig{};
  c.tgrid = "0:1";
  EXPECT_THROW(c.check(), InvalidArgument);
  c.tgrid = "1:0:5";
  EXPECT_THROW(c.check(), InvalidArgument);
  c = RunConfig{};
  c.engine = "qr";
  EXPECT_THROW(c.check(), InvalidArgument);
}

TEST(RunConfig, ProcessMapping) {
  RunConfig c;
  c.process = "perm-gauss";
  c.d = 2;
  EXPECT_EQ(process_spec(c).kind, ProcessKind::kPermanental);
  EXPECT_EQ(process_spec(c).dimension, 2);
  c.process = "cox";
  EXPECT_EQ(process_spec(c).kind, ProcessKind::kCoxCosine);
  c.process = "ginibre";
  EXPECT_TRUE(resolve_window(c).is_disk());
  c.process = "wave";
  EXPECT_THROW(process_spec(c), InvalidArgument);
  const Grid g = parse_grid("0:3:301");
  EXPECT_EQ(g.values().size(), 301u);
  EXPECT_EQ(g.values().back(), 3.0);
}

TEST(Cli, AnalyticThinnedSine) {
  const fs::path out = scratch("analytic");
  ASSERT_EQ(run_cli("analytic --process sine --p 0.5 --tgrid 0:4:9 --out " + out.string()).code, 0);
  std::istringstream is(slurp(out / "diffraction_density.csv"));
  std::string line;
  std::getline(is, line);
  EXPECT_EQ(line, "r,density");
  for (double t = 0.0; std::getline(is, line); t += 0.5) {
    const double v = std::stod(line.substr(line.find(',') + 1));
    EXPECT_NEAR(v, 1.0 - 0.5 * std::max(0.0, 1.0 - 0.5 * t), 1e-12) << line;
  }
  EXPECT_TRUE(fs::exists(out / "gamma_density.csv"));
  EXPECT_EQ(slurp(out / "atoms.csv"), "location,mass\n0,1\n");
  const auto manifest = nlohmann::json::parse(slurp(out / "manifest.json"));
  EXPECT_EQ(manifest["config"]["p"], 0.5);
  EXPECT_TRUE(manifest.contains("version"));
  EXPECT_TRUE(manifest.contains("wall_time_seconds"));
}

TEST(Cli, AnalyticGafAndCox) {
  const fs::path out = scratch("analytic_gaf");
  ASSERT_EQ(run_cli("analytic --process gaf --tgrid 0:2:21 --out " + out.string()).code, 0);
  EXPECT_NE(slurp(out / "diffraction_density.csv").find("\n1,1.035577272392"), std::string::npos);
  const fs::path cox = scratch("analytic_cox");
  ASSERT_EQ(run_cli("analytic --process cox --out " + cox.string()).code, 0);
  EXPECT_EQ(slurp(cox / "atoms.csv"), "location,mass\n0,1\n-1,0.25\n1,0.25\n");
}

TEST(Cli, ValidationFailureExitCode) {
  const CliResult r = run_cli("analytic --process exp --alpha 0.6 --out " + scratch("bad").string());
  EXPECT_EQ(r.code, 2);
  ASSERT_FALSE(r.err.empty());
  EXPECT_EQ(r.err.find('\n'), r.err.size() - 1);
  const auto j = nlohmann::json::parse(r.err);
  EXPECT_EQ(j["error"], "config");
  EXPECT_EQ(run_cli("analytic --tgrid nope").code, 2);
  EXPECT_EQ(run_cli("analytic --bogus 1").code, 2);
  EXPECT_EQ(run_cli("").code, 2);
}

TEST(Cli, GafTruncationSafety) {
  const CliResult r = run_cli("sample --process gaf --N 50 --window disk:5 --out " + scratch("gaf").string());
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("truncation"), std::string::npos);
}

TEST(Cli, SampleWritesOneFilePerRealization) {
  const fs::path out = scratch("sample");
  ASSERT_EQ(run_cli("sample --process sine --window 0:500 --realizations 12 --seed 42 --out " + out.string()).code, 0);
  int files = 0;
  for (const auto& e : fs::directory_iterator(out)) files += e.path().extension() == ".csv" ? 1 : 0;
  EXPECT_EQ(files, 12);
  EXPECT_EQ(slurp(out / "points_0000.csv").rfind("# process=det:sine", 0), 0u);
  const auto manifest = nlohmann::json::parse(slurp(out / "manifest.json"));
  EXPECT_NEAR(manifest["results"]["mean_count"].get<double>(), 500.0, 3.0);

  const fs::path g = scratch("sample_ginibre");
  ASSERT_EQ(run_cli("sample --process ginibre --window disk:10 --realizations 10 --out " + g.string()).code, 0);
  const auto mg = nlohmann::json::parse(slurp(g / "manifest.json"));
  EXPECT_NEAR(mg["results"]["mean_count"].get<double>(), 314.16, 6.0);
}

TEST(Cli, DeterministicAcrossThreadCounts) {
  const std::string args = "estimate --process sine --window 0:200 --realizations 6 --tgrid 0.05:3:60 --seed 7";
  const fs::path a = scratch("det_a"), b = scratch("det_b");
  ASSERT_EQ(run_cli(args + " --out " + a.string(), "DIFFRAKT_THREADS=1").code, 0);
  ASSERT_EQ(run_cli(args + " --out " + b.string(), "DIFFRAKT_THREADS=3").code, 0);
  for (const char* f : {"pair_correlation.csv", "scattering.csv"}) {
    EXPECT_FALSE(slurp(a / f).empty());
    EXPECT_EQ(slurp(a / f), slurp(b / f)) << f;
  }
  const fs::path s1 = scratch("det_s1"), s2 = scratch("det_s2");
  ASSERT_EQ(run_cli("sample --process perm-gauss --window 0:50 --realizations 4 --out " + s1.string(), "DIFFRAKT_THREADS=1").code, 0);
  ASSERT_EQ(run_cli("sample --process perm-gauss --window 0:50 --realizations 4 --out " + s2.string(), "DIFFRAKT_THREADS=2").code, 0);
  for (const char* f : {"points_0000.csv", "points_0003.csv"}) EXPECT_EQ(slurp(s1 / f), slurp(s2 / f));
  EXPECT_EQ(run_cli("verify", "DIFFRAKT_THREADS=zero").code, 0);
  EXPECT_EQ(run_cli("sample --out " + scratch("bad_env").string(), "DIFFRAKT_THREADS=zero").code, 2);
}

TEST(Cli, ConfigFileEquivalentToFlags) {
  const fs::path a = scratch("cfg_a"), b = scratch("cfg_b");
  ASSERT_EQ(run_cli("estimate --process exp --alpha 0.25 --window 0:300 --realizations 5 --bins 20 --rmax 4 "
                    "--tgrid 0.1:2:20 --seed 11 --out " + a.string()).code,
            0);
  const auto manifest = nlohmann::json::parse(slurp(a / "manifest.json"));
  nlohmann::json cfg = manifest["config"];
  cfg["out"] = b.string();
  const fs::path cfg_path = b / "run.json";
  std::ofstream(cfg_path) << cfg.dump(2);
  ASSERT_EQ(run_cli("estimate --config " + cfg_path.string()).code, 0);
  for (const char* f : {"pair_correlation.csv", "scattering.csv"}) EXPECT_EQ(slurp(a / f), slurp(b / f)) << f;
  const auto mb = nlohmann::json::parse(slurp(b / "manifest.json"));
  cfg["out"] = a.string();
  EXPECT_EQ(mb["config"]["bins"], 20);
  EXPECT_EQ(manifest["config"], cfg);

  const fs::path c = scratch("cfg_c");
  ASSERT_EQ(run_cli("estimate --config " + cfg_path.string() + " --seed 12 --out " + c.string()).code, 0);
  EXPECT_NE(slurp(a / "scattering.csv"), slurp(c / "scattering.csv"));
  EXPECT_EQ(nlohmann::json::parse(slurp(c / "manifest.json"))["config"]["seed"], 12);
}

TEST(Cli, VerifyExitCodes) {
  EXPECT_EQ(run_cli("verify").code, 0);
  EXPECT_EQ(run_cli("verify --mutate 1e-3").code, 4);
}

TEST(Cli, WorkerCountHonoursEnvironment) {
  ::setenv("DIFFRAKT_THREADS", "1", 1);
  EXPECT_EQ(worker_count(), 1);
  ::setenv("DIFFRAKT_THREADS", "-2", 1);
  EXPECT_THROW(worker_count(), InvalidArgument);
  ::unsetenv("DIFFRAKT_THREADS");
  EXPECT_GE(worker_count(), 1);
}
