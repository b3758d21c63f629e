#include <gtest/gtest.h>

#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

using nlohmann::json;

namespace {

struct CliRun {
  int code = -1;
  std::string out;
};

// Runs the tool with stderr discarded.
CliRun run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + (env.empty() ? "" : " ") + std::string(WARPCHECK_CLI_PATH) + " " + args + " 2>/dev/null";
  CliRun r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = ::pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Cli, ExitCodeMatrix) {
  EXPECT_EQ(run("catalog").code, 0);
  EXPECT_EQ(run("verify --metric thm1 --param c=1").code, 0);
  EXPECT_EQ(run("verify --metric thm1 --param c=-1").code, 2);
  EXPECT_EQ(run("verify --metric cylinder").code, 1);
  EXPECT_EQ(run("monotone --metric thm1 --param c=1 --quantity plus").code, 0);
  EXPECT_EQ(run("monotone --metric thm3 --param c=1 --quantity minus").code, 0);
  EXPECT_EQ(run("monotone --metric thm1 --quantity minus").code, 2);
  EXPECT_EQ(run("generate --c-family 1 --K 12.566370614359172 --c0 0.0795774715459477 --validate").code, 0);
  EXPECT_EQ(run("generate --c-family 0 --validate").code, 0);
  EXPECT_EQ(run("generate --c-family 1 --domain 0,2").code, 2);
  EXPECT_EQ(run("ode").code, 0);
  EXPECT_EQ(run("identities --metric thm1").code, 0);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("verify").code, 2);
  EXPECT_EQ(run("verify --metric nope").code, 2);
  EXPECT_EQ(run("verify --metric thm1 --param c").code, 2);
  EXPECT_EQ(run("verify --metric thm1 --grid 4").code, 2);
  EXPECT_EQ(run("verify --metric thm1 --epsilon 0.5").code, 2);
  EXPECT_EQ(run("verify --metric thm1 --format xml").code, 2);
  EXPECT_EQ(run("verify --metric thm1 --tol nope=1").code, 2);
  EXPECT_EQ(run("monotone --metric thm1 --quantity sideways").code, 2);
  EXPECT_EQ(run("verify --metric thm1", "WARPCHECK_TOL_LEMMA21=zero").code, 2);
}

TEST(Cli, VerifyCylinderFailsOnlyFlatness) {
  const CliRun r = run("verify --metric cylinder");
  ASSERT_EQ(r.code, 1);
  const json j = json::parse(r.out);
  EXPECT_FALSE(j["verdict"]["pass"].get<bool>());
  bool lemma21_seen = false;
  for (const auto& c : j["suite"]) {
    const std::string name = c["name"];
    if (name == "flatness" || name == "flatness_oracle") {
      EXPECT_FALSE(c["pass"].get<bool>());
    } else {
      EXPECT_TRUE(c["pass"].get<bool>()) << name;
    }
    lemma21_seen = lemma21_seen || name == "lemma21";
  }
  EXPECT_TRUE(lemma21_seen);
}

TEST(Cli, MonotoneSeriesContent) {
  const CliRun r = run("monotone --metric thm1 --param c=1 --quantity plus --grid 64");
  ASSERT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  EXPECT_EQ(j["values"].size(), 64u);
  EXPECT_NEAR(j["constant_value"].get<double>(), -4.0 * M_PI, 1e-7);
  const CliRun csv = run("monotone --metric thm1 --param c=1 --quantity plus --grid 64 --format csv");
  ASSERT_EQ(csv.code, 0);
  EXPECT_EQ(csv.out.substr(0, csv.out.find('\n')), "t,M,dM_dt");
  EXPECT_EQ(std::count(csv.out.begin(), csv.out.end(), '\n'), 65);
}

TEST(Cli, OutputIsByteIdenticalAcrossRuns) {
  for (const char* args : {"verify --metric thm3 --param c=2", "monotone --metric thm3-rcoord --quantity minus",
                           "ode", "generate --c-family -1 --validate", "catalog"}) {
    const CliRun a = run(args);
    const CliRun b = run(args);
    EXPECT_EQ(a.code, b.code) << args;
    EXPECT_FALSE(a.out.empty()) << args;
    EXPECT_EQ(a.out, b.out) << args;
  }
}

TEST(Cli, OutFileMatchesStdout) {
  const auto path = std::filesystem::temp_directory_path() / "warpcheck_cli_test_out.json";
  std::filesystem::remove(path);
  const CliRun to_file = run("monotone --metric thm1 --quantity plus --grid 32 --out " + path.string());
  ASSERT_EQ(to_file.code, 0);
  EXPECT_TRUE(to_file.out.empty());
  const CliRun to_stdout = run("monotone --metric thm1 --quantity plus --grid 32");
  EXPECT_EQ(slurp(path), to_stdout.out);
  std::filesystem::remove(path);
}

TEST(Cli, EnvironmentToleranceAndFlagPrecedence) {
  const std::string loose = "WARPCHECK_TOL_FLATNESS=10 WARPCHECK_TOL_FLATNESS_ORACLE=10";
  EXPECT_EQ(run("verify --metric cylinder", loose).code, 0);
  EXPECT_EQ(run("verify --metric cylinder --tol flatness=1e-9", loose).code, 1);
  const CliRun r = run("verify --metric thm1 --grid 8", "WARPCHECK_TOL_GREENS=0.25");
  ASSERT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  for (const auto& c : j["suite"])
    if (c["name"] == "greens") EXPECT_EQ(c["tolerance"].get<double>(), 0.25);
}

TEST(Cli, CatalogListsEveryMetric) {
  const CliRun r = run("catalog");
  ASSERT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  std::vector<std::string> names;
  for (const auto& m : j["catalog"]) names.push_back(m["name"]);
  EXPECT_EQ(names, (std::vector<std::string>{"euclidean", "schwarzschild", "thm1", "thm3", "thm3-rcoord", "family",
                                             "cylinder"}));
}

TEST(Cli, OdeSingleTrajectory) {
  const CliRun ok = run("ode --initial 1,1 --to 3");
  EXPECT_EQ(ok.code, 0);
  EXPECT_EQ(run("ode --initial -1,1 --to 3").code, 2);
  // Crossing the pole of the fitted closed form at r = 1.
  EXPECT_EQ(run("ode --initial 0.5,0 --to 1.5").code, 1);
}
