#include <sys/wait.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <string>

#include <gtest/gtest.h>
#include <json.hpp>

using nlohmann::json;

namespace {

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + GROVER_CLI_PATH + " " + args + " 2>/dev/null";
  CliRun r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

json run_json(const std::string& args, int expected_code = 0) {
  const CliRun r = run(args);
  EXPECT_EQ(r.code, expected_code) << args;
  return json::parse(r.out);
}

}  // namespace

TEST(CliParams, EightStates) {
  const json j = run_json("params --lambda 0.125");
  EXPECT_EQ(j["k"], 2);
  EXPECT_NEAR(j["alpha_radians"].get<double>(), 2.1269, 1e-4);
  EXPECT_NEAR(j["theta_radians"].get<double>(), 0.6283, 1e-4);
  EXPECT_LE(std::abs(j["cos_theta_check"].get<double>()), 1e-12);
  EXPECT_FALSE(j["no_iteration"].get<bool>());
}

TEST(CliParams, AllTargets) {
  const json j = run_json("params --lambda 1");
  EXPECT_EQ(j["k"], 0);
  EXPECT_TRUE(j["no_iteration"].get<bool>());
  EXPECT_NE(run("params --lambda 1 --output pretty").out.find("no-iteration search"), std::string::npos);
}

TEST(CliParams, OutOfRangeAndFormats) {
  EXPECT_EQ(run("params --lambda 1.5").code, 2);
  EXPECT_EQ(run("params --lambda 0").code, 2);
  EXPECT_EQ(run("params").code, 2);
  EXPECT_EQ(run("params --lambda 0.5 --output xml").code, 2);
  const CliRun csv = run("params --lambda 0.25 --output csv");
  EXPECT_EQ(csv.code, 0);
  EXPECT_EQ(csv.out.substr(0, csv.out.find('\n')),
            "lambda,k,alpha_radians,theta_radians,cos_theta_check,no_iteration");
}

TEST(CliSimulate, IterativeEightStates) {
  const json j = run_json("simulate --n 3 --targets 0 --mode iterative");
  EXPECT_NEAR(j["success_probability"].get<double>(), 1.0, 1e-10);
  EXPECT_EQ(j["oracle_calls"], 2);
  EXPECT_NEAR(j["v_t"]["re"].get<double>(), 0.874032049, 1e-9);
  EXPECT_NEAR(j["v_t"]["im"].get<double>(), 0.485868272, 1e-9);
  EXPECT_TRUE(j["consistent"].get<bool>());
}

TEST(CliSimulate, AllModesAgree) {
  const json ref = run_json("simulate --n 3 --targets 0 --mode iterative");
  for (const std::string mode : {"decomposed-i", "decomposed-ii", "shortcut", "parallel"}) {
    const json j = run_json("simulate --n 3 --targets 0 --mode " + mode);
    EXPECT_NEAR(j["v_t"]["re"].get<double>(), ref["v_t"]["re"].get<double>(), 1e-10) << mode;
    EXPECT_NEAR(j["v_t"]["im"].get<double>(), ref["v_t"]["im"].get<double>(), 1e-10) << mode;
    EXPECT_NEAR(j["success_probability"].get<double>(), 1.0, 1e-10) << mode;
    EXPECT_EQ(j["oracle_calls"], 1) << mode;
  }
}

TEST(CliSimulate, LargeSingleOracleRun) {
  const json j = run_json("simulate --n 20 --targets 0 --mode decomposed-ii");
  EXPECT_NEAR(j["success_probability"].get<double>(), 1.0, 1e-9);
  EXPECT_EQ(j["oracle_calls"], 1);
}

TEST(CliSimulate, FullAmplitudesAndCsv) {
  const json j = run_json("simulate --n 2 --count 1 --full");
  EXPECT_EQ(j["amplitudes"].size(), 4u);
  const CliRun csv = run("simulate --n 3 --targets 1,4 --output csv");
  EXPECT_EQ(csv.code, 0);
  EXPECT_EQ(csv.out.substr(0, csv.out.find('\n')),
            "n,m,mode,k,alpha,theta,consistent,v_t_re,v_t_im,v_nt_re,v_nt_im,"
            "success_probability,oracle_calls,wall_time_seconds");
}

TEST(CliSimulate, OverridesFlagInconsistency) {
  const json ok = run_json("simulate --n 3 --targets 0 --k 2 --alpha 2.1268800471555");
  EXPECT_TRUE(ok["consistent"].get<bool>());
  const json bad = run_json("simulate --n 3 --targets 0 --k 2 --alpha 2.0 --theta 0.5 --mode decomposed-ii");
  EXPECT_FALSE(bad["consistent"].get<bool>());
  EXPECT_NE(bad["warnings"][0].get<std::string>().find("ThetaInconsistent"), std::string::npos);
}

TEST(CliSimulate, UsageAndCapErrors) {
  EXPECT_EQ(run("simulate --n 3 --targets 9").code, 2);
  EXPECT_EQ(run("simulate --n 3 --targets x").code, 2);
  EXPECT_EQ(run("simulate --n 3 --mode sideways").code, 2);
  EXPECT_EQ(run("simulate --n 3 --targets 0 --count 2").code, 2);
  EXPECT_EQ(run("simulate --n 3 --targets 0 --k 1").code, 2);  // below the optimal count
  EXPECT_EQ(run("simulate --n 30 --targets 0 --mode decomposed-ii").code, 3);
  EXPECT_EQ(run("simulate --n 13 --targets 0 --mode shortcut").code, 3);
  EXPECT_EQ(run("simulate --n 7 --targets 0 --mode parallel").code, 3);
  EXPECT_EQ(run("simulate --n 8 --targets 0 --mode decomposed-ii", "GROVER_DECOMP_MAX_N=6").code, 3);
  EXPECT_EQ(run("bogus").code, 2);
}

TEST(CliVerify, DeterministicAndPassing) {
  const CliRun a = run("verify --seed 42 --cases 50");
  const CliRun b = run("verify --seed 42 --cases 50");
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  const json j = json::parse(a.out);
  EXPECT_TRUE(j["passed"].get<bool>());
  EXPECT_EQ(j["suites"].size(), 6u);
}

TEST(CliVerify, InjectedFaultFailsIdentitySuite) {
  const CliRun r = run("verify --seed 42 --suite identity --cases 20 --inject-fault theta-offset");
  EXPECT_EQ(r.code, 1);
  const json j = json::parse(r.out);
  EXPECT_FALSE(j["suites"][0]["passed"].get<bool>());
}

TEST(CliVerify, GoldenSuite) {
  const json j = run_json("verify --suite golden");
  EXPECT_TRUE(j["passed"].get<bool>());
  EXPECT_EQ(run("verify --suite golden --fixture-dir /nonexistent").code, 1);
}

TEST(CliGolden, MatchesFixtures) {
  const json j = run_json("golden");
  ASSERT_EQ(j.size(), 3u);
  for (const auto& e : j) EXPECT_LE(e["max_abs_deviation"].get<double>(), 1e-10);
  const json emitted = run_json("golden --emit shortcut");
  EXPECT_EQ(emitted["rows"], 8);
  EXPECT_EQ(emitted["entries"].size(), 64u);
}
