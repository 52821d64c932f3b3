#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <sys/wait.h>

namespace fs = std::filesystem;
using Json = nlohmann::json;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run_cli(const std::string& args) {
  const std::string cmd = std::string(CMKDV_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    if (std::string(CMKDV_CLI_PATH).empty()) GTEST_SKIP() << "cmkdv tool not built";
    dir_ = fs::path(CMKDV_TEST_TMP) / ::testing::UnitTest::GetInstance()->current_test_info()->name();
    fs::remove_all(dir_);
  }
  std::string out_flag() const { return "--out " + dir_.string(); }
  fs::path dir_;
};

TEST_F(Cli, PainleveTableIsDeterministic) {
  const auto a = run_cli("painleve --a 0.3 " + out_flag());
  ASSERT_EQ(a.code, 0) << a.out;
  const auto summary = Json::parse(a.out);
  EXPECT_EQ(summary["command"], "painleve");
  const std::string first = slurp(dir_ / "painleve.csv");
  EXPECT_NE(first.find("config_hash=" + summary["config_hash"].get<std::string>()), std::string::npos);
  EXPECT_NE(first.find("\ns,u,U\n"), std::string::npos);
  ASSERT_EQ(run_cli("painleve --a 0.3 " + out_flag()).code, 0);
  EXPECT_EQ(slurp(dir_ / "painleve.csv"), first);
}

TEST_F(Cli, ConfigFileAndOverrides) {
  fs::create_directories(dir_);
  {
    std::ofstream cfg(dir_ / "run.ini");
    cfg << "[painleve]\na = 0.7\ns_min = -1\ns_max = 1\n";
  }
  const auto r = run_cli("painleve --config " + (dir_ / "run.ini").string() + " --painleve.s_max 2 " + out_flag());
  ASSERT_EQ(r.code, 0) << r.out;
  const std::string text = slurp(dir_ / "painleve.csv");
  EXPECT_NE(text.find("# a=0.7"), std::string::npos);
  EXPECT_NE(text.find("\n2,"), std::string::npos);
}

TEST_F(Cli, ConfigErrorsExitWithTwo) {
  for (const char* args : {"painleve --a 2", "painleve --painleve.nope 1", "asymptotics --s 0.5",
                           "scatter --profile bogus", "signature --transition.C -1", ""}) {
    const auto r = run_cli(std::string(args) + " " + out_flag());
    EXPECT_EQ(r.code, 2) << args;
    const auto j = Json::parse(r.out);
    EXPECT_TRUE(j.contains("error")) << args;
    EXPECT_EQ(j["error"]["exit_code"], 2);
  }
}

TEST_F(Cli, NumericalFailureExitsWithThree) {
  const auto r = run_cli("painleve --a 1 --painleve.s_min -40 --painleve.rtol 1e-6 " + out_flag());
  EXPECT_EQ(r.code, 3);
  EXPECT_EQ(Json::parse(r.out)["error"]["kind"], "BlowupDetected");
}

TEST_F(Cli, SignatureAndTFunction) {
  ASSERT_EQ(run_cli("signature --signature.n_re 5 --signature.n_im 4 " + out_flag()).code, 0);
  const std::string sig = slurp(dir_ / "signature.csv");
  EXPECT_EQ(std::count(sig.begin(), sig.end(), '\n'), 3 + 20);
  const auto r = run_cli("tfunction --profile tanh --xi -2 " + out_flag());
  ASSERT_EQ(r.code, 0) << r.out;
  const auto j = Json::parse(slurp(dir_ / "tfunction.json"));
  EXPECT_NEAR(j["T1"].get<double>(), 2.0, 1e-6);
  EXPECT_NEAR(j["exp_alpha"][0].get<double>(), -1.0, 1e-8);
}

TEST_F(Cli, EvolveWritesSnapshotsAndManifest) {
  const auto r = run_cli("evolve --profile tanh --pde.L 15 --pde.h 0.1 --pde.t_end 0.2 --pde.snapshots 0.1 " + out_flag());
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_TRUE(fs::exists(dir_ / "snapshot_t0.1.csv"));
  EXPECT_TRUE(fs::exists(dir_ / "snapshot_t0.2.csv"));
  const auto m = Json::parse(slurp(dir_ / "manifest.json"));
  EXPECT_EQ(m["scheme"], "MOL-FD4-RK4");
  EXPECT_NEAR(m["dt"].get<double>(), 0.3e-3, 1e-15);
}

}  // namespace
