#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "cmkdv/errors.hpp"
#include "cmkdv/io.hpp"

using namespace cmkdv;
using Json = nlohmann::json;

namespace {

constexpr Complex I{0.0, 1.0};

TEST(RunConfig, DefaultsAliasesAndUnknownKeys) {
  auto cfg = RunConfig::defaults();
  EXPECT_EQ(cfg.get("transition.theta_reading"), "phase");
  EXPECT_EQ(cfg.get("transition.sign_convention"), "corrected");
  cfg.set("t", "50, 100");
  EXPECT_EQ(cfg.get_doubles("run.times"), (std::vector<double>{50, 100}));
  cfg.set("profile", "tanh");
  EXPECT_EQ(cfg.get("profile.spec"), "tanh");
  EXPECT_EQ(RunConfig::resolve_alias("out"), "output.dir");
  EXPECT_THROW(cfg.set("profile.nope", "1"), InvalidConfig);
  cfg.set("painleve.a", "abc");
  EXPECT_THROW(cfg.get_double("painleve.a"), InvalidConfig);
  cfg.set("run.workers", "2.5");
  EXPECT_THROW(cfg.get_int("run.workers"), InvalidConfig);
}

TEST(RunConfig, ValidationRejectsBadValues) {
  auto cfg = RunConfig::defaults();
  EXPECT_NO_THROW(cfg.validate());
  cfg.set("C", "0");
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = RunConfig::defaults();
  cfg.set("transition.varsigma", "0.2");
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = RunConfig::defaults();
  cfg.set("transition.theta_reading", "sideways");
  EXPECT_THROW(cfg.validate(), ConfigError);
}

TEST(RunConfig, HashIsCanonical) {
  auto a = RunConfig::defaults();
  auto b = RunConfig::defaults();
  a.set("h", "0.01");
  a.set("xi", "-2");
  b.set("run.xi", " -2 ");
  b.set("profile.h", "0.01");
  EXPECT_EQ(a.canonical(), b.canonical());
  EXPECT_EQ(a.hash(), b.hash());
  EXPECT_EQ(a.hash().size(), 16u);
  b.set("out", "/elsewhere");
  b.set("workers", "4");
  EXPECT_EQ(a.hash(), b.hash());
  b.set("xi", "-2.5");
  EXPECT_NE(a.hash(), b.hash());
}

TEST(RunConfig, LoadsIniFiles) {
  std::filesystem::create_directories(CMKDV_TEST_TMP);
  const std::string path = std::string(CMKDV_TEST_TMP) + "/cfg.ini";
  {
    std::ofstream out(path);
    out << "; comment\n[profile]\nspec = tanh\n\n[run]\ntimes = 10,20\n";
  }
  auto cfg = RunConfig::defaults();
  cfg.load_file(path);
  EXPECT_EQ(cfg.get("profile.spec"), "tanh");
  EXPECT_EQ(cfg.get_doubles("run.times").size(), 2u);
  {
    std::ofstream out(path);
    out << "[profile]\nbogus = 1\n";
  }
  EXPECT_THROW(cfg.load_file(path), InvalidConfig);
  EXPECT_THROW(cfg.load_file(path + ".missing"), InvalidConfig);
}

TEST(Writers, ScatteringJsonRoundTrip) {
  ScatteringData d;
  d.zgrid = {-2.0, 0.5, 1.0 / 3.0};
  d.r = {0.1 + 0.2 * I, -0.3 * I, 1e-300};
  d.s11 = {1.0, 1.0 + I, 2.0};
  d.s21 = d.r;
  d.eigenvalues = {I};
  d.norming = {-2.0 * I};
  d.generic = true;
  d.d_plus = 0.06;
  d.d_minus = -0.06;
  d.meta = {0.02, 1e-10, 0.01};
  const OutputMeta meta{"abcdef0123456789", std::string(module_version())};
  const std::string text = scattering_json(d, meta);
  const auto j = Json::parse(text);
  for (const char* key : {"zgrid", "r", "s11", "eigenvalues", "norming", "generic", "d_plus", "d_minus", "meta"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_EQ(j["meta"]["config_hash"], "abcdef0123456789");
  EXPECT_EQ(j["meta"]["h"], 0.02);
  const auto back = parse_scattering_json(text);
  EXPECT_EQ(back.zgrid, d.zgrid);
  EXPECT_EQ(back.r, d.r);
  EXPECT_EQ(back.eigenvalues, d.eigenvalues);
  EXPECT_EQ(back.generic, true);
  EXPECT_EQ(scattering_json(back, meta), text);
  EXPECT_THROW(parse_scattering_json("{\"zgrid\": 3}"), ConfigError);
}

TEST(Writers, AsymptoticsAndManifest) {
  const OutputMeta meta{"h", "v"};
  AsymptoticOutput p;
  p.x = -300;
  p.t = 100;
  p.q = -1.0;
  p.leading = -1.0;
  const auto j = Json::parse(asymptotics_json({p}, AsymptoticsOptions{}, meta));
  const auto& pt = j["points"][0];
  for (const char* key : {"x", "t", "xi", "s", "q", "leading", "correction", "order_estimate"}) {
    EXPECT_TRUE(pt.contains(key)) << key;
  }
  RunManifest m{20, -20, 20, 0.05, 3.75e-5, 1, {5, 2}, "tanh"};
  const auto mj = Json::parse(manifest_json(m, meta));
  EXPECT_EQ(mj["scheme"], "MOL-FD4-RK4");
  EXPECT_EQ(mj["sponge"]["width"], 5.0);
  for (const char* key : {"L", "h", "dt", "t_end"}) EXPECT_TRUE(mj.contains(key)) << key;
}

TEST(Writers, CsvFilesCarryHeaderAndColumns) {
  const OutputMeta meta{"0011223344556677", std::string(module_version())};
  const auto state = FieldState::from_function(UniformGrid::spanning(0, 1, 0.5), [](double x) { return Complex(x, -x); });
  std::ostringstream out;
  write_snapshot_csv(out, state, meta);
  const std::string text = out.str();
  EXPECT_NE(text.find("config_hash=0011223344556677"), std::string::npos);
  EXPECT_NE(text.find("\nx,re,im\n"), std::string::npos);
  EXPECT_NE(text.find("\n0.5,0.5,-0.5\n"), std::string::npos);

  std::ostringstream sig;
  write_signature_csv(sig, -2.0, -1, 1, -1, 1, 3, 3, meta);
  EXPECT_NE(sig.str().find("re_z,im_z,re_2itheta"), std::string::npos);
  EXPECT_THROW(write_signature_csv(sig, -2.0, -1, 1, -1, 1, 1, 3, meta), InvalidConfig);
}

TEST(Writers, ErrorJson) {
  const auto j = Json::parse(error_json("InvalidConfig", "bad \"quote\"", 2));
  EXPECT_EQ(j["error"]["kind"], "InvalidConfig");
  EXPECT_EQ(j["error"]["exit_code"], 2);
  EXPECT_EQ(j["version"], std::string(module_version()));
}

}  // namespace
