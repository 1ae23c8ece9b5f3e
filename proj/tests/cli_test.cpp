#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>

#include "forge/dataset.hpp"
#include "support.hpp"

namespace ts = testing_support;
namespace fs = std::filesystem;

namespace {

int run(const std::string& args) {
  const std::string cmd = std::string(FORGE_BIN) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

const char* kSmall = "--sizes 6,2,2,0 --seed 5 --jobs 2";

}  // namespace

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run(""), 2);
  EXPECT_EQ(run("frobnicate"), 2);
  EXPECT_EQ(run("build"), 2);  // --out missing
  ts::TempDir dir("cli-usage");
  const std::string out = " --out " + (dir / "d").string();
  EXPECT_EQ(run("build --task sculpture" + out), 2);
  EXPECT_EQ(run("build --task rotation --train-levels 1,2 --test-levels 2" + out), 2);
  EXPECT_EQ(run("build --task rotation --train-levels 1,2 --ratios 1:x" + out), 2);
  EXPECT_EQ(run("build --task rotation --sizes 1,2" + out), 2);
  EXPECT_EQ(run("build --interval-scheme sideways" + out), 2);
  EXPECT_EQ(run("build --config " + (dir / "nope.json").string() + out), 2);
  EXPECT_EQ(run("render-one --task rotation --level 4 --out " + (dir / "r").string()), 2);
  EXPECT_EQ(run("--help"), 0);
}

TEST(Cli, BuildVerifyStatsPad) {
  ts::TempDir dir("cli-flow");
  const std::string d = (dir / "rot").string();
  ASSERT_EQ(run("build --task rotation --train-levels 1,2 --ratios 1:2 --test-levels 3 " + std::string(kSmall) +
                " --out " + d),
            0);
  EXPECT_EQ(run("verify " + d), 0);
  EXPECT_EQ(run("stats " + d), 0);
  EXPECT_EQ(run("pad --margin 50 " + d), 0);
  EXPECT_TRUE(fs::exists(d + "_pad50/manifest.json"));
  EXPECT_EQ(run("verify " + d + "_pad50"), 0);
  const forge::json m = forge::load_manifest(d);
  EXPECT_EQ(m["spec"]["ratios"], (std::vector<int>{1, 2}));
  EXPECT_EQ(m["problems"].size(), 10u);
}

TEST(Cli, VerifyFailuresExitOne) {
  ts::TempDir dir("cli-fail");
  const std::string d = (dir / "comp").string();
  ASSERT_EQ(run("build --task composition --train-levels 1 " + std::string(kSmall) + " --out " + d), 0);
  forge::json m = forge::load_manifest(d);
  m["problems"][0]["answer_index"] = (m["problems"][0]["answer_index"].get<int>() + 1) % 4;
  std::ofstream(fs::path(d) / "manifest.json") << m.dump();
  EXPECT_EQ(run("verify " + d), 1);
  fs::remove(fs::path(d) / m["problems"][1]["images"][0]["path"].get<std::string>());
  EXPECT_EQ(run("verify " + d), 1);
  EXPECT_EQ(run("verify " + (dir / "empty").string()), 1);
}

TEST(Cli, IoErrorExitsThree) {
  ts::TempDir dir("cli-io");
  std::ofstream(dir / "file") << "x";
  EXPECT_EQ(run("build --task rotation " + std::string(kSmall) + " --out " + (dir / "file").string() + "/sub"), 3);
}

TEST(Cli, ConfigFileAndEnvironmentWithFlagPrecedence) {
  ts::TempDir dir("cli-config");
  const fs::path cfg = dir / "cfg.json";
  std::ofstream(cfg) << R"({"task": "composition", "train_levels": "1,2", "ratios": "1:3", "sizes": "4,0,0,0", "seed": 9})";
  const std::string a = (dir / "a").string(), b = (dir / "b").string(), c = (dir / "c").string();
  ASSERT_EQ(run("build --config " + cfg.string() + " --out " + a), 0);
  forge::json ma = forge::load_manifest(a);
  EXPECT_EQ(ma["spec"]["task"], "composition");
  EXPECT_EQ(ma["spec"]["seed"], "9");
  EXPECT_EQ(ma["problems"].size(), 4u);
  ASSERT_EQ(run("build --config " + cfg.string() + " --seed 10 --out " + b), 0);
  EXPECT_EQ(forge::load_manifest(b)["spec"]["seed"], "10");
  const std::string env = "FORGE_CONFIG=" + cfg.string() + " ";
  const int status = std::system((env + FORGE_BIN + " build --out " + c + " >/dev/null 2>&1").c_str());
  ASSERT_EQ(WEXITSTATUS(status), 0);
  EXPECT_EQ(ts::slurp(fs::path(c) / "manifest.json"), ts::slurp(fs::path(a) / "manifest.json"));
}

TEST(Cli, RenderOneWritesImagesAndRecord) {
  ts::TempDir dir("cli-one");
  const std::string out = (dir / "one").string();
  ASSERT_EQ(run("render-one --task composition --level 2 --seed 42 --img-size 112 --out " + out), 0);
  EXPECT_TRUE(fs::exists(fs::path(out) / "problem.json"));
  const auto img = forge::decode_png(forge::read_file((fs::path(out) / "images/single/q.png").string()));
  EXPECT_EQ(img.width, 112);
}
