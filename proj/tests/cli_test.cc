/* Copyright 2026 The NutriVision Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "cli.h"

#include <fcntl.h>
#include <signal.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include "nutrivision/catalog.h"
#include "nutrivision/config.h"
#include "nutrivision/detections.h"
#include "nutrivision/image_codec.h"
#include "nutrivision/quantify.h"
#include "nutrivision/serialization.h"
#include "nutrivision/store.h"
#include "test_util.h"
#include "testing/synthetic_scene.h"
// Last: resolv.h, pulled in here, defines a macro that clashes with Eigen.
#include "httplib.h"

extern char** environ;

namespace nutrivision {
namespace {

const std::string kData = NUTRIVISION_DATA_DIR;
const std::string kConfig = kData + "/config.json";
const std::string kPng = kData + "/fixtures/plate.png";
const std::string kDoc = kData + "/fixtures/plate.detections.json";

struct CliRun {
  int code = -1;
  std::string out;
  std::string err;
};

CliRun Cli(std::vector<std::string> args) {
  args.insert(args.begin(), "nutrivision");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  CliRun r;
  r.code = RunCli(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

// A store holding one vegan profile.
std::string SeedStore(const TempDir& dir, DietTag diet = DietTag::kVegan) {
  const std::string path = dir.File("events.log");
  EventStoreOptions options;
  options.path = path;
  EventStore store(options);
  UserProfile p;
  p.user_id = "alice";
  p.height_m = 1.6;
  p.weight_kg = 52;
  p.diet_pref = diet;
  p.health_history = "diabetes low sugar";
  store.Append(p, 1000);
  return path;
}

TEST(CliTest, AnalyzeFixtureMatchesLibraryBytes) {
  TempDir dir;
  const std::string out_path = dir.File("report.json");
  const CliRun r = Cli({"analyze", "--image", kPng, "--detections", kDoc,
                     "--config", kConfig, "--out", out_path});
  ASSERT_EQ(r.code, kExitOk) << r.err;

  const AppConfig config = LoadConfigFile(kConfig);
  const RgbImage image = ReadImageFile(kPng);
  const PlateReport report = AnalyzePlate(
      image,
      LoadDetections(ReadFileToString(kDoc), image.width(), image.height(),
                     config.detections),
      LoadFoodCatalogFile(config.foods_path), config.quantifier);
  const std::string expected = CanonicalDump(ToJson(report));
  EXPECT_EQ(ReadFileToString(out_path), expected);

  const CliRun to_stdout = Cli({"analyze", "--image", kPng, "--detections", kDoc,
                             "--config", kConfig});
  EXPECT_EQ(to_stdout.code, kExitOk);
  EXPECT_EQ(to_stdout.out, expected + "\n");
}

TEST(CliTest, AnalyzeWithoutCoinExitsTwo) {
  TempDir dir;
  testing::SceneSpec spec = testing::FixtureSceneSpec();
  spec.draw_coin = false;
  const testing::Scene scene = testing::RenderScene(spec);
  const std::vector<uint8_t> png = EncodePng(scene.image);
  const std::string image = dir.File("plate.png");
  const std::string doc = dir.File("plate.json");
  {
    std::ofstream(image, std::ios::binary)
        .write(reinterpret_cast<const char*>(png.data()),
               static_cast<std::streamsize>(png.size()));
    std::ofstream(doc) << testing::DetectionsDocument(scene);
  }
  const CliRun r = Cli({"analyze", "--image", image, "--detections", doc,
                     "--config", kConfig});
  EXPECT_EQ(r.code, kExitCalibrationError);
  EXPECT_TRUE(r.out.empty());
  EXPECT_NE(r.err.find("NO_REFERENCE_FOUND"), std::string::npos) << r.err;
}

TEST(CliTest, AnalyzeInputErrorsExitOne) {
  TempDir dir;
  const std::string doc = dir.File("bad.json");
  std::ofstream(doc) << R"({"image_width": 640, "detections": )";
  CliRun r = Cli({"analyze", "--image", kPng, "--detections", doc, "--config",
               kConfig});
  EXPECT_EQ(r.code, kExitInputError);
  EXPECT_NE(r.err.find("SCHEMA_ERROR"), std::string::npos) << r.err;

  r = Cli({"analyze", "--image", dir.File("missing.png"), "--detections", kDoc,
           "--config", kConfig});
  EXPECT_EQ(r.code, kExitInputError);

  r = Cli({"analyze", "--image", kPng});
  EXPECT_EQ(r.code, kExitInputError);
  EXPECT_NE(r.err.find("--detections"), std::string::npos) << r.err;
}

TEST(CliTest, RecommendTableAndJson) {
  TempDir dir;
  const std::string store = SeedStore(dir);
  CliRun r = Cli({"recommend", "--user", "alice", "--config", kConfig, "--store",
               store, "--now", "1700000000"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  std::istringstream lines(r.out);
  std::string line;
  std::vector<std::string> rows;
  while (std::getline(lines, line)) rows.push_back(line);
  ASSERT_EQ(rows.size(), 6u) << r.out;  // header plus five recipes
  EXPECT_EQ(rows[0].rfind("rank", 0), 0u);
  for (size_t i = 1; i < rows.size(); ++i) {
    EXPECT_NE(rows[i].find("vegan"), std::string::npos) << rows[i];
    EXPECT_EQ(rows[i].find("non-vegetarian"), std::string::npos) << rows[i];
  }

  r = Cli({"recommend", "--user", "alice", "--config", kConfig, "--store",
           store, "--now", "1700000000", "--json", "--count", "3"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const Json list = Json::parse(r.out);
  ASSERT_EQ(list.size(), 3u);
  for (const Json& j : list) EXPECT_EQ(j["diet_tag"], "vegan");
}

TEST(CliTest, RecommendFlagsAreTheLastWord) {
  TempDir dir;
  const std::string store = SeedStore(dir, DietTag::kNonVegetarian);
  // The environment points at a config whose store holds nobody.
  const std::string other = dir.File("other.json");
  std::ofstream(other) << R"({"store": {"path": "empty.log"}})";
  ::setenv(kConfigEnvVar, other.c_str(), 1);
  CliRun r = Cli({"recommend", "--user", "alice", "--now", "1700000000"});
  EXPECT_EQ(r.code, kExitInputError);
  EXPECT_NE(r.err.find("UNKNOWN_USER"), std::string::npos) << r.err;
  r = Cli({"recommend", "--user", "alice", "--store", store, "--now",
           "1700000000", "--json"});
  ::unsetenv(kConfigEnvVar);
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(Json::parse(r.out).size(), 5u);
}

TEST(CliTest, RecommendErrors) {
  TempDir dir;
  const std::string store = SeedStore(dir);
  CliRun r = Cli({"recommend", "--user", "bob", "--config", kConfig, "--store",
               store});
  EXPECT_EQ(r.code, kExitInputError);
  EXPECT_NE(r.err.find("UNKNOWN_USER"), std::string::npos);
  r = Cli({"recommend", "--user", "alice", "--count", "0", "--config", kConfig,
           "--store", store});
  EXPECT_EQ(r.code, kExitInputError);
}

TEST(CliTest, Bmi) {
  CliRun r = Cli({"bmi", "--height-m", "1.75", "--weight-kg", "70"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out, "22.857 normal\n");
  r = Cli({"bmi", "--height-m", "1.75", "--weight-kg", "50"});
  EXPECT_EQ(r.out, "16.327 underweight\n");
  r = Cli({"bmi", "--height-m", "1", "--weight-kg", "30"});
  EXPECT_EQ(r.out, "30.000 obese\n");
  r = Cli({"bmi", "--height-m", "0", "--weight-kg", "70"});
  EXPECT_EQ(r.code, kExitInputError);
  EXPECT_NE(r.err.find("INVALID_ANTHROPOMETRICS"), std::string::npos);
}

TEST(CliTest, CatalogValidate) {
  TempDir dir;
  CliRun r = Cli({"catalog", "validate", kData + "/catalog.csv"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out, kData + "/catalog.csv: ok\n");
  EXPECT_EQ(Cli({"catalog", "validate", kData + "/catalog.json"}).code, kExitOk);

  const std::string dup = dir.File("dup.csv");
  std::ofstream(dup)
      << "label,default_height_cm,density_g_per_cc,calories,carbohydrates_g,"
         "protein_g,fat_g,sugar_g\n"
         "apple,7,0.6,52,13.8,0.3,0.2,10.4\n"
         "rice,2,0.9,130,28,2.7,0.3,0.1\n"
         "Apple,7,0.6,52,13.8,0.3,0.2,10.4\n";
  r = Cli({"catalog", "validate", dup});
  EXPECT_EQ(r.code, kExitInputError);
  EXPECT_TRUE(r.out.empty());
  EXPECT_NE(r.err.find("row 3 (apple)"), std::string::npos) << r.err;

  r = Cli({"catalog", "validate", dir.File("none.csv")});
  EXPECT_EQ(r.code, kExitInputError);
}

TEST(CliTest, UsageErrors) {
  EXPECT_EQ(Cli({}).code, kExitInputError);
  EXPECT_EQ(Cli({"launch"}).code, kExitInputError);
  EXPECT_EQ(Cli({"bmi", "--height-m", "tall", "--weight-kg", "70"}).code,
            kExitInputError);
  const CliRun help = Cli({"--help"});
  EXPECT_EQ(help.code, kExitOk);
  EXPECT_NE(help.out.find("analyze"), std::string::npos);
}

// Launches the real binary, reads the bound port from its first line of
// output, makes one request and stops it with SIGTERM.
TEST(CliTest, ServeSmoke) {
  TempDir dir;
  const std::string store = SeedStore(dir);
  int pipe_fds[2];
  ASSERT_EQ(::pipe(pipe_fds), 0);
  posix_spawn_file_actions_t actions;
  posix_spawn_file_actions_init(&actions);
  posix_spawn_file_actions_adddup2(&actions, pipe_fds[1], STDOUT_FILENO);
  posix_spawn_file_actions_addclose(&actions, pipe_fds[0]);
  const std::vector<std::string> args = {
      NUTRIVISION_BINARY, "serve", "--port", "0", "--config", kConfig,
      "--store", store};
  std::vector<char*> argv;
  for (const std::string& a : args) argv.push_back(const_cast<char*>(a.c_str()));
  argv.push_back(nullptr);
  pid_t pid = 0;
  ASSERT_EQ(posix_spawn(&pid, argv[0], &actions, nullptr, argv.data(), environ),
            0);
  posix_spawn_file_actions_destroy(&actions);
  ::close(pipe_fds[1]);

  std::string line;
  char c = 0;
  while (::read(pipe_fds[0], &c, 1) == 1 && c != '\n') line.push_back(c);
  ::close(pipe_fds[0]);
  const std::string prefix = "listening on http://127.0.0.1:";
  ASSERT_EQ(line.rfind(prefix, 0), 0u) << line;
  const int port = std::stoi(line.substr(prefix.size()));
  ASSERT_GT(port, 0);

  httplib::Client client("127.0.0.1", port);
  const auto res = client.Get("/v1/recipes/r01");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  EXPECT_EQ(Json::parse(res->body)["id"], "r01");
  const auto bmi = client.Get("/v1/users/alice/bmi");
  ASSERT_TRUE(bmi);
  EXPECT_EQ(bmi->body, R"({"category":"normal","value":20.3125})");

  ASSERT_EQ(::kill(pid, SIGTERM), 0);
  int status = 0;
  ASSERT_EQ(::waitpid(pid, &status, 0), pid);
  ASSERT_TRUE(WIFEXITED(status));
  EXPECT_EQ(WEXITSTATUS(status), kExitOk);
  // Clean shutdown leaves a snapshot next to the log.
  EXPECT_TRUE(std::filesystem::exists(store + ".snapshot"));
  EXPECT_EQ(ReplayLog(store, store + ".snapshot").state.profiles.size(), 1u);
}

}  // namespace
}  // namespace nutrivision
