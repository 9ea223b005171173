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

#include <pthread.h>
#include <signal.h>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "nutrivision/api_service.h"
#include "nutrivision/catalog.h"
#include "nutrivision/config.h"
#include "nutrivision/detections.h"
#include "nutrivision/engine.h"
#include "nutrivision/error.h"
#include "nutrivision/image_codec.h"
#include "nutrivision/quantify.h"
#include "nutrivision/recommender.h"
#include "nutrivision/serialization.h"

namespace nutrivision {

namespace {

AppConfig ResolveConfig(const std::string& flag) {
  if (!flag.empty()) return LoadConfigFile(flag);
  const char* env = std::getenv(kConfigEnvVar);
  if (env != nullptr && *env != '\0') return LoadConfigFile(env);
  return DefaultConfig();
}

int ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNoReferenceFound:
    case ErrorCode::kAmbiguousReference:
      return kExitCalibrationError;
    default:
      return kExitInputError;
  }
}

void WriteFile(const std::string& path, const std::string& content) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  file << content;
  if (!file) throw Error(ErrorCode::kIoError, "cannot write " + path);
}

std::string Join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += sep;
    out += parts[i];
  }
  return out;
}

void PrintTable(const std::vector<Recommendation>& list, std::ostream& out) {
  out << std::left << std::setw(5) << "rank" << std::setw(10) << "score"
      << std::setw(8) << "recipe" << std::setw(16) << "diet" << std::setw(26)
      << "name" << std::setw(28) << "warnings" << "video\n";
  for (size_t i = 0; i < list.size(); ++i) {
    const Recommendation& r = list[i];
    std::vector<std::string> warnings;
    for (const NutrientWarning& w : r.warnings) {
      std::ostringstream s;
      s << w.nutrient << ' ' << w.amount_g << '>' << w.limit_g << 'g';
      warnings.push_back(s.str());
    }
    std::ostringstream score;
    score << std::fixed << std::setprecision(6) << r.score;
    out << std::left << std::setw(5) << i + 1 << std::setw(10) << score.str()
        << std::setw(8) << r.recipe_id << std::setw(16)
        << DietTagName(r.diet_tag) << std::setw(26) << r.name << std::setw(28)
        << (warnings.empty() ? "-" : Join(warnings, ",")) << r.video_url
        << '\n';
  }
}

int Serve(const AppConfig& config, std::ostream& out) {
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  std::shared_ptr<Engine> engine = Engine::Open(config);
  ApiServer server(engine);
  const int port = server.Bind(config.host, config.port);
  if (port < 0) {
    throw Error(ErrorCode::kIoError, "cannot bind " + config.host + ":" +
                                         std::to_string(config.port));
  }
  out << "listening on http://" << config.host << ':' << port << std::endl;

  std::thread waiter([&] {
    int sig = 0;
    sigwait(&signals, &sig);
    server.Stop();
  });
  const bool ok = server.Serve();
  pthread_kill(waiter.native_handle(), SIGTERM);
  waiter.join();
  // Bounds replay time on the next start.
  engine->store().WriteSnapshot();
  return ok ? kExitOk : kExitInputError;
}

}  // namespace

int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Plate nutrition analysis and recipe recommendation."};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path,
                 "Config file (falls back to $NUTRIVISION_CONFIG)");

  std::string image_path, detections_path, out_path;
  CLI::App* analyze = app.add_subcommand("analyze", "Quantify a plate image");
  analyze->add_option("--image", image_path, "PNG or JPEG")->required();
  analyze->add_option("--detections", detections_path, "Detection document")
      ->required();
  analyze->add_option("--config", config_path, "Config file");
  analyze->add_option("--out", out_path, "Write the report here");

  std::string user_id, store_path;
  size_t count = 5;
  bool as_json = false;
  std::optional<Timestamp> now;
  CLI::App* recommend = app.add_subcommand("recommend", "Rank recipes");
  recommend->add_option("--user", user_id, "User id")->required();
  recommend->add_option("--count", count, "Number of recipes")
      ->check(CLI::PositiveNumber);
  recommend->add_flag("--json", as_json, "Canonical JSON output");
  recommend->add_option("--config", config_path, "Config file");
  recommend->add_option("--store", store_path, "Event log path");
  recommend->add_option("--now", now, "Unix time used for windows");

  double height_m = 0.0, weight_kg = 0.0;
  CLI::App* bmi = app.add_subcommand("bmi", "Body-mass index");
  bmi->add_option("--height-m", height_m, "Height in metres")->required();
  bmi->add_option("--weight-kg", weight_kg, "Weight in kilograms")->required();

  std::string catalog_path;
  CLI::App* catalog = app.add_subcommand("catalog", "Catalog tools");
  catalog->require_subcommand(1);
  CLI::App* validate =
      catalog->add_subcommand("validate", "Check a food catalog file");
  validate->add_option("path", catalog_path, "CSV or JSON catalog")
      ->required();

  std::optional<int> port;
  std::optional<std::string> host;
  CLI::App* serve = app.add_subcommand("serve", "Run the HTTP service");
  serve->add_option("--port", port, "Listen port (0 picks one)");
  serve->add_option("--host", host, "Listen address");
  serve->add_option("--config", config_path, "Config file");
  serve->add_option("--store", store_path, "Event log path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kExitInputError;
  }

  try {
    if (*bmi) {
      const BmiResult result = ComputeBmi(height_m, weight_kg);
      out << std::fixed << std::setprecision(3) << result.value << ' '
          << BmiCategoryName(result.category) << '\n';
      return kExitOk;
    }
    if (*catalog) {
      const std::vector<CatalogDiagnostic> problems =
          ValidateFoodCatalog(ReadFileToString(catalog_path));
      for (const CatalogDiagnostic& d : problems) {
        err << catalog_path << ": "
            << (d.row > 0 ? "row " + std::to_string(d.row) : "document");
        if (!d.label.empty()) err << " (" << d.label << ")";
        err << ": " << d.message << '\n';
      }
      if (!problems.empty()) return kExitInputError;
      out << catalog_path << ": ok\n";
      return kExitOk;
    }

    AppConfig config = ResolveConfig(config_path);
    if (!store_path.empty()) {
      // A snapshot is only valid for the log it was taken from.
      config.store_path = store_path;
      config.snapshot_path = store_path + ".snapshot";
    }

    if (*analyze) {
      const FoodCatalog foods = LoadFoodCatalogFile(config.foods_path);
      const RgbImage image = ReadImageFile(image_path);
      const std::vector<Detection> detections =
          LoadDetections(ReadFileToString(detections_path), image.width(),
                         image.height(), config.detections);
      const PlateReport report =
          AnalyzePlate(image, detections, foods, config.quantifier);
      const std::string body = CanonicalDump(ToJson(report));
      if (out_path.empty()) {
        out << body << '\n';
      } else {
        WriteFile(out_path, body);
      }
      return kExitOk;
    }
    if (*recommend) {
      const std::unique_ptr<Engine> engine = Engine::Open(config);
      const std::vector<Recommendation> list =
          engine->Recommend(user_id, count, now.value_or(SystemNow()));
      if (as_json) {
        out << CanonicalDump(ToJson(list)) << '\n';
      } else {
        PrintTable(list, out);
      }
      return kExitOk;
    }
    if (*serve) {
      if (port) config.port = *port;
      if (host) config.host = *host;
      return Serve(config, out);
    }
  } catch (const Error& e) {
    err << ErrorToken(e.code()) << ": " << e.what() << '\n';
    return ExitCodeFor(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace nutrivision
