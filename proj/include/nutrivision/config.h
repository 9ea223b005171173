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

#ifndef NUTRIVISION_CONFIG_H_
#define NUTRIVISION_CONFIG_H_

#include <string>
#include <string_view>

#include "nutrivision/detections.h"
#include "nutrivision/quantify.h"
#include "nutrivision/recommender.h"

namespace nutrivision {

// Single source of truth for a run. Relative paths in a config file are
// resolved against the file's directory.
struct AppConfig {
  QuantifierConfig quantifier;
  DetectionLoadOptions detections;
  RecommenderConfig recommender;
  std::string foods_path;
  std::string recipes_path;
  std::string store_path;
  std::string snapshot_path;
  std::string host = "127.0.0.1";
  int port = 8080;
};

// Defaults pointing at the shipped data directory.
AppConfig DefaultConfig();

// Overlays the keys present in `document` on DefaultConfig(). Unknown keys
// are rejected. Throws Error(kSchemaError).
AppConfig ParseConfig(std::string_view document, const std::string& base_dir);
AppConfig LoadConfigFile(const std::string& path);

// Environment variable consulted when no --config flag is given.
inline constexpr const char* kConfigEnvVar = "NUTRIVISION_CONFIG";

}  // namespace nutrivision

#endif  // NUTRIVISION_CONFIG_H_
