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

#include "nutrivision/config.h"

#include <filesystem>
#include <initializer_list>

#include "nutrivision/catalog.h"
#include "nutrivision/error.h"
#include "nutrivision/serialization.h"

#ifndef NUTRIVISION_DATA_DIR
#define NUTRIVISION_DATA_DIR "data"
#endif

namespace nutrivision {

namespace fs = std::filesystem;

AppConfig DefaultConfig() {
  const fs::path data(NUTRIVISION_DATA_DIR);
  AppConfig c;
  c.foods_path = (data / "catalog.json").string();
  c.recipes_path = (data / "recipes.json").string();
  c.store_path = "nutrivision-events.log";
  return c;
}

namespace {

// Walks one config section, rejecting keys outside `allowed`.
class Section {
 public:
  Section(const Json& j, std::string name,
          std::initializer_list<const char*> allowed)
      : j_(j), name_(std::move(name)) {
    if (!j_.is_object()) Fail("must be an object");
    for (const auto& [key, value] : j_.items()) {
      bool known = false;
      for (const char* a : allowed) known = known || key == a;
      if (!known) Fail("unknown key '" + key + "'");
    }
  }

  bool Has(const char* key) const { return j_.contains(key); }
  const Json& Get(const char* key) const { return j_.at(key); }

  void Number(const char* key, double& target) const {
    if (!Has(key)) return;
    if (!j_[key].is_number()) Fail(std::string("'") + key + "' must be a number");
    target = j_[key].get<double>();
  }
  void Integer(const char* key, int& target) const {
    if (!Has(key)) return;
    if (!j_[key].is_number_integer()) {
      Fail(std::string("'") + key + "' must be an integer");
    }
    target = j_[key].get<int>();
  }
  void Bool(const char* key, bool& target) const {
    if (!Has(key)) return;
    if (!j_[key].is_boolean()) Fail(std::string("'") + key + "' must be a boolean");
    target = j_[key].get<bool>();
  }
  void String(const char* key, std::string& target) const {
    if (!Has(key)) return;
    if (!j_[key].is_string()) Fail(std::string("'") + key + "' must be a string");
    target = j_[key].get<std::string>();
  }

  [[noreturn]] void Fail(const std::string& message) const {
    throw Error(ErrorCode::kSchemaError, "config " + name_ + ": " + message);
  }

 private:
  const Json& j_;
  std::string name_;
};

std::string Resolve(const std::string& path, const std::string& base_dir) {
  if (path.empty() || base_dir.empty()) return path;
  const fs::path p(path);
  return p.is_absolute() ? path : (fs::path(base_dir) / p).string();
}

}  // namespace

AppConfig ParseConfig(std::string_view document, const std::string& base_dir) {
  const Json doc = ParseJson(document, "config");
  AppConfig c = DefaultConfig();
  const Section top(doc, "file",
                    {"reference", "quantifier", "detections", "recommender",
                     "store", "catalog", "service"});

  if (top.Has("reference")) {
    const Section s(top.Get("reference"), "reference",
                    {"real_diameter_mm", "color", "min_area_px", "max_area_px",
                     "min_fill_ratio", "ambiguity_margin", "despeckle"});
    ReferenceSpec& r = c.quantifier.reference;
    s.Number("real_diameter_mm", r.real_diameter_mm);
    s.Number("min_area_px", r.min_area_px);
    s.Number("max_area_px", r.max_area_px);
    s.Number("min_fill_ratio", r.min_fill_ratio);
    s.Number("ambiguity_margin", r.ambiguity_margin);
    s.Bool("despeckle", r.despeckle);
    if (s.Has("color")) {
      const Section h(s.Get("color"), "reference.color",
                      {"h_min", "h_max", "s_min", "s_max", "v_min", "v_max"});
      h.Number("h_min", r.color.h_min);
      h.Number("h_max", r.color.h_max);
      h.Number("s_min", r.color.s_min);
      h.Number("s_max", r.color.s_max);
      h.Number("v_min", r.color.v_min);
      h.Number("v_max", r.color.v_max);
    }
  }
  if (top.Has("quantifier")) {
    const Section s(top.Get("quantifier"), "quantifier", {"box_fill_factor"});
    s.Number("box_fill_factor", c.quantifier.box_fill_factor);
  }
  if (top.Has("detections")) {
    const Section s(top.Get("detections"), "detections",
                    {"confidence_threshold"});
    s.Number("confidence_threshold", c.detections.confidence_threshold);
  }
  if (top.Has("recommender")) {
    const Section s(top.Get("recommender"), "recommender",
                    {"alpha", "gamma", "beta", "delta", "rank_k", "lambda",
                     "iterations", "seed", "stop_words", "daily_targets",
                     "cold_start_min_ratings", "window_days"});
    RecommenderConfig& r = c.recommender;
    s.Number("alpha", r.alpha);
    s.Number("gamma", r.gamma);
    s.Number("beta", r.beta);
    s.Number("delta", r.delta);
    s.Integer("rank_k", r.factors.rank);
    s.Number("lambda", r.factors.lambda);
    s.Integer("iterations", r.factors.iterations);
    s.Integer("cold_start_min_ratings", r.cold_start_min_ratings);
    s.Integer("window_days", r.window_days);
    if (s.Has("seed")) {
      const Json& seed = s.Get("seed");
      if (!seed.is_number_unsigned()) s.Fail("'seed' must be a non-negative integer");
      r.factors.seed = seed.get<uint64_t>();
    }
    if (s.Has("stop_words")) {
      const Json& words = s.Get("stop_words");
      if (!words.is_array()) s.Fail("'stop_words' must be an array");
      r.stop_words.clear();
      for (const Json& w : words) {
        if (!w.is_string()) s.Fail("'stop_words' entries must be strings");
        r.stop_words.insert(CanonicalLabel(w.get<std::string>()));
      }
    }
    if (s.Has("daily_targets")) {
      const Json& table = s.Get("daily_targets");
      if (!table.is_object()) s.Fail("'daily_targets' must be an object");
      std::map<std::string, MacroTargets> entries;
      for (const auto& [key, value] : table.items()) {
        const Section t(value, "recommender.daily_targets." + key,
                        {"carbohydrates_g", "protein_g", "fat_g"});
        MacroTargets m;
        t.Number("carbohydrates_g", m.carbohydrates_g);
        t.Number("protein_g", m.protein_g);
        t.Number("fat_g", m.fat_g);
        entries[key] = m;
      }
      r.daily_targets = DailyTargetTable(std::move(entries));
    }
  }
  if (top.Has("store")) {
    const Section s(top.Get("store"), "store", {"path", "snapshot_path"});
    s.String("path", c.store_path);
    s.String("snapshot_path", c.snapshot_path);
    c.store_path = Resolve(c.store_path, base_dir);
    c.snapshot_path = Resolve(c.snapshot_path, base_dir);
  }
  if (top.Has("catalog")) {
    const Section s(top.Get("catalog"), "catalog", {"foods", "recipes"});
    if (s.Has("foods")) {
      s.String("foods", c.foods_path);
      c.foods_path = Resolve(c.foods_path, base_dir);
    }
    if (s.Has("recipes")) {
      s.String("recipes", c.recipes_path);
      c.recipes_path = Resolve(c.recipes_path, base_dir);
    }
  }
  if (top.Has("service")) {
    const Section s(top.Get("service"), "service", {"host", "port"});
    s.String("host", c.host);
    s.Integer("port", c.port);
    if (c.port < 0 || c.port > 65535) s.Fail("'port' must lie in [0, 65535]");
  }

  c.quantifier.Validate();
  c.recommender.Validate();
  if (c.detections.confidence_threshold < 0.0 ||
      c.detections.confidence_threshold > 1.0) {
    throw Error(ErrorCode::kSchemaError,
                "config detections: confidence_threshold must lie in [0, 1]");
  }
  return c;
}

AppConfig LoadConfigFile(const std::string& path) {
  const fs::path p(path);
  return ParseConfig(ReadFileToString(path), p.parent_path().string());
}

}  // namespace nutrivision
