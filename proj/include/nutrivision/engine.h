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

#ifndef NUTRIVISION_ENGINE_H_
#define NUTRIVISION_ENGINE_H_

#include <cstdint>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nutrivision/catalog.h"
#include "nutrivision/config.h"
#include "nutrivision/image.h"
#include "nutrivision/profile.h"
#include "nutrivision/quantify.h"
#include "nutrivision/recommender.h"
#include "nutrivision/store.h"

namespace nutrivision {

// Catalogs, configuration and the event store wired together. Both the HTTP
// service and the CLI call through here so their outputs cannot diverge.
//
// Thread-safe. Reads work on immutable store snapshots; the fitted models are
// rebuilt lazily when the rating set changes.
class Engine {
 public:
  Engine(FoodCatalog foods, RecipeCatalog recipes, AppConfig config,
         std::shared_ptr<EventStore> store);

  // Loads catalogs and opens the store named by `config`.
  static std::unique_ptr<Engine> Open(const AppConfig& config);

  PlateReport Analyze(const RgbImage& image,
                      std::string_view detections_document) const;
  // Decodes PNG/JPEG bytes first.
  PlateReport AnalyzeImage(std::span<const uint8_t> image_bytes,
                           std::string_view detections_document) const;

  // Each write returns the store sequence number.
  uint64_t UpsertProfile(const UserProfile& profile, Timestamp now);
  // Throws Error(kUnknownUser).
  uint64_t LogMeal(std::string_view user_id, const PlateReport& report,
                   Timestamp now);
  // Throws Error(kUnknownUser) or Error(kUnknownRecipe).
  uint64_t IngestFeedback(const FeedbackEvent& event);

  // Throws Error(kUnknownUser) or Error(kNoEligibleRecipes).
  std::vector<Recommendation> Recommend(std::string_view user_id,
                                        size_t count, Timestamp now) const;
  BmiResult Bmi(std::string_view user_id) const;
  // Throws Error(kUnknownRecipe).
  const Recipe& GetRecipe(std::string_view recipe_id) const;

  // Models fitted on the current rating set.
  std::shared_ptr<const RecommenderModels> Models() const;

  const FoodCatalog& foods() const { return foods_; }
  const RecipeCatalog& recipes() const { return recipes_; }
  const AppConfig& config() const { return config_; }
  EventStore& store() const { return *store_; }

 private:
  struct FittedModels {
    std::vector<Rating> ratings;
    std::shared_ptr<const RecommenderModels> models;
  };

  std::shared_ptr<const RecommenderModels> ModelsFor(
      const StoreState& state) const;

  FoodCatalog foods_;
  RecipeCatalog recipes_;
  AppConfig config_;
  std::shared_ptr<EventStore> store_;

  mutable std::mutex models_mu_;
  mutable std::shared_ptr<const FittedModels> fitted_;
};

}  // namespace nutrivision

#endif  // NUTRIVISION_ENGINE_H_
