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

#include "nutrivision/engine.h"

#include <algorithm>
#include <utility>

#include "nutrivision/detections.h"
#include "nutrivision/error.h"
#include "nutrivision/image_codec.h"

namespace nutrivision {

namespace {

bool SameRatings(const std::vector<Rating>& a, const std::vector<Rating>& b) {
  return std::equal(a.begin(), a.end(), b.begin(), b.end(),
                    [](const Rating& x, const Rating& y) {
                      return x.user_id == y.user_id && x.item_id == y.item_id &&
                             x.value == y.value;
                    });
}

}  // namespace

Engine::Engine(FoodCatalog foods, RecipeCatalog recipes, AppConfig config,
               std::shared_ptr<EventStore> store)
    : foods_(std::move(foods)),
      recipes_(std::move(recipes)),
      config_(std::move(config)),
      store_(std::move(store)) {
  config_.quantifier.Validate();
  config_.recommender.Validate();
}

std::unique_ptr<Engine> Engine::Open(const AppConfig& config) {
  EventStoreOptions options;
  options.path = config.store_path;
  options.snapshot_path = config.snapshot_path;
  return std::make_unique<Engine>(LoadFoodCatalogFile(config.foods_path),
                                  LoadRecipeCatalogFile(config.recipes_path),
                                  config,
                                  std::make_shared<EventStore>(options));
}

PlateReport Engine::Analyze(const RgbImage& image,
                            std::string_view detections_document) const {
  const std::vector<Detection> detections =
      LoadDetections(detections_document, image.width(), image.height(),
                     config_.detections);
  return AnalyzePlate(image, detections, foods_, config_.quantifier);
}

PlateReport Engine::AnalyzeImage(std::span<const uint8_t> image_bytes,
                                 std::string_view detections_document) const {
  return Analyze(DecodeImage(image_bytes), detections_document);
}

uint64_t Engine::UpsertProfile(const UserProfile& profile, Timestamp now) {
  profile.Validate();
  UserProfile stored = profile;
  stored.meal_log.clear();
  return store_->Append(std::move(stored), now);
}

uint64_t Engine::LogMeal(std::string_view user_id, const PlateReport& report,
                         Timestamp now) {
  store_->state()->ProfileWithHistory(user_id);  // existence check
  return store_->Append(MealLogged{std::string(user_id), report}, now);
}

uint64_t Engine::IngestFeedback(const FeedbackEvent& event) {
  event.Validate();
  store_->state()->ProfileWithHistory(event.user_id);
  recipes_.Get(event.recipe_id);
  return store_->Append(event, event.timestamp);
}

std::shared_ptr<const RecommenderModels> Engine::Models() const {
  return ModelsFor(*store_->state());
}

std::shared_ptr<const RecommenderModels> Engine::ModelsFor(
    const StoreState& state) const {
  std::vector<Rating> ratings = state.AllRatings();
  {
    std::lock_guard<std::mutex> lock(models_mu_);
    if (fitted_ != nullptr && SameRatings(fitted_->ratings, ratings)) {
      return fitted_->models;
    }
  }
  // Fit without the lock so readers of the current models never wait on a
  // refit. Two racing refits of the same ratings produce equal models.
  auto next = std::make_shared<FittedModels>();
  next->models = std::make_shared<const RecommenderModels>(
      FitModels(recipes_, ratings, config_.recommender));
  next->ratings = std::move(ratings);
  std::lock_guard<std::mutex> lock(models_mu_);
  fitted_ = next;
  return next->models;
}

std::vector<Recommendation> Engine::Recommend(std::string_view user_id,
                                              size_t count,
                                              Timestamp now) const {
  const std::shared_ptr<const StoreState> state = store_->state();
  const UserProfile profile = state->ProfileWithHistory(user_id);
  const std::vector<SkipRecord> skips = state->SkipsFor(user_id);
  return nutrivision::Recommend(profile, skips, recipes_, *ModelsFor(*state),
                                config_.recommender, now, count);
}

BmiResult Engine::Bmi(std::string_view user_id) const {
  const UserProfile profile = store_->state()->ProfileWithHistory(user_id);
  return ComputeBmi(profile.height_m, profile.weight_kg);
}

const Recipe& Engine::GetRecipe(std::string_view recipe_id) const {
  return recipes_.Get(recipe_id);
}

}  // namespace nutrivision
