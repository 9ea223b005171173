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

#ifndef NUTRIVISION_RECOMMENDER_H_
#define NUTRIVISION_RECOMMENDER_H_

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nutrivision/catalog.h"
#include "nutrivision/factorization.h"
#include "nutrivision/profile.h"
#include "nutrivision/text_features.h"

namespace nutrivision {

// ---------------------------------------------------------------------------
// BMI

enum class BmiCategory { kUnderweight, kNormal, kOverweight, kObese };

std::string_view BmiCategoryName(BmiCategory category);

struct BmiResult {
  double value = 0.0;
  BmiCategory category = BmiCategory::kNormal;
};

// <18.5 underweight, [18.5, 25) normal, [25, 30) overweight, >=30 obese.
BmiCategory CategorizeBmi(double value);

// weight / height^2. Throws Error(kInvalidAnthropometrics) on non-positive
// or non-finite inputs.
BmiResult ComputeBmi(double height_m, double weight_kg);

// ---------------------------------------------------------------------------
// Configuration

struct MacroTargets {
  double carbohydrates_g = 0.0;
  double protein_g = 0.0;
  double fat_g = 0.0;
};

// Daily macro targets keyed by "<gender>/<bmi category>", "<gender>" or
// "default", consulted in that order.
class DailyTargetTable {
 public:
  DailyTargetTable();  // shipped placeholder values
  explicit DailyTargetTable(std::map<std::string, MacroTargets> entries);

  MacroTargets For(Gender gender, BmiCategory category) const;
  const std::map<std::string, MacroTargets>& entries() const { return entries_; }

 private:
  std::map<std::string, MacroTargets> entries_;
};

struct RecommenderConfig {
  double alpha = 0.5;   // content weight in the hybrid blend
  double gamma = 0.2;   // BMI calorie adjustment
  double beta = 0.2;    // deficiency boost
  double delta = 0.1;   // recent-skip penalty
  int cold_start_min_ratings = 3;
  int window_days = 7;
  FactorOptions factors;
  StopWords stop_words;
  DailyTargetTable daily_targets;

  void Validate() const;
};

// ---------------------------------------------------------------------------
// Models and scoring

struct RecommenderModels {
  TfIdfModel tfidf;  // fitted over recipes() in catalog order
  std::optional<FactorModel> factors;
};

// Fits TF-IDF over recipe descriptions and, when any ratings exist, the
// factor model.
RecommenderModels FitModels(const RecipeCatalog& recipes,
                            std::span<const Rating> ratings,
                            const RecommenderConfig& config);

// Cosine between the health-history vector and each recipe document, in
// model document order. Empty or out-of-vocabulary history gives zeros.
std::vector<double> ContentScores(const UserProfile& profile,
                                  const TfIdfModel& model);

// Maps values linearly onto [0, 1]; a constant input maps to all zeros.
std::vector<double> MinMaxNormalize(std::span<const double> values);

// Blend over `candidates` (indices into recipes.recipes()):
//   alpha * minmax(content) + (1 - alpha) * minmax(collaborative).
// alpha is forced to 1 when the user has fewer than `cold_start_min_ratings`
// ratings in the factor model or no factor model exists.
std::vector<double> HybridScores(const UserProfile& profile,
                                 const RecipeCatalog& recipes,
                                 std::span<const size_t> candidates,
                                 const RecommenderModels& models, double alpha,
                                 int cold_start_min_ratings = 3);

struct NutrientWarning {
  std::string nutrient;  // "sugar" or "carbohydrates"
  double amount_g = 0.0;
  double limit_g = 0.0;
};

struct Recommendation {
  std::string recipe_id;
  std::string name;
  DietTag diet_tag = DietTag::kVegan;
  std::string video_url;
  NutrientProfile per_serving;
  double score = 0.0;
  std::vector<NutrientWarning> warnings;
  std::vector<std::string> rationale_terms;
};

// A warning per nutrient whose per-serving amount strictly exceeds the
// user's limit. Never drops a recipe.
std::vector<NutrientWarning> WarningsFor(const Recipe& recipe,
                                         const UserProfile& profile);

struct ScoredRecipe {
  const Recipe* recipe = nullptr;
  double score = 0.0;
};

std::vector<Recommendation> ApplyWarnings(std::span<const ScoredRecipe> scored,
                                          const UserProfile& profile);

// Full ranking pipeline: diet filter, hybrid blend, BMI calorie adjustment,
// macro-deficiency boost from the meal log window, recent-skip penalty, then
// sort by score descending with recipe id ascending as tie-break.
//
// Throws Error(kNoEligibleRecipes) when the diet filter leaves nothing.
std::vector<Recommendation> Recommend(const UserProfile& profile,
                                      std::span<const SkipRecord> skips,
                                      const RecipeCatalog& recipes,
                                      const RecommenderModels& models,
                                      const RecommenderConfig& config,
                                      Timestamp now, size_t count = 5);

}  // namespace nutrivision

#endif  // NUTRIVISION_RECOMMENDER_H_
