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

#include "nutrivision/recommender.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <utility>

#include "nutrivision/error.h"

namespace nutrivision {

std::string_view BmiCategoryName(BmiCategory category) {
  switch (category) {
    case BmiCategory::kUnderweight: return "underweight";
    case BmiCategory::kNormal: return "normal";
    case BmiCategory::kOverweight: return "overweight";
    case BmiCategory::kObese: return "obese";
  }
  return "normal";
}

BmiCategory CategorizeBmi(double value) {
  if (value < 18.5) return BmiCategory::kUnderweight;
  if (value < 25.0) return BmiCategory::kNormal;
  if (value < 30.0) return BmiCategory::kOverweight;
  return BmiCategory::kObese;
}

BmiResult ComputeBmi(double height_m, double weight_kg) {
  if (!(height_m > 0.0) || !(weight_kg > 0.0) || !std::isfinite(height_m) ||
      !std::isfinite(weight_kg)) {
    throw Error(ErrorCode::kInvalidAnthropometrics,
                "height and weight must be positive");
  }
  BmiResult r;
  r.value = weight_kg / (height_m * height_m);
  r.category = CategorizeBmi(r.value);
  return r;
}

// Placeholder targets, roughly general adult daily values; override in the
// config file.
DailyTargetTable::DailyTargetTable()
    : entries_({
          {"default", {275.0, 50.0, 78.0}},
          {"female", {250.0, 46.0, 70.0}},
          {"male", {300.0, 56.0, 80.0}},
          {"female/underweight", {290.0, 55.0, 80.0}},
          {"male/underweight", {340.0, 65.0, 90.0}},
          {"female/obese", {200.0, 50.0, 55.0}},
          {"male/obese", {240.0, 60.0, 65.0}},
      }) {}

DailyTargetTable::DailyTargetTable(std::map<std::string, MacroTargets> entries)
    : entries_(std::move(entries)) {
  if (!entries_.contains("default")) {
    throw Error(ErrorCode::kSchemaError,
                "daily_targets needs a 'default' entry");
  }
  for (const auto& [key, t] : entries_) {
    if (!(t.carbohydrates_g > 0.0 && t.protein_g > 0.0 && t.fat_g > 0.0)) {
      throw Error(ErrorCode::kSchemaError,
                  "daily_targets '" + key + "' needs positive values");
    }
  }
}

MacroTargets DailyTargetTable::For(Gender gender, BmiCategory category) const {
  const std::string g(GenderName(gender));
  for (const std::string& key :
       {g + "/" + std::string(BmiCategoryName(category)), g,
        std::string("default")}) {
    if (auto it = entries_.find(key); it != entries_.end()) return it->second;
  }
  return {275.0, 50.0, 78.0};
}

void RecommenderConfig::Validate() const {
  if (alpha < 0.0 || alpha > 1.0) {
    throw Error(ErrorCode::kSchemaError, "alpha must lie in [0, 1]");
  }
  if (gamma < 0.0 || beta < 0.0 || delta < 0.0) {
    throw Error(ErrorCode::kSchemaError,
                "gamma, beta and delta must be non-negative");
  }
  if (window_days < 1) {
    throw Error(ErrorCode::kSchemaError, "window_days must be >= 1");
  }
  if (cold_start_min_ratings < 0) {
    throw Error(ErrorCode::kSchemaError,
                "cold_start_min_ratings must be >= 0");
  }
  factors.Validate();
}

RecommenderModels FitModels(const RecipeCatalog& recipes,
                            std::span<const Rating> ratings,
                            const RecommenderConfig& config) {
  std::vector<std::string> docs;
  docs.reserve(recipes.size());
  for (const Recipe& r : recipes.recipes()) docs.push_back(r.description);
  RecommenderModels models{FitTfIdf(docs, config.stop_words), std::nullopt};
  if (!ratings.empty()) models.factors = FitFactors(ratings, config.factors);
  return models;
}

std::vector<double> ContentScores(const UserProfile& profile,
                                  const TfIdfModel& model) {
  const SparseVector user = model.Vectorize(profile.health_history);
  std::vector<double> scores;
  scores.reserve(model.doc_vectors().size());
  for (const SparseVector& doc : model.doc_vectors()) {
    scores.push_back(Cosine(user, doc));
  }
  return scores;
}

std::vector<double> MinMaxNormalize(std::span<const double> values) {
  std::vector<double> out(values.size(), 0.0);
  if (values.empty()) return out;
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  const double range = *hi - *lo;
  if (!(range > 0.0)) return out;
  for (size_t i = 0; i < values.size(); ++i) {
    out[i] = (values[i] - *lo) / range;
  }
  return out;
}

std::vector<double> HybridScores(const UserProfile& profile,
                                 const RecipeCatalog& recipes,
                                 std::span<const size_t> candidates,
                                 const RecommenderModels& models, double alpha,
                                 int cold_start_min_ratings) {
  const std::vector<double> all_content = ContentScores(profile, models.tfidf);
  std::vector<double> content;
  content.reserve(candidates.size());
  for (size_t c : candidates) content.push_back(all_content[c]);

  const bool cold =
      !models.factors.has_value() ||
      models.factors->RatingCount(profile.user_id) < cold_start_min_ratings;
  if (cold) alpha = 1.0;

  std::vector<double> collab(candidates.size(), 0.0);
  if (models.factors && alpha < 1.0) {
    for (size_t k = 0; k < candidates.size(); ++k) {
      collab[k] = models.factors->Predict(profile.user_id,
                                          recipes.recipes()[candidates[k]].id);
    }
  }

  const std::vector<double> content_n = MinMaxNormalize(content);
  const std::vector<double> collab_n = MinMaxNormalize(collab);
  std::vector<double> out(candidates.size());
  for (size_t k = 0; k < candidates.size(); ++k) {
    out[k] = alpha * content_n[k] + (1.0 - alpha) * collab_n[k];
  }
  return out;
}

std::vector<NutrientWarning> WarningsFor(const Recipe& recipe,
                                         const UserProfile& profile) {
  std::vector<NutrientWarning> warnings;
  if (recipe.per_serving.sugar_g > profile.sugar_limit_g) {
    warnings.push_back(
        {"sugar", recipe.per_serving.sugar_g, profile.sugar_limit_g});
  }
  if (recipe.per_serving.carbohydrates_g > profile.carb_limit_g) {
    warnings.push_back({"carbohydrates", recipe.per_serving.carbohydrates_g,
                        profile.carb_limit_g});
  }
  return warnings;
}

std::vector<Recommendation> ApplyWarnings(std::span<const ScoredRecipe> scored,
                                          const UserProfile& profile) {
  std::vector<Recommendation> out;
  out.reserve(scored.size());
  for (const ScoredRecipe& s : scored) {
    Recommendation rec;
    rec.recipe_id = s.recipe->id;
    rec.name = s.recipe->name;
    rec.diet_tag = s.recipe->diet_tag;
    rec.video_url = s.recipe->video_url;
    rec.per_serving = s.recipe->per_serving;
    rec.score = s.score;
    rec.warnings = WarningsFor(*s.recipe, profile);
    out.push_back(std::move(rec));
  }
  return out;
}

namespace {

constexpr size_t kRationaleTerms = 3;

bool InWindow(Timestamp t, Timestamp now, int window_days) {
  return t <= now && t > now - static_cast<Timestamp>(window_days) * kSecondsPerDay;
}

// Terms contributing most to the cosine between user and document.
std::vector<std::string> RationaleTerms(const SparseVector& user,
                                        const SparseVector& doc,
                                        const TfIdfModel& model) {
  std::vector<std::pair<double, int>> contributions;
  auto iu = user.begin();
  auto id = doc.begin();
  while (iu != user.end() && id != doc.end()) {
    if (iu->first < id->first) {
      ++iu;
    } else if (id->first < iu->first) {
      ++id;
    } else {
      contributions.emplace_back(iu->second * id->second, iu->first);
      ++iu;
      ++id;
    }
  }
  std::sort(contributions.begin(), contributions.end(),
            [&](const auto& a, const auto& b) {
              if (a.first != b.first) return a.first > b.first;
              return model.terms()[a.second] < model.terms()[b.second];
            });
  std::vector<std::string> terms;
  for (size_t i = 0; i < contributions.size() && i < kRationaleTerms; ++i) {
    terms.push_back(model.terms()[contributions[i].second]);
  }
  return terms;
}

}  // namespace

std::vector<Recommendation> Recommend(const UserProfile& profile,
                                      std::span<const SkipRecord> skips,
                                      const RecipeCatalog& recipes,
                                      const RecommenderModels& models,
                                      const RecommenderConfig& config,
                                      Timestamp now, size_t count) {
  config.Validate();
  const std::vector<Recipe>& all = recipes.recipes();

  // (1) hard diet filter
  std::vector<size_t> candidates;
  for (size_t i = 0; i < all.size(); ++i) {
    if (DietAllows(profile.diet_pref, all[i].diet_tag)) candidates.push_back(i);
  }
  if (candidates.empty()) {
    throw Error(ErrorCode::kNoEligibleRecipes,
                "no recipe matches diet preference '" +
                    std::string(DietTagName(profile.diet_pref)) + "'");
  }

  // (2) hybrid blend
  std::vector<double> scores =
      HybridScores(profile, recipes, candidates, models, config.alpha,
                   config.cold_start_min_ratings);

  auto normalized = [&](auto field) {
    std::vector<double> v;
    v.reserve(candidates.size());
    for (size_t c : candidates) v.push_back(field(all[c].per_serving));
    return MinMaxNormalize(v);
  };

  // (3) BMI calorie adjustment
  const BmiResult bmi = ComputeBmi(profile.height_m, profile.weight_kg);
  double calorie_sign = 0.0;
  if (bmi.category == BmiCategory::kUnderweight) calorie_sign = 1.0;
  if (bmi.category == BmiCategory::kOverweight ||
      bmi.category == BmiCategory::kObese) {
    calorie_sign = -1.0;
  }
  if (calorie_sign != 0.0) {
    const std::vector<double> cal =
        normalized([](const NutrientProfile& p) { return p.calories; });
    for (size_t k = 0; k < candidates.size(); ++k) {
      scores[k] += calorie_sign * config.gamma * cal[k];
    }
  }

  // (4) macro deficiency boost over the trailing window
  NutrientProfile intake;
  bool any_meal = false;
  for (const MealLogEntry& meal : profile.meal_log) {
    if (!InWindow(meal.timestamp, now, config.window_days)) continue;
    intake += meal.report.totals;
    any_meal = true;
  }
  if (any_meal) {
    const MacroTargets target =
        config.daily_targets.For(profile.gender, bmi.category);
    const double days = config.window_days;
    struct Macro {
      double mean_intake;
      double target;
      double (*field)(const NutrientProfile&);
    };
    const Macro macros[] = {
        {intake.carbohydrates_g / days, target.carbohydrates_g,
         [](const NutrientProfile& p) { return p.carbohydrates_g; }},
        {intake.protein_g / days, target.protein_g,
         [](const NutrientProfile& p) { return p.protein_g; }},
        {intake.fat_g / days, target.fat_g,
         [](const NutrientProfile& p) { return p.fat_g; }},
    };
    for (const Macro& m : macros) {
      if (!(m.mean_intake < m.target)) continue;
      const double deficit = (m.target - m.mean_intake) / m.target;
      const std::vector<double> content = normalized(m.field);
      for (size_t k = 0; k < candidates.size(); ++k) {
        scores[k] += config.beta * deficit * content[k];
      }
    }
  }

  // (5) recent-skip penalty
  std::set<std::string, std::less<>> skipped;
  for (const SkipRecord& s : skips) {
    if (InWindow(s.timestamp, now, config.window_days)) skipped.insert(s.recipe_id);
  }
  for (size_t k = 0; k < candidates.size(); ++k) {
    if (skipped.contains(all[candidates[k]].id)) scores[k] -= config.delta;
  }

  // (6) rank, truncate, annotate
  std::vector<ScoredRecipe> ranked;
  ranked.reserve(candidates.size());
  for (size_t k = 0; k < candidates.size(); ++k) {
    ranked.push_back({&all[candidates[k]], scores[k]});
  }
  std::sort(ranked.begin(), ranked.end(),
            [](const ScoredRecipe& a, const ScoredRecipe& b) {
              if (a.score != b.score) return a.score > b.score;
              return a.recipe->id < b.recipe->id;
            });
  if (ranked.size() > count) ranked.resize(count);

  std::vector<Recommendation> out = ApplyWarnings(ranked, profile);
  const SparseVector user = models.tfidf.Vectorize(profile.health_history);
  for (size_t k = 0; k < out.size(); ++k) {
    const size_t doc = static_cast<size_t>(ranked[k].recipe - all.data());
    if (doc < models.tfidf.doc_vectors().size()) {
      out[k].rationale_terms =
          RationaleTerms(user, models.tfidf.doc_vectors()[doc], models.tfidf);
    }
  }
  return out;
}

}  // namespace nutrivision
