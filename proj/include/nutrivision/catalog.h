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

#ifndef NUTRIVISION_CATALOG_H_
#define NUTRIVISION_CATALOG_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace nutrivision {

// Macro and energy content of some amount of food. micros are milligrams.
struct NutrientProfile {
  double calories = 0.0;
  double carbohydrates_g = 0.0;
  double protein_g = 0.0;
  double fat_g = 0.0;
  double sugar_g = 0.0;
  std::map<std::string, double> micros;

  // Every value scaled by `factor`.
  NutrientProfile Scaled(double factor) const;
  NutrientProfile& operator+=(const NutrientProfile& other);

  // Throws Error(kSchemaError) on negative or non-finite values or when
  // sugar exceeds carbohydrates. `context` prefixes the message.
  void Validate(std::string_view context) const;

  friend bool operator==(const NutrientProfile&,
                         const NutrientProfile&) = default;
};

struct FoodClassSpec {
  std::string label;
  double default_height_cm = 0.0;
  double density_g_per_cc = 0.0;
  NutrientProfile per_100g;
};

// Ordered by permissiveness: a user preferring tag T may eat any recipe whose
// tag is <= T.
enum class DietTag { kVegan = 0, kVegetarian = 1, kNonVegetarian = 2 };

std::string_view DietTagName(DietTag tag);
// Accepts "vegan", "vegetarian", "non-vegetarian" (also "non_vegetarian",
// "nonvegetarian"). Throws Error(kSchemaError) otherwise.
DietTag ParseDietTag(std::string_view name);
bool DietAllows(DietTag preference, DietTag recipe);

struct Recipe {
  std::string id;
  std::string name;
  std::string description;
  DietTag diet_tag = DietTag::kVegan;
  NutrientProfile per_serving;
  std::string video_url;
};

// Lowercases ASCII and trims surrounding whitespace.
std::string CanonicalLabel(std::string_view label);

// One row-level problem found while validating a catalog document.
struct CatalogDiagnostic {
  int row = 0;  // 1-based data row; 0 for document-level problems.
  std::string label;
  std::string message;
};

// Immutable table of food classes keyed by canonical label.
class FoodCatalog {
 public:
  FoodCatalog() = default;
  // Throws Error(kDuplicateLabel) or Error(kSchemaError) on invalid rows.
  explicit FoodCatalog(std::vector<FoodClassSpec> rows);

  // Lowercase, then strip one trailing 's' when the singular is known, then
  // exact match. Throws Error(kUnknownFoodClass).
  const FoodClassSpec& Lookup(std::string_view label) const;
  const FoodClassSpec* Find(std::string_view label) const;
  // Canonical form of `label` under the catalog's plural rule; unknown
  // labels come back lowercased.
  std::string Normalize(std::string_view label) const;

  const std::vector<FoodClassSpec>& rows() const { return rows_; }
  size_t size() const { return rows_.size(); }

 private:
  std::vector<FoodClassSpec> rows_;
  std::map<std::string, size_t, std::less<>> index_;
};

// Parses either the comma-separated table or the JSON document form.
FoodCatalog LoadFoodCatalog(std::string_view document);
FoodCatalog LoadFoodCatalogFile(const std::string& path);

// Collects every problem instead of stopping at the first one.
std::vector<CatalogDiagnostic> ValidateFoodCatalog(std::string_view document);

class RecipeCatalog {
 public:
  RecipeCatalog() = default;
  // Throws Error(kSchemaError) on duplicate ids or invalid nutrients.
  explicit RecipeCatalog(std::vector<Recipe> recipes);

  const Recipe* Find(std::string_view id) const;
  // Throws Error(kUnknownRecipe).
  const Recipe& Get(std::string_view id) const;

  // Sorted by id ascending.
  const std::vector<Recipe>& recipes() const { return recipes_; }
  size_t size() const { return recipes_.size(); }

 private:
  std::vector<Recipe> recipes_;
  std::map<std::string, size_t, std::less<>> index_;
};

RecipeCatalog LoadRecipeCatalog(std::string_view document);
RecipeCatalog LoadRecipeCatalogFile(const std::string& path);

// Reads a whole file. Throws Error(kIoError).
std::string ReadFileToString(const std::string& path);

}  // namespace nutrivision

#endif  // NUTRIVISION_CATALOG_H_
