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

#include "nutrivision/quantify.h"

#include <utility>

#include "nutrivision/error.h"

namespace nutrivision {

void QuantifierConfig::Validate() const {
  if (!(box_fill_factor > 0.0 && box_fill_factor <= 1.0)) {
    throw Error(ErrorCode::kSchemaError, "box_fill_factor must lie in (0, 1]");
  }
  reference.Validate();
}

QuantifiedFood QuantifyItem(const Detection& detection,
                            const ReferenceMeasurement& reference,
                            const FoodClassSpec& spec,
                            const QuantifierConfig& config) {
  QuantifiedFood food;
  food.label = spec.label;
  // mm -> cm
  food.length_cm = detection.bbox.h * reference.ratio_y_mm_per_px / 10.0;
  food.width_cm = detection.bbox.w * reference.ratio_x_mm_per_px / 10.0;
  food.height_cm = spec.default_height_cm;
  food.volume_cc =
      food.length_cm * food.width_cm * food.height_cm * config.box_fill_factor;
  food.mass_g = food.volume_cc * spec.density_g_per_cc;
  food.nutrients = spec.per_100g.Scaled(food.mass_g / 100.0);
  return food;
}

PlateReport BuildReport(std::vector<QuantifiedFood> items) {
  PlateReport report;
  report.items = std::move(items);
  for (const QuantifiedFood& item : report.items) {
    report.totals += item.nutrients;
  }
  const NutrientProfile& t = report.totals;
  const double macro_mass =
      t.carbohydrates_g + t.protein_g + t.fat_g + t.sugar_g;
  if (macro_mass > 0.0) {
    MacroDistribution d;
    d.carbohydrates = 100.0 * t.carbohydrates_g / macro_mass;
    d.protein = 100.0 * t.protein_g / macro_mass;
    d.fat = 100.0 * t.fat_g / macro_mass;
    d.sugar = 100.0 * t.sugar_g / macro_mass;
    report.distribution_pct = d;
  }
  return report;
}

PlateReport AnalyzePlate(const RgbImage& image,
                         const std::vector<Detection>& detections,
                         const FoodCatalog& catalog,
                         const QuantifierConfig& config) {
  config.Validate();
  const ReferenceMeasurement reference =
      DetectReference(image, config.reference);

  // Labels are normalized first so "apples" and "apple" dedupe together.
  std::vector<Detection> normalized = detections;
  for (Detection& d : normalized) d.label = catalog.Normalize(d.label);

  std::vector<QuantifiedFood> items;
  std::vector<SkippedItem> skipped;
  for (const Detection& d : Dedupe(std::move(normalized))) {
    const FoodClassSpec* spec = catalog.Find(d.label);
    if (spec == nullptr) {
      skipped.push_back(
          {d.label, std::string(ErrorName(ErrorCode::kUnknownFoodClass))});
      continue;
    }
    items.push_back(QuantifyItem(d, reference, *spec, config));
  }

  PlateReport report = BuildReport(std::move(items));
  report.skipped = std::move(skipped);
  report.reference = reference;
  return report;
}

}  // namespace nutrivision
