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

#ifndef NUTRIVISION_QUANTIFY_H_
#define NUTRIVISION_QUANTIFY_H_

#include <optional>
#include <string>
#include <vector>

#include "nutrivision/catalog.h"
#include "nutrivision/detections.h"
#include "nutrivision/image.h"
#include "nutrivision/reference.h"

namespace nutrivision {

// Fraction of a food's bounding cuboid assumed to be occupied by food.
inline constexpr double kDefaultBoxFillFactor = 0.8;

struct QuantifierConfig {
  double box_fill_factor = kDefaultBoxFillFactor;
  ReferenceSpec reference;

  void Validate() const;
};

struct QuantifiedFood {
  std::string label;
  double length_cm = 0.0;  // along the image y axis
  double width_cm = 0.0;   // along the image x axis
  double height_cm = 0.0;
  double volume_cc = 0.0;
  double mass_g = 0.0;
  NutrientProfile nutrients;
};

struct SkippedItem {
  std::string label;
  std::string reason;  // e.g. "UnknownFoodClass"
};

struct MacroDistribution {
  double carbohydrates = 0.0;
  double protein = 0.0;
  double fat = 0.0;
  double sugar = 0.0;
};

struct PlateReport {
  std::vector<QuantifiedFood> items;
  NutrientProfile totals;
  // Empty when the plate carries no macro mass.
  std::optional<MacroDistribution> distribution_pct;
  std::vector<SkippedItem> skipped;
  // Set by AnalyzePlate; absent for reports assembled from items alone.
  std::optional<ReferenceMeasurement> reference;
};

// Real-world size from pixel box times per-axis calibration, class height,
// fill factor, density and per-100 g scaling.
QuantifiedFood QuantifyItem(const Detection& detection,
                            const ReferenceMeasurement& reference,
                            const FoodClassSpec& spec,
                            const QuantifierConfig& config);

// Sums items and computes the macro percentage split over carbohydrates,
// protein, fat and sugar.
PlateReport BuildReport(std::vector<QuantifiedFood> items);

// Calibrates against the reference coin, de-duplicates detections, resolves
// labels, quantifies each item and builds the report. Labels missing from the
// catalog become skipped entries. Reference errors propagate.
PlateReport AnalyzePlate(const RgbImage& image,
                         const std::vector<Detection>& detections,
                         const FoodCatalog& catalog,
                         const QuantifierConfig& config);

}  // namespace nutrivision

#endif  // NUTRIVISION_QUANTIFY_H_
