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

#ifndef NUTRIVISION_PROFILE_H_
#define NUTRIVISION_PROFILE_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nutrivision/catalog.h"
#include "nutrivision/quantify.h"

namespace nutrivision {

// Seconds since the Unix epoch.
using Timestamp = int64_t;

inline constexpr Timestamp kSecondsPerDay = 24 * 60 * 60;

enum class Gender { kFemale, kMale, kOther };

std::string_view GenderName(Gender gender);
// Throws Error(kSchemaError).
Gender ParseGender(std::string_view name);

struct MealLogEntry {
  Timestamp timestamp = 0;
  PlateReport report;
};

struct UserProfile {
  std::string user_id;
  double height_m = 0.0;
  double weight_kg = 0.0;
  Gender gender = Gender::kOther;
  DietTag diet_pref = DietTag::kNonVegetarian;
  std::string health_history;
  double sugar_limit_g = 25.0;
  double carb_limit_g = 60.0;
  std::vector<MealLogEntry> meal_log;

  // Throws Error(kSchemaError) for an empty id or non-positive limits and
  // Error(kInvalidAnthropometrics) for non-positive height or weight.
  void Validate() const;
};

inline constexpr int kMinRating = 1;
inline constexpr int kMaxRating = 5;

struct FeedbackEvent {
  std::string user_id;
  std::string recipe_id;
  bool tried = false;
  std::optional<int> rating;  // present iff tried
  Timestamp timestamp = 0;

  // Throws Error(kInvalidRating).
  void Validate() const;
};

struct SkipRecord {
  std::string recipe_id;
  Timestamp timestamp = 0;
};

}  // namespace nutrivision

#endif  // NUTRIVISION_PROFILE_H_
