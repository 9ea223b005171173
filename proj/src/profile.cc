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

#include "nutrivision/profile.h"

#include <cmath>

#include "nutrivision/error.h"

namespace nutrivision {

std::string_view GenderName(Gender gender) {
  switch (gender) {
    case Gender::kFemale: return "female";
    case Gender::kMale: return "male";
    case Gender::kOther: return "other";
  }
  return "other";
}

Gender ParseGender(std::string_view name) {
  const std::string s = CanonicalLabel(name);
  if (s == "female" || s == "f") return Gender::kFemale;
  if (s == "male" || s == "m") return Gender::kMale;
  if (s == "other" || s.empty()) return Gender::kOther;
  throw Error(ErrorCode::kSchemaError, "unknown gender '" + std::string(name) + "'");
}

void UserProfile::Validate() const {
  if (user_id.empty()) {
    throw Error(ErrorCode::kSchemaError, "user_id must not be empty");
  }
  if (!(height_m > 0.0) || !(weight_kg > 0.0) || !std::isfinite(height_m) ||
      !std::isfinite(weight_kg)) {
    throw Error(ErrorCode::kInvalidAnthropometrics,
                "height_m and weight_kg must be positive");
  }
  if (!(sugar_limit_g > 0.0) || !(carb_limit_g > 0.0)) {
    throw Error(ErrorCode::kSchemaError,
                "sugar_limit_g and carb_limit_g must be positive");
  }
}

void FeedbackEvent::Validate() const {
  if (user_id.empty() || recipe_id.empty()) {
    throw Error(ErrorCode::kSchemaError,
                "feedback needs user_id and recipe_id");
  }
  if (tried && !rating.has_value()) {
    throw Error(ErrorCode::kInvalidRating, "a tried recipe needs a rating");
  }
  if (!tried && rating.has_value()) {
    throw Error(ErrorCode::kInvalidRating,
                "a rating is only accepted for tried recipes");
  }
  if (rating && (*rating < kMinRating || *rating > kMaxRating)) {
    throw Error(ErrorCode::kInvalidRating,
                "rating " + std::to_string(*rating) + " outside 1..5");
  }
}

}  // namespace nutrivision
