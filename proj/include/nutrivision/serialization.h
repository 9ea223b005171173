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

#ifndef NUTRIVISION_SERIALIZATION_H_
#define NUTRIVISION_SERIALIZATION_H_

#include <string>
#include <vector>

#include "json.hpp"
#include "nutrivision/catalog.h"
#include "nutrivision/detections.h"
#include "nutrivision/error.h"
#include "nutrivision/profile.h"
#include "nutrivision/quantify.h"
#include "nutrivision/recommender.h"
#include "nutrivision/reference.h"

namespace nutrivision {

using Json = nlohmann::json;

// Canonical text form used by the CLI, the HTTP service and golden files:
// compact JSON, object keys sorted, floating-point values rounded to six
// fractional digits (negative zero printed as 0.0).
std::string CanonicalDump(const Json& value);

// Rounds every floating-point number in `value` in place.
void RoundNumbers(Json& value);

Json ToJson(const NutrientProfile& p);
Json ToJson(const ReferenceMeasurement& m);
Json ToJson(const QuantifiedFood& f);
Json ToJson(const PlateReport& r);
Json ToJson(const Recipe& r);
// Profile fields only; the meal log travels as separate events.
Json ToJson(const UserProfile& p);
Json ToJson(const FeedbackEvent& e);
Json ToJson(const BmiResult& b);
Json ToJson(const NutrientWarning& w);
Json ToJson(const Recommendation& r);
Json ToJson(const std::vector<Recommendation>& list);
Json ToJson(const DetectionMetrics& m);
Json ErrorJson(const Error& e);

// Parsers throw Error(kSchemaError) on missing or mistyped fields, or the
// type's own validation error.
NutrientProfile NutrientProfileFromJson(const Json& j);
PlateReport PlateReportFromJson(const Json& j);
UserProfile UserProfileFromJson(const Json& j);
FeedbackEvent FeedbackEventFromJson(const Json& j);

// Parses text, mapping parse failures to Error(kSchemaError).
Json ParseJson(std::string_view text, std::string_view what);

}  // namespace nutrivision

#endif  // NUTRIVISION_SERIALIZATION_H_
