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

#include "nutrivision/serialization.h"

#include <cmath>

namespace nutrivision {

void RoundNumbers(Json& value) {
  if (value.is_number_float()) {
    double x = value.get<double>();
    x = std::round(x * 1e6) / 1e6;
    if (x == 0.0) x = 0.0;  // drop the sign of -0
    value = x;
  } else if (value.is_object() || value.is_array()) {
    for (Json& child : value) RoundNumbers(child);
  }
}

std::string CanonicalDump(const Json& value) {
  Json copy = value;
  RoundNumbers(copy);
  return copy.dump();
}

Json ParseJson(std::string_view text, std::string_view what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::kSchemaError,
                std::string(what) + ": malformed JSON: " + e.what());
  }
}

Json ToJson(const NutrientProfile& p) {
  Json j = {
      {"calories", p.calories},   {"carbohydrates_g", p.carbohydrates_g},
      {"protein_g", p.protein_g}, {"fat_g", p.fat_g},
      {"sugar_g", p.sugar_g},
  };
  if (!p.micros.empty()) j["micros"] = p.micros;
  return j;
}

Json ToJson(const ReferenceMeasurement& m) {
  return {
      {"bbox_x", m.bbox_x},
      {"bbox_y", m.bbox_y},
      {"bbox_w", m.bbox_w},
      {"bbox_h", m.bbox_h},
      {"area_px", m.area_px},
      {"ratio_x_mm_per_px", m.ratio_x_mm_per_px},
      {"ratio_y_mm_per_px", m.ratio_y_mm_per_px},
  };
}

Json ToJson(const QuantifiedFood& f) {
  return {
      {"label", f.label},         {"length_cm", f.length_cm},
      {"width_cm", f.width_cm},   {"height_cm", f.height_cm},
      {"volume_cc", f.volume_cc}, {"mass_g", f.mass_g},
      {"nutrients", ToJson(f.nutrients)},
  };
}

Json ToJson(const PlateReport& r) {
  Json items = Json::array();
  for (const QuantifiedFood& f : r.items) items.push_back(ToJson(f));
  Json skipped = Json::array();
  for (const SkippedItem& s : r.skipped) {
    skipped.push_back({{"label", s.label}, {"reason", s.reason}});
  }
  Json j = {
      {"items", std::move(items)},
      {"totals", ToJson(r.totals)},
      {"skipped", std::move(skipped)},
      {"distribution_defined", r.distribution_pct.has_value()},
  };
  if (r.distribution_pct) {
    j["distribution_pct"] = {
        {"carbohydrates", r.distribution_pct->carbohydrates},
        {"protein", r.distribution_pct->protein},
        {"fat", r.distribution_pct->fat},
        {"sugar", r.distribution_pct->sugar},
    };
  } else {
    j["distribution_pct"] = nullptr;
  }
  if (r.reference) j["reference"] = ToJson(*r.reference);
  return j;
}

Json ToJson(const Recipe& r) {
  return {
      {"id", r.id},
      {"name", r.name},
      {"description", r.description},
      {"diet_tag", std::string(DietTagName(r.diet_tag))},
      {"per_serving", ToJson(r.per_serving)},
      {"video_url", r.video_url},
  };
}

Json ToJson(const UserProfile& p) {
  return {
      {"user_id", p.user_id},
      {"height_m", p.height_m},
      {"weight_kg", p.weight_kg},
      {"gender", std::string(GenderName(p.gender))},
      {"diet_pref", std::string(DietTagName(p.diet_pref))},
      {"health_history", p.health_history},
      {"sugar_limit_g", p.sugar_limit_g},
      {"carb_limit_g", p.carb_limit_g},
  };
}

Json ToJson(const FeedbackEvent& e) {
  Json j = {
      {"user_id", e.user_id},
      {"recipe_id", e.recipe_id},
      {"tried", e.tried},
      {"timestamp", e.timestamp},
  };
  if (e.rating) j["rating"] = *e.rating;
  return j;
}

Json ToJson(const BmiResult& b) {
  return {{"value", b.value},
          {"category", std::string(BmiCategoryName(b.category))}};
}

Json ToJson(const NutrientWarning& w) {
  return {{"nutrient", w.nutrient},
          {"amount_g", w.amount_g},
          {"limit_g", w.limit_g}};
}

Json ToJson(const Recommendation& r) {
  Json warnings = Json::array();
  for (const NutrientWarning& w : r.warnings) warnings.push_back(ToJson(w));
  return {
      {"recipe_id", r.recipe_id},
      {"name", r.name},
      {"diet_tag", std::string(DietTagName(r.diet_tag))},
      {"video_url", r.video_url},
      {"per_serving", ToJson(r.per_serving)},
      {"score", r.score},
      {"warnings", std::move(warnings)},
      {"rationale_terms", r.rationale_terms},
  };
}

Json ToJson(const std::vector<Recommendation>& list) {
  Json out = Json::array();
  for (const Recommendation& r : list) out.push_back(ToJson(r));
  return out;
}

Json ToJson(const DetectionMetrics& m) {
  return {
      {"accuracy", m.accuracy},
      {"precision", m.precision},
      {"recall", m.recall},
      {"mean_iou", m.mean_iou},
      {"true_positives", m.true_positives},
      {"false_positives", m.false_positives},
      {"false_negatives", m.false_negatives},
      {"accuracy_defined", m.accuracy_defined},
      {"precision_defined", m.precision_defined},
      {"recall_defined", m.recall_defined},
      {"mean_iou_defined", m.mean_iou_defined},
  };
}

Json ErrorJson(const Error& e) {
  return {{"code", std::string(ErrorToken(e.code()))}, {"message", e.what()}};
}

namespace {

[[noreturn]] void Bad(const std::string& context, const std::string& message) {
  throw Error(ErrorCode::kSchemaError, context + ": " + message);
}

const Json& Field(const Json& j, const char* key, const std::string& context) {
  auto it = j.find(key);
  if (it == j.end()) Bad(context, std::string("missing '") + key + "'");
  return *it;
}

double Number(const Json& j, const char* key, const std::string& context) {
  const Json& v = Field(j, key, context);
  if (!v.is_number()) Bad(context, std::string("'") + key + "' must be a number");
  return v.get<double>();
}

std::string String(const Json& j, const char* key, const std::string& context) {
  const Json& v = Field(j, key, context);
  if (!v.is_string()) Bad(context, std::string("'") + key + "' must be a string");
  return v.get<std::string>();
}

void RequireObject(const Json& j, const std::string& context) {
  if (!j.is_object()) Bad(context, "expected an object");
}

}  // namespace

NutrientProfile NutrientProfileFromJson(const Json& j) {
  const std::string ctx = "nutrients";
  RequireObject(j, ctx);
  NutrientProfile p;
  p.calories = Number(j, "calories", ctx);
  p.carbohydrates_g = Number(j, "carbohydrates_g", ctx);
  p.protein_g = Number(j, "protein_g", ctx);
  p.fat_g = Number(j, "fat_g", ctx);
  p.sugar_g = Number(j, "sugar_g", ctx);
  if (auto it = j.find("micros"); it != j.end() && !it->is_null()) {
    if (!it->is_object()) Bad(ctx, "'micros' must be an object");
    for (const auto& [name, amount] : it->items()) {
      if (!amount.is_number()) Bad(ctx, "micro '" + name + "' must be a number");
      p.micros[name] = amount.get<double>();
    }
  }
  return p;
}

PlateReport PlateReportFromJson(const Json& j) {
  const std::string ctx = "plate report";
  RequireObject(j, ctx);
  std::vector<QuantifiedFood> items;
  const Json& list = Field(j, "items", ctx);
  if (!list.is_array()) Bad(ctx, "'items' must be an array");
  for (const Json& e : list) {
    RequireObject(e, "plate item");
    QuantifiedFood f;
    f.label = String(e, "label", "plate item");
    f.length_cm = Number(e, "length_cm", "plate item");
    f.width_cm = Number(e, "width_cm", "plate item");
    f.height_cm = Number(e, "height_cm", "plate item");
    f.volume_cc = Number(e, "volume_cc", "plate item");
    f.mass_g = Number(e, "mass_g", "plate item");
    f.nutrients = NutrientProfileFromJson(Field(e, "nutrients", "plate item"));
    items.push_back(std::move(f));
  }
  // Totals and distribution are recomputed so a logged report can never
  // disagree with its own items.
  PlateReport report = BuildReport(std::move(items));
  if (auto it = j.find("skipped"); it != j.end() && it->is_array()) {
    for (const Json& s : *it) {
      RequireObject(s, "skipped item");
      report.skipped.push_back({String(s, "label", "skipped item"),
                                String(s, "reason", "skipped item")});
    }
  }
  if (auto it = j.find("reference"); it != j.end() && it->is_object()) {
    const std::string rc = "reference";
    ReferenceMeasurement m;
    m.bbox_x = Number(*it, "bbox_x", rc);
    m.bbox_y = Number(*it, "bbox_y", rc);
    m.bbox_w = Number(*it, "bbox_w", rc);
    m.bbox_h = Number(*it, "bbox_h", rc);
    m.area_px = Number(*it, "area_px", rc);
    m.ratio_x_mm_per_px = Number(*it, "ratio_x_mm_per_px", rc);
    m.ratio_y_mm_per_px = Number(*it, "ratio_y_mm_per_px", rc);
    report.reference = m;
  }
  return report;
}

UserProfile UserProfileFromJson(const Json& j) {
  const std::string ctx = "profile";
  RequireObject(j, ctx);
  UserProfile p;
  p.user_id = String(j, "user_id", ctx);
  p.height_m = Number(j, "height_m", ctx);
  p.weight_kg = Number(j, "weight_kg", ctx);
  if (j.contains("gender")) p.gender = ParseGender(String(j, "gender", ctx));
  if (j.contains("diet_pref")) {
    p.diet_pref = ParseDietTag(String(j, "diet_pref", ctx));
  }
  if (j.contains("health_history")) {
    p.health_history = String(j, "health_history", ctx);
  }
  if (j.contains("sugar_limit_g")) p.sugar_limit_g = Number(j, "sugar_limit_g", ctx);
  if (j.contains("carb_limit_g")) p.carb_limit_g = Number(j, "carb_limit_g", ctx);
  p.Validate();
  return p;
}

FeedbackEvent FeedbackEventFromJson(const Json& j) {
  const std::string ctx = "feedback";
  RequireObject(j, ctx);
  FeedbackEvent e;
  e.user_id = String(j, "user_id", ctx);
  e.recipe_id = String(j, "recipe_id", ctx);
  const Json& tried = Field(j, "tried", ctx);
  if (!tried.is_boolean()) Bad(ctx, "'tried' must be a boolean");
  e.tried = tried.get<bool>();
  if (auto it = j.find("rating"); it != j.end() && !it->is_null()) {
    if (!it->is_number_integer()) {
      throw Error(ErrorCode::kInvalidRating, "rating must be an integer 1..5");
    }
    const auto r = it->get<int64_t>();
    if (r < kMinRating || r > kMaxRating) {
      throw Error(ErrorCode::kInvalidRating,
                  "rating " + std::to_string(r) + " outside 1..5");
    }
    e.rating = static_cast<int>(r);
  }
  if (auto it = j.find("timestamp"); it != j.end()) {
    if (!it->is_number_integer()) Bad(ctx, "'timestamp' must be an integer");
    e.timestamp = it->get<Timestamp>();
  }
  e.Validate();
  return e;
}

}  // namespace nutrivision
