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

#include "nutrivision/catalog.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <utility>

#include "json.hpp"
#include "nutrivision/error.h"

namespace nutrivision {

using nlohmann::json;

NutrientProfile NutrientProfile::Scaled(double factor) const {
  NutrientProfile out;
  out.calories = calories * factor;
  out.carbohydrates_g = carbohydrates_g * factor;
  out.protein_g = protein_g * factor;
  out.fat_g = fat_g * factor;
  out.sugar_g = sugar_g * factor;
  for (const auto& [name, amount] : micros) out.micros[name] = amount * factor;
  return out;
}

NutrientProfile& NutrientProfile::operator+=(const NutrientProfile& other) {
  calories += other.calories;
  carbohydrates_g += other.carbohydrates_g;
  protein_g += other.protein_g;
  fat_g += other.fat_g;
  sugar_g += other.sugar_g;
  for (const auto& [name, amount] : other.micros) micros[name] += amount;
  return *this;
}

void NutrientProfile::Validate(std::string_view context) const {
  const std::string prefix = context.empty() ? "" : std::string(context) + ": ";
  const std::array<std::pair<const char*, double>, 5> fields = {{
      {"calories", calories},
      {"carbohydrates_g", carbohydrates_g},
      {"protein_g", protein_g},
      {"fat_g", fat_g},
      {"sugar_g", sugar_g},
  }};
  for (const auto& [name, value] : fields) {
    if (!std::isfinite(value) || value < 0.0) {
      throw Error(ErrorCode::kSchemaError,
                  prefix + name + " must be a non-negative number");
    }
  }
  for (const auto& [name, value] : micros) {
    if (!std::isfinite(value) || value < 0.0) {
      throw Error(ErrorCode::kSchemaError,
                  prefix + "micro '" + name + "' must be non-negative");
    }
  }
  if (sugar_g > carbohydrates_g) {
    throw Error(ErrorCode::kSchemaError,
                prefix + "sugar_g exceeds carbohydrates_g");
  }
}

std::string_view DietTagName(DietTag tag) {
  switch (tag) {
    case DietTag::kVegan: return "vegan";
    case DietTag::kVegetarian: return "vegetarian";
    case DietTag::kNonVegetarian: return "non-vegetarian";
  }
  return "non-vegetarian";
}

DietTag ParseDietTag(std::string_view name) {
  const std::string s = CanonicalLabel(name);
  if (s == "vegan") return DietTag::kVegan;
  if (s == "vegetarian" || s == "veg") return DietTag::kVegetarian;
  if (s == "non-vegetarian" || s == "non_vegetarian" || s == "nonvegetarian" ||
      s == "non-veg") {
    return DietTag::kNonVegetarian;
  }
  throw Error(ErrorCode::kSchemaError,
              "unknown diet tag '" + std::string(name) + "'");
}

bool DietAllows(DietTag preference, DietTag recipe) {
  return static_cast<int>(recipe) <= static_cast<int>(preference);
}

std::string CanonicalLabel(std::string_view label) {
  size_t begin = 0;
  size_t end = label.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(label[begin])))
    ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(label[end - 1])))
    --end;
  std::string out(label.substr(begin, end - begin));
  for (char& c : out) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

std::string ReadFileToString(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// ---------------------------------------------------------------------------
// FoodCatalog

FoodCatalog::FoodCatalog(std::vector<FoodClassSpec> rows)
    : rows_(std::move(rows)) {
  for (size_t i = 0; i < rows_.size(); ++i) {
    FoodClassSpec& row = rows_[i];
    row.label = CanonicalLabel(row.label);
    if (row.label.empty()) {
      throw Error(ErrorCode::kSchemaError, "food class with empty label");
    }
    if (!(row.default_height_cm > 0.0) || !std::isfinite(row.default_height_cm)) {
      throw Error(ErrorCode::kSchemaError,
                  row.label + ": default_height_cm must be positive");
    }
    if (!(row.density_g_per_cc > 0.0) || !std::isfinite(row.density_g_per_cc)) {
      throw Error(ErrorCode::kSchemaError,
                  row.label + ": density_g_per_cc must be positive");
    }
    row.per_100g.Validate(row.label);
    if (!index_.emplace(row.label, i).second) {
      throw Error(ErrorCode::kDuplicateLabel,
                  "duplicate food class '" + row.label + "'");
    }
  }
}

const FoodClassSpec* FoodCatalog::Find(std::string_view label) const {
  const std::string key = Normalize(label);
  auto it = index_.find(key);
  return it == index_.end() ? nullptr : &rows_[it->second];
}

const FoodClassSpec& FoodCatalog::Lookup(std::string_view label) const {
  const FoodClassSpec* spec = Find(label);
  if (spec == nullptr) {
    throw Error(ErrorCode::kUnknownFoodClass,
                "unknown food class '" + std::string(label) + "'");
  }
  return *spec;
}

std::string FoodCatalog::Normalize(std::string_view label) const {
  std::string key = CanonicalLabel(label);
  if (index_.contains(key)) return key;
  if (key.size() > 1 && key.back() == 's') {
    std::string singular = key.substr(0, key.size() - 1);
    if (index_.contains(singular)) return singular;
  }
  return key;
}

namespace {

constexpr std::array<std::string_view, 8> kCsvColumns = {
    "label",          "default_height_cm", "density_g_per_cc", "calories",
    "carbohydrates_g", "protein_g",        "fat_g",            "sugar_g"};

struct ParsedRows {
  std::vector<FoodClassSpec> rows;
  std::vector<int> row_numbers;
  std::vector<CatalogDiagnostic> diagnostics;
  std::vector<ErrorCode> codes;
};

void AddDiagnostic(ParsedRows& out, int row, std::string label,
                   std::string message, ErrorCode code) {
  out.diagnostics.push_back({row, std::move(label), std::move(message)});
  out.codes.push_back(code);
}

std::vector<std::string> SplitCsvLine(std::string_view line) {
  std::vector<std::string> cells;
  std::string cell;
  bool quoted = false;
  for (size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cell.push_back('"');
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cell.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      cells.push_back(std::move(cell));
      cell.clear();
    } else {
      cell.push_back(c);
    }
  }
  cells.push_back(std::move(cell));
  for (std::string& s : cells) {
    const std::string trimmed = s;
    size_t b = trimmed.find_first_not_of(" \t");
    size_t e = trimmed.find_last_not_of(" \t");
    s = b == std::string::npos ? "" : trimmed.substr(b, e - b + 1);
  }
  return cells;
}

std::optional<double> ParseNumber(const std::string& text) {
  if (text.empty()) return std::nullopt;
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (*first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) return std::nullopt;
  return value;
}

// Validates a single row and appends either the row or diagnostics.
void AcceptRow(ParsedRows& out, int row_number, FoodClassSpec spec,
               std::map<std::string, int>& seen) {
  spec.label = CanonicalLabel(spec.label);
  bool ok = true;
  if (spec.label.empty()) {
    AddDiagnostic(out, row_number, "", "empty label", ErrorCode::kSchemaError);
    ok = false;
  }
  if (!(spec.default_height_cm > 0.0) || !std::isfinite(spec.default_height_cm)) {
    AddDiagnostic(out, row_number, spec.label,
                  "default_height_cm must be positive",
                  ErrorCode::kSchemaError);
    ok = false;
  }
  if (!(spec.density_g_per_cc > 0.0) || !std::isfinite(spec.density_g_per_cc)) {
    AddDiagnostic(out, row_number, spec.label,
                  "density_g_per_cc must be positive", ErrorCode::kSchemaError);
    ok = false;
  }
  try {
    spec.per_100g.Validate("");
  } catch (const Error& e) {
    AddDiagnostic(out, row_number, spec.label, e.what(), e.code());
    ok = false;
  }
  if (!spec.label.empty()) {
    auto [it, inserted] = seen.emplace(spec.label, row_number);
    if (!inserted) {
      AddDiagnostic(out, row_number, spec.label,
                    "duplicate label (first defined on row " +
                        std::to_string(it->second) + ")",
                    ErrorCode::kDuplicateLabel);
      ok = false;
    }
  }
  if (ok) {
    out.rows.push_back(std::move(spec));
    out.row_numbers.push_back(row_number);
  }
}

ParsedRows ParseCsv(std::string_view document) {
  ParsedRows out;
  std::map<std::string, int> seen;
  std::istringstream in{std::string(document)};
  std::string line;
  std::vector<int> column_of(kCsvColumns.size(), -1);
  bool have_header = false;
  size_t header_size = 0;
  int row_number = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    if (line.front() == '#') continue;
    std::vector<std::string> cells = SplitCsvLine(line);
    if (!have_header) {
      have_header = true;
      header_size = cells.size();
      for (size_t c = 0; c < cells.size(); ++c) {
        auto it = std::find(kCsvColumns.begin(), kCsvColumns.end(), cells[c]);
        if (it == kCsvColumns.end()) {
          AddDiagnostic(out, 0, "", "unknown column '" + cells[c] + "'",
                        ErrorCode::kSchemaError);
          continue;
        }
        column_of[it - kCsvColumns.begin()] = static_cast<int>(c);
      }
      for (size_t k = 0; k < kCsvColumns.size(); ++k) {
        if (column_of[k] < 0) {
          AddDiagnostic(out, 0, "",
                        "missing column '" + std::string(kCsvColumns[k]) + "'",
                        ErrorCode::kSchemaError);
        }
      }
      if (!out.diagnostics.empty()) return out;
      continue;
    }
    ++row_number;
    if (cells.size() != header_size) {
      AddDiagnostic(out, row_number, cells.empty() ? "" : cells[0],
                    "expected " + std::to_string(header_size) +
                        " cells, got " + std::to_string(cells.size()),
                    ErrorCode::kSchemaError);
      continue;
    }
    FoodClassSpec spec;
    spec.label = cells[column_of[0]];
    bool numbers_ok = true;
    std::array<double, 7> values{};
    for (size_t k = 1; k < kCsvColumns.size(); ++k) {
      std::optional<double> v = ParseNumber(cells[column_of[k]]);
      if (!v) {
        AddDiagnostic(out, row_number, spec.label,
                      std::string(kCsvColumns[k]) + " is missing or not a number",
                      ErrorCode::kSchemaError);
        numbers_ok = false;
        continue;
      }
      values[k - 1] = *v;
    }
    if (!numbers_ok) continue;
    spec.default_height_cm = values[0];
    spec.density_g_per_cc = values[1];
    spec.per_100g.calories = values[2];
    spec.per_100g.carbohydrates_g = values[3];
    spec.per_100g.protein_g = values[4];
    spec.per_100g.fat_g = values[5];
    spec.per_100g.sugar_g = values[6];
    AcceptRow(out, row_number, std::move(spec), seen);
  }
  if (!have_header) {
    AddDiagnostic(out, 0, "", "empty catalog document",
                  ErrorCode::kSchemaError);
  }
  return out;
}

ParsedRows ParseJson(std::string_view document) {
  ParsedRows out;
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    AddDiagnostic(out, 0, "", std::string("malformed JSON: ") + e.what(),
                  ErrorCode::kSchemaError);
    return out;
  }
  const json* foods = &doc;
  if (doc.is_object()) {
    if (!doc.contains("foods")) {
      AddDiagnostic(out, 0, "", "missing 'foods' array",
                    ErrorCode::kSchemaError);
      return out;
    }
    foods = &doc["foods"];
  }
  if (!foods->is_array()) {
    AddDiagnostic(out, 0, "", "'foods' must be an array",
                  ErrorCode::kSchemaError);
    return out;
  }
  std::map<std::string, int> seen;
  int row_number = 0;
  for (const json& row : *foods) {
    ++row_number;
    if (!row.is_object()) {
      AddDiagnostic(out, row_number, "", "row is not an object",
                    ErrorCode::kSchemaError);
      continue;
    }
    FoodClassSpec spec;
    if (!row.contains("label") || !row["label"].is_string()) {
      AddDiagnostic(out, row_number, "", "missing string 'label'",
                    ErrorCode::kSchemaError);
      continue;
    }
    spec.label = row["label"].get<std::string>();
    bool numbers_ok = true;
    auto number = [&](std::string_view key, double& target) {
      auto it = row.find(std::string(key));
      if (it == row.end() || !it->is_number()) {
        AddDiagnostic(out, row_number, spec.label,
                      std::string(key) + " is missing or not a number",
                      ErrorCode::kSchemaError);
        numbers_ok = false;
        return;
      }
      target = it->get<double>();
    };
    number("default_height_cm", spec.default_height_cm);
    number("density_g_per_cc", spec.density_g_per_cc);
    number("calories", spec.per_100g.calories);
    number("carbohydrates_g", spec.per_100g.carbohydrates_g);
    number("protein_g", spec.per_100g.protein_g);
    number("fat_g", spec.per_100g.fat_g);
    number("sugar_g", spec.per_100g.sugar_g);
    if (auto it = row.find("micros"); it != row.end()) {
      if (!it->is_object()) {
        AddDiagnostic(out, row_number, spec.label, "micros must be an object",
                      ErrorCode::kSchemaError);
        numbers_ok = false;
      } else {
        for (const auto& [name, amount] : it->items()) {
          if (!amount.is_number()) {
            AddDiagnostic(out, row_number, spec.label,
                          "micro '" + name + "' is not a number",
                          ErrorCode::kSchemaError);
            numbers_ok = false;
            continue;
          }
          spec.per_100g.micros[name] = amount.get<double>();
        }
      }
    }
    if (!numbers_ok) continue;
    AcceptRow(out, row_number, std::move(spec), seen);
  }
  return out;
}

bool LooksLikeJson(std::string_view document) {
  for (char c : document) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    return c == '{' || c == '[';
  }
  return false;
}

ParsedRows ParseCatalog(std::string_view document) {
  return LooksLikeJson(document) ? ParseJson(document) : ParseCsv(document);
}

}  // namespace

FoodCatalog LoadFoodCatalog(std::string_view document) {
  ParsedRows parsed = ParseCatalog(document);
  if (!parsed.diagnostics.empty()) {
    const CatalogDiagnostic& d = parsed.diagnostics.front();
    std::string where = d.row > 0 ? "row " + std::to_string(d.row) : "document";
    if (!d.label.empty()) where += " (" + d.label + ")";
    throw Error(parsed.codes.front(), where + ": " + d.message);
  }
  return FoodCatalog(std::move(parsed.rows));
}

FoodCatalog LoadFoodCatalogFile(const std::string& path) {
  return LoadFoodCatalog(ReadFileToString(path));
}

std::vector<CatalogDiagnostic> ValidateFoodCatalog(std::string_view document) {
  return ParseCatalog(document).diagnostics;
}

// ---------------------------------------------------------------------------
// RecipeCatalog

RecipeCatalog::RecipeCatalog(std::vector<Recipe> recipes)
    : recipes_(std::move(recipes)) {
  std::sort(recipes_.begin(), recipes_.end(),
            [](const Recipe& a, const Recipe& b) { return a.id < b.id; });
  for (size_t i = 0; i < recipes_.size(); ++i) {
    const Recipe& r = recipes_[i];
    if (r.id.empty()) {
      throw Error(ErrorCode::kSchemaError, "recipe with empty id");
    }
    r.per_serving.Validate("recipe " + r.id);
    if (!index_.emplace(r.id, i).second) {
      throw Error(ErrorCode::kSchemaError, "duplicate recipe id '" + r.id + "'");
    }
  }
}

const Recipe* RecipeCatalog::Find(std::string_view id) const {
  auto it = index_.find(id);
  return it == index_.end() ? nullptr : &recipes_[it->second];
}

const Recipe& RecipeCatalog::Get(std::string_view id) const {
  const Recipe* r = Find(id);
  if (r == nullptr) {
    throw Error(ErrorCode::kUnknownRecipe,
                "unknown recipe '" + std::string(id) + "'");
  }
  return *r;
}

namespace {

NutrientProfile ProfileFromJson(const json& j, const std::string& context) {
  if (!j.is_object()) {
    throw Error(ErrorCode::kSchemaError, context + ": nutrients must be an object");
  }
  NutrientProfile p;
  auto number = [&](const char* key, double& target) {
    auto it = j.find(key);
    if (it == j.end() || !it->is_number()) {
      throw Error(ErrorCode::kSchemaError,
                  context + ": " + key + " is missing or not a number");
    }
    target = it->get<double>();
  };
  number("calories", p.calories);
  number("carbohydrates_g", p.carbohydrates_g);
  number("protein_g", p.protein_g);
  number("fat_g", p.fat_g);
  number("sugar_g", p.sugar_g);
  if (auto it = j.find("micros"); it != j.end()) {
    if (!it->is_object()) {
      throw Error(ErrorCode::kSchemaError, context + ": micros must be an object");
    }
    for (const auto& [name, amount] : it->items()) {
      if (!amount.is_number()) {
        throw Error(ErrorCode::kSchemaError,
                    context + ": micro '" + name + "' is not a number");
      }
      p.micros[name] = amount.get<double>();
    }
  }
  return p;
}

std::string RequiredString(const json& j, const char* key,
                           const std::string& context) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_string()) {
    throw Error(ErrorCode::kSchemaError,
                context + ": missing string '" + key + "'");
  }
  return it->get<std::string>();
}

}  // namespace

RecipeCatalog LoadRecipeCatalog(std::string_view document) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kSchemaError,
                std::string("malformed recipe document: ") + e.what());
  }
  const json* list = &doc;
  if (doc.is_object()) {
    if (!doc.contains("recipes")) {
      throw Error(ErrorCode::kSchemaError, "missing 'recipes' array");
    }
    list = &doc["recipes"];
  }
  if (!list->is_array()) {
    throw Error(ErrorCode::kSchemaError, "'recipes' must be an array");
  }
  std::vector<Recipe> recipes;
  int n = 0;
  for (const json& j : *list) {
    ++n;
    const std::string context = "recipe #" + std::to_string(n);
    if (!j.is_object()) {
      throw Error(ErrorCode::kSchemaError, context + " is not an object");
    }
    Recipe r;
    r.id = RequiredString(j, "id", context);
    r.name = RequiredString(j, "name", context);
    r.description = RequiredString(j, "description", context);
    r.diet_tag = ParseDietTag(RequiredString(j, "diet_tag", context));
    if (!j.contains("per_serving")) {
      throw Error(ErrorCode::kSchemaError, context + ": missing per_serving");
    }
    r.per_serving = ProfileFromJson(j["per_serving"], context);
    r.video_url = j.value("video_url", std::string());
    recipes.push_back(std::move(r));
  }
  return RecipeCatalog(std::move(recipes));
}

RecipeCatalog LoadRecipeCatalogFile(const std::string& path) {
  return LoadRecipeCatalog(ReadFileToString(path));
}

}  // namespace nutrivision
