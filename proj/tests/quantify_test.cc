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

#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>
#include "nutrivision/catalog.h"
#include "nutrivision/error.h"
#include "oracles.h"
#include "testing/synthetic_scene.h"

namespace nutrivision {
namespace {

FoodClassSpec GoldenSpec() {
  FoodClassSpec spec;
  spec.label = "golden";
  spec.default_height_cm = 5.0;
  spec.density_g_per_cc = 0.5;
  spec.per_100g.carbohydrates_g = 10.0;
  spec.per_100g.calories = 80.0;
  return spec;
}

FoodCatalog ShippedCatalog() {
  return LoadFoodCatalogFile(std::string(NUTRIVISION_DATA_DIR) + "/catalog.json");
}

void ExpectRelNear(double got, double want, double rel) {
  EXPECT_NEAR(got, want, rel * std::abs(want)) << "want " << want;
}

TEST(QuantifyItemTest, WorkedExample) {
  // A 219.3 px coin gives 0.1 mm/px on both axes.
  const ReferenceMeasurement ref =
      ReferenceMeasurement::FromBox(0, 0, 219.3, 219.3, 37770, 21.93);
  const Detection food{"golden", {10, 10, 400, 500}, 0.9};
  const QuantifiedFood q = QuantifyItem(food, ref, GoldenSpec(), {});
  ExpectRelNear(q.length_cm, 5.0, 1e-12);
  ExpectRelNear(q.width_cm, 4.0, 1e-12);
  EXPECT_EQ(q.height_cm, 5.0);
  ExpectRelNear(q.volume_cc, 80.0, 1e-9);
  ExpectRelNear(q.mass_g, 40.0, 1e-9);
  ExpectRelNear(q.nutrients.carbohydrates_g, 4.0, 1e-9);
  ExpectRelNear(q.nutrients.calories, 32.0, 1e-9);
}

TEST(QuantifyItemTest, SmallestBoxHasPositiveMass) {
  const ReferenceMeasurement ref =
      ReferenceMeasurement::FromBox(0, 0, 219.3, 219.3, 37770, 21.93);
  const QuantifiedFood q =
      QuantifyItem({"golden", {0, 0, 1, 1}, 0.9}, ref, GoldenSpec(), {});
  EXPECT_GT(q.mass_g, 0.0);
  ExpectRelNear(q.mass_g, 0.01 * 0.01 * 5.0 * 0.8 * 0.5, 1e-9);
}

TEST(QuantifyItemTest, DoublingResolutionLeavesItemUnchanged) {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> px(20.0, 300.0);
  for (int trial = 0; trial < 200; ++trial) {
    const double coin = px(rng), w = px(rng), h = px(rng);
    const auto r1 = ReferenceMeasurement::FromBox(0, 0, coin, coin, 1, 21.93);
    const auto r2 = ReferenceMeasurement::FromBox(0, 0, 2 * coin, 2 * coin, 1, 21.93);
    const QuantifiedFood a = QuantifyItem({"golden", {0, 0, w, h}, 1}, r1, GoldenSpec(), {});
    const QuantifiedFood b =
        QuantifyItem({"golden", {0, 0, 2 * w, 2 * h}, 1}, r2, GoldenSpec(), {});
    ExpectRelNear(b.mass_g, a.mass_g, 1e-12);
    ExpectRelNear(b.length_cm, a.length_cm, 1e-12);
    ExpectRelNear(b.nutrients.carbohydrates_g, a.nutrients.carbohydrates_g, 1e-12);
  }
}

TEST(QuantifyItemTest, MassScalesQuadraticallyWithBox) {
  const auto ref = ReferenceMeasurement::FromBox(0, 0, 120, 120, 1, 21.93);
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> px(5.0, 300.0), scale(0.25, 4.0);
  for (int trial = 0; trial < 200; ++trial) {
    const double w = px(rng), h = px(rng), s = scale(rng);
    const double m1 = QuantifyItem({"g", {0, 0, w, h}, 1}, ref, GoldenSpec(), {}).mass_g;
    const double m2 =
        QuantifyItem({"g", {0, 0, s * w, s * h}, 1}, ref, GoldenSpec(), {}).mass_g;
    ExpectRelNear(m2, s * s * m1, 1e-12);
  }
}

TEST(QuantifyItemTest, InvariantsAndNutrientLinearity) {
  const FoodCatalog catalog = ShippedCatalog();
  const auto ref = ReferenceMeasurement::FromBox(0, 0, 97, 103, 1, 21.93);
  QuantifierConfig config;
  config.box_fill_factor = 0.65;
  for (const FoodClassSpec& spec : catalog.rows()) {
    const QuantifiedFood q = QuantifyItem({spec.label, {3, 4, 150, 90}, 1}, ref, spec, config);
    EXPECT_DOUBLE_EQ(q.width_cm, 150 * (21.93 / 97) / 10);
    EXPECT_DOUBLE_EQ(q.length_cm, 90 * (21.93 / 103) / 10);
    ExpectRelNear(q.volume_cc, q.length_cm * q.width_cm * q.height_cm * 0.65, 1e-12);
    ExpectRelNear(q.mass_g, q.volume_cc * spec.density_g_per_cc, 1e-12);
    const double f = q.mass_g / 100.0;
    ExpectRelNear(q.nutrients.calories, spec.per_100g.calories * f, 1e-12);
    ExpectRelNear(q.nutrients.protein_g, spec.per_100g.protein_g * f, 1e-12);
    ExpectRelNear(q.nutrients.fat_g, spec.per_100g.fat_g * f, 1e-12);
    ExpectRelNear(q.nutrients.sugar_g, spec.per_100g.sugar_g * f, 1e-12);
    for (const auto& [name, amount] : spec.per_100g.micros) {
      ExpectRelNear(q.nutrients.micros.at(name), amount * f, 1e-12);
    }
  }
}

TEST(QuantifierConfigTest, FillFactorRange) {
  QuantifierConfig config;
  config.box_fill_factor = 0.0;
  EXPECT_THROW(config.Validate(), Error);
  config.box_fill_factor = 1.01;
  EXPECT_THROW(config.Validate(), Error);
  config.box_fill_factor = 1.0;
  EXPECT_NO_THROW(config.Validate());
}

QuantifiedFood WithMacros(double carbs, double protein, double fat, double sugar) {
  QuantifiedFood f;
  f.label = "x";
  f.nutrients = {carbs * 4, carbs, protein, fat, sugar, {}};
  return f;
}

TEST(BuildReportTest, Distribution) {
  const PlateReport r = BuildReport({WithMacros(30, 5, 15, 4), WithMacros(20, 20, 0, 6)});
  EXPECT_EQ(r.totals.carbohydrates_g, 50.0);
  ASSERT_TRUE(r.distribution_pct.has_value());
  EXPECT_DOUBLE_EQ(r.distribution_pct->carbohydrates, 50.0);
  EXPECT_DOUBLE_EQ(r.distribution_pct->protein, 25.0);
  EXPECT_DOUBLE_EQ(r.distribution_pct->fat, 15.0);
  EXPECT_DOUBLE_EQ(r.distribution_pct->sugar, 10.0);
}

TEST(BuildReportTest, SingleItemTotals) {
  const QuantifiedFood f = WithMacros(12, 3, 2, 1);
  EXPECT_EQ(BuildReport({f}).totals, f.nutrients);
}

TEST(BuildReportTest, EmptyPlate) {
  const PlateReport r = BuildReport({});
  EXPECT_EQ(r.totals, NutrientProfile{});
  EXPECT_FALSE(r.distribution_pct.has_value());
  EXPECT_TRUE(r.items.empty());
}

TEST(BuildReportTest, TotalsAreSumsAndPercentagesAddUp) {
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> g(0.0, 80.0);
  std::uniform_int_distribution<int> n(1, 9);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<QuantifiedFood> items;
    const int count = n(rng);
    for (int i = 0; i < count; ++i) {
      const double carbs = g(rng);
      items.push_back(WithMacros(carbs, g(rng), g(rng), carbs * 0.3));
    }
    NutrientProfile sum;
    for (const auto& item : items) {
      sum.calories += item.nutrients.calories;
      sum.carbohydrates_g += item.nutrients.carbohydrates_g;
      sum.protein_g += item.nutrients.protein_g;
      sum.fat_g += item.nutrients.fat_g;
      sum.sugar_g += item.nutrients.sugar_g;
    }
    const PlateReport r = BuildReport(items);
    ASSERT_EQ(r.totals, sum);
    ASSERT_TRUE(r.distribution_pct.has_value());
    const auto& d = *r.distribution_pct;
    ASSERT_NEAR(d.carbohydrates + d.protein + d.fat + d.sugar, 100.0, 1e-9);
  }
}

TEST(AnalyzePlateTest, BananaScene) {
  testing::SceneSpec spec;
  spec.width = 800;
  spec.height = 600;
  spec.coin_cx = 150;
  spec.coin_cy = 150;
  spec.coin_r = 110;
  spec.items = {{"banana", 400, 250, 300, 200, Rgb{230, 200, 30}, 0.9}};
  const testing::Scene scene = testing::RenderScene(spec);
  const FoodCatalog catalog = ShippedCatalog();
  const PlateReport report = AnalyzePlate(
      scene.image, {{"banana", {400, 250, 300, 200}, 0.9}}, catalog, {});

  // The coin's box follows from the pixel-centre membership rule.
  const oracle::IntBox coin = oracle::DiscBox(150, 150, 110, 800, 600);
  ASSERT_EQ(coin.w, 220);
  const double ratio = 21.93 / coin.w;
  const FoodClassSpec& banana = catalog.Lookup("banana");
  const double mass = (300 * ratio / 10) * (200 * ratio / 10) *
                      banana.default_height_cm * 0.8 * banana.density_g_per_cc;
  ASSERT_EQ(report.items.size(), 1u);
  ExpectRelNear(report.items[0].mass_g, mass, 1e-12);
  ASSERT_TRUE(report.reference.has_value());
  EXPECT_EQ(report.reference->bbox_w, 220.0);
  EXPECT_TRUE(report.skipped.empty());
}

TEST(AnalyzePlateTest, EmptyDetections) {
  const testing::Scene scene = testing::RenderScene(testing::FixtureSceneSpec());
  const PlateReport report = AnalyzePlate(scene.image, {}, ShippedCatalog(), {});
  EXPECT_TRUE(report.items.empty());
  EXPECT_FALSE(report.distribution_pct.has_value());
}

TEST(AnalyzePlateTest, UnknownLabelIsSkipped) {
  const testing::Scene scene = testing::RenderScene(testing::FixtureSceneSpec());
  const PlateReport report = AnalyzePlate(
      scene.image,
      {{"sushi", {300, 300, 50, 50}, 0.9}, {"apple", {200, 60, 100, 90}, 0.8}},
      ShippedCatalog(), {});
  ASSERT_EQ(report.items.size(), 1u);
  EXPECT_EQ(report.items[0].label, "apple");
  ASSERT_EQ(report.skipped.size(), 1u);
  EXPECT_EQ(report.skipped[0].label, "sushi");
  EXPECT_EQ(report.skipped[0].reason, "UnknownFoodClass");
}

TEST(AnalyzePlateTest, DuplicatesAcrossPluralFormsCollapse) {
  const testing::Scene scene = testing::RenderScene(testing::FixtureSceneSpec());
  const PlateReport report = AnalyzePlate(
      scene.image,
      {{"apples", {200, 60, 100, 90}, 0.7}, {"apple", {201, 60, 100, 90}, 0.9}},
      ShippedCatalog(), {});
  ASSERT_EQ(report.items.size(), 1u);
}

TEST(AnalyzePlateTest, MissingCoinPropagates) {
  testing::SceneSpec spec = testing::FixtureSceneSpec();
  spec.draw_coin = false;
  const testing::Scene scene = testing::RenderScene(spec);
  try {
    AnalyzePlate(scene.image, {}, ShippedCatalog(), {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNoReferenceFound);
  }
}

}  // namespace
}  // namespace nutrivision
