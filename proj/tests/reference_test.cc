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

#include "nutrivision/reference.h"

#include <cmath>
#include <random>

#include <gtest/gtest.h>
#include "nutrivision/error.h"
#include "oracles.h"
#include "testing/synthetic_scene.h"

namespace nutrivision {
namespace {

using testing::FillDisc;
using testing::FillRect;
using testing::kBackground;
using testing::kCoinColor;

RgbImage SingleDisc(int w, int h, double cx, double cy, double r) {
  RgbImage image(w, h, kBackground);
  FillDisc(image, cx, cy, r, kCoinColor);
  return image;
}

ErrorCode CodeOf(const RgbImage& image, const ReferenceSpec& spec = {}) {
  try {
    DetectReference(image, spec);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error";
  return ErrorCode::kIoError;
}

TEST(DetectReferenceTest, CenteredDisc) {
  const ReferenceMeasurement m =
      DetectReference(SingleDisc(640, 480, 320, 240, 60), {});
  EXPECT_EQ(m.bbox_w, 120.0);
  EXPECT_EQ(m.bbox_h, 120.0);
  EXPECT_EQ(m.bbox_x, 260.0);
  EXPECT_EQ(m.bbox_y, 180.0);
  EXPECT_NEAR(m.ratio_x_mm_per_px, 0.18275, 1e-12);
  EXPECT_NEAR(m.ratio_y_mm_per_px, 0.18275, 1e-12);
  EXPECT_EQ(m.area_px,
            static_cast<double>(oracle::DiscPixelCount(320, 240, 60, 640, 480)));
  EXPECT_LE(m.area_px, m.bbox_w * m.bbox_h);
}

TEST(DetectReferenceTest, NoCoinColoredPixels) {
  EXPECT_EQ(CodeOf(RgbImage(320, 240, kBackground)),
            ErrorCode::kNoReferenceFound);
}

TEST(DetectReferenceTest, DoubleResolutionHalvesRatios) {
  const ReferenceMeasurement one =
      DetectReference(SingleDisc(640, 480, 320, 240, 60), {});
  const ReferenceMeasurement two =
      DetectReference(SingleDisc(1280, 960, 640, 480, 120), {});
  EXPECT_DOUBLE_EQ(two.ratio_x_mm_per_px, one.ratio_x_mm_per_px / 2.0);
  EXPECT_DOUBLE_EQ(two.ratio_y_mm_per_px, one.ratio_y_mm_per_px / 2.0);
}

TEST(DetectReferenceTest, RatioLawIsExact) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> pos(80.0, 240.0);
  std::uniform_real_distribution<double> rad(12.0, 60.0);
  ReferenceSpec spec;
  spec.real_diameter_mm = 25.75;
  for (int trial = 0; trial < 25; ++trial) {
    const ReferenceMeasurement m =
        DetectReference(SingleDisc(320, 320, pos(rng), pos(rng), rad(rng)), spec);
    EXPECT_DOUBLE_EQ(m.ratio_x_mm_per_px * m.bbox_w, spec.real_diameter_mm);
    EXPECT_DOUBLE_EQ(m.ratio_y_mm_per_px * m.bbox_h, spec.real_diameter_mm);
  }
}

TEST(DetectReferenceTest, TranslationInvariance) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> pos(70.0, 330.0);
  const double r = 33.0;
  for (int trial = 0; trial < 25; ++trial) {
    const double cx = pos(rng), cy = pos(rng);
    const ReferenceMeasurement m = DetectReference(SingleDisc(400, 400, cx, cy, r), {});
    EXPECT_NEAR(m.bbox_w, 2 * r, 1.0);
    EXPECT_NEAR(m.bbox_h, 2 * r, 1.0);
    const oracle::IntBox box = oracle::DiscBox(cx, cy, r, 400, 400);
    EXPECT_EQ(m.bbox_w, box.w);
    EXPECT_EQ(m.bbox_h, box.h);
    EXPECT_EQ(m.bbox_x, box.x);
    EXPECT_EQ(m.bbox_y, box.y);
  }
}

TEST(DetectReferenceTest, LowFillShapesAreNeverSelected) {
  // An L-shaped coin-colored bracket: large area, fill well under 0.7.
  RgbImage image(300, 300, kBackground);
  FillRect(image, 20, 20, 200, 12, kCoinColor);
  FillRect(image, 20, 20, 12, 200, kCoinColor);
  EXPECT_EQ(CodeOf(image), ErrorCode::kNoReferenceFound);
  FillDisc(image, 200, 200, 30, kCoinColor);
  const ReferenceMeasurement m = DetectReference(image, {});
  EXPECT_EQ(m.bbox_w, 60.0);
  EXPECT_EQ(m.bbox_x, 170.0);
}

TEST(DetectReferenceTest, SolidSquarePassesFillScreen) {
  RgbImage image(200, 200, kBackground);
  FillRect(image, 50, 50, 60, 60, kCoinColor);
  const ReferenceMeasurement m = DetectReference(image, {});
  EXPECT_EQ(m.bbox_w, 60.0);
  EXPECT_EQ(m.bbox_h, 60.0);
  // The reported area excludes the corners beyond the moment ellipse. A
  // 60-pixel run of unit cells centred at 0 has variance (60^2 - 1) / 12.
  const double a = 2.0 * std::sqrt((60.0 * 60.0 - 1.0) / 12.0) + 0.25;
  int inside = 0;
  for (int y = 0; y < 60; ++y) {
    for (int x = 0; x < 60; ++x) {
      const double dx = (x - 29.5) / a, dy = (y - 29.5) / a;
      inside += dx * dx + dy * dy <= 1.0;
    }
  }
  EXPECT_LT(inside, 3600);
  EXPECT_EQ(m.area_px, inside);
}

TEST(DetectReferenceTest, RimNoiseDoesNotWidenTheBox) {
  // A coin-colored pixel just beyond each extreme of the disc.
  RgbImage image = SingleDisc(200, 200, 100, 100, 30);
  const oracle::IntBox box = oracle::DiscBox(100, 100, 30, 200, 200);
  image.set(100, box.y - 1, kCoinColor);
  image.set(99, box.y + box.h, kCoinColor);
  image.set(box.x - 1, 100, kCoinColor);
  image.set(box.x + box.w, 99, kCoinColor);
  ReferenceSpec spec;
  spec.despeckle = false;
  const ReferenceMeasurement m = DetectReference(image, spec);
  EXPECT_EQ(m.bbox_x, box.x);
  EXPECT_EQ(m.bbox_y, box.y);
  EXPECT_EQ(m.bbox_w, box.w);
  EXPECT_EQ(m.bbox_h, box.h);
  EXPECT_EQ(m.area_px,
            static_cast<double>(oracle::DiscPixelCount(100, 100, 30, 200, 200)));
}

TEST(DetectReferenceTest, TrimKeepsEveryPixelOfCleanDiscs) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> pos(160.0, 240.0);
  std::uniform_real_distribution<double> rad(10.0, 150.0);
  ReferenceSpec spec;
  spec.despeckle = false;
  spec.max_area_px = 1e6;
  for (int trial = 0; trial < 200; ++trial) {
    const double cx = pos(rng), cy = pos(rng), r = rad(rng);
    const ReferenceMeasurement m =
        DetectReference(SingleDisc(400, 400, cx, cy, r), spec);
    const oracle::IntBox box = oracle::DiscBox(cx, cy, r, 400, 400);
    ASSERT_EQ(m.bbox_w, box.w) << r;
    ASSERT_EQ(m.bbox_h, box.h) << r;
    ASSERT_EQ(m.area_px,
              static_cast<double>(oracle::DiscPixelCount(cx, cy, r, 400, 400)));
  }
}

TEST(DetectReferenceTest, AreaGates) {
  EXPECT_EQ(CodeOf(SingleDisc(100, 100, 50, 50, 5)), ErrorCode::kNoReferenceFound);
  EXPECT_EQ(CodeOf(SingleDisc(400, 400, 200, 200, 160)),
            ErrorCode::kNoReferenceFound);
  ReferenceSpec wide;
  wide.max_area_px = 1e6;
  EXPECT_NO_THROW(DetectReference(SingleDisc(400, 400, 200, 200, 160), wide));
}

TEST(DetectReferenceTest, SimilarCandidatesAreAmbiguous) {
  RgbImage image(400, 200, kBackground);
  FillDisc(image, 100, 100, 40, kCoinColor);
  FillDisc(image, 300, 100, 41, kCoinColor);
  EXPECT_EQ(CodeOf(image), ErrorCode::kAmbiguousReference);
}

TEST(DetectReferenceTest, ClearlyLargerCandidateWins) {
  RgbImage image(400, 200, kBackground);
  FillDisc(image, 100, 100, 30, kCoinColor);
  FillDisc(image, 300, 100, 45, kCoinColor);
  const ReferenceMeasurement m = DetectReference(image, {});
  EXPECT_EQ(m.bbox_w, 90.0);
  EXPECT_EQ(m.bbox_x, 255.0);
}

TEST(DetectReferenceTest, SpeckleNoiseIsIgnored) {
  RgbImage image = SingleDisc(320, 240, 160, 120, 40);
  std::mt19937_64 rng(21);
  testing::AddBackgroundNoise(image, 0.05, kCoinColor, rng);
  const ReferenceMeasurement m = DetectReference(image, {});
  EXPECT_NEAR(m.bbox_w, 80.0, 2.0);
  EXPECT_NEAR(m.bbox_h, 80.0, 2.0);
}

TEST(DetectReferenceTest, CustomHueBand) {
  RgbImage image(200, 200, kBackground);
  FillDisc(image, 100, 100, 30, Rgb{220, 180, 40});  // brass
  EXPECT_EQ(CodeOf(image), ErrorCode::kNoReferenceFound);
  ReferenceSpec brass;
  brass.color = {35.0, 55.0, 0.6, 0.9, 0.6, 1.0};
  EXPECT_EQ(DetectReference(image, brass).bbox_w, 60.0);
}

TEST(ReferenceSpecTest, ValidateRejectsBadValues) {
  ReferenceSpec spec;
  spec.real_diameter_mm = 0.0;
  EXPECT_THROW(spec.Validate(), Error);
  spec = {};
  spec.min_fill_ratio = 0.0;
  EXPECT_THROW(spec.Validate(), Error);
  spec.min_fill_ratio = 1.2;
  EXPECT_THROW(spec.Validate(), Error);
  spec = {};
  spec.max_area_px = spec.min_area_px - 1;
  EXPECT_THROW(spec.Validate(), Error);
  EXPECT_NO_THROW(ReferenceSpec{}.Validate());
}

TEST(ReferenceMeasurementTest, FromBox) {
  const ReferenceMeasurement m =
      ReferenceMeasurement::FromBox(1, 2, 219.3, 219.3, 37000, 21.93);
  EXPECT_DOUBLE_EQ(m.ratio_x_mm_per_px, 0.1);
  EXPECT_DOUBLE_EQ(m.ratio_y_mm_per_px, 0.1);
  EXPECT_THROW(ReferenceMeasurement::FromBox(0, 0, 0, 5, 1, 21.93), Error);
}

}  // namespace
}  // namespace nutrivision
