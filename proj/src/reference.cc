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

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "nutrivision/error.h"

namespace nutrivision {

void ReferenceSpec::Validate() const {
  if (!(real_diameter_mm > 0.0)) {
    throw Error(ErrorCode::kSchemaError, "real_diameter_mm must be positive");
  }
  if (!(min_fill_ratio > 0.0 && min_fill_ratio <= 1.0)) {
    throw Error(ErrorCode::kSchemaError, "min_fill_ratio must lie in (0, 1]");
  }
  if (min_area_px < 0.0 || max_area_px < min_area_px) {
    throw Error(ErrorCode::kSchemaError,
                "area gates need 0 <= min_area_px <= max_area_px");
  }
  if (ambiguity_margin < 0.0 || ambiguity_margin >= 1.0) {
    throw Error(ErrorCode::kSchemaError,
                "ambiguity_margin must lie in [0, 1)");
  }
  color.Validate();
}

ReferenceMeasurement ReferenceMeasurement::FromBox(double x, double y,
                                                   double w, double h,
                                                   double area_px,
                                                   double real_diameter_mm) {
  if (!(w > 0.0 && h > 0.0)) {
    throw Error(ErrorCode::kSchemaError,
                "reference box dimensions must be positive");
  }
  ReferenceMeasurement m;
  m.bbox_x = x;
  m.bbox_y = y;
  m.bbox_w = w;
  m.bbox_h = h;
  m.area_px = area_px;
  m.ratio_x_mm_per_px = real_diameter_mm / w;
  m.ratio_y_mm_per_px = real_diameter_mm / h;
  return m;
}

namespace {

struct TrimmedBox {
  PixelRect bbox;
  size_t area = 0;
};

// Tight box of the component's pixels whose centres lie within a quarter
// pixel of the ellipse with the component's first and second moments. Every pixel
// of a rasterized disc has its centre inside the disc, while noise touching
// the rim has its centre outside, so the trim drops the noise and keeps the
// disc. On clean discs the fitted semi-axes are within 0.1 px of the radius.
TrimmedBox TrimToMomentEllipse(const ConnectedComponent& c) {
  double mx = 0.0, my = 0.0;
  for (const Point& p : c.pixels) {
    mx += p.x + 0.5;
    my += p.y + 0.5;
  }
  mx /= c.area;
  my /= c.area;
  double vx = 0.0, vy = 0.0;
  for (const Point& p : c.pixels) {
    vx += (p.x + 0.5 - mx) * (p.x + 0.5 - mx);
    vy += (p.y + 0.5 - my) * (p.y + 0.5 - my);
  }
  // A uniform ellipse with semi-axis a has variance a^2 / 4 along that axis.
  const double ax = 2.0 * std::sqrt(vx / c.area) + 0.25;
  const double ay = 2.0 * std::sqrt(vy / c.area) + 0.25;

  int min_x = 0, max_x = -1, min_y = 0, max_y = -1;
  TrimmedBox out;
  for (const Point& p : c.pixels) {
    const double dx = (p.x + 0.5 - mx) / ax;
    const double dy = (p.y + 0.5 - my) / ay;
    if (dx * dx + dy * dy > 1.0) continue;
    if (out.area++ == 0) {
      min_x = max_x = p.x;
      min_y = max_y = p.y;
    }
    min_x = std::min(min_x, p.x);
    max_x = std::max(max_x, p.x);
    min_y = std::min(min_y, p.y);
    max_y = std::max(max_y, p.y);
  }
  if (out.area == 0) return {c.bbox, c.area};
  out.bbox = {min_x, min_y, max_x - min_x + 1, max_y - min_y + 1};
  return out;
}

}  // namespace

ReferenceMeasurement DetectReference(const RgbImage& image,
                                     const ReferenceSpec& spec) {
  spec.Validate();
  BitMask mask = MaskByColor(image, spec.color);
  if (spec.despeckle) mask = Despeckle(mask);

  std::vector<const ConnectedComponent*> passers;
  const std::vector<ConnectedComponent> components = FindComponents(mask);
  for (const ConnectedComponent& c : components) {
    const double area = static_cast<double>(c.area);
    if (area < spec.min_area_px || area > spec.max_area_px) continue;
    const double box_area =
        static_cast<double>(c.bbox.width) * static_cast<double>(c.bbox.height);
    if (area < spec.min_fill_ratio * box_area) continue;
    passers.push_back(&c);
  }

  if (passers.empty()) {
    throw Error(ErrorCode::kNoReferenceFound,
                "no coin-colored blob passed the area and shape screen (" +
                    std::to_string(components.size()) + " candidates)");
  }
  // Components arrive sorted by area, so the first two passers are the
  // largest pair.
  if (passers.size() >= 2) {
    const double a0 = static_cast<double>(passers[0]->area);
    const double a1 = static_cast<double>(passers[1]->area);
    if (a0 - a1 < spec.ambiguity_margin * a0) {
      throw Error(ErrorCode::kAmbiguousReference,
                  "two reference candidates of similar size (" +
                      std::to_string(passers[0]->area) + " and " +
                      std::to_string(passers[1]->area) +
                      " px); retake the photo with a single coin");
    }
  }

  const TrimmedBox best = TrimToMomentEllipse(*passers.front());
  return ReferenceMeasurement::FromBox(best.bbox.x, best.bbox.y,
                                       best.bbox.width, best.bbox.height,
                                       static_cast<double>(best.area),
                                       spec.real_diameter_mm);
}

}  // namespace nutrivision
