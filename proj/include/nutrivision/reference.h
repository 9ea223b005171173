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

#ifndef NUTRIVISION_REFERENCE_H_
#define NUTRIVISION_REFERENCE_H_

#include <numbers>

#include "nutrivision/image.h"

namespace nutrivision {

// Diameter of the one-rupee coin used as the in-frame scale reference.
inline constexpr double kOneRupeeCoinDiameterMm = 21.93;

// Describes what the reference object looks like and how to screen
// candidate blobs. Defaults target a low-saturation metallic coin.
struct ReferenceSpec {
  double real_diameter_mm = kOneRupeeCoinDiameterMm;
  HsvRange color{0.0, 360.0, 0.0, 0.25, 0.35, 0.95};
  double min_area_px = std::numbers::pi * 10.0 * 10.0;
  double max_area_px = std::numbers::pi * 150.0 * 150.0;
  // area / (bbox_w * bbox_h). A rasterized disc sits near pi/4.
  double min_fill_ratio = 0.70;
  // Two passing candidates whose areas differ by less than this fraction of
  // the larger one make the detection ambiguous.
  double ambiguity_margin = 0.10;
  bool despeckle = true;

  void Validate() const;
};

// Calibration anchor. bbox dimensions are doubles so externally measured
// (sub-pixel) boxes can be fed in directly.
struct ReferenceMeasurement {
  double bbox_x = 0.0;
  double bbox_y = 0.0;
  double bbox_w = 0.0;
  double bbox_h = 0.0;
  double area_px = 0.0;
  double ratio_x_mm_per_px = 0.0;
  double ratio_y_mm_per_px = 0.0;

  // Builds a measurement from a box of known real diameter.
  static ReferenceMeasurement FromBox(double x, double y, double w, double h,
                                      double area_px, double real_diameter_mm);
};

// Locates the reference coin: color mask, optional despeckle, 8-connected
// components, area and fill-ratio screen, largest passer wins. The winner's
// box is taken after trimming pixels that lie outside the ellipse fitted to
// its moments, so noise attached to the rim does not widen it.
//
// Throws Error(kNoReferenceFound) when no component passes and
// Error(kAmbiguousReference) when the two largest passers are within
// `ambiguity_margin` of each other in area.
ReferenceMeasurement DetectReference(const RgbImage& image,
                                     const ReferenceSpec& spec);

}  // namespace nutrivision

#endif  // NUTRIVISION_REFERENCE_H_
