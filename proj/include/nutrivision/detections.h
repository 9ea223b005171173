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

#ifndef NUTRIVISION_DETECTIONS_H_
#define NUTRIVISION_DETECTIONS_H_

#include <string>
#include <string_view>
#include <vector>

namespace nutrivision {

class FoodCatalog;

// Axis-aligned box in pixel units: top-left corner plus extent.
struct Box {
  double x = 0.0;
  double y = 0.0;
  double w = 0.0;
  double h = 0.0;

  double area() const { return w * h; }
  friend bool operator==(const Box&, const Box&) = default;
};

struct Detection {
  std::string label;
  Box bbox;
  double confidence = 0.0;
};

struct GroundTruthBox {
  std::string label;
  Box bbox;
};

struct DetectionLoadOptions {
  double confidence_threshold = 0.5;
};

// Parses a detector output document:
//
//   {"image_width": W, "image_height": H,
//    "detections": [{"label": "apple", "bbox": [x, y, w, h],
//                    "confidence": 0.9}, ...]}
//
// Boxes are clamped to the image, entries under the confidence threshold and
// boxes lying entirely outside the image are dropped, and labels are
// lowercased (plural 's' stripped when `catalog` knows the singular).
//
// Throws Error(kSchemaError) on malformed documents, out-of-range
// confidences, non-positive box extents, or when the document's image size
// differs from (image_w, image_h).
std::vector<Detection> LoadDetections(std::string_view document, int image_w,
                                      int image_h,
                                      const DetectionLoadOptions& options = {},
                                      const FoodCatalog* catalog = nullptr);

// Intersection over union; 0 for disjoint boxes.
double Iou(const Box& a, const Box& b);

inline constexpr double kDedupeIouThreshold = 0.6;

// Keeps the higher-confidence box of every same-label pair overlapping by
// more than kDedupeIouThreshold. Output is ordered by confidence descending.
std::vector<Detection> Dedupe(std::vector<Detection> detections);

struct DetectionMetrics {
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double mean_iou = 0.0;
  int true_positives = 0;
  int false_positives = 0;
  int false_negatives = 0;
  // A metric whose denominator is zero is reported as 0 with its flag false.
  bool accuracy_defined = false;
  bool precision_defined = false;
  bool recall_defined = false;
  bool mean_iou_defined = false;
};

inline constexpr double kMatchIouFloor = 0.5;

// Per-box evaluation. Detections and ground truth of the same label are
// matched greedily by descending IoU, ignoring pairs below kMatchIouFloor.
// accuracy = TP / (TP + FP + FN).
DetectionMetrics Evaluate(const std::vector<Detection>& detections,
                          const std::vector<GroundTruthBox>& truth);

}  // namespace nutrivision

#endif  // NUTRIVISION_DETECTIONS_H_
