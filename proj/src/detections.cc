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

#include "nutrivision/detections.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <tuple>

#include "json.hpp"
#include "nutrivision/catalog.h"
#include "nutrivision/error.h"

namespace nutrivision {

using nlohmann::json;

namespace {

[[noreturn]] void SchemaError(const std::string& message) {
  throw Error(ErrorCode::kSchemaError, "detection document: " + message);
}

double RequireNumber(const json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_number()) {
    SchemaError(where + ": '" + key + "' must be a number");
  }
  const double v = it->get<double>();
  if (!std::isfinite(v)) SchemaError(where + ": '" + key + "' is not finite");
  return v;
}

}  // namespace

std::vector<Detection> LoadDetections(std::string_view document, int image_w,
                                      int image_h,
                                      const DetectionLoadOptions& options,
                                      const FoodCatalog* catalog) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    SchemaError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) SchemaError("top level must be an object");
  const double doc_w = RequireNumber(doc, "image_width", "top level");
  const double doc_h = RequireNumber(doc, "image_height", "top level");
  if (doc_w != image_w || doc_h != image_h) {
    SchemaError("produced for a " + std::to_string(static_cast<long>(doc_w)) +
                "x" + std::to_string(static_cast<long>(doc_h)) +
                " image but the image is " + std::to_string(image_w) + "x" +
                std::to_string(image_h));
  }
  auto list = doc.find("detections");
  if (list == doc.end() || !list->is_array()) {
    SchemaError("'detections' must be an array");
  }

  std::vector<Detection> out;
  int n = 0;
  for (const json& entry : *list) {
    const std::string where = "detection #" + std::to_string(++n);
    if (!entry.is_object()) SchemaError(where + " is not an object");
    auto label = entry.find("label");
    if (label == entry.end() || !label->is_string()) {
      SchemaError(where + ": 'label' must be a string");
    }
    auto bbox = entry.find("bbox");
    if (bbox == entry.end() || !bbox->is_array() || bbox->size() != 4) {
      SchemaError(where + ": 'bbox' must be [x, y, w, h]");
    }
    double v[4];
    for (size_t k = 0; k < 4; ++k) {
      if (!(*bbox)[k].is_number()) SchemaError(where + ": bbox entries must be numbers");
      v[k] = (*bbox)[k].get<double>();
      if (!std::isfinite(v[k])) SchemaError(where + ": bbox entry not finite");
    }
    if (!(v[2] > 0.0 && v[3] > 0.0)) {
      SchemaError(where + ": bbox width and height must be positive");
    }
    const double confidence = RequireNumber(entry, "confidence", where);
    if (confidence < 0.0 || confidence > 1.0) {
      SchemaError(where + ": confidence must lie in [0, 1]");
    }
    if (confidence < options.confidence_threshold) continue;

    const double x0 = std::clamp(v[0], 0.0, static_cast<double>(image_w));
    const double y0 = std::clamp(v[1], 0.0, static_cast<double>(image_h));
    const double x1 = std::clamp(v[0] + v[2], 0.0, static_cast<double>(image_w));
    const double y1 = std::clamp(v[1] + v[3], 0.0, static_cast<double>(image_h));
    if (!(x1 > x0 && y1 > y0)) continue;  // entirely off-image

    Detection d;
    const std::string raw = label->get<std::string>();
    d.label = catalog != nullptr ? catalog->Normalize(raw) : CanonicalLabel(raw);
    d.bbox = {x0, y0, x1 - x0, y1 - y0};
    d.confidence = confidence;
    out.push_back(std::move(d));
  }
  return out;
}

double Iou(const Box& a, const Box& b) {
  // Areas come from the same corner coordinates as the intersection, so a
  // box compared with itself gives exactly 1.
  const double ax1 = a.x + a.w, ay1 = a.y + a.h;
  const double bx1 = b.x + b.w, by1 = b.y + b.h;
  const double ix = std::max(0.0, std::min(ax1, bx1) - std::max(a.x, b.x));
  const double iy = std::max(0.0, std::min(ay1, by1) - std::max(a.y, b.y));
  const double inter = ix * iy;
  if (inter <= 0.0) return 0.0;
  const double uni =
      (ax1 - a.x) * (ay1 - a.y) + (bx1 - b.x) * (by1 - b.y) - inter;
  return uni > 0.0 ? inter / uni : 0.0;
}

std::vector<Detection> Dedupe(std::vector<Detection> detections) {
  std::stable_sort(detections.begin(), detections.end(),
                   [](const Detection& a, const Detection& b) {
                     return a.confidence > b.confidence;
                   });
  std::vector<Detection> kept;
  for (Detection& d : detections) {
    const bool suppressed =
        std::any_of(kept.begin(), kept.end(), [&](const Detection& k) {
          return k.label == d.label && Iou(k.bbox, d.bbox) > kDedupeIouThreshold;
        });
    if (!suppressed) kept.push_back(std::move(d));
  }
  return kept;
}

DetectionMetrics Evaluate(const std::vector<Detection>& detections,
                          const std::vector<GroundTruthBox>& truth) {
  struct Candidate {
    double iou;
    size_t det;
    size_t gt;
  };
  std::vector<Candidate> candidates;
  for (size_t i = 0; i < detections.size(); ++i) {
    for (size_t j = 0; j < truth.size(); ++j) {
      if (detections[i].label != truth[j].label) continue;
      const double v = Iou(detections[i].bbox, truth[j].bbox);
      if (v >= kMatchIouFloor) candidates.push_back({v, i, j});
    }
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const Candidate& a, const Candidate& b) {
              return std::tie(b.iou, a.det, a.gt) < std::tie(a.iou, b.det, b.gt);
            });

  std::vector<bool> det_used(detections.size(), false);
  std::vector<bool> gt_used(truth.size(), false);
  double iou_sum = 0.0;
  int tp = 0;
  for (const Candidate& c : candidates) {
    if (det_used[c.det] || gt_used[c.gt]) continue;
    det_used[c.det] = true;
    gt_used[c.gt] = true;
    iou_sum += c.iou;
    ++tp;
  }

  DetectionMetrics m;
  m.true_positives = tp;
  m.false_positives = static_cast<int>(detections.size()) - tp;
  m.false_negatives = static_cast<int>(truth.size()) - tp;
  auto ratio = [](double num, double den, double& value, bool& defined) {
    defined = den > 0.0;
    value = defined ? num / den : 0.0;
  };
  ratio(tp, tp + m.false_positives, m.precision, m.precision_defined);
  ratio(tp, tp + m.false_negatives, m.recall, m.recall_defined);
  ratio(tp, tp + m.false_positives + m.false_negatives, m.accuracy,
        m.accuracy_defined);
  ratio(iou_sum, tp, m.mean_iou, m.mean_iou_defined);
  return m;
}

}  // namespace nutrivision
