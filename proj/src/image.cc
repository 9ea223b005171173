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

#include "nutrivision/image.h"

#include <algorithm>
#include <string>
#include <utility>

#include "nutrivision/error.h"

namespace nutrivision {

RgbImage::RgbImage(int width, int height, Rgb fill)
    : width_(width), height_(height) {
  if (width <= 0 || height <= 0) {
    throw Error(ErrorCode::kSchemaError, "image dimensions must be positive");
  }
  pixels_.resize(static_cast<size_t>(width) * height * 3);
  for (size_t i = 0; i < pixels_.size(); i += 3) {
    pixels_[i] = fill.r;
    pixels_[i + 1] = fill.g;
    pixels_[i + 2] = fill.b;
  }
}

RgbImage::RgbImage(int width, int height, std::vector<uint8_t> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  if (width <= 0 || height <= 0) {
    throw Error(ErrorCode::kSchemaError, "image dimensions must be positive");
  }
  if (pixels_.size() != static_cast<size_t>(width) * height * 3) {
    throw Error(ErrorCode::kSchemaError,
                "pixel buffer length " + std::to_string(pixels_.size()) +
                    " does not match " + std::to_string(width) + "x" +
                    std::to_string(height) + "x3");
  }
}

bool HsvRange::Contains(const Hsv& hsv) const {
  if (hsv.s < s_min || hsv.s > s_max) return false;
  if (hsv.v < v_min || hsv.v > v_max) return false;
  if (h_min <= h_max) return hsv.h >= h_min && hsv.h <= h_max;
  return hsv.h >= h_min || hsv.h <= h_max;
}

void HsvRange::Validate() const {
  auto in = [](double x, double lo, double hi) { return x >= lo && x <= hi; };
  if (!in(h_min, 0, 360) || !in(h_max, 0, 360)) {
    throw Error(ErrorCode::kSchemaError, "hue bounds must lie in [0, 360]");
  }
  if (!in(s_min, 0, 1) || !in(s_max, 0, 1) || !in(v_min, 0, 1) ||
      !in(v_max, 0, 1)) {
    throw Error(ErrorCode::kSchemaError,
                "saturation/value bounds must lie in [0, 1]");
  }
  if (s_min > s_max || v_min > v_max) {
    throw Error(ErrorCode::kSchemaError,
                "saturation/value bounds need min <= max");
  }
}

size_t BitMask::Count() const {
  return static_cast<size_t>(std::count(bits_.begin(), bits_.end(), 1));
}

Hsv RgbToHsv(Rgb pixel) {
  const double r = pixel.r / 255.0;
  const double g = pixel.g / 255.0;
  const double b = pixel.b / 255.0;
  const double max = std::max({r, g, b});
  const double min = std::min({r, g, b});
  const double delta = max - min;

  Hsv out;
  out.v = max;
  out.s = max > 0.0 ? delta / max : 0.0;
  if (delta <= 0.0) return out;

  double h;
  if (max == r) {
    h = 60.0 * ((g - b) / delta);
  } else if (max == g) {
    h = 60.0 * ((b - r) / delta + 2.0);
  } else {
    h = 60.0 * ((r - g) / delta + 4.0);
  }
  if (h < 0.0) h += 360.0;
  if (h >= 360.0) h -= 360.0;
  out.h = h;
  return out;
}

BitMask MaskByColor(const RgbImage& image, const HsvRange& range) {
  BitMask mask(image.width(), image.height());
  for (int y = 0; y < image.height(); ++y) {
    for (int x = 0; x < image.width(); ++x) {
      if (range.Contains(RgbToHsv(image.at(x, y)))) mask.set(x, y, true);
    }
  }
  return mask;
}

std::vector<ConnectedComponent> FindComponents(const BitMask& mask) {
  const int w = mask.width();
  const int h = mask.height();
  std::vector<uint8_t> seen(static_cast<size_t>(w) * h, 0);
  std::vector<ConnectedComponent> components;
  std::vector<Point> stack;

  for (int y0 = 0; y0 < h; ++y0) {
    for (int x0 = 0; x0 < w; ++x0) {
      const size_t i0 = static_cast<size_t>(y0) * w + x0;
      if (!mask.at(x0, y0) || seen[i0]) continue;

      ConnectedComponent comp;
      int min_x = x0, max_x = x0, min_y = y0, max_y = y0;
      seen[i0] = 1;
      stack.push_back({x0, y0});
      while (!stack.empty()) {
        const Point p = stack.back();
        stack.pop_back();
        comp.pixels.push_back(p);
        min_x = std::min(min_x, p.x);
        max_x = std::max(max_x, p.x);
        min_y = std::min(min_y, p.y);
        max_y = std::max(max_y, p.y);
        for (int dy = -1; dy <= 1; ++dy) {
          for (int dx = -1; dx <= 1; ++dx) {
            const int nx = p.x + dx;
            const int ny = p.y + dy;
            if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
            const size_t ni = static_cast<size_t>(ny) * w + nx;
            if (seen[ni] || !mask.at(nx, ny)) continue;
            seen[ni] = 1;
            stack.push_back({nx, ny});
          }
        }
      }
      comp.area = comp.pixels.size();
      comp.bbox = {min_x, min_y, max_x - min_x + 1, max_y - min_y + 1};
      components.push_back(std::move(comp));
    }
  }

  // Discovery order is row-major by first pixel, so a stable sort keeps the
  // documented tie order.
  std::stable_sort(components.begin(), components.end(),
                   [](const ConnectedComponent& a,
                      const ConnectedComponent& b) { return a.area > b.area; });
  return components;
}

namespace {

// 3x3 square erosion (erode = true) or dilation of `in`. Pixels outside the
// image count as off.
BitMask Morph3x3(const BitMask& in, bool erode) {
  const int w = in.width();
  const int h = in.height();
  BitMask out(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      bool all = true;
      bool any = false;
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          const int nx = x + dx;
          const int ny = y + dy;
          const bool on =
              nx >= 0 && ny >= 0 && nx < w && ny < h && in.at(nx, ny);
          all = all && on;
          any = any || on;
        }
      }
      out.set(x, y, erode ? all : any);
    }
  }
  return out;
}

}  // namespace

BitMask Despeckle(const BitMask& mask) {
  const BitMask opened = Morph3x3(Morph3x3(mask, true), false);
  const BitMask grown = Morph3x3(opened, false);
  BitMask out(mask.width(), mask.height());
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) {
      out.set(x, y, grown.at(x, y) && mask.at(x, y));
    }
  }
  return out;
}

}  // namespace nutrivision
