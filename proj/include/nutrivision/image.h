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

#ifndef NUTRIVISION_IMAGE_H_
#define NUTRIVISION_IMAGE_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace nutrivision {

struct Rgb {
  uint8_t r = 0;
  uint8_t g = 0;
  uint8_t b = 0;

  friend bool operator==(const Rgb&, const Rgb&) = default;
};

// Hue in degrees [0, 360), saturation and value in [0, 1].
struct Hsv {
  double h = 0.0;
  double s = 0.0;
  double v = 0.0;
};

// Row-major 8-bit RGB image. The buffer always holds width * height * 3 bytes.
class RgbImage {
 public:
  RgbImage() = default;
  // Throws Error(kSchemaError) when either dimension is not positive.
  RgbImage(int width, int height, Rgb fill = {});
  // Takes ownership of an interleaved RGB buffer; its size must match.
  RgbImage(int width, int height, std::vector<uint8_t> pixels);

  int width() const { return width_; }
  int height() const { return height_; }
  bool empty() const { return pixels_.empty(); }

  Rgb at(int x, int y) const {
    const size_t i = Offset(x, y);
    return {pixels_[i], pixels_[i + 1], pixels_[i + 2]};
  }
  void set(int x, int y, Rgb c) {
    const size_t i = Offset(x, y);
    pixels_[i] = c.r;
    pixels_[i + 1] = c.g;
    pixels_[i + 2] = c.b;
  }

  std::span<const uint8_t> data() const { return pixels_; }

 private:
  size_t Offset(int x, int y) const {
    return (static_cast<size_t>(y) * width_ + x) * 3;
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<uint8_t> pixels_;
};

// Inclusive HSV band. When h_min > h_max the hue interval wraps through 0.
// h_min = 0, h_max = 360 accepts every hue.
struct HsvRange {
  double h_min = 0.0;
  double h_max = 360.0;
  double s_min = 0.0;
  double s_max = 1.0;
  double v_min = 0.0;
  double v_max = 1.0;

  bool Contains(const Hsv& hsv) const;
  // Throws Error(kSchemaError) on out-of-range bounds or min > max for s, v.
  void Validate() const;
};

class BitMask {
 public:
  BitMask() = default;
  BitMask(int width, int height, bool fill = false)
      : width_(width),
        height_(height),
        bits_(static_cast<size_t>(width) * height, fill ? 1 : 0) {}

  int width() const { return width_; }
  int height() const { return height_; }
  bool at(int x, int y) const {
    return bits_[static_cast<size_t>(y) * width_ + x] != 0;
  }
  void set(int x, int y, bool on) {
    bits_[static_cast<size_t>(y) * width_ + x] = on ? 1 : 0;
  }
  size_t Count() const;

  friend bool operator==(const BitMask&, const BitMask&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<uint8_t> bits_;
};

struct PixelRect {
  int x = 0;
  int y = 0;
  int width = 0;
  int height = 0;

  friend bool operator==(const PixelRect&, const PixelRect&) = default;
};

struct Point {
  int x = 0;
  int y = 0;
};

struct ConnectedComponent {
  std::vector<Point> pixels;
  size_t area = 0;
  PixelRect bbox;
};

// Standard hexcone conversion. Hue of achromatic pixels is 0.
Hsv RgbToHsv(Rgb pixel);

BitMask MaskByColor(const RgbImage& image, const HsvRange& range);

// 8-connected components with exact area and tight axis-aligned bounds,
// sorted by area descending (ties by top-left corner, row-major).
std::vector<ConnectedComponent> FindComponents(const BitMask& mask);

// 3x3 opening followed by one conditional dilation inside the original mask.
// Removes isolated speckles and limits noise bridging onto a blob boundary to
// a single pixel, while restoring the one-pixel tips an opening shaves off
// round shapes.
BitMask Despeckle(const BitMask& mask);

}  // namespace nutrivision

#endif  // NUTRIVISION_IMAGE_H_
