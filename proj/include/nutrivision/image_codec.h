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

#ifndef NUTRIVISION_IMAGE_CODEC_H_
#define NUTRIVISION_IMAGE_CODEC_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "nutrivision/image.h"

namespace nutrivision {

// Decodes PNG or JPEG bytes. Throws Error(kImageDecodeError).
RgbImage DecodeImage(std::span<const uint8_t> bytes);
RgbImage ReadImageFile(const std::string& path);

// Lossless PNG encoding.
std::vector<uint8_t> EncodePng(const RgbImage& image);
void WritePngFile(const RgbImage& image, const std::string& path);

}  // namespace nutrivision

#endif  // NUTRIVISION_IMAGE_CODEC_H_
