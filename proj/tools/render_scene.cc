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

// Writes the synthetic fixture scene: <dir>/plate.png and
// <dir>/plate.detections.json.

#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "nutrivision/error.h"
#include "nutrivision/image_codec.h"
#include "testing/synthetic_scene.h"

int main(int argc, char** argv) {
  CLI::App app{"Render the synthetic fixture scene."};
  std::string dir = ".";
  int scale = 1;
  bool no_coin = false;
  app.add_option("dir", dir, "Output directory");
  app.add_option("--scale", scale, "Resolution multiplier")
      ->check(CLI::PositiveNumber);
  app.add_flag("--no-coin", no_coin, "Leave the reference coin out");
  CLI11_PARSE(app, argc, argv);

  nutrivision::testing::SceneSpec spec =
      nutrivision::testing::FixtureSceneSpec();
  spec.draw_coin = !no_coin;
  const nutrivision::testing::Scene scene =
      nutrivision::testing::RenderScene(spec, scale);
  try {
    nutrivision::WritePngFile(scene.image, dir + "/plate.png");
    std::ofstream(dir + "/plate.detections.json")
        << nutrivision::testing::DetectionsDocument(scene) << '\n';
  } catch (const nutrivision::Error& e) {
    std::cerr << e.what() << '\n';
    return 1;
  }
  return 0;
}
