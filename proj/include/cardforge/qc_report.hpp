// Copyright 2026 The Cardforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cardforge/class_catalog.hpp"
#include "cardforge/image.hpp"
#include "cardforge/label_io.hpp"

namespace cardforge {

// Classes whose label count deviates from the mean by more than this
// fraction are reported as balance warnings.
inline constexpr double kBalanceTolerance = 0.25;

struct DatasetStats {
  std::map<std::string, std::int64_t> scenes_per_split;
  std::vector<std::string> class_names;
  std::vector<std::int64_t> labels_per_class;
  std::map<int, std::int64_t> labels_per_scene;  // label count -> scenes
  std::int64_t total_labels = 0;

  // Over labeled placements recorded in manifest.json.
  std::int64_t visibility_count = 0;
  double visibility_min = 0.0;
  double visibility_mean = 0.0;
  double visibility_max = 0.0;

  std::vector<std::string> errors;
  std::vector<std::string> warnings;

  bool ok() const { return errors.empty(); }
  nlohmann::json to_json() const;
};

// Read-only walk over `dataset_dir/{train,test}`: every label line must
// match the written grammar, index a class of classes.names and describe a
// box inside the unit square; every image needs its label file and vice
// versa; manifest split counts must match the files. Content problems are
// collected in `errors`; only an unreadable directory throws IoError.
DatasetStats validate_dataset(const std::filesystem::path& dataset_dir);

// Warnings for classes outside mean * (1 +- kBalanceTolerance).
std::vector<std::string> balance_warnings(std::span<const std::int64_t> labels_per_class,
                                          std::span<const std::string> class_names);

// Pixel rectangle of a normalized label, rounded to the nearest pixel edge.
PixelBox denormalize(const LabelRecord& r, int canvas_w, int canvas_h);

struct Overlay {
  Image image;
  // Same size as the image; 0 where no outline is drawn, else 1 + the index
  // of the last label whose outline covers the pixel.
  std::vector<std::int32_t> outline_ids;
};

// Green 1-px rectangle and class name for each label, on a copy of `image`.
Overlay render_overlay(const Image& image, std::span<const LabelRecord> labels, const ClassCatalog& catalog);
// Throws IoError for unreadable files and MalformedLabel for bad lines.
Overlay render_overlay(const std::filesystem::path& image_path, const std::filesystem::path& label_path,
                       const ClassCatalog& catalog);

}  // namespace cardforge
