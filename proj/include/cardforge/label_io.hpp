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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cardforge/class_catalog.hpp"
#include "cardforge/config.hpp"
#include "cardforge/occlusion.hpp"

namespace cardforge {

// Detector label: class index plus box center and size, normalized by the
// canvas dimensions.
struct LabelRecord {
  int class_index = 0;
  double cx = 0.0;
  double cy = 0.0;
  double w = 0.0;
  double h = 0.0;

  friend bool operator==(const LabelRecord&, const LabelRecord&) = default;
};

LabelRecord normalize_box(int class_index, const PixelBox& box, int canvas_w, int canvas_h);

// One record per region with visible pixels and fraction >= min_visibility,
// in the regions' order.
std::vector<LabelRecord> to_label_records(std::span<const VisibleRegion> regions,
                                          std::span<const Placement> placements, int canvas_w, int canvas_h,
                                          const ClassCatalog& catalog, double min_visibility,
                                          BboxMode mode = BboxMode::Visible);

// `<class> <cx> <cy> <w> <h>` with six decimals, no trailing newline.
std::string format_label_line(const LabelRecord& r);
// Lines joined with LF, each LF-terminated. Empty input gives "".
std::string format_labels(std::span<const LabelRecord> records);
void write_labels(std::span<const LabelRecord> records, const std::filesystem::path& path);

// Lenient numeric parse of one line; throws MalformedLabel.
LabelRecord parse_label_line(std::string_view line);
std::vector<LabelRecord> parse_labels(std::string_view text);
std::vector<LabelRecord> read_labels(const std::filesystem::path& path);

// Byte-level check of the written form: digits, then four fields of the
// shape `d.dddddd` whose integer digit is 0 or 1.
bool matches_label_grammar(std::string_view line);

enum class Split : std::uint8_t { Train, Test };
const char* to_string(Split split);

// Exactly round(total * train_fraction) scenes go to train, chosen by a
// seeded Fisher-Yates permutation. Throws InvalidFraction unless the
// fraction lies strictly between 0 and 1.
std::vector<Split> split_dataset(std::int64_t total, double train_fraction, std::uint64_t seed);

// Zero-padded six-digit file stem.
std::string scene_stem(std::int64_t index);

}  // namespace cardforge
