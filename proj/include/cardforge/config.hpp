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
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "cardforge/geometry.hpp"

namespace cardforge {

enum class BboxMode { Visible, Amodal };

// Every tunable of extraction and generation. JSON keys and CLI flags use
// the member names (flags in kebab-case).
struct GeneratorConfig {
  int canvas_width = 608;
  int canvas_height = 608;

  // Random scatter scenes.
  int min_cards = 1;
  int max_cards = 5;
  double scale_min = 0.55;
  double scale_max = 0.9;
  double min_visibility = 0.3;
  int max_attempts = 20;
  std::string bbox_mode = "visible";

  // Dummy scenes.
  double dummy_fraction = 0.25;
  double dummy_scale_min = 0.4;
  double dummy_scale_max = 0.5;
  double overlap_offset = 0.33;  // fraction of scaled card height
  double column_pitch = 1.1;     // fraction of scaled card width
  double block_jitter = 10.0;    // degrees
  double card_jitter = 3.0;      // degrees
  std::string suit_order = "SHDC";
  int dummy_extra_cards = 0;

  // Optional global photometric jitter, relative amplitudes.
  double brightness_jitter = 0.0;
  double contrast_jitter = 0.0;

  double train_fraction = 0.8;
  std::uint64_t seed = 0;

  // Asset extraction.
  int asset_stride = 10;
  int asset_width = 200;
  int asset_height = 311;
  double corner_radius = 0.05;  // fraction of asset width

  int workers = 0;  // 0 = hardware concurrency
  int png_compression = 1;

  CardGeometry card_geometry() const { return {asset_width, asset_height, corner_radius * asset_width}; }
  BboxMode bbox() const { return bbox_mode == "amodal" ? BboxMode::Amodal : BboxMode::Visible; }
  int resolved_workers() const;

  // Throws ConfigError naming the first offending key.
  void validate() const;

  friend bool operator==(const GeneratorConfig&, const GeneratorConfig&) = default;
};

struct ConfigField {
  const char* name;
  const char* help;
  std::variant<int GeneratorConfig::*, double GeneratorConfig::*, std::string GeneratorConfig::*,
               std::uint64_t GeneratorConfig::*>
      member;
};

const std::vector<ConfigField>& config_fields();

template <typename M>
struct field_type;
template <typename T>
struct field_type<T GeneratorConfig::*> {
  using type = T;
};

// Snake-case key -> kebab-case flag name.
std::string flag_name(const char* key);

nlohmann::json config_to_json(const GeneratorConfig& config);
// Applies the keys present in `j` on top of `base`; unknown keys and type
// mismatches raise ConfigError.
GeneratorConfig config_from_json(const nlohmann::json& j, GeneratorConfig base = {});

}  // namespace cardforge
