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

#include "cardforge/config.hpp"

#include <algorithm>
#include <set>
#include <thread>

#include "cardforge/class_catalog.hpp"
#include "cardforge/error.hpp"

namespace cardforge {

using nlohmann::json;
using C = GeneratorConfig;

const std::vector<ConfigField>& config_fields() {
  static const std::vector<ConfigField> fields = {
      {"canvas_width", "scene width in pixels", &C::canvas_width},
      {"canvas_height", "scene height in pixels", &C::canvas_height},
      {"min_cards", "fewest cards in a random scene", &C::min_cards},
      {"max_cards", "most cards in a random scene", &C::max_cards},
      {"scale_min", "smallest card scale in random scenes", &C::scale_min},
      {"scale_max", "largest card scale in random scenes", &C::scale_max},
      {"min_visibility", "smallest visible fraction a placed card may keep", &C::min_visibility},
      {"max_attempts", "redraws before a card is dropped", &C::max_attempts},
      {"bbox_mode", "visible or amodal", &C::bbox_mode},
      {"dummy_fraction", "share of scenes laid out as a dummy", &C::dummy_fraction},
      {"dummy_scale_min", "smallest card scale in dummy scenes", &C::dummy_scale_min},
      {"dummy_scale_max", "largest card scale in dummy scenes", &C::dummy_scale_max},
      {"overlap_offset", "dummy column step, fraction of card height", &C::overlap_offset},
      {"column_pitch", "dummy column spacing, fraction of card width", &C::column_pitch},
      {"block_jitter", "dummy block rotation bound in degrees", &C::block_jitter},
      {"card_jitter", "per-card dummy rotation bound in degrees", &C::card_jitter},
      {"suit_order", "dummy column suits left to right", &C::suit_order},
      {"dummy_extra_cards", "random cards added on top of a dummy", &C::dummy_extra_cards},
      {"brightness_jitter", "relative global brightness jitter", &C::brightness_jitter},
      {"contrast_jitter", "relative global contrast jitter", &C::contrast_jitter},
      {"train_fraction", "share of scenes assigned to train", &C::train_fraction},
      {"seed", "master seed", &C::seed},
      {"asset_stride", "use every n-th frame", &C::asset_stride},
      {"asset_width", "canonical asset width", &C::asset_width},
      {"asset_height", "canonical asset height", &C::asset_height},
      {"corner_radius", "card corner radius, fraction of asset width", &C::corner_radius},
      {"workers", "worker threads (0 = all cores)", &C::workers},
      {"png_compression", "zlib level for written PNGs", &C::png_compression},
  };
  return fields;
}

std::string flag_name(const char* key) {
  std::string s = key;
  std::replace(s.begin(), s.end(), '_', '-');
  return s;
}

int GeneratorConfig::resolved_workers() const {
  if (workers > 0) return workers;
  return std::max(1u, std::thread::hardware_concurrency());
}

void GeneratorConfig::validate() const {
  auto fail = [](const std::string& key, const std::string& why) { throw ConfigError(key + ": " + why); };
  if (canvas_width < 1 || canvas_height < 1) fail("canvas_width", "canvas must be at least 1x1");
  if (canvas_width > 16384 || canvas_height > 16384) fail("canvas_width", "canvas larger than 16384");
  if (min_cards < 1) fail("min_cards", "must be >= 1");
  if (max_cards < min_cards) fail("max_cards", "must be >= min_cards");
  if (!(scale_min > 0.0) || scale_max < scale_min) fail("scale_min", "need 0 < scale_min <= scale_max");
  if (!(min_visibility > 0.0 && min_visibility < 1.0)) fail("min_visibility", "must lie in (0, 1)");
  if (max_attempts < 1) fail("max_attempts", "must be >= 1");
  if (bbox_mode != "visible" && bbox_mode != "amodal") fail("bbox_mode", "must be visible or amodal");
  if (!(dummy_fraction >= 0.0 && dummy_fraction <= 1.0)) fail("dummy_fraction", "must lie in [0, 1]");
  if (!(dummy_scale_min > 0.0) || dummy_scale_max < dummy_scale_min) {
    fail("dummy_scale_min", "need 0 < dummy_scale_min <= dummy_scale_max");
  }
  if (!(overlap_offset > 0.0 && overlap_offset <= 1.0)) fail("overlap_offset", "must lie in (0, 1]");
  if (!(column_pitch >= 1.0)) fail("column_pitch", "must be >= 1 so columns do not overlap");
  if (!(block_jitter >= 0.0 && block_jitter <= 45.0)) fail("block_jitter", "must lie in [0, 45]");
  if (!(card_jitter >= 0.0 && card_jitter <= 45.0)) fail("card_jitter", "must lie in [0, 45]");
  {
    std::set<char> seen;
    if (suit_order.empty() || suit_order.size() > 4) fail("suit_order", "must list 1 to 4 suits");
    for (char c : suit_order) {
      if (kSuitChars.find(c) == std::string_view::npos) fail("suit_order", "unknown suit letter");
      if (!seen.insert(c).second) fail("suit_order", "repeated suit letter");
    }
    if (seen.size() != 4) fail("suit_order", "must list all four suits");
  }
  if (dummy_extra_cards < 0 || dummy_extra_cards > 39) fail("dummy_extra_cards", "must lie in [0, 39]");
  if (!(brightness_jitter >= 0.0 && brightness_jitter < 1.0)) fail("brightness_jitter", "must lie in [0, 1)");
  if (!(contrast_jitter >= 0.0 && contrast_jitter < 1.0)) fail("contrast_jitter", "must lie in [0, 1)");
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) fail("train_fraction", "must lie in (0, 1)");
  if (asset_stride < 1) fail("asset_stride", "must be >= 1");
  if (asset_width < 8 || asset_height < 8) fail("asset_width", "asset must be at least 8x8");
  if (!(corner_radius >= 0.0 && corner_radius * asset_width <= std::min(asset_width, asset_height) / 2.0)) {
    fail("corner_radius", "radius must fit inside the card");
  }
  if (workers < 0) fail("workers", "must be >= 0");
  if (png_compression < 0 || png_compression > 9) fail("png_compression", "must lie in [0, 9]");
}

json config_to_json(const GeneratorConfig& config) {
  json j = json::object();
  for (const auto& f : config_fields()) {
    std::visit([&](auto member) { j[f.name] = config.*member; }, f.member);
  }
  return j;
}

GeneratorConfig config_from_json(const json& j, GeneratorConfig base) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  const auto& fields = config_fields();
  for (const auto& [key, value] : j.items()) {
    auto it = std::find_if(fields.begin(), fields.end(), [&](const ConfigField& f) { return key == f.name; });
    if (it == fields.end()) throw ConfigError("unknown config key: " + key);
    std::visit(
        [&](auto member) {
          using T = typename field_type<decltype(member)>::type;
          if constexpr (std::is_same_v<T, std::string>) {
            if (!value.is_string()) throw ConfigError(key + ": expected a string");
          } else if constexpr (std::is_floating_point_v<T>) {
            if (!value.is_number()) throw ConfigError(key + ": expected a number");
          } else if constexpr (std::is_unsigned_v<T>) {
            if (!value.is_number_unsigned()) throw ConfigError(key + ": expected a non-negative integer");
          } else {
            if (!value.is_number_integer()) throw ConfigError(key + ": expected an integer");
          }
          base.*member = value.get<T>();
        },
        it->member);
  }
  return base;
}

}  // namespace cardforge
