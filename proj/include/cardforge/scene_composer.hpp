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
#include <memory>
#include <string>
#include <vector>

#include "cardforge/asset_extractor.hpp"
#include "cardforge/class_catalog.hpp"
#include "cardforge/config.hpp"
#include "cardforge/image.hpp"
#include "cardforge/occlusion.hpp"
#include "cardforge/rng.hpp"

namespace cardforge {

// Background textures, addressed by position in filename order.
class BackgroundSet {
 public:
  static BackgroundSet open(const std::filesystem::path& dir);
  static BackgroundSet from_images(std::vector<std::pair<std::string, Image>> images);

  int size() const { return static_cast<int>(names_.size()); }
  bool empty() const { return names_.empty(); }
  const std::string& name(int i) const { return names_.at(static_cast<std::size_t>(i)); }
  const std::vector<std::string>& names() const { return names_; }

  // Decoded RGB texture cover-fitted to w x h. Results are cached (shared
  // between copies of the set) up to kCoverCacheBytes.
  Image load_cover(int i, int w, int h) const;

  static constexpr std::size_t kCoverCacheBytes = std::size_t{768} << 20;

 private:
  std::filesystem::path dir_;
  std::vector<std::string> names_;
  std::vector<std::shared_ptr<const Image>> resident_;
  struct CoverCache;
  std::shared_ptr<CoverCache> covers_;
};

enum class SceneKind { Random, Dummy };
const char* to_string(SceneKind kind);

struct SceneSpec {
  std::int64_t index = 0;
  SceneKind kind = SceneKind::Random;
  int background = 0;
  std::string background_name;
  int width = 0;
  int height = 0;
  std::vector<Placement> placements;  // z == position
  double brightness = 1.0;
  double contrast = 1.0;

  friend bool operator==(const SceneSpec&, const SceneSpec&) = default;
};

// Scene i is a dummy iff floor((i + 1) * f) > floor(i * f); the first n
// scenes then hold floor(n * f) dummies, spread evenly.
bool is_dummy_scene(std::int64_t index, double dummy_fraction);

// Pure function of (config, master seed, index, inventories). Random scenes
// draw N in [min_cards, max_cards] and place each card with up to
// max_attempts redraws, keeping every card at >= min_visibility; a card that
// never fits is dropped. Throws NoValidPlacement when no card can fit the
// canvas at all, MissingAsset when a drawn class has no assets.
SceneSpec sample_scene(const GeneratorConfig& config, std::uint64_t master_seed, std::int64_t index,
                       const AssetLibrary& library, const BackgroundSet& backgrounds,
                       const ClassCatalog& catalog = ClassCatalog::standard());

struct RenderedScene {
  Image image;  // RGB
  std::vector<VisibleRegion> regions;  // one per placement, in z order
};

// Background cover-fit, then cards composited bottom to top with bilinear
// sampling and premultiplied alpha.
RenderedScene render_scene(const SceneSpec& spec, const AssetLibrary& library, const BackgroundSet& backgrounds);

// Draws one card onto an RGB canvas.
void composite_card(Image& canvas, const Image& asset, const Placement& p, const CardGeometry& g);

}  // namespace cardforge
