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

#include <array>
#include <filesystem>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cardforge/class_catalog.hpp"
#include "cardforge/geometry.hpp"
#include "cardforge/image.hpp"

namespace cardforge {

// Manual first-frame marking of one card video. Corners are in source
// pixel coordinates ordered top-left, top-right, bottom-right, bottom-left
// relative to the upright card.
struct QuadAnnotation {
  std::string sequence_id;
  ClassCode code;
  std::array<Point2, 4> corners;
};

// Smallest accepted quad area in square source pixels.
inline constexpr double kMinQuadArea = 100.0;

// Accepts `id;code;x0,y0;x1,y1;x2,y2;x3,y3` and the looser
// `id; code; (x0,y0) (x1,y1) (x2,y2) (x3,y3)`.
QuadAnnotation parse_annotation_line(std::string_view line);
// Blank lines and lines starting with '#' are skipped. Duplicate sequence
// ids raise AnnotationParseError.
std::vector<QuadAnnotation> parse_annotations(std::string_view text);
std::vector<QuadAnnotation> load_annotations(const std::filesystem::path& path);

struct AssetSource {
  std::string sequence_id;
  int frame_index = 0;
  std::string frame_file;
  friend bool operator==(const AssetSource&, const AssetSource&) = default;
};

struct CardAsset {
  ClassCode code;
  int variant = 0;
  Image pixels;  // RGBA, geometry.width x geometry.height
  AssetSource source;
};

// Maps the quad onto a w x h raster. Corner i of the quad lands on the
// center of the matching corner pixel ((0,0), (w-1,0), (w-1,h-1), (0,h-1)).
// Returns RGBA with opaque alpha.
Image rectify_quad(const Image& src, std::span<const Point2, 4> corners, int w, int h);

// Pixel-center test of the rounded card outline on the asset raster.
Mask card_shape_mask(const CardGeometry& geometry);

// Alpha 255 inside the card outline; alpha and color 0 outside.
void apply_card_mask(Image& rgba, const CardGeometry& geometry);

// Every stride-th image file of `frame_dir`, by filename.
struct FrameSelection {
  std::vector<std::filesystem::path> frames;  // all frames, sorted
  std::vector<int> selected;                  // indices into frames
};
FrameSelection select_frames(const std::filesystem::path& frame_dir, int stride);

// Rectified, masked assets for the selected frames of one sequence.
// Variant ids run from `first_variant` upward in frame order.
std::vector<CardAsset> extract_assets(const std::filesystem::path& frame_dir, const QuadAnnotation& annotation,
                                      int stride, const CardGeometry& geometry, int first_variant = 0);

// Card assets grouped by class. Backed either by an on-disk tree
// (`<root>/<code>/<variant>.png` + `<root>/library.json`, pixels decoded on
// first use) or by in-memory assets. Copies share state; safe to read from
// several threads.
class AssetLibrary {
 public:
  struct ClassEntry {
    int count = 0;
    std::vector<AssetSource> sources;
  };

  AssetLibrary();
  static AssetLibrary open(const std::filesystem::path& root);
  static AssetLibrary from_assets(std::vector<CardAsset> assets, const CardGeometry& geometry);
  // Metadata-only library for a tree whose PNGs are already written.
  static AssetLibrary from_entries(const std::filesystem::path& root, const CardGeometry& geometry,
                                   std::map<ClassCode, ClassEntry> entries);

  const CardGeometry& geometry() const;
  const std::map<ClassCode, ClassEntry>& entries() const;
  int variant_count(ClassCode code) const;
  bool empty() const;

  // Throws MissingAsset for an unknown (class, variant).
  std::shared_ptr<const Image> pixels(ClassCode code, int variant) const;

  // Writes PNGs (in-memory libraries only) and library.json under `root`.
  void save(const std::filesystem::path& root) const;
  std::string manifest_json() const;

  static std::filesystem::path asset_path(const std::filesystem::path& root, ClassCode code, int variant);

 private:
  struct State;
  std::shared_ptr<State> state_;
};

}  // namespace cardforge
