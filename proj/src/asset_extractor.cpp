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

#include "cardforge/asset_extractor.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <mutex>
#include <set>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "cardforge/error.hpp"

namespace cardforge {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const auto end = s.find(sep, pos);
    out.push_back(s.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos));
    if (end == std::string_view::npos) break;
    pos = end + 1;
  }
  return out;
}

double parse_number(std::string_view text, std::string_view line) {
  text = trim(text);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value)) {
    throw AnnotationParseError("bad coordinate \"" + std::string(text) + "\" in: " + std::string(line));
  }
  return value;
}

Point2 parse_point(std::string_view text, std::string_view line) {
  const auto parts = split(text, ',');
  if (parts.size() != 2) throw AnnotationParseError("expected x,y in: " + std::string(line));
  return {parse_number(parts[0], line), parse_number(parts[1], line)};
}

constexpr std::size_t kPixelCacheCapacity = 2048;

}  // namespace

QuadAnnotation parse_annotation_line(std::string_view line) {
  const auto fields = split(trim(line), ';');
  QuadAnnotation ann;
  if (fields.size() != 6 && fields.size() != 3) {
    throw AnnotationParseError("expected 6 ';'-separated fields in: " + std::string(line));
  }
  ann.sequence_id = std::string(trim(fields[0]));
  if (ann.sequence_id.empty()) throw AnnotationParseError("empty sequence id in: " + std::string(line));
  if (auto code = try_parse_class_code(trim(fields[1]))) {
    ann.code = *code;
  } else {
    throw AnnotationParseError("invalid class code \"" + std::string(trim(fields[1])) + "\" in: " + std::string(line));
  }

  if (fields.size() == 6) {
    for (int i = 0; i < 4; ++i) ann.corners[static_cast<std::size_t>(i)] = parse_point(fields[2 + i], line);
  } else {
    std::string_view rest = trim(fields[2]);
    for (int i = 0; i < 4; ++i) {
      const auto open = rest.find('(');
      const auto close = rest.find(')', open == std::string_view::npos ? 0 : open);
      if (open == std::string_view::npos || close == std::string_view::npos) {
        throw AnnotationParseError("expected four (x,y) points in: " + std::string(line));
      }
      ann.corners[static_cast<std::size_t>(i)] = parse_point(rest.substr(open + 1, close - open - 1), line);
      rest = rest.substr(close + 1);
    }
    if (!trim(rest).empty()) throw AnnotationParseError("trailing text in: " + std::string(line));
  }

  if (!is_strictly_convex(ann.corners)) {
    throw DegenerateQuad("quad of sequence " + ann.sequence_id + " is not strictly convex");
  }
  if (polygon_area(ann.corners) < kMinQuadArea) {
    throw DegenerateQuad("quad of sequence " + ann.sequence_id + " is below the minimum area");
  }
  return ann;
}

std::vector<QuadAnnotation> parse_annotations(std::string_view text) {
  std::vector<QuadAnnotation> out;
  std::set<std::string> seen;
  for (auto line : split(text, '\n')) {
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    auto ann = parse_annotation_line(line);
    if (!seen.insert(ann.sequence_id).second) {
      throw AnnotationParseError("duplicate sequence id: " + ann.sequence_id);
    }
    out.push_back(std::move(ann));
  }
  return out;
}

std::vector<QuadAnnotation> load_annotations(const fs::path& path) { return parse_annotations(read_text_file(path)); }

Image rectify_quad(const Image& src, std::span<const Point2, 4> corners, int w, int h) {
  const std::array<Point2, 4> target = {Point2{0, 0}, Point2{static_cast<double>(w - 1), 0},
                                        Point2{static_cast<double>(w - 1), static_cast<double>(h - 1)},
                                        Point2{0, static_cast<double>(h - 1)}};
  const Homography to_source = Homography::from_correspondences(target, corners);
  Image out(w, h, 4);
  float px[4];
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const Point2 s = to_source.apply({static_cast<double>(x), static_cast<double>(y)});
      sample_bilinear_clamped(src, s.x, s.y, px);
      std::uint8_t* o = out.at(x, y);
      for (int c = 0; c < 3; ++c) o[c] = static_cast<std::uint8_t>(std::lround(std::clamp(px[c], 0.0f, 255.0f)));
      o[3] = 255;
    }
  }
  return out;
}

Mask card_shape_mask(const CardGeometry& g) {
  Mask m(g.width, g.height);
  const double hw = g.width / 2.0;
  const double hh = g.height / 2.0;
  for (int y = 0; y < g.height; ++y)
    for (int x = 0; x < g.width; ++x)
      if (rounded_rect_contains(x + 0.5 - hw, y + 0.5 - hh, hw, hh, g.corner_radius)) m.set(x, y);
  return m;
}

void apply_card_mask(Image& rgba, const CardGeometry& g) {
  const Mask m = card_shape_mask(g);
  for (int y = 0; y < g.height; ++y) {
    for (int x = 0; x < g.width; ++x) {
      std::uint8_t* p = rgba.at(x, y);
      if (m.test(x, y)) {
        p[3] = 255;
      } else {
        p[0] = p[1] = p[2] = p[3] = 0;
      }
    }
  }
}

FrameSelection select_frames(const fs::path& frame_dir, int stride) {
  if (stride < 1) throw Error("stride must be >= 1");
  FrameSelection sel;
  sel.frames = list_image_files(frame_dir);
  if (sel.frames.empty()) throw EmptySequence("no frames in " + frame_dir.string());
  for (int i = 0; i < static_cast<int>(sel.frames.size()); i += stride) sel.selected.push_back(i);
  return sel;
}

std::vector<CardAsset> extract_assets(const fs::path& frame_dir, const QuadAnnotation& annotation, int stride,
                                      const CardGeometry& geometry, int first_variant) {
  const FrameSelection sel = select_frames(frame_dir, stride);
  std::vector<CardAsset> assets;
  assets.reserve(sel.selected.size());
  int width = -1, height = -1;
  for (int frame_index : sel.selected) {
    const fs::path& file = sel.frames[static_cast<std::size_t>(frame_index)];
    Image frame = load_image(file, 3);
    if (width < 0) {
      width = frame.width;
      height = frame.height;
      for (const auto& c : annotation.corners) {
        if (c.x < 0 || c.y < 0 || c.x > width - 1 || c.y > height - 1) {
          throw DegenerateQuad("quad of sequence " + annotation.sequence_id + " lies outside the " +
                               std::to_string(width) + "x" + std::to_string(height) + " frame");
        }
      }
    } else if (frame.width != width || frame.height != height) {
      throw FrameSizeMismatch(file.string() + " is " + std::to_string(frame.width) + "x" +
                              std::to_string(frame.height) + ", expected " + std::to_string(width) + "x" +
                              std::to_string(height));
    }
    CardAsset asset;
    asset.code = annotation.code;
    asset.variant = first_variant + static_cast<int>(assets.size());
    asset.pixels = rectify_quad(frame, annotation.corners, geometry.width, geometry.height);
    apply_card_mask(asset.pixels, geometry);
    asset.source = {annotation.sequence_id, frame_index, file.filename().string()};
    assets.push_back(std::move(asset));
  }
  return assets;
}

// --- AssetLibrary ----------------------------------------------------------

struct AssetLibrary::State {
  fs::path root;
  CardGeometry geometry;
  std::map<ClassCode, ClassEntry> entries;
  std::map<std::pair<ClassCode, int>, std::shared_ptr<const Image>> resident;

  mutable std::mutex mutex;
  mutable std::map<std::pair<ClassCode, int>, std::shared_ptr<const Image>> cache;
  mutable std::deque<std::pair<ClassCode, int>> cache_order;
};

AssetLibrary::AssetLibrary() : state_(std::make_shared<State>()) {}

fs::path AssetLibrary::asset_path(const fs::path& root, ClassCode code, int variant) {
  return root / code.str() / (std::to_string(variant) + ".png");
}

AssetLibrary AssetLibrary::open(const fs::path& root) {
  const fs::path manifest = root / "library.json";
  json j;
  try {
    j = json::parse(read_text_file(manifest));
  } catch (const json::exception& e) {
    throw IoError("malformed " + manifest.string() + ": " + e.what());
  }
  try {
    CardGeometry g;
    g.width = j.at("asset_width").get<int>();
    g.height = j.at("asset_height").get<int>();
    g.corner_radius = j.at("corner_radius").get<double>();
    std::map<ClassCode, ClassEntry> entries;
    for (const auto& [name, entry] : j.at("classes").items()) {
      ClassEntry e;
      e.count = entry.at("count").get<int>();
      for (const auto& s : entry.at("sources")) {
        e.sources.push_back({s.at("sequence").get<std::string>(), s.at("frame").get<int>(),
                             s.at("file").get<std::string>()});
      }
      entries.emplace(parse_class_code(name), std::move(e));
    }
    return from_entries(root, g, std::move(entries));
  } catch (const json::exception& e) {
    throw IoError("malformed " + manifest.string() + ": " + e.what());
  } catch (const InvalidClassCode& e) {
    throw IoError("malformed " + manifest.string() + ": " + e.what());
  }
}

AssetLibrary AssetLibrary::from_assets(std::vector<CardAsset> assets, const CardGeometry& geometry) {
  AssetLibrary lib;
  lib.state_->geometry = geometry;
  std::sort(assets.begin(), assets.end(),
            [](const CardAsset& a, const CardAsset& b) { return std::tie(a.code, a.variant) < std::tie(b.code, b.variant); });
  for (auto& a : assets) {
    if (a.pixels.width != geometry.width || a.pixels.height != geometry.height || a.pixels.channels != 4) {
      throw Error("asset " + a.code.str() + "/" + std::to_string(a.variant) + " does not match the canonical size");
    }
    auto& entry = lib.state_->entries[a.code];
    if (a.variant != entry.count) throw Error("asset variants of " + a.code.str() + " are not contiguous from 0");
    entry.count += 1;
    entry.sources.push_back(a.source);
    lib.state_->resident.emplace(std::make_pair(a.code, a.variant), std::make_shared<const Image>(std::move(a.pixels)));
  }
  return lib;
}

AssetLibrary AssetLibrary::from_entries(const fs::path& root, const CardGeometry& geometry,
                                        std::map<ClassCode, ClassEntry> entries) {
  AssetLibrary lib;
  lib.state_->root = root;
  lib.state_->geometry = geometry;
  lib.state_->entries = std::move(entries);
  return lib;
}

const CardGeometry& AssetLibrary::geometry() const { return state_->geometry; }
const std::map<ClassCode, AssetLibrary::ClassEntry>& AssetLibrary::entries() const { return state_->entries; }
bool AssetLibrary::empty() const { return state_->entries.empty(); }

int AssetLibrary::variant_count(ClassCode code) const {
  auto it = state_->entries.find(code);
  return it == state_->entries.end() ? 0 : it->second.count;
}

std::shared_ptr<const Image> AssetLibrary::pixels(ClassCode code, int variant) const {
  if (variant < 0 || variant >= variant_count(code)) {
    throw MissingAsset("no asset " + code.str() + "/" + std::to_string(variant));
  }
  const auto key = std::make_pair(code, variant);
  if (auto it = state_->resident.find(key); it != state_->resident.end()) return it->second;
  {
    std::lock_guard lock(state_->mutex);
    if (auto it = state_->cache.find(key); it != state_->cache.end()) return it->second;
  }
  const fs::path path = asset_path(state_->root, code, variant);
  std::error_code ec;
  if (!fs::exists(path, ec)) throw MissingAsset("asset file missing: " + path.string());
  auto img = std::make_shared<const Image>(load_image(path, 4));
  if (img->width != state_->geometry.width || img->height != state_->geometry.height) {
    throw IoError(path.string() + " does not match the library's canonical size");
  }
  std::lock_guard lock(state_->mutex);
  if (state_->cache.emplace(key, img).second) {
    state_->cache_order.push_back(key);
    if (state_->cache_order.size() > kPixelCacheCapacity) {
      state_->cache.erase(state_->cache_order.front());
      state_->cache_order.pop_front();
    }
  }
  return img;
}

std::string AssetLibrary::manifest_json() const {
  json classes = json::object();
  for (const auto& [code, entry] : state_->entries) {
    json sources = json::array();
    for (const auto& s : entry.sources) {
      sources.push_back({{"sequence", s.sequence_id}, {"frame", s.frame_index}, {"file", s.frame_file}});
    }
    classes[code.str()] = {{"count", entry.count}, {"sources", std::move(sources)}};
  }
  const json j = {{"format", 1},
                  {"asset_width", state_->geometry.width},
                  {"asset_height", state_->geometry.height},
                  {"corner_radius", state_->geometry.corner_radius},
                  {"classes", std::move(classes)}};
  return j.dump(2) + "\n";
}

void AssetLibrary::save(const fs::path& root) const {
  for (const auto& [key, img] : state_->resident) {
    const fs::path path = asset_path(root, key.first, key.second);
    fs::create_directories(path.parent_path());
    save_png(*img, path);
  }
  fs::create_directories(root);
  write_file_atomic(root / "library.json", manifest_json());
}

}  // namespace cardforge
