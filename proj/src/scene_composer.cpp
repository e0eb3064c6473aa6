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

#include "cardforge/scene_composer.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <mutex>
#include <tuple>

#include "cardforge/dummy_layout.hpp"
#include "cardforge/error.hpp"

namespace cardforge {

namespace fs = std::filesystem;

struct BackgroundSet::CoverCache {
  using Key = std::tuple<int, int, int>;
  std::mutex mu;
  std::map<Key, std::shared_ptr<const Image>> entries;
  std::deque<Key> order;
  std::size_t bytes = 0;
};

BackgroundSet BackgroundSet::open(const fs::path& dir) {
  BackgroundSet set;
  set.covers_ = std::make_shared<CoverCache>();
  set.dir_ = dir;
  for (const auto& f : list_image_files(dir)) set.names_.push_back(f.filename().string());
  if (set.names_.empty()) throw EmptyBackgrounds("no background images in " + dir.string());
  return set;
}

BackgroundSet BackgroundSet::from_images(std::vector<std::pair<std::string, Image>> images) {
  BackgroundSet set;
  set.covers_ = std::make_shared<CoverCache>();
  for (auto& [name, img] : images) {
    if (img.channels != 3) throw Error("background " + name + " must be RGB");
    set.names_.push_back(name);
    set.resident_.push_back(std::make_shared<const Image>(std::move(img)));
  }
  if (set.names_.empty()) throw EmptyBackgrounds("no background images");
  return set;
}

Image BackgroundSet::load_cover(int i, int w, int h) const {
  const CoverCache::Key key{i, w, h};
  if (covers_) {
    std::lock_guard lock(covers_->mu);
    if (auto it = covers_->entries.find(key); it != covers_->entries.end()) return *it->second;
  }
  auto cover = std::make_shared<const Image>(
      resident_.empty() ? resize_cover(load_image(dir_ / name(i), 3), w, h)
                        : resize_cover(*resident_.at(static_cast<std::size_t>(i)), w, h));
  if (!covers_) return *cover;
  std::lock_guard lock(covers_->mu);
  if (covers_->entries.emplace(key, cover).second) {
    covers_->order.push_back(key);
    covers_->bytes += cover->pixels.size();
    while (covers_->bytes > kCoverCacheBytes && covers_->order.size() > 1) {
      auto old = covers_->entries.find(covers_->order.front());
      covers_->bytes -= old->second->pixels.size();
      covers_->entries.erase(old);
      covers_->order.pop_front();
    }
  }
  return *cover;
}

const char* to_string(SceneKind kind) { return kind == SceneKind::Dummy ? "dummy" : "random"; }

bool is_dummy_scene(std::int64_t index, double dummy_fraction) {
  const auto i = static_cast<double>(index);
  return std::floor((i + 1.0) * dummy_fraction) > std::floor(i * dummy_fraction);
}

namespace {

class ScatterPlacer {
 public:
  ScatterPlacer(const GeneratorConfig& cfg, const AssetLibrary& lib, Rng& rng, OcclusionMap& occ,
                std::vector<Placement>& placed)
      : cfg_(cfg), lib_(lib), g_(lib.geometry()), rng_(rng), occ_(occ), placed_(placed) {}

  // One card drawn from `classes`; false when every attempt was rejected.
  bool place(const std::vector<ClassCode>& classes) {
    const int w = occ_.width();
    const int h = occ_.height();
    for (int attempt = 0; attempt < cfg_.max_attempts; ++attempt) {
      Placement p;
      p.code = classes[rng_.below(classes.size())];
      p.variant = draw_variant(p.code);
      p.scale = rng_.uniform(cfg_.scale_min, cfg_.scale_max);
      p.rotation = rng_.uniform(0.0, 360.0);
      const HalfExtents e = rotated_half_extents(g_.width * p.scale, g_.height * p.scale, p.rotation);
      if (2.0 * e.x > w || 2.0 * e.y > h) continue;
      p.cx = rng_.uniform(e.x, w - e.x);
      p.cy = rng_.uniform(e.y, h - e.y);
      p.z = static_cast<int>(placed_.size());
      Footprint fp = Footprint::rasterize(p, g_, w, h);
      if (!occ_.admits(fp, cfg_.min_visibility)) continue;
      occ_.push(std::move(fp));
      placed_.push_back(p);
      return true;
    }
    return false;
  }

  int draw_variant(ClassCode code) {
    const int count = lib_.variant_count(code);
    if (count == 0) throw MissingAsset("no assets for class " + code.str());
    return static_cast<int>(rng_.below(static_cast<std::uint64_t>(count)));
  }

 private:
  const GeneratorConfig& cfg_;
  const AssetLibrary& lib_;
  CardGeometry g_;
  Rng& rng_;
  OcclusionMap& occ_;
  std::vector<Placement>& placed_;
};

}  // namespace

SceneSpec sample_scene(const GeneratorConfig& cfg, std::uint64_t master_seed, std::int64_t index,
                       const AssetLibrary& library, const BackgroundSet& backgrounds, const ClassCatalog& catalog) {
  if (library.empty()) throw MissingAsset("asset library is empty");
  if (backgrounds.empty()) throw EmptyBackgrounds("no background images");
  const CardGeometry g = library.geometry();
  const int w = cfg.canvas_width;
  const int h = cfg.canvas_height;
  const double s = cfg.scale_min;
  const bool fits = (g.width * s <= w && g.height * s <= h) || (g.height * s <= w && g.width * s <= h);
  if (!fits) {
    throw NoValidPlacement("a card at scale " + std::to_string(s) + " does not fit a " + std::to_string(w) + "x" +
                           std::to_string(h) + " canvas");
  }
  const auto& classes = catalog.cards();
  if (classes.empty()) throw MissingAsset("catalog contains no card classes");

  Rng rng(scene_seed(master_seed, static_cast<std::uint64_t>(index)));
  SceneSpec spec;
  spec.index = index;
  spec.width = w;
  spec.height = h;
  spec.kind = is_dummy_scene(index, cfg.dummy_fraction) ? SceneKind::Dummy : SceneKind::Random;
  spec.background = static_cast<int>(rng.below(static_cast<std::uint64_t>(backgrounds.size())));
  spec.background_name = backgrounds.name(spec.background);

  OcclusionMap occ(w, h);
  ScatterPlacer placer(cfg, library, rng, occ, spec.placements);
  if (spec.kind == SceneKind::Random) {
    const int n = rng.between(cfg.min_cards, cfg.max_cards);
    for (int i = 0; i < n; ++i) placer.place(classes);
  } else {
    const DummyHand hand = sample_dummy_hand(rng, cfg.suit_order);
    spec.placements = layout_dummy(hand, cfg, rng, g, w, h);
    for (auto& p : spec.placements) {
      p.variant = placer.draw_variant(p.code);
      occ.push(Footprint::rasterize(p, g, w, h));
    }
    std::vector<ClassCode> rest;
    for (const auto& c : classes)
      if (std::find(hand.cards.begin(), hand.cards.end(), c) == hand.cards.end()) rest.push_back(c);
    for (int i = 0; i < cfg.dummy_extra_cards && !rest.empty(); ++i) placer.place(rest);
  }
  if (cfg.brightness_jitter > 0.0) spec.brightness = 1.0 + rng.uniform(-cfg.brightness_jitter, cfg.brightness_jitter);
  if (cfg.contrast_jitter > 0.0) spec.contrast = 1.0 + rng.uniform(-cfg.contrast_jitter, cfg.contrast_jitter);
  return spec;
}

void composite_card(Image& canvas, const Image& asset, const Placement& p, const CardGeometry& g) {
  const CosSin cs = cos_sin_deg(p.rotation);
  const double inv = 1.0 / p.scale;
  const HalfExtents e = rotated_half_extents(g.width * p.scale, g.height * p.scale, p.rotation);
  const int x_lo = std::max(0, static_cast<int>(std::floor(p.cx - e.x)) - 2);
  const int x_hi = std::min(canvas.width, static_cast<int>(std::ceil(p.cx + e.x)) + 2);
  const int y_lo = std::max(0, static_cast<int>(std::floor(p.cy - e.y)) - 2);
  const int y_hi = std::min(canvas.height, static_cast<int>(std::ceil(p.cy + e.y)) + 2);
  const int aw = asset.width;
  const int ah = asset.height;
  const double half_w = aw / 2.0 - 0.5;
  const double half_h = ah / 2.0 - 0.5;

  auto texel = [&](int x, int y) -> const std::uint8_t* {
    if (x < 0 || y < 0 || x >= aw || y >= ah) return nullptr;
    return asset.at(x, y);
  };

  // Asset coordinates are affine in x along a row; clip each row to the
  // span where (ax, ay) lies inside (-1, aw) x (-1, ah).
  const double dax = cs.cos * inv;
  const double day = -cs.sin * inv;
  auto clip = [](double a0, double da, double lo, double hi, double& t_lo, double& t_hi) {
    if (da == 0.0) {
      if (a0 <= lo || a0 >= hi) t_hi = t_lo - 1.0;
      return;
    }
    double t0 = (lo - a0) / da;
    double t1 = (hi - a0) / da;
    if (t0 > t1) std::swap(t0, t1);
    t_lo = std::max(t_lo, t0);
    t_hi = std::min(t_hi, t1);
  };

  for (int y = y_lo; y < y_hi; ++y) {
    const double dy = y + 0.5 - p.cy;
    const double dx0 = x_lo + 0.5 - p.cx;
    const double ax0 = (cs.cos * dx0 + cs.sin * dy) * inv + half_w;
    const double ay0 = (-cs.sin * dx0 + cs.cos * dy) * inv + half_h;
    double t_lo = 0.0;
    double t_hi = x_hi - x_lo - 1;
    clip(ax0, dax, -1.0, aw, t_lo, t_hi);
    clip(ay0, day, -1.0, ah, t_lo, t_hi);
    if (t_hi < t_lo) continue;
    const int xa = x_lo + std::max(0, static_cast<int>(std::floor(t_lo)) - 1);
    const int xb = std::min(x_hi, x_lo + static_cast<int>(std::ceil(t_hi)) + 2);
    std::uint8_t* row = canvas.at(0, y);
    for (int x = xa; x < xb; ++x) {
      const double dx = x + 0.5 - p.cx;
      const double ax = (cs.cos * dx + cs.sin * dy) * inv + half_w;
      const double ay = (-cs.sin * dx + cs.cos * dy) * inv + half_h;
      if (ax <= -1.0 || ay <= -1.0 || ax >= aw || ay >= ah) continue;
      const double fx0 = std::floor(ax);
      const double fy0 = std::floor(ay);
      const float tx = static_cast<float>(ax - fx0);
      const float ty = static_cast<float>(ay - fy0);
      const int x0 = static_cast<int>(fx0);
      const int y0 = static_cast<int>(fy0);
      const std::uint8_t* q[4] = {texel(x0, y0), texel(x0 + 1, y0), texel(x0, y0 + 1), texel(x0 + 1, y0 + 1)};
      const float wt[4] = {(1 - tx) * (1 - ty), tx * (1 - ty), (1 - tx) * ty, tx * ty};
      float alpha = 0.0f;
      float col[3] = {0.0f, 0.0f, 0.0f};
      for (int k = 0; k < 4; ++k) {
        if (q[k] == nullptr || q[k][3] == 0) continue;
        const float a = wt[k] * (q[k][3] * (1.0f / 255.0f));
        alpha += a;
        col[0] += a * q[k][0];
        col[1] += a * q[k][1];
        col[2] += a * q[k][2];
      }
      if (alpha <= 0.0f) continue;
      std::uint8_t* o = row + static_cast<std::size_t>(x) * 3;
      const float keep = 1.0f - alpha;
      for (int c = 0; c < 3; ++c) {
        const float v = col[c] + keep * o[c] + 0.5f;
        o[c] = static_cast<std::uint8_t>(std::clamp(v, 0.0f, 255.0f));
      }
    }
  }
}

namespace {

void apply_photometric(Image& img, double brightness, double contrast) {
  if (brightness == 1.0 && contrast == 1.0) return;
  for (auto& v : img.pixels) {
    const double out = ((v - 127.5) * contrast + 127.5) * brightness;
    v = static_cast<std::uint8_t>(std::clamp(std::lround(out), 0L, 255L));
  }
}

}  // namespace

RenderedScene render_scene(const SceneSpec& spec, const AssetLibrary& library, const BackgroundSet& backgrounds) {
  const CardGeometry g = library.geometry();
  RenderedScene out;
  out.image = backgrounds.load_cover(spec.background, spec.width, spec.height);
  std::vector<const Placement*> order;
  for (const auto& p : spec.placements) order.push_back(&p);
  std::stable_sort(order.begin(), order.end(), [](const Placement* a, const Placement* b) { return a->z < b->z; });
  for (const Placement* p : order) composite_card(out.image, *library.pixels(p->code, p->variant), *p, g);
  apply_photometric(out.image, spec.brightness, spec.contrast);
  out.regions = compute_visibility(spec.placements, g, spec.width, spec.height);
  return out;
}

}  // namespace cardforge
