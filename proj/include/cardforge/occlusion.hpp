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
#include <span>
#include <vector>

#include "cardforge/class_catalog.hpp"
#include "cardforge/geometry.hpp"
#include "cardforge/image.hpp"

namespace cardforge {

// One card instance on the canvas. The card is rotated by `rotation`
// degrees about its center (x right, y down) and scaled uniformly.
struct Placement {
  ClassCode code;
  int variant = 0;
  double cx = 0.0;
  double cy = 0.0;
  double rotation = 0.0;
  double scale = 1.0;
  int z = 0;

  friend bool operator==(const Placement&, const Placement&) = default;
};

// Pixel-edge box: covers pixels [x_min, x_max) x [y_min, y_max).
struct PixelBox {
  int x_min = 0;
  int y_min = 0;
  int x_max = 0;
  int y_max = 0;

  bool empty() const { return x_max <= x_min || y_max <= y_min; }
  int width() const { return x_max - x_min; }
  int height() const { return y_max - y_min; }
  friend bool operator==(const PixelBox&, const PixelBox&) = default;
};

// Half-size of the axis-aligned box around a w x h rectangle rotated by
// `rotation_deg`.
struct HalfExtents {
  double x;
  double y;
};
HalfExtents rotated_half_extents(double w, double h, double rotation_deg);

// True when canvas point (x, y) lies inside the placed card outline.
bool placement_contains(const Placement& p, const CardGeometry& g, double x, double y);

// Rasterized card outline: the pixels whose centers pass
// placement_contains, clipped to the canvas. The outline is convex, so
// every row is one contiguous run.
struct Footprint {
  struct Run {
    int x_begin;
    int x_end;
  };
  int y_begin = 0;
  std::vector<Run> rows;  // row y_begin + i
  PixelBox bounds;
  std::int64_t area = 0;

  static Footprint rasterize(const Placement& p, const CardGeometry& g, int canvas_w, int canvas_h);
};

Mask footprint_mask(const Placement& p, const CardGeometry& g, int canvas_w, int canvas_h);

struct VisibleRegion {
  int placement = 0;  // index into the scene's placement list
  std::int64_t visible = 0;
  std::int64_t total = 0;
  PixelBox bbox;    // tight around the visible pixels; empty when none
  PixelBox amodal;  // tight around the whole footprint

  double fraction() const { return total == 0 ? 0.0 : static_cast<double>(visible) / static_cast<double>(total); }
};

// Per-pixel owner map maintained as cards are stacked bottom to top.
// Adding a card only touches that card's footprint.
class OcclusionMap {
 public:
  OcclusionMap(int width, int height);

  int width() const { return width_; }
  int height() const { return height_; }
  int size() const { return static_cast<int>(footprints_.size()); }

  // Visible pixels each stacked card would lose if `fp` went on top.
  std::vector<std::int64_t> losses(const Footprint& fp) const;

  // True when `fp` is non-empty and, with it on top, every stacked card
  // keeps a visible fraction >= min_visibility.
  bool admits(const Footprint& fp, double min_visibility) const;

  void push(Footprint fp);

  std::int64_t visible(int i) const { return visible_[static_cast<std::size_t>(i)]; }
  std::int64_t total(int i) const { return footprints_[static_cast<std::size_t>(i)].area; }
  // Index of the top card at a pixel, or -1.
  int owner(int x, int y) const { return owner_[static_cast<std::size_t>(y) * width_ + x]; }

  // One region per stacked card, in stacking order.
  std::vector<VisibleRegion> regions() const;

 private:
  int width_;
  int height_;
  std::vector<std::int16_t> owner_;
  std::vector<Footprint> footprints_;
  std::vector<std::int64_t> visible_;
};

// Visible regions of `placements` stacked in ascending z. The returned
// regions are ordered by z; `placement` refers back into the input span.
std::vector<VisibleRegion> compute_visibility(std::span<const Placement> placements, const CardGeometry& g,
                                              int canvas_w, int canvas_h);

}  // namespace cardforge
