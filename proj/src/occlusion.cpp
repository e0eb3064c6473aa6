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

#include "cardforge/occlusion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "cardforge/error.hpp"

namespace cardforge {

HalfExtents rotated_half_extents(double w, double h, double rotation_deg) {
  const CosSin cs = cos_sin_deg(rotation_deg);
  const double c = std::fabs(cs.cos);
  const double s = std::fabs(cs.sin);
  return {(c * w + s * h) / 2.0, (s * w + c * h) / 2.0};
}

namespace {

struct LocalFrame {
  double cx, cy, c, s, half_w, half_h, radius;

  LocalFrame(const Placement& p, const CardGeometry& g) {
    const CosSin cs = cos_sin_deg(p.rotation);
    cx = p.cx;
    cy = p.cy;
    c = cs.cos;
    s = cs.sin;
    half_w = g.width * p.scale / 2.0;
    half_h = g.height * p.scale / 2.0;
    radius = g.corner_radius * p.scale;
  }

  bool contains(double x, double y) const {
    const double dx = x - cx;
    const double dy = y - cy;
    return rounded_rect_contains(c * dx + s * dy, -s * dx + c * dy, half_w, half_h, radius);
  }
};

}  // namespace

bool placement_contains(const Placement& p, const CardGeometry& g, double x, double y) {
  return LocalFrame(p, g).contains(x, y);
}

Footprint Footprint::rasterize(const Placement& p, const CardGeometry& g, int canvas_w, int canvas_h) {
  const LocalFrame f(p, g);
  const HalfExtents ext = rotated_half_extents(g.width * p.scale, g.height * p.scale, p.rotation);
  const int x_lo = std::max(0, static_cast<int>(std::floor(p.cx - ext.x)) - 1);
  const int x_hi = std::min(canvas_w, static_cast<int>(std::ceil(p.cx + ext.x)) + 1);
  const int y_lo = std::max(0, static_cast<int>(std::floor(p.cy - ext.y)) - 1);
  const int y_hi = std::min(canvas_h, static_cast<int>(std::ceil(p.cy + ext.y)) + 1);

  Footprint fp;
  fp.bounds = {std::numeric_limits<int>::max(), std::numeric_limits<int>::max(), 0, 0};
  std::vector<Run> rows;
  int first_row = -1;
  for (int y = y_lo; y < y_hi; ++y) {
    const double py = y + 0.5;
    int b = x_lo;
    while (b < x_hi && !f.contains(b + 0.5, py)) ++b;
    if (b == x_hi) {
      if (first_row >= 0) rows.push_back({0, 0});
      continue;
    }
    int e = x_hi;
    while (e > b && !f.contains(e - 0.5, py)) --e;
    if (first_row < 0) first_row = y;
    rows.push_back({b, e});
    fp.area += e - b;
    fp.bounds.x_min = std::min(fp.bounds.x_min, b);
    fp.bounds.x_max = std::max(fp.bounds.x_max, e);
    fp.bounds.y_max = y + 1;
  }
  while (!rows.empty() && rows.back().x_end <= rows.back().x_begin) rows.pop_back();
  if (first_row < 0) {
    fp.bounds = {};
    return fp;
  }
  fp.y_begin = first_row;
  fp.bounds.y_min = first_row;
  fp.rows = std::move(rows);
  return fp;
}

Mask footprint_mask(const Placement& p, const CardGeometry& g, int canvas_w, int canvas_h) {
  Mask m(canvas_w, canvas_h);
  const Footprint fp = Footprint::rasterize(p, g, canvas_w, canvas_h);
  for (std::size_t i = 0; i < fp.rows.size(); ++i) {
    const int y = fp.y_begin + static_cast<int>(i);
    for (int x = fp.rows[i].x_begin; x < fp.rows[i].x_end; ++x) m.set(x, y);
  }
  return m;
}

OcclusionMap::OcclusionMap(int width, int height)
    : width_(width), height_(height), owner_(static_cast<std::size_t>(width) * height, -1) {}

std::vector<std::int64_t> OcclusionMap::losses(const Footprint& fp) const {
  std::vector<std::int64_t> out(footprints_.size(), 0);
  for (std::size_t i = 0; i < fp.rows.size(); ++i) {
    const std::int16_t* row = owner_.data() + static_cast<std::size_t>(fp.y_begin + static_cast<int>(i)) * width_;
    for (int x = fp.rows[i].x_begin; x < fp.rows[i].x_end; ++x) {
      if (row[x] >= 0) ++out[static_cast<std::size_t>(row[x])];
    }
  }
  return out;
}

bool OcclusionMap::admits(const Footprint& fp, double min_visibility) const {
  if (fp.area == 0) return false;
  const auto loss = losses(fp);
  for (std::size_t i = 0; i < loss.size(); ++i) {
    const double remaining = static_cast<double>(visible_[i] - loss[i]);
    if (remaining < min_visibility * static_cast<double>(footprints_[i].area)) return false;
  }
  return true;
}

void OcclusionMap::push(Footprint fp) {
  if (footprints_.size() >= static_cast<std::size_t>(std::numeric_limits<std::int16_t>::max())) {
    throw Error("too many cards in one scene");
  }
  const auto id = static_cast<std::int16_t>(footprints_.size());
  for (std::size_t i = 0; i < fp.rows.size(); ++i) {
    std::int16_t* row = owner_.data() + static_cast<std::size_t>(fp.y_begin + static_cast<int>(i)) * width_;
    for (int x = fp.rows[i].x_begin; x < fp.rows[i].x_end; ++x) {
      if (row[x] >= 0) --visible_[static_cast<std::size_t>(row[x])];
      row[x] = id;
    }
  }
  visible_.push_back(fp.area);
  footprints_.push_back(std::move(fp));
}

std::vector<VisibleRegion> OcclusionMap::regions() const {
  const std::size_t n = footprints_.size();
  std::vector<VisibleRegion> out(n);
  std::vector<PixelBox> boxes(n, PixelBox{width_, height_, 0, 0});
  PixelBox scan{width_, height_, 0, 0};
  for (const auto& fp : footprints_) {
    if (fp.area == 0) continue;
    scan.x_min = std::min(scan.x_min, fp.bounds.x_min);
    scan.y_min = std::min(scan.y_min, fp.bounds.y_min);
    scan.x_max = std::max(scan.x_max, fp.bounds.x_max);
    scan.y_max = std::max(scan.y_max, fp.bounds.y_max);
  }
  for (int y = scan.y_min; y < scan.y_max; ++y) {
    const std::int16_t* row = owner_.data() + static_cast<std::size_t>(y) * width_;
    for (int x = scan.x_min; x < scan.x_max; ++x) {
      const int o = row[x];
      if (o < 0) continue;
      PixelBox& b = boxes[static_cast<std::size_t>(o)];
      b.x_min = std::min(b.x_min, x);
      b.y_min = std::min(b.y_min, y);
      b.x_max = std::max(b.x_max, x + 1);
      b.y_max = std::max(b.y_max, y + 1);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    out[i].placement = static_cast<int>(i);
    out[i].visible = visible_[i];
    out[i].total = footprints_[i].area;
    out[i].bbox = visible_[i] > 0 ? boxes[i] : PixelBox{};
    out[i].amodal = footprints_[i].bounds;
  }
  return out;
}

std::vector<VisibleRegion> compute_visibility(std::span<const Placement> placements, const CardGeometry& g,
                                              int canvas_w, int canvas_h) {
  std::vector<int> order(placements.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return placements[a].z < placements[b].z; });
  OcclusionMap map(canvas_w, canvas_h);
  for (int i : order) map.push(Footprint::rasterize(placements[static_cast<std::size_t>(i)], g, canvas_w, canvas_h));
  auto regions = map.regions();
  for (std::size_t k = 0; k < regions.size(); ++k) regions[k].placement = order[k];
  return regions;
}

}  // namespace cardforge
