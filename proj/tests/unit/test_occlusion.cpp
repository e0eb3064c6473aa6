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

#include <doctest.h>

#include <cmath>
#include <vector>

#include "cardforge/occlusion.hpp"
#include "cardforge/rng.hpp"
#include "oracles.hpp"

using namespace cardforge;

namespace {

Placement card(double cx, double cy, double rot, double scale, int z) {
  Placement p;
  p.code = ClassCode::from_ordinal(z % kCardCount);
  p.cx = cx;
  p.cy = cy;
  p.rotation = rot;
  p.scale = scale;
  p.z = z;
  return p;
}

std::vector<Placement> random_scene(Rng& rng, int n, int w, int h) {
  std::vector<Placement> out;
  for (int i = 0; i < n; ++i)
    out.push_back(card(rng.uniform(0, w), rng.uniform(0, h), rng.uniform(0, 360), rng.uniform(0.3, 1.0), i));
  return out;
}

}  // namespace

TEST_CASE("footprint area matches analytic rounded rectangle") {
  const CardGeometry g;
  const Footprint fp = Footprint::rasterize(card(304, 304, 0, 1.0, 0), g, 608, 608);
  CHECK(std::fabs(fp.area - g.analytic_area()) <= 0.01 * g.analytic_area());
  CHECK(fp.area == footprint_mask(card(304, 304, 0, 1.0, 0), g, 608, 608).count());
}

TEST_CASE("footprint area is rotation invariant") {
  const CardGeometry g;
  const auto base = static_cast<double>(Footprint::rasterize(card(304.3, 301.7, 0, 1.0, 0), g, 608, 608).area);
  for (double rot = 0; rot < 360; rot += 7.5) {
    const auto a = static_cast<double>(Footprint::rasterize(card(304.3, 301.7, rot, 1.0, 0), g, 608, 608).area);
    CHECK(std::fabs(a - base) <= 0.015 * base);
  }
}

TEST_CASE("footprint area scales quadratically") {
  const CardGeometry g;
  const auto full = static_cast<double>(Footprint::rasterize(card(304, 304, 0, 1.0, 0), g, 608, 608).area);
  const auto half = static_cast<double>(Footprint::rasterize(card(304, 304, 0, 0.5, 0), g, 608, 608).area);
  CHECK(std::fabs(half - full / 4.0) <= 0.02 * full / 4.0);
}

TEST_CASE("footprint rows match the point predicate") {
  const CardGeometry g;
  Rng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const Placement p = card(rng.uniform(-50, 250), rng.uniform(-50, 250), rng.uniform(0, 360), rng.uniform(0.2, 0.9), 0);
    const Mask m = footprint_mask(p, g, 200, 200);
    for (int y = 0; y < 200; ++y)
      for (int x = 0; x < 200; ++x) REQUIRE(m.test(x, y) == placement_contains(p, g, x + 0.5, y + 0.5));
  }
}

TEST_CASE("axis-aligned bbox matches analytic placement") {
  const CardGeometry g;
  const double cx = 300.25, cy = 280.75;
  const auto regions = compute_visibility(std::vector{card(cx, cy, 0, 1.0, 0)}, g, 608, 608);
  REQUIRE(regions.size() == 1);
  const PixelBox b = regions[0].bbox;
  CHECK(std::abs(b.x_min - static_cast<int>(std::floor(cx - 100))) <= 1);
  CHECK(std::abs(b.x_max - static_cast<int>(std::ceil(cx + 100))) <= 1);
  CHECK(std::abs(b.y_min - static_cast<int>(std::floor(cy - 155.5))) <= 1);
  CHECK(std::abs(b.y_max - static_cast<int>(std::ceil(cy + 155.5))) <= 1);

  const PixelBox r = compute_visibility(std::vector{card(cx, cy, 90, 1.0, 0)}, g, 608, 608)[0].bbox;
  CHECK(std::abs(r.width() - b.height()) <= 1);
  CHECK(std::abs(r.height() - b.width()) <= 1);
}

TEST_CASE("incremental counts equal the repaint oracle") {
  const CardGeometry g;
  Rng rng(2024);
  for (int scene = 0; scene < 30; ++scene) {
    const int n = 1 + static_cast<int>(rng.below(5));
    const auto ps = random_scene(rng, n, 160, 140);
    const auto regions = compute_visibility(ps, g, 160, 140);
    const auto ref = oracle::repaint(ps, g, 160, 140);
    std::int64_t covered = 0;
    for (const auto& r : regions) {
      const auto i = static_cast<std::size_t>(r.placement);
      CHECK(r.visible == ref.visible[i]);
      CHECK(r.total == ref.total[i]);
      CHECK(r.bbox == ref.visible_box[i]);
      covered += r.visible;
    }
    std::int64_t union_px = 0;
    for (int y = 0; y < 140; ++y)
      for (int x = 0; x < 160; ++x) {
        bool any = false;
        for (const auto& p : ps) any = any || placement_contains(p, g, x + 0.5, y + 0.5);
        union_px += any;
      }
    CHECK(covered == union_px);
  }
}

TEST_CASE("owner map partitions the covered pixels") {
  const CardGeometry g;
  Rng rng(77);
  const auto ps = random_scene(rng, 5, 300, 300);
  OcclusionMap occ(300, 300);
  for (const auto& p : ps) {
    const Footprint fp = Footprint::rasterize(p, g, 300, 300);
    const auto loss = occ.losses(fp);
    std::vector<std::int64_t> before;
    for (int i = 0; i < occ.size(); ++i) before.push_back(occ.visible(i));
    occ.push(fp);
    for (int i = 0; i + 1 < occ.size(); ++i) CHECK(occ.visible(i) == before[static_cast<std::size_t>(i)] - loss[static_cast<std::size_t>(i)]);
  }
  std::vector<std::int64_t> counted(5, 0);
  for (int y = 0; y < 300; ++y)
    for (int x = 0; x < 300; ++x)
      if (occ.owner(x, y) >= 0) ++counted[static_cast<std::size_t>(occ.owner(x, y))];
  for (int i = 0; i < 5; ++i) CHECK(counted[static_cast<std::size_t>(i)] == occ.visible(i));
}

TEST_CASE("coincident cards hide the lower one completely") {
  const CardGeometry g;
  const auto regions = compute_visibility(std::vector{card(200, 200, 15, 0.6, 0), card(200, 200, 15, 0.6, 1)}, g, 400, 400);
  CHECK(regions[0].visible == 0);
  CHECK(regions[0].bbox.empty());
  CHECK(regions[0].fraction() == 0.0);
  CHECK(regions[1].visible == regions[1].total);
  CHECK_FALSE(OcclusionMap(10, 10).admits(Footprint{}, 0.3));
}

TEST_CASE("visible boxes are tight") {
  const CardGeometry g;
  Rng rng(5);
  for (int scene = 0; scene < 10; ++scene) {
    const auto ps = random_scene(rng, 4, 200, 200);
    OcclusionMap occ(200, 200);
    for (const auto& p : ps) occ.push(Footprint::rasterize(p, g, 200, 200));
    for (const auto& r : occ.regions()) {
      if (r.visible == 0) continue;
      const PixelBox b = r.bbox;
      bool left = false, right = false, top = false, bottom = false;
      for (int y = b.y_min; y < b.y_max; ++y) {
        left = left || occ.owner(b.x_min, y) == r.placement;
        right = right || occ.owner(b.x_max - 1, y) == r.placement;
      }
      for (int x = b.x_min; x < b.x_max; ++x) {
        top = top || occ.owner(x, b.y_min) == r.placement;
        bottom = bottom || occ.owner(x, b.y_max - 1) == r.placement;
      }
      CHECK((left && right && top && bottom));
    }
  }
}
