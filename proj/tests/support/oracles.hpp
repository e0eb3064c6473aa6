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

#include "cardforge/geometry.hpp"
#include "cardforge/image.hpp"
#include "cardforge/occlusion.hpp"

// Reference computations that share no code path with the implementation
// beyond the point-in-card predicate.
namespace cardforge::oracle {

struct PixelCounts {
  std::vector<std::int64_t> visible;
  std::vector<std::int64_t> total;
  std::vector<PixelBox> visible_box;  // empty box when nothing visible
};

// Scans every canvas pixel against every placement; the visible owner of a
// pixel is the containing placement with the highest z.
PixelCounts repaint(std::span<const Placement> placements, const CardGeometry& g, int w, int h);

// Resizes the inclusive pixel rectangle [x0, x1] x [y0, y1] of `src` to
// out_w x out_h with corner-aligned sampling: first along rows, then along
// columns, rounding once at the end.
Image separable_resize(const Image& src, int x0, int y0, int x1, int y1, int out_w, int out_h);

}  // namespace cardforge::oracle
