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

#include "oracles.hpp"

#include <algorithm>
#include <cmath>

namespace cardforge::oracle {

PixelCounts repaint(std::span<const Placement> placements, const CardGeometry& g, int w, int h) {
  const std::size_t n = placements.size();
  PixelCounts out{std::vector<std::int64_t>(n, 0), std::vector<std::int64_t>(n, 0),
                  std::vector<PixelBox>(n, PixelBox{w, h, 0, 0})};
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      int top = -1;
      for (std::size_t i = 0; i < n; ++i) {
        if (!placement_contains(placements[i], g, x + 0.5, y + 0.5)) continue;
        ++out.total[i];
        if (top < 0 || placements[i].z > placements[static_cast<std::size_t>(top)].z) top = static_cast<int>(i);
      }
      if (top < 0) continue;
      ++out.visible[static_cast<std::size_t>(top)];
      PixelBox& b = out.visible_box[static_cast<std::size_t>(top)];
      b.x_min = std::min(b.x_min, x);
      b.y_min = std::min(b.y_min, y);
      b.x_max = std::max(b.x_max, x + 1);
      b.y_max = std::max(b.y_max, y + 1);
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    if (out.visible[i] == 0) out.visible_box[i] = PixelBox{};
  return out;
}

Image separable_resize(const Image& src, int x0, int y0, int x1, int y1, int out_w, int out_h) {
  const int rows = y1 - y0 + 1;
  const int ch = src.channels;
  std::vector<double> horiz(static_cast<std::size_t>(rows) * out_w * ch);
  for (int r = 0; r < rows; ++r) {
    for (int x = 0; x < out_w; ++x) {
      const double sx = x0 + x * static_cast<double>(x1 - x0) / (out_w - 1);
      const int a = std::min(static_cast<int>(std::floor(sx)), x1);
      const int b = std::min(a + 1, x1);
      const double t = sx - a;
      for (int c = 0; c < ch; ++c) {
        horiz[(static_cast<std::size_t>(r) * out_w + x) * ch + c] =
            (1 - t) * src.at(a, y0 + r)[c] + t * src.at(b, y0 + r)[c];
      }
    }
  }
  Image out(out_w, out_h, ch);
  for (int y = 0; y < out_h; ++y) {
    const double sy = y * static_cast<double>(y1 - y0) / (out_h - 1);
    const int a = std::min(static_cast<int>(std::floor(sy)), rows - 1);
    const int b = std::min(a + 1, rows - 1);
    const double t = sy - a;
    for (int x = 0; x < out_w; ++x)
      for (int c = 0; c < ch; ++c) {
        const double v = (1 - t) * horiz[(static_cast<std::size_t>(a) * out_w + x) * ch + c] +
                         t * horiz[(static_cast<std::size_t>(b) * out_w + x) * ch + c];
        out.at(x, y)[c] = static_cast<std::uint8_t>(std::lround(v));
      }
  }
  return out;
}

}  // namespace cardforge::oracle
