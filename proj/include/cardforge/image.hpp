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
#include <span>
#include <string>
#include <vector>

namespace cardforge {

// Interleaved 8-bit raster. Channels are RGB (3) or RGBA (4), row-major,
// no padding between rows.
struct Image {
  int width = 0;
  int height = 0;
  int channels = 0;
  std::vector<std::uint8_t> pixels;

  Image() = default;
  Image(int w, int h, int c, std::uint8_t fill = 0);

  bool empty() const { return pixels.empty(); }
  std::size_t stride() const { return static_cast<std::size_t>(width) * channels; }

  std::uint8_t* at(int x, int y) {
    return pixels.data() + static_cast<std::size_t>(y) * stride() + static_cast<std::size_t>(x) * channels;
  }
  const std::uint8_t* at(int x, int y) const {
    return pixels.data() + static_cast<std::size_t>(y) * stride() + static_cast<std::size_t>(x) * channels;
  }

  friend bool operator==(const Image&, const Image&) = default;
};

// Binary raster, one byte per pixel (0 or 1).
struct Mask {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> bits;

  Mask() = default;
  Mask(int w, int h) : width(w), height(h), bits(static_cast<std::size_t>(w) * h, 0) {}

  bool test(int x, int y) const { return bits[static_cast<std::size_t>(y) * width + x] != 0; }
  void set(int x, int y) { bits[static_cast<std::size_t>(y) * width + x] = 1; }
  std::int64_t count() const;

  friend bool operator==(const Mask&, const Mask&) = default;
};

// Samples all channels at continuous pixel coordinates (pixel centers at
// integers). Coordinates outside the raster clamp to the edge.
void sample_bilinear_clamped(const Image& img, double x, double y, std::span<float> out);

// Bilinear resize that scales to cover (w, h) and crops the center; the
// aspect ratio of the source is preserved.
Image resize_cover(const Image& src, int w, int h);

// Decodes any format OpenCV understands. `channels` selects RGB (3) or
// RGBA (4); an RGB file read as RGBA gets opaque alpha.
Image load_image(const std::filesystem::path& path, int channels);

// Encodes as PNG and writes through a temporary file plus rename so a
// present file is always complete.
void save_png(const Image& img, const std::filesystem::path& path, int compression = 1);

std::vector<std::uint8_t> encode_png(const Image& img, int compression = 1);

// Writes `bytes` atomically (temporary file + rename).
void write_file_atomic(const std::filesystem::path& path, std::span<const char> bytes);
void write_file_atomic(const std::filesystem::path& path, const std::string& text);

std::string read_text_file(const std::filesystem::path& path);

bool is_image_file(const std::filesystem::path& path);

// Image files directly inside `dir`, sorted by filename.
std::vector<std::filesystem::path> list_image_files(const std::filesystem::path& dir);

}  // namespace cardforge
