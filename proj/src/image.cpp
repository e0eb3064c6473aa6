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

#include "cardforge/image.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <libdeflate.h>
#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

#include "cardforge/error.hpp"

namespace cardforge {

namespace fs = std::filesystem;

Image::Image(int w, int h, int c, std::uint8_t fill)
    : width(w), height(h), channels(c), pixels(static_cast<std::size_t>(w) * h * c, fill) {}

std::int64_t Mask::count() const {
  return std::count(bits.begin(), bits.end(), std::uint8_t{1});
}

void sample_bilinear_clamped(const Image& img, double x, double y, std::span<float> out) {
  const double fx0 = std::floor(x);
  const double fy0 = std::floor(y);
  const float ax = static_cast<float>(x - fx0);
  const float ay = static_cast<float>(y - fy0);
  const int x0 = std::clamp(static_cast<int>(fx0), 0, img.width - 1);
  const int y0 = std::clamp(static_cast<int>(fy0), 0, img.height - 1);
  const int x1 = std::clamp(static_cast<int>(fx0) + 1, 0, img.width - 1);
  const int y1 = std::clamp(static_cast<int>(fy0) + 1, 0, img.height - 1);
  const std::uint8_t* p00 = img.at(x0, y0);
  const std::uint8_t* p10 = img.at(x1, y0);
  const std::uint8_t* p01 = img.at(x0, y1);
  const std::uint8_t* p11 = img.at(x1, y1);
  for (int c = 0; c < img.channels; ++c) {
    const float top = p00[c] + (p10[c] - p00[c]) * ax;
    const float bottom = p01[c] + (p11[c] - p01[c]) * ax;
    out[c] = top + (bottom - top) * ay;
  }
}

namespace {

struct Tap {
  int i0, i1;
  float w1;
};

std::vector<Tap> cover_taps(int out_size, int src_size, double scale, double offset) {
  std::vector<Tap> taps(static_cast<std::size_t>(out_size));
  for (int o = 0; o < out_size; ++o) {
    const double s = std::clamp((o + 0.5 + offset) / scale - 0.5, 0.0, static_cast<double>(src_size - 1));
    const int i0 = static_cast<int>(std::floor(s));
    const int i1 = std::min(i0 + 1, src_size - 1);
    taps[static_cast<std::size_t>(o)] = {i0, i1, static_cast<float>(s - i0)};
  }
  return taps;
}

}  // namespace

Image resize_cover(const Image& src, int w, int h) {
  const double scale = std::max(static_cast<double>(w) / src.width, static_cast<double>(h) / src.height);
  const auto xs = cover_taps(w, src.width, scale, (src.width * scale - w) / 2.0);
  const auto ys = cover_taps(h, src.height, scale, (src.height * scale - h) / 2.0);
  const int ch = src.channels;
  Image out(w, h, ch);
  std::vector<float> row(static_cast<std::size_t>(src.width) * ch);
  for (int y = 0; y < h; ++y) {
    const Tap& ty = ys[static_cast<std::size_t>(y)];
    const std::uint8_t* r0 = src.at(0, ty.i0);
    const std::uint8_t* r1 = src.at(0, ty.i1);
    for (std::size_t k = 0; k < row.size(); ++k) row[k] = r0[k] + ty.w1 * (r1[k] - r0[k]);
    std::uint8_t* o = out.at(0, y);
    for (int x = 0; x < w; ++x) {
      const Tap& tx = xs[static_cast<std::size_t>(x)];
      const float* a = row.data() + static_cast<std::size_t>(tx.i0) * ch;
      const float* b = row.data() + static_cast<std::size_t>(tx.i1) * ch;
      for (int c = 0; c < ch; ++c) *o++ = static_cast<std::uint8_t>(std::lround(a[c] + tx.w1 * (b[c] - a[c])));
    }
  }
  return out;
}

Image load_image(const fs::path& path, int channels) {
  if (channels != 3 && channels != 4) throw Error("load_image: channels must be 3 or 4");
  cv::Mat mat = cv::imread(path.string(), cv::IMREAD_UNCHANGED);
  if (mat.empty()) throw IoError("cannot decode image: " + path.string());
  if (mat.depth() == CV_16U) {
    mat.convertTo(mat, CV_8U, 1.0 / 257.0);
  } else if (mat.depth() != CV_8U) {
    throw IoError("unsupported pixel depth: " + path.string());
  }
  const int src_channels = mat.channels();
  if (src_channels != 1 && src_channels != 3 && src_channels != 4) {
    throw IoError("unsupported channel count: " + path.string());
  }
  Image img(mat.cols, mat.rows, channels);
  for (int y = 0; y < mat.rows; ++y) {
    const std::uint8_t* row = mat.ptr<std::uint8_t>(y);
    for (int x = 0; x < mat.cols; ++x) {
      const std::uint8_t* s = row + static_cast<std::size_t>(x) * src_channels;
      std::uint8_t* d = img.at(x, y);
      if (src_channels == 1) {
        d[0] = d[1] = d[2] = s[0];
      } else {
        d[0] = s[2];
        d[1] = s[1];
        d[2] = s[0];
      }
      if (channels == 4) d[3] = src_channels == 4 ? s[3] : 255;
    }
  }
  return img;
}

namespace {

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 24));
  out.push_back(static_cast<std::uint8_t>(v >> 16));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

void put_chunk(std::vector<std::uint8_t>& out, const char* tag, std::span<const std::uint8_t> data) {
  put_u32(out, static_cast<std::uint32_t>(data.size()));
  const std::size_t start = out.size();
  out.insert(out.end(), tag, tag + 4);
  out.insert(out.end(), data.begin(), data.end());
  put_u32(out, libdeflate_crc32(0, out.data() + start, out.size() - start));
}

}  // namespace

// Rows use the Up filter; zlib stream comes from libdeflate.
std::vector<std::uint8_t> encode_png(const Image& img, int compression) {
  const std::size_t stride = static_cast<std::size_t>(img.width) * img.channels;
  std::vector<std::uint8_t> raw((stride + 1) * img.height);
  for (int y = 0; y < img.height; ++y) {
    std::uint8_t* d = raw.data() + (stride + 1) * y;
    const std::uint8_t* s = img.pixels.data() + stride * y;
    if (y == 0) {
      d[0] = 0;
      std::copy(s, s + stride, d + 1);
      continue;
    }
    d[0] = 2;
    const std::uint8_t* above = s - stride;
    for (std::size_t i = 0; i < stride; ++i) d[1 + i] = static_cast<std::uint8_t>(s[i] - above[i]);
  }

  libdeflate_compressor* comp = libdeflate_alloc_compressor(std::clamp(compression, 0, 12));
  if (!comp) throw IoError("PNG encoding failed: cannot allocate compressor");
  std::vector<std::uint8_t> z(libdeflate_zlib_compress_bound(comp, raw.size()));
  const std::size_t zsize = libdeflate_zlib_compress(comp, raw.data(), raw.size(), z.data(), z.size());
  libdeflate_free_compressor(comp);
  if (zsize == 0) throw IoError("PNG encoding failed");

  std::vector<std::uint8_t> out = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
  out.reserve(zsize + 64);
  std::vector<std::uint8_t> ihdr;
  put_u32(ihdr, static_cast<std::uint32_t>(img.width));
  put_u32(ihdr, static_cast<std::uint32_t>(img.height));
  ihdr.push_back(8);
  ihdr.push_back(img.channels == 4 ? 6 : 2);
  ihdr.push_back(0);
  ihdr.push_back(0);
  ihdr.push_back(0);
  put_chunk(out, "IHDR", ihdr);
  put_chunk(out, "IDAT", std::span<const std::uint8_t>(z.data(), zsize));
  put_chunk(out, "IEND", {});
  return out;
}

void save_png(const Image& img, const fs::path& path, int compression) {
  const auto buf = encode_png(img, compression);
  write_file_atomic(path, std::span<const char>(reinterpret_cast<const char*>(buf.data()), buf.size()));
}

void write_file_atomic(const fs::path& path, std::span<const char> bytes) {
  fs::path tmp = path;
  tmp += ".partial";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + tmp.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("write failed: " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw IoError("cannot rename " + tmp.string() + ": " + ec.message());
}

void write_file_atomic(const fs::path& path, const std::string& text) {
  write_file_atomic(path, std::span<const char>(text.data(), text.size()));
}

std::string read_text_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool is_image_file(const fs::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  return ext == ".png" || ext == ".jpg" || ext == ".jpeg" || ext == ".bmp" || ext == ".tif" || ext == ".tiff";
}

std::vector<fs::path> list_image_files(const fs::path& dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw IoError("not a directory: " + dir.string());
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && is_image_file(entry.path())) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end(),
            [](const fs::path& a, const fs::path& b) { return a.filename().string() < b.filename().string(); });
  return files;
}

}  // namespace cardforge
