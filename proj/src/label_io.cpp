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

#include "cardforge/label_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "cardforge/error.hpp"
#include "cardforge/image.hpp"
#include "cardforge/rng.hpp"

namespace cardforge {

LabelRecord normalize_box(int class_index, const PixelBox& box, int canvas_w, int canvas_h) {
  const int x0 = std::clamp(box.x_min, 0, canvas_w);
  const int x1 = std::clamp(box.x_max, 0, canvas_w);
  const int y0 = std::clamp(box.y_min, 0, canvas_h);
  const int y1 = std::clamp(box.y_max, 0, canvas_h);
  const double W = canvas_w;
  const double H = canvas_h;
  return {class_index, (x0 + x1) / 2.0 / W, (y0 + y1) / 2.0 / H, (x1 - x0) / W, (y1 - y0) / H};
}

std::vector<LabelRecord> to_label_records(std::span<const VisibleRegion> regions,
                                          std::span<const Placement> placements, int canvas_w, int canvas_h,
                                          const ClassCatalog& catalog, double min_visibility, BboxMode mode) {
  std::vector<LabelRecord> out;
  for (const auto& r : regions) {
    if (r.visible <= 0 || r.fraction() < min_visibility) continue;
    const Placement& p = placements[static_cast<std::size_t>(r.placement)];
    const PixelBox& box = mode == BboxMode::Amodal ? r.amodal : r.bbox;
    out.push_back(normalize_box(catalog.index_of(p.code), box, canvas_w, canvas_h));
  }
  return out;
}

std::string format_label_line(const LabelRecord& r) {
  char buf[128];
  const int n = std::snprintf(buf, sizeof buf, "%d %.6f %.6f %.6f %.6f", r.class_index, r.cx, r.cy, r.w, r.h);
  return std::string(buf, static_cast<std::size_t>(n));
}

std::string format_labels(std::span<const LabelRecord> records) {
  std::string out;
  for (const auto& r : records) {
    out += format_label_line(r);
    out += '\n';
  }
  return out;
}

void write_labels(std::span<const LabelRecord> records, const std::filesystem::path& path) {
  write_file_atomic(path, format_labels(records));
}

namespace {

std::vector<std::string_view> fields_of(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
    if (pos >= line.size()) break;
    std::size_t end = pos;
    while (end < line.size() && line[end] != ' ' && line[end] != '\t') ++end;
    out.push_back(line.substr(pos, end - pos));
    pos = end;
  }
  return out;
}

template <typename T>
T parse_field(std::string_view f, std::string_view line) {
  T v{};
  const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
  if (ec != std::errc() || ptr != f.data() + f.size()) {
    throw MalformedLabel("bad field \"" + std::string(f) + "\" in label line: " + std::string(line));
  }
  return v;
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

}  // namespace

LabelRecord parse_label_line(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  const auto f = fields_of(line);
  if (f.size() != 5) throw MalformedLabel("expected 5 fields in label line: " + std::string(line));
  LabelRecord r;
  r.class_index = parse_field<int>(f[0], line);
  r.cx = parse_field<double>(f[1], line);
  r.cy = parse_field<double>(f[2], line);
  r.w = parse_field<double>(f[3], line);
  r.h = parse_field<double>(f[4], line);
  if (r.class_index < 0) throw MalformedLabel("negative class in label line: " + std::string(line));
  return r;
}

std::vector<LabelRecord> parse_labels(std::string_view text) {
  std::vector<LabelRecord> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line != "\r") out.push_back(parse_label_line(line));
    pos = end + 1;
  }
  return out;
}

std::vector<LabelRecord> read_labels(const std::filesystem::path& path) { return parse_labels(read_text_file(path)); }

bool matches_label_grammar(std::string_view line) {
  std::size_t i = 0;
  const std::size_t n = line.size();
  if (i >= n || !is_digit(line[i])) return false;
  while (i < n && is_digit(line[i])) ++i;
  for (int field = 0; field < 4; ++field) {
    if (i + 9 > n) return false;
    if (line[i] != ' ') return false;
    if (line[i + 1] != '0' && line[i + 1] != '1') return false;
    if (line[i + 2] != '.') return false;
    for (std::size_t k = 3; k < 9; ++k)
      if (!is_digit(line[i + k])) return false;
    i += 9;
  }
  return i == n;
}

const char* to_string(Split split) { return split == Split::Train ? "train" : "test"; }

std::vector<Split> split_dataset(std::int64_t total, double train_fraction, std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw InvalidFraction("train fraction must lie strictly between 0 and 1");
  }
  if (total < 0) throw InvalidFraction("scene count must be non-negative");
  const auto n_train = static_cast<std::int64_t>(std::llround(static_cast<double>(total) * train_fraction));
  std::vector<std::int64_t> perm(static_cast<std::size_t>(total));
  std::iota(perm.begin(), perm.end(), 0);
  Rng rng(mix64(seed + kSplitStream));
  for (std::int64_t i = total - 1; i > 0; --i) {
    const auto j = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(i) + 1));
    std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
  }
  std::vector<Split> out(static_cast<std::size_t>(total), Split::Test);
  for (std::int64_t k = 0; k < n_train; ++k) out[static_cast<std::size_t>(perm[static_cast<std::size_t>(k)])] = Split::Train;
  return out;
}

std::string scene_stem(std::int64_t index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%06lld", static_cast<long long>(index));
  return buf;
}

}  // namespace cardforge
