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

#include "cardforge/qc_report.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include <opencv2/core.hpp>
#include <opencv2/imgproc.hpp>

#include "cardforge/error.hpp"

namespace cardforge {

namespace fs = std::filesystem;
using nlohmann::json;

json DatasetStats::to_json() const {
  json per_class = json::object();
  for (std::size_t i = 0; i < class_names.size() && i < labels_per_class.size(); ++i) {
    per_class[class_names[i]] = labels_per_class[i];
  }
  json per_scene = json::object();
  for (const auto& [k, v] : labels_per_scene) per_scene[std::to_string(k)] = v;
  return {{"scenes_per_split", scenes_per_split},
          {"total_labels", total_labels},
          {"labels_per_class", per_class},
          {"labels_per_scene", per_scene},
          {"visibility",
           {{"count", visibility_count}, {"min", visibility_min}, {"mean", visibility_mean}, {"max", visibility_max}}},
          {"errors", errors},
          {"warnings", warnings},
          {"ok", ok()}};
}

std::vector<std::string> balance_warnings(std::span<const std::int64_t> labels_per_class,
                                          std::span<const std::string> class_names) {
  std::vector<std::string> out;
  if (labels_per_class.empty()) return out;
  double sum = 0.0;
  for (auto v : labels_per_class) sum += static_cast<double>(v);
  const double mean = sum / static_cast<double>(labels_per_class.size());
  if (mean <= 0.0) return out;
  for (std::size_t i = 0; i < labels_per_class.size(); ++i) {
    const double dev = std::fabs(static_cast<double>(labels_per_class[i]) - mean) / mean;
    if (dev > kBalanceTolerance) {
      const std::string name = i < class_names.size() ? class_names[i] : std::to_string(i);
      out.push_back("class " + name + " has " + std::to_string(labels_per_class[i]) + " labels, " +
                    std::to_string(static_cast<int>(std::lround(dev * 100))) + "% from the mean");
    }
  }
  return out;
}

namespace {

void check_label_file(const fs::path& path, const std::string& rel, int catalog_size, DatasetStats& stats) {
  std::string text;
  try {
    text = read_text_file(path);
  } catch (const IoError& e) {
    stats.errors.push_back(rel + ": unreadable");
    return;
  }
  if (!text.empty() && text.back() != '\n') stats.errors.push_back(rel + ": missing final LF");
  int count = 0;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    const std::string_view line(text.data() + pos, end - pos);
    pos = end + 1;
    ++line_no;
    const std::string where = rel + ":" + std::to_string(line_no) + ": ";
    if (!matches_label_grammar(line)) {
      stats.errors.push_back(where + "does not match the label grammar: \"" + std::string(line) + "\"");
    }
    LabelRecord r;
    try {
      r = parse_label_line(line);
    } catch (const MalformedLabel&) {
      continue;
    }
    if (r.class_index >= catalog_size) {
      stats.errors.push_back(where + "class " + std::to_string(r.class_index) + " out of range for " +
                             std::to_string(catalog_size) + " classes");
      continue;
    }
    constexpr double eps = 1e-6;
    const bool in_bounds = r.w > 0 && r.h > 0 && r.w <= 1 + eps && r.h <= 1 + eps && r.cx - r.w / 2 >= -eps &&
                           r.cx + r.w / 2 <= 1 + eps && r.cy - r.h / 2 >= -eps && r.cy + r.h / 2 <= 1 + eps;
    if (!in_bounds) {
      stats.errors.push_back(where + "box outside the unit square");
      continue;
    }
    ++count;
    ++stats.total_labels;
    ++stats.labels_per_class[static_cast<std::size_t>(r.class_index)];
  }
  ++stats.labels_per_scene[count];
}

void read_manifest(const fs::path& path, DatasetStats& stats) {
  std::error_code ec;
  if (!fs::exists(path, ec)) {
    stats.warnings.push_back("manifest.json missing; visibility summary unavailable");
    return;
  }
  json j;
  try {
    j = json::parse(read_text_file(path));
  } catch (const std::exception& e) {
    stats.errors.push_back(std::string("manifest.json: ") + e.what());
    return;
  }
  try {
    for (const auto& [split, n] : j.at("splits").items()) {
      const auto found = stats.scenes_per_split.count(split) ? stats.scenes_per_split.at(split) : 0;
      if (n.get<std::int64_t>() != found) {
        stats.errors.push_back("manifest lists " + std::to_string(n.get<std::int64_t>()) + " " + split +
                               " scenes, found " + std::to_string(found));
      }
    }
    double lo = std::numeric_limits<double>::max(), hi = 0.0, sum = 0.0;
    std::int64_t n = 0;
    for (const auto& scene : j.at("scenes")) {
      for (const auto& p : scene.at("placements")) {
        if (!p.at("labeled").get<bool>()) continue;
        const double v = p.at("visibility").get<double>();
        lo = std::min(lo, v);
        hi = std::max(hi, v);
        sum += v;
        ++n;
      }
    }
    stats.visibility_count = n;
    if (n > 0) {
      stats.visibility_min = lo;
      stats.visibility_max = hi;
      stats.visibility_mean = sum / static_cast<double>(n);
    }
  } catch (const json::exception& e) {
    stats.errors.push_back(std::string("manifest.json: ") + e.what());
  }
}

}  // namespace

DatasetStats validate_dataset(const fs::path& dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw IoError("not a dataset directory: " + dir.string());

  DatasetStats stats;
  ClassCatalog catalog = ClassCatalog::standard();
  const fs::path names = dir / "classes.names";
  if (fs::exists(names, ec)) {
    try {
      catalog = ClassCatalog::from_names_file(names);
    } catch (const Error& e) {
      stats.errors.push_back(std::string("classes.names: ") + e.what());
    }
  } else {
    stats.errors.push_back("classes.names missing");
  }
  stats.class_names = catalog.names();
  stats.labels_per_class.assign(static_cast<std::size_t>(catalog.size()), 0);

  for (const char* split : {"train", "test"}) {
    const fs::path sdir = dir / split;
    if (!fs::is_directory(sdir, ec)) {
      stats.errors.push_back(std::string(split) + "/ missing");
      continue;
    }
    std::set<std::string> images, labels;
    try {
      for (const auto& entry : fs::directory_iterator(sdir)) {
        const fs::path& p = entry.path();
        const std::string name = p.filename().string();
        if (p.extension() == ".png") {
          images.insert(p.stem().string());
        } else if (p.extension() == ".txt") {
          labels.insert(p.stem().string());
        } else if (p.extension() == ".partial") {
          stats.warnings.push_back(std::string(split) + "/" + name + ": leftover partial write");
        } else {
          stats.errors.push_back(std::string(split) + "/" + name + ": unexpected file");
        }
      }
    } catch (const fs::filesystem_error& e) {
      throw IoError(std::string("cannot list ") + sdir.string() + ": " + e.what());
    }
    for (const auto& stem : images)
      if (!labels.count(stem)) stats.errors.push_back(std::string(split) + "/" + stem + ".png has no label file");
    for (const auto& stem : labels) {
      if (!images.count(stem)) stats.errors.push_back(std::string(split) + "/" + stem + ".txt has no image");
      check_label_file(sdir / (stem + ".txt"), std::string(split) + "/" + stem + ".txt", catalog.size(), stats);
    }
    stats.scenes_per_split[split] = static_cast<std::int64_t>(images.size());
  }
  read_manifest(dir / "manifest.json", stats);
  if (stats.total_labels > 0) {
    const auto warn = balance_warnings(stats.labels_per_class, stats.class_names);
    stats.warnings.insert(stats.warnings.end(), warn.begin(), warn.end());
  }
  return stats;
}

PixelBox denormalize(const LabelRecord& r, int canvas_w, int canvas_h) {
  return {static_cast<int>(std::lround((r.cx - r.w / 2) * canvas_w)),
          static_cast<int>(std::lround((r.cy - r.h / 2) * canvas_h)),
          static_cast<int>(std::lround((r.cx + r.w / 2) * canvas_w)),
          static_cast<int>(std::lround((r.cy + r.h / 2) * canvas_h))};
}

Overlay render_overlay(const Image& image, std::span<const LabelRecord> labels, const ClassCatalog& catalog) {
  Overlay out;
  out.image = image;
  out.outline_ids.assign(static_cast<std::size_t>(image.width) * image.height, 0);
  if (labels.empty()) return out;

  const int W = image.width;
  const int H = image.height;
  const std::uint8_t green[3] = {0, 255, 0};
  auto mark = [&](int x, int y, int id) {
    if (x < 0 || y < 0 || x >= W || y >= H) return;
    std::uint8_t* p = out.image.at(x, y);
    for (int c = 0; c < 3; ++c) p[c] = green[c];
    out.outline_ids[static_cast<std::size_t>(y) * W + x] = id;
  };
  for (std::size_t i = 0; i < labels.size(); ++i) {
    PixelBox b = denormalize(labels[i], W, H);
    b.x_min = std::clamp(b.x_min, 0, W - 1);
    b.y_min = std::clamp(b.y_min, 0, H - 1);
    b.x_max = std::clamp(b.x_max, b.x_min + 1, W);
    b.y_max = std::clamp(b.y_max, b.y_min + 1, H);
    const int id = static_cast<int>(i) + 1;
    for (int x = b.x_min; x < b.x_max; ++x) {
      mark(x, b.y_min, id);
      mark(x, b.y_max - 1, id);
    }
    for (int y = b.y_min; y < b.y_max; ++y) {
      mark(b.x_min, y, id);
      mark(b.x_max - 1, y, id);
    }
  }
  // Text goes on the image only, after all outlines, so outline_ids stays a
  // pure record of the rectangles.
  cv::Mat mat(H, W, image.channels == 4 ? CV_8UC4 : CV_8UC3, out.image.pixels.data());
  for (const auto& r : labels) {
    const PixelBox b = denormalize(r, W, H);
    const std::string text = r.class_index < catalog.size() ? catalog.name(r.class_index) : std::to_string(r.class_index);
    const int tx = std::clamp(b.x_min + 3, 0, std::max(0, W - 1));
    const int ty = std::clamp(b.y_min + 13, 0, std::max(0, H - 1));
    cv::putText(mat, text, cv::Point(tx, ty), cv::FONT_HERSHEY_SIMPLEX, 0.4, cv::Scalar(0, 255, 0, 255), 1,
                cv::LINE_8);
  }
  return out;
}

Overlay render_overlay(const fs::path& image_path, const fs::path& label_path, const ClassCatalog& catalog) {
  const Image img = load_image(image_path, 3);
  const auto labels = read_labels(label_path);
  return render_overlay(img, labels, catalog);
}

}  // namespace cardforge
