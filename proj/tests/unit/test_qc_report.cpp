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

#include <filesystem>
#include <fstream>
#include <map>
#include <set>

#include "cardforge/image.hpp"
#include "cardforge/label_io.hpp"
#include "cardforge/pipeline.hpp"
#include "cardforge/qc_report.hpp"
#include "synthetic.hpp"

using namespace cardforge;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / ("cardforge_unit_" + name)) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

void write(const fs::path& p, const std::string& text) {
  fs::create_directories(p.parent_path());
  std::ofstream(p, std::ios::binary) << text;
}

// Two scenes, three labels, standard catalog.
void hand_made(const fs::path& root) {
  fs::create_directories(root / "train");
  fs::create_directories(root / "test");
  ClassCatalog::standard().write_names_file(root / "classes.names");
  save_png(Image(64, 64, 3, 100), root / "train" / "000000.png");
  save_png(Image(64, 64, 3, 100), root / "test" / "000001.png");
  write(root / "train" / "000000.txt", "0 0.500000 0.500000 0.250000 0.250000\n5 0.200000 0.200000 0.100000 0.100000\n");
  write(root / "test" / "000001.txt", "5 0.700000 0.700000 0.200000 0.200000\n");
}

}  // namespace

TEST_CASE("hand-made dataset statistics") {
  TempDir dir("qc_hand");
  hand_made(dir.path);
  const DatasetStats s = validate_dataset(dir.path);
  CHECK(s.ok());
  CHECK(s.total_labels == 3);
  std::int64_t sum = 0;
  for (auto n : s.labels_per_class) sum += n;
  CHECK(sum == 3);
  CHECK(s.labels_per_class[5] == 2);
  CHECK(s.scenes_per_split.at("train") == 1);
  CHECK(s.labels_per_scene.at(2) == 1);
  CHECK(s.labels_per_scene.at(1) == 1);
}

TEST_CASE("content errors are collected") {
  TempDir dir("qc_err");
  hand_made(dir.path);
  write(dir.path / "test" / "000001.txt", "52 0.5 0.5 0.1 0.1\n");
  write(dir.path / "train" / "000002.txt", "1 0.500000 0.500000 0.100000 0.100000\n");
  write(dir.path / "train" / "000003.txt", "1 0.950000 0.500000 0.200000 0.100000\n");
  save_png(Image(8, 8, 3), dir.path / "train" / "000003.png");
  const DatasetStats s = validate_dataset(dir.path);
  CHECK_FALSE(s.ok());
  auto mentions = [&](const std::string& needle) {
    for (const auto& e : s.errors)
      if (e.find(needle) != std::string::npos) return true;
    return false;
  };
  CHECK(mentions("000001.txt"));
  CHECK(mentions("000002"));
  CHECK(mentions("000003.txt"));
  CHECK(s.errors.size() >= 3);
}

TEST_CASE("balance warnings flag outliers only") {
  const std::vector<std::string> names = {"a", "b", "c", "d"};
  CHECK(balance_warnings(std::vector<std::int64_t>{100, 100, 100, 100}, names).empty());
  const auto w = balance_warnings(std::vector<std::int64_t>{100, 100, 100, 40}, names);
  REQUIRE(w.size() == 1);
  CHECK(w[0].find("d") != std::string::npos);
}

TEST_CASE("overlays") {
  const ClassCatalog cat = ClassCatalog::standard();
  const Image img = synthetic::texture(120, 90, 4);

  SUBCASE("no labels leaves the image untouched") {
    const Overlay ov = render_overlay(img, {}, cat);
    CHECK(ov.image == img);
    CHECK(std::all_of(ov.outline_ids.begin(), ov.outline_ids.end(), [](int v) { return v == 0; }));
  }
  SUBCASE("full canvas label traces the border") {
    const std::vector<LabelRecord> recs = {{3, 0.5, 0.5, 1.0, 1.0}};
    const Overlay ov = render_overlay(img, recs, cat);
    for (int x = 0; x < 120; ++x) {
      CHECK(ov.outline_ids[static_cast<std::size_t>(x)] == 1);
      CHECK(ov.outline_ids[static_cast<std::size_t>(89 * 120 + x)] == 1);
    }
    for (int y = 0; y < 90; ++y) {
      CHECK(ov.outline_ids[static_cast<std::size_t>(y * 120)] == 1);
      CHECK(ov.outline_ids[static_cast<std::size_t>(y * 120 + 119)] == 1);
    }
    CHECK(ov.outline_ids[static_cast<std::size_t>(45 * 120 + 60)] == 0);
  }
  SUBCASE("rectangles invert normalization") {
    const LabelRecord r = normalize_box(7, PixelBox{10, 20, 50, 70}, 120, 90);
    CHECK(denormalize(r, 120, 90) == PixelBox{10, 20, 50, 70});
    const Overlay ov = render_overlay(img, std::vector{r}, cat);
    CHECK(ov.outline_ids[static_cast<std::size_t>(20 * 120 + 10)] == 1);
    CHECK(ov.outline_ids[static_cast<std::size_t>(69 * 120 + 49)] == 1);
    CHECK(ov.outline_ids[static_cast<std::size_t>(19 * 120 + 10)] == 0);
    CHECK(ov.outline_ids[static_cast<std::size_t>(70 * 120 + 49)] == 0);
  }
}

TEST_CASE("generated dataset validates cleanly and qc is read-only") {
  TempDir dir("qc_gen");
  const auto inputs = synthetic::write_input_tree(dir.path / "in");
  GeneratorConfig cfg;
  cfg.seed = 3;
  cmd_generate(inputs.assets, inputs.backgrounds, dir.path / "ds", 20, cfg);

  std::map<std::string, std::string> before;
  for (const auto& e : fs::recursive_directory_iterator(dir.path / "ds"))
    if (e.is_regular_file()) before[e.path().string()] = read_text_file(e.path());

  const QcSummary qc = cmd_qc(dir.path / "ds", dir.path / "qc", 5, 1);
  CHECK(qc.stats.errors.empty());
  CHECK(qc.overlays == 5);
  CHECK(qc.stats.visibility_min >= cfg.min_visibility);

  std::map<std::string, std::string> after;
  for (const auto& e : fs::recursive_directory_iterator(dir.path / "ds"))
    if (e.is_regular_file()) after[e.path().string()] = read_text_file(e.path());
  CHECK(before == after);

  // One outline id per label, counted on the annotation mask.
  for (const auto& e : fs::directory_iterator(dir.path / "ds" / "train")) {
    if (e.path().extension() != ".png") continue;
    fs::path label = e.path();
    label.replace_extension(".txt");
    const auto recs = read_labels(label);
    const Overlay ov = render_overlay(e.path(), label, ClassCatalog::standard());
    std::set<int> ids(ov.outline_ids.begin(), ov.outline_ids.end());
    ids.erase(0);
    CHECK(ids.size() == recs.size());
  }
}
