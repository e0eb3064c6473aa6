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

#include "cardforge/asset_extractor.hpp"
#include "cardforge/error.hpp"
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

}  // namespace

TEST_CASE("annotation record formats") {
  const QuadAnnotation a = parse_annotation_line("seq_HJ_a; HJ; (120,80) (520,95) (510,710) (105,700)");
  CHECK(a.sequence_id == "seq_HJ_a");
  CHECK(a.code == parse_class_code("HJ"));
  CHECK(a.corners[0] == Point2{120, 80});
  CHECK(a.corners[2] == Point2{510, 710});

  const QuadAnnotation b = parse_annotation_line("s2;DT;10.5,20;300,22;298,400;12,390");
  CHECK(b.code == parse_class_code("DT"));
  CHECK(b.corners[0].x == 10.5);

  CHECK_THROWS_AS(parse_annotation_line("s; HX; (120,80) (520,95) (510,710) (105,700)"), AnnotationParseError);
  CHECK_THROWS_AS(parse_annotation_line("s; HJ; (120,80) (520,95) (510,710)"), AnnotationParseError);
  CHECK_THROWS_AS(parse_annotation_line("s; HJ; (0,0) (1,0) (1,1) (0,1)"), DegenerateQuad);
  CHECK_THROWS_AS(parse_annotation_line("s; HJ; (0,0) (100,100) (100,0) (0,100)"), DegenerateQuad);
}

TEST_CASE("annotation files skip comments and reject duplicate ids") {
  const auto list = parse_annotations("# header\n\na;HA;0,0;50,0;50,80;0,80\nb;SA;0,0;50,0;50,80;0,80\n");
  REQUIRE(list.size() == 2);
  CHECK(list[1].sequence_id == "b");
  CHECK_THROWS_AS(parse_annotations("a;HA;0,0;50,0;50,80;0,80\na;SA;0,0;50,0;50,80;0,80\n"), AnnotationParseError);
}

TEST_CASE("900 frames at stride 10 give 90 variants") {
  TempDir dir("extract900");
  const fs::path seq = dir.path / "seq";
  fs::create_directories(seq);
  const auto quad = synthetic::default_quad(96, 96, 0);
  const Image face = synthetic::card_face(parse_class_code("C7"), 200, 311);
  const Image frame = synthetic::lit_frame(face, quad, 96, 96, 0, 1);
  const auto png = encode_png(frame);
  for (int f = 0; f < 900; ++f) {
    char name[32];
    std::snprintf(name, sizeof name, "f%04d.png", f);
    write_file_atomic(seq / name, std::span<const char>(reinterpret_cast<const char*>(png.data()), png.size()));
  }
  const QuadAnnotation ann{"seq", parse_class_code("C7"), quad};
  const auto sel = select_frames(seq, 10);
  CHECK(sel.frames.size() == 900);
  REQUIRE(sel.selected.size() == 90);
  CHECK(sel.selected[1] == 10);
  const auto assets = extract_assets(seq, ann, 10, CardGeometry{});
  REQUIRE(assets.size() == 90);
  for (int i = 0; i < 90; ++i) {
    CHECK(assets[static_cast<std::size_t>(i)].variant == i);
    CHECK(assets[static_cast<std::size_t>(i)].source.frame_index == 10 * i);
  }
  CHECK(assets.front().pixels == assets.back().pixels);
}

TEST_CASE("single frame sequence yields one rectified asset") {
  TempDir dir("extract1");
  const auto quad = synthetic::default_quad(320, 240, 2);
  const std::string ann_text = synthetic::write_sequences(dir.path, {{"seq_SQ", parse_class_code("SQ"), quad}}, 320, 240, 1);
  const QuadAnnotation ann = parse_annotation_line(ann_text.substr(0, ann_text.size() - 1));
  const auto assets = extract_assets(dir.path / "seq_SQ", ann, 1, CardGeometry{}, 5);
  REQUIRE(assets.size() == 1);
  CHECK(assets[0].variant == 5);
  Image expected = rectify_quad(load_image(dir.path / "seq_SQ" / "frame_0000.png", 3), quad, 200, 311);
  apply_card_mask(expected, CardGeometry{});
  CHECK(assets[0].pixels == expected);
  // Same inputs, same bits.
  CHECK(extract_assets(dir.path / "seq_SQ", ann, 1, CardGeometry{}, 5)[0].pixels == expected);
}

TEST_CASE("every asset carries the same alpha mask") {
  TempDir dir("extract_mask");
  std::vector<synthetic::SequenceSpec> specs;
  for (int v = 0; v < 3; ++v)
    specs.push_back({"s" + std::to_string(v), ClassCode::from_ordinal(v * 17), synthetic::default_quad(320, 240, v)});
  const std::string text = synthetic::write_sequences(dir.path, specs, 320, 240, 4);
  const auto anns = parse_annotations(text);
  const Mask mask = card_shape_mask(CardGeometry{});
  for (const auto& ann : anns) {
    for (const auto& a : extract_assets(dir.path / ann.sequence_id, ann, 1, CardGeometry{})) {
      for (int y = 0; y < 311; ++y)
        for (int x = 0; x < 200; ++x) REQUIRE(a.pixels.at(x, y)[3] == (mask.test(x, y) ? 255 : 0));
    }
  }
}

TEST_CASE("extraction errors") {
  TempDir dir("extract_err");
  const auto quad = synthetic::default_quad(320, 240, 0);
  const QuadAnnotation ann{"seq", parse_class_code("HA"), quad};
  fs::create_directories(dir.path / "empty");
  CHECK_THROWS_AS(extract_assets(dir.path / "empty", ann, 1, CardGeometry{}), EmptySequence);
  CHECK_THROWS_AS(extract_assets(dir.path / "missing", ann, 1, CardGeometry{}), IoError);

  fs::create_directories(dir.path / "mixed");
  save_png(Image(320, 240, 3, 90), dir.path / "mixed" / "a.png");
  save_png(Image(300, 240, 3, 90), dir.path / "mixed" / "b.png");
  CHECK_THROWS_AS(extract_assets(dir.path / "mixed", ann, 1, CardGeometry{}), FrameSizeMismatch);

  const QuadAnnotation outside{"seq", parse_class_code("HA"),
                               {Point2{10, 10}, Point2{400, 10}, Point2{400, 200}, Point2{10, 200}}};
  fs::create_directories(dir.path / "small");
  save_png(Image(320, 240, 3, 90), dir.path / "small" / "a.png");
  CHECK_THROWS_AS(extract_assets(dir.path / "small", outside, 1, CardGeometry{}), DegenerateQuad);
}

TEST_CASE("library round-trips through disk") {
  TempDir dir("library");
  const AssetLibrary lib = synthetic::make_library({parse_class_code("HJ"), parse_class_code("S9")}, 3);
  lib.save(dir.path);
  const AssetLibrary back = AssetLibrary::open(dir.path);
  CHECK(back.variant_count(parse_class_code("HJ")) == 3);
  CHECK(back.variant_count(parse_class_code("CA")) == 0);
  CHECK(back.geometry() == lib.geometry());
  for (int v = 0; v < 3; ++v)
    CHECK(*back.pixels(parse_class_code("S9"), v) == *lib.pixels(parse_class_code("S9"), v));
  CHECK(back.entries().at(parse_class_code("HJ")).sources == lib.entries().at(parse_class_code("HJ")).sources);
  CHECK_THROWS_AS(back.pixels(parse_class_code("S9"), 3), MissingAsset);
  CHECK_THROWS_AS(back.pixels(parse_class_code("D2"), 0), MissingAsset);
}
