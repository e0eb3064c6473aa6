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

#include "cardforge/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <set>

#include <nlohmann/json.hpp>

#include "cardforge/asset_extractor.hpp"
#include "cardforge/error.hpp"
#include "cardforge/label_io.hpp"
#include "cardforge/parallel.hpp"
#include "cardforge/rng.hpp"
#include "cardforge/scene_composer.hpp"

namespace cardforge {

namespace fs = std::filesystem;
using nlohmann::json;

ExtractSummary cmd_extract(const fs::path& frames_root, const fs::path& annotations_path, const fs::path& out_dir,
                           const GeneratorConfig& config, const ProgressFn& progress) {
  config.validate();
  const auto annotations = load_annotations(annotations_path);
  const CardGeometry g = config.card_geometry();

  std::vector<std::string> missing;
  std::error_code ec;
  for (const auto& a : annotations)
    if (!fs::is_directory(frames_root / a.sequence_id, ec)) missing.push_back(a.sequence_id);
  if (!missing.empty()) {
    std::string msg = "missing frame directory for sequence";
    for (const auto& m : missing) msg += " " + m;
    throw IoError(msg + " under " + frames_root.string());
  }

  std::vector<FrameSelection> selections;
  std::vector<int> first_variant;
  std::map<ClassCode, AssetLibrary::ClassEntry> entries;
  for (const auto& a : annotations) {
    selections.push_back(select_frames(frames_root / a.sequence_id, config.asset_stride));
    auto& entry = entries[a.code];
    first_variant.push_back(entry.count);
    for (int idx : selections.back().selected) {
      entry.sources.push_back({a.sequence_id, idx, selections.back().frames[static_cast<std::size_t>(idx)].filename().string()});
    }
    entry.count += static_cast<int>(selections.back().selected.size());
  }

  for (const auto& [code, entry] : entries) {
    const fs::path dir = out_dir / code.str();
    fs::remove_all(dir);
    fs::create_directories(dir);
  }

  std::atomic<std::int64_t> done{0};
  const auto n = static_cast<std::int64_t>(annotations.size());
  parallel_for(n, config.resolved_workers(), [&](std::int64_t i) {
    const auto& a = annotations[static_cast<std::size_t>(i)];
    const auto assets = extract_assets(frames_root / a.sequence_id, a, config.asset_stride, g,
                                       first_variant[static_cast<std::size_t>(i)]);
    for (const auto& asset : assets) {
      save_png(asset.pixels, AssetLibrary::asset_path(out_dir, asset.code, asset.variant), config.png_compression);
    }
    const auto d = ++done;
    if (progress) progress(d, n);
  });

  const AssetLibrary lib = AssetLibrary::from_entries(out_dir, g, entries);
  lib.save(out_dir);

  ExtractSummary summary;
  summary.sequences = static_cast<int>(annotations.size());
  summary.classes = static_cast<int>(entries.size());
  for (const auto& [code, entry] : entries) summary.assets += entry.count;
  return summary;
}

namespace {

struct SceneOutcome {
  std::string entry;  // serialized manifest entry
  bool dummy = false;
  bool rendered = false;
  std::int64_t labels = 0;
};

json snapshot(const GeneratorConfig& config) {
  json j = config_to_json(config);
  j.erase("workers");  // scheduling only; outputs do not depend on it
  return j;
}

}  // namespace

GenerateSummary cmd_generate(const fs::path& assets_dir, const fs::path& backgrounds_dir, const fs::path& out_dir,
                             std::int64_t count, const GeneratorConfig& config, const ClassCatalog& catalog,
                             const ProgressFn& progress) {
  config.validate();
  if (count < 0) throw ConfigError("count must be non-negative");
  const AssetLibrary library = AssetLibrary::open(assets_dir);
  {
    std::vector<std::string> absent;
    for (const auto& c : catalog.cards())
      if (library.variant_count(c) == 0) absent.push_back(c.str());
    if (catalog.cards().empty()) absent.push_back("(catalog has no card classes)");
    if (!absent.empty()) {
      std::string msg = "asset library lacks classes:";
      for (const auto& a : absent) msg += " " + a;
      throw MissingClassAssets(msg);
    }
  }
  std::error_code ec;
  if (!fs::is_directory(backgrounds_dir, ec)) throw EmptyBackgrounds("no background directory " + backgrounds_dir.string());
  const BackgroundSet backgrounds = BackgroundSet::open(backgrounds_dir);
  const auto splits = split_dataset(count, config.train_fraction, config.seed);

  fs::create_directories(out_dir / "train");
  fs::create_directories(out_dir / "test");
  catalog.write_names_file(out_dir / "classes.names");

  const CardGeometry g = library.geometry();
  const BboxMode mode = config.bbox();
  std::vector<SceneOutcome> outcomes(static_cast<std::size_t>(count));
  std::atomic<std::int64_t> done{0};

  parallel_for(count, config.resolved_workers(), [&](std::int64_t i) {
    const SceneSpec spec = sample_scene(config, config.seed, i, library, backgrounds, catalog);
    const Split split = splits[static_cast<std::size_t>(i)];
    const std::string rel_image = std::string(to_string(split)) + "/" + scene_stem(i) + ".png";
    const std::string rel_label = std::string(to_string(split)) + "/" + scene_stem(i) + ".txt";
    const fs::path image_path = out_dir / rel_image;
    const fs::path label_path = out_dir / rel_label;

    SceneOutcome& outcome = outcomes[static_cast<std::size_t>(i)];
    std::error_code e;
    std::vector<VisibleRegion> regions;
    if (fs::exists(image_path, e) && fs::exists(label_path, e)) {
      regions = compute_visibility(spec.placements, g, spec.width, spec.height);
    } else {
      RenderedScene scene = render_scene(spec, library, backgrounds);
      regions = std::move(scene.regions);
      save_png(scene.image, image_path, config.png_compression);
      outcome.rendered = true;
    }
    const auto records =
        to_label_records(regions, spec.placements, spec.width, spec.height, catalog, config.min_visibility, mode);
    if (outcome.rendered) write_labels(records, label_path);

    json placements = json::array();
    for (const auto& r : regions) {
      const Placement& p = spec.placements[static_cast<std::size_t>(r.placement)];
      placements.push_back({{"class", p.code.str()},
                            {"variant", p.variant},
                            {"cx", p.cx},
                            {"cy", p.cy},
                            {"rotation", p.rotation},
                            {"scale", p.scale},
                            {"z", p.z},
                            {"visible_pixels", r.visible},
                            {"total_pixels", r.total},
                            {"visibility", r.fraction()},
                            {"labeled", r.visible > 0 && r.fraction() >= config.min_visibility}});
    }
    json entry = {{"index", i},
                  {"split", to_string(split)},
                  {"kind", to_string(spec.kind)},
                  {"background", spec.background_name},
                  {"image", rel_image},
                  {"label_file", rel_label},
                  {"placements", std::move(placements)}};
    if (spec.brightness != 1.0 || spec.contrast != 1.0) {
      entry["brightness"] = spec.brightness;
      entry["contrast"] = spec.contrast;
    }
    outcome.entry = entry.dump();
    outcome.dummy = spec.kind == SceneKind::Dummy;
    outcome.labels = static_cast<std::int64_t>(records.size());
    const auto d = ++done;
    if (progress) progress(d, count);
  });

  GenerateSummary summary;
  summary.scenes = count;
  for (auto s : splits) (s == Split::Train ? summary.train : summary.test) += 1;
  const json head = {{"format", 1},
                     {"seed", config.seed},
                     {"catalog_hash", hex64(catalog.hash())},
                     {"config", snapshot(config)},
                     {"splits", {{"train", summary.train}, {"test", summary.test}}}};
  std::string manifest = head.dump();
  manifest.pop_back();  // closing brace
  manifest += ",\"scenes\":[";
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    if (i) manifest += ',';
    manifest += outcomes[i].entry;
    summary.dummy += outcomes[i].dummy;
    summary.rendered += outcomes[i].rendered;
    summary.labels += outcomes[i].labels;
  }
  manifest += "]}\n";
  write_file_atomic(out_dir / "manifest.json", manifest);
  summary.manifest_hash = hex64(fnv1a64(manifest));
  return summary;
}

QcSummary cmd_qc(const fs::path& dataset_dir, const fs::path& out_dir, int sample_count, std::uint64_t seed) {
  QcSummary summary;
  summary.stats = validate_dataset(dataset_dir);

  struct Scene {
    std::string stem;
    std::string split;
  };
  std::vector<Scene> scenes;
  for (const char* split : {"train", "test"}) {
    std::error_code ec;
    const fs::path dir = dataset_dir / split;
    if (!fs::is_directory(dir, ec)) continue;
    for (const auto& entry : fs::directory_iterator(dir)) {
      const fs::path& p = entry.path();
      if (p.extension() != ".png") continue;
      fs::path label = p;
      label.replace_extension(".txt");
      if (fs::exists(label, ec)) scenes.push_back({p.stem().string(), split});
    }
  }
  std::sort(scenes.begin(), scenes.end(),
            [](const Scene& a, const Scene& b) { return std::tie(a.stem, a.split) < std::tie(b.stem, b.split); });

  const auto k = std::min<std::size_t>(static_cast<std::size_t>(std::max(sample_count, 0)), scenes.size());
  Rng rng(mix64(seed + kOverlayStream));
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(scenes.size() - i));
    std::swap(scenes[i], scenes[j]);
  }
  scenes.resize(k);
  std::sort(scenes.begin(), scenes.end(),
            [](const Scene& a, const Scene& b) { return std::tie(a.stem, a.split) < std::tie(b.stem, b.split); });

  const ClassCatalog catalog = ClassCatalog::load_or_standard(dataset_dir / "classes.names");
  fs::create_directories(out_dir / "overlays");
  for (const auto& s : scenes) {
    const fs::path base = dataset_dir / s.split / s.stem;
    try {
      const Overlay ov = render_overlay(fs::path(base).concat(".png"), fs::path(base).concat(".txt"), catalog);
      save_png(ov.image, out_dir / "overlays" / (s.stem + ".png"));
      ++summary.overlays;
    } catch (const MalformedLabel& e) {
      summary.stats.errors.push_back(s.split + "/" + s.stem + ".txt: overlay skipped: " + e.what());
    }
  }
  write_file_atomic(out_dir / "stats.json", summary.stats.to_json().dump(2) + "\n");
  return summary;
}

}  // namespace cardforge
