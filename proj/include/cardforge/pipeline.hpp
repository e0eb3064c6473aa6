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
#include <functional>
#include <string>

#include "cardforge/class_catalog.hpp"
#include "cardforge/config.hpp"
#include "cardforge/qc_report.hpp"

namespace cardforge {

// Called from worker threads with the number of finished items.
using ProgressFn = std::function<void(std::int64_t done, std::int64_t total)>;

struct ExtractSummary {
  int sequences = 0;
  int classes = 0;
  std::int64_t assets = 0;
};

// Rectifies every annotated sequence `frames_root/<sequence_id>/` into
// `out_dir/<code>/<variant>.png` and writes `out_dir/library.json`.
// Sequences of the same class pool their variants in annotation order.
// Class directories being written are cleared first.
ExtractSummary cmd_extract(const std::filesystem::path& frames_root, const std::filesystem::path& annotations,
                           const std::filesystem::path& out_dir, const GeneratorConfig& config,
                           const ProgressFn& progress = {});

struct GenerateSummary {
  std::int64_t scenes = 0;
  std::int64_t train = 0;
  std::int64_t test = 0;
  std::int64_t dummy = 0;
  std::int64_t rendered = 0;  // scenes written by this run (others were already complete)
  std::int64_t labels = 0;
  std::string manifest_hash;  // FNV-1a 64 of manifest.json
};

// Renders `count` scenes into `out_dir/{train,test}/<index>.{png,txt}` plus
// classes.names and manifest.json. Scenes whose image and label both exist
// are not re-rendered. Throws MissingClassAssets or EmptyBackgrounds.
GenerateSummary cmd_generate(const std::filesystem::path& assets_dir, const std::filesystem::path& backgrounds_dir,
                             const std::filesystem::path& out_dir, std::int64_t count, const GeneratorConfig& config,
                             const ClassCatalog& catalog = ClassCatalog::standard(),
                             const ProgressFn& progress = {});

struct QcSummary {
  DatasetStats stats;
  int overlays = 0;
};

// validate_dataset plus `out_dir/stats.json` and overlays for a seeded
// sample of scenes in `out_dir/overlays/<index>.png`. Never writes inside
// the dataset.
QcSummary cmd_qc(const std::filesystem::path& dataset_dir, const std::filesystem::path& out_dir, int sample_count,
                 std::uint64_t seed);

}  // namespace cardforge
