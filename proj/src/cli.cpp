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

#include "cardforge/cli.hpp"

#include <charconv>
#include <chrono>
#include <cstdlib>
#include <iostream>
#include <mutex>
#include <optional>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "cardforge/error.hpp"
#include "cardforge/image.hpp"
#include "cardforge/pipeline.hpp"

namespace cardforge {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// One optional string per config field, filled by `--kebab-name` flags.
class ConfigFlags {
 public:
  explicit ConfigFlags(CLI::App& app) : values_(config_fields().size()) {
    app.add_option("--config", config_file_, "JSON config file (flags override its keys)");
    const auto& fields = config_fields();
    for (std::size_t i = 0; i < fields.size(); ++i) {
      app.add_option("--" + flag_name(fields[i].name), values_[i], fields[i].help);
    }
  }

  // default < CARDFORGE_SEED (seed only) < config file < flag
  GeneratorConfig resolve() const {
    GeneratorConfig cfg;
    json file = json::object();
    if (config_file_) {
      try {
        file = json::parse(read_text_file(*config_file_));
      } catch (const json::exception& e) {
        throw ConfigError("cannot parse " + *config_file_ + ": " + e.what());
      }
    }
    if (const char* env = std::getenv("CARDFORGE_SEED"); env != nullptr && !file.contains("seed")) {
      cfg.seed = parse_value<std::uint64_t>("CARDFORGE_SEED", env);
    }
    cfg = config_from_json(file, cfg);
    const auto& fields = config_fields();
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (!values_[i]) continue;
      const std::string& raw = *values_[i];
      std::visit(
          [&](auto member) {
            using T = typename field_type<decltype(member)>::type;
            if constexpr (std::is_same_v<T, std::string>) {
              cfg.*member = raw;
            } else {
              cfg.*member = parse_value<T>(fields[i].name, raw);
            }
          },
          fields[i].member);
    }
    cfg.validate();
    return cfg;
  }

 private:
  template <typename T>
  static T parse_value(const std::string& key, const std::string& raw) {
    T v{};
    const auto [ptr, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), v);
    if (raw.empty() || ec != std::errc() || ptr != raw.data() + raw.size()) {
      throw ConfigError(key + ": cannot parse \"" + raw + "\"");
    }
    return v;
  }

  std::optional<std::string> config_file_;
  std::vector<std::optional<std::string>> values_;
};

class ProgressLine {
 public:
  ProgressLine(std::ostream& err, std::string label) : err_(err), label_(std::move(label)) {}

  void operator()(std::int64_t done, std::int64_t total) {
    const std::int64_t step = std::max<std::int64_t>(1, total / 100);
    if (done % step != 0 && done != total) return;
    std::lock_guard lock(mutex_);
    err_ << label_ << ": " << done << "/" << total << "\n";
  }

 private:
  std::ostream& err_;
  std::string label_;
  std::mutex mutex_;
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"cardforge: synthetic playing-card detection datasets"};
  app.require_subcommand(1);

  auto* extract = app.add_subcommand("extract", "rectify annotated card videos into an asset library");
  std::string frames_root, annotations, assets_out;
  extract->add_option("--frames", frames_root, "directory holding one frame directory per sequence")->required();
  extract->add_option("--annotations", annotations, "corner annotation file")->required();
  extract->add_option("--out", assets_out, "asset library directory")->required();
  ConfigFlags extract_flags(*extract);

  auto* generate = app.add_subcommand("generate", "render a labeled dataset");
  std::string assets_dir, backgrounds_dir, dataset_out, classes_file;
  std::int64_t count = 0;
  generate->add_option("--assets", assets_dir, "asset library directory")->required();
  generate->add_option("--backgrounds", backgrounds_dir, "background texture directory")->required();
  generate->add_option("--out", dataset_out, "dataset directory")->required();
  generate->add_option("--count", count, "number of scenes")->required()->check(CLI::NonNegativeNumber);
  generate->add_option("--classes", classes_file, "names file defining the class indices");
  ConfigFlags generate_flags(*generate);

  auto* qc = app.add_subcommand("qc", "validate a dataset and render overlays");
  std::string qc_dataset, qc_out = "qc";
  int sample = 10;
  std::optional<std::uint64_t> qc_seed;
  qc->add_option("--dataset", qc_dataset, "dataset directory")->required();
  qc->add_option("--out", qc_out, "report directory (default ./qc)");
  qc->add_option("--sample", sample, "number of overlays")->check(CLI::NonNegativeNumber);
  qc->add_option("--seed", qc_seed, "overlay sampling seed (default: the manifest seed)");

  auto* stats = app.add_subcommand("stats", "print dataset statistics as JSON");
  std::string stats_dataset;
  stats->add_option("--dataset", stats_dataset, "dataset directory")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*extract) {
      const GeneratorConfig cfg = extract_flags.resolve();
      ProgressLine progress(err, "extract");
      const auto s = cmd_extract(frames_root, annotations, assets_out, cfg, std::ref(progress));
      out << json{{"command", "extract"},
                  {"sequences", s.sequences},
                  {"classes", s.classes},
                  {"assets", s.assets},
                  {"library", (fs::path(assets_out) / "library.json").string()}}
                 .dump()
          << "\n";
      return kExitOk;
    }
    if (*generate) {
      const GeneratorConfig cfg = generate_flags.resolve();
      const ClassCatalog catalog =
          classes_file.empty() ? ClassCatalog::standard() : ClassCatalog::from_names_file(classes_file);
      ProgressLine progress(err, "generate");
      const auto t0 = std::chrono::steady_clock::now();
      const auto s = cmd_generate(assets_dir, backgrounds_dir, dataset_out, count, cfg, catalog, std::ref(progress));
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      out << json{{"command", "generate"}, {"scenes", s.scenes}, {"train", s.train},  {"test", s.test},
                  {"dummy", s.dummy},      {"rendered", s.rendered}, {"labels", s.labels},
                  {"manifest", (fs::path(dataset_out) / "manifest.json").string()},
                  {"manifest_hash", s.manifest_hash}, {"seconds", secs}}
                 .dump()
          << "\n";
      return kExitOk;
    }
    if (*qc) {
      std::uint64_t seed = 0;
      if (qc_seed) {
        seed = *qc_seed;
      } else {
        std::error_code ec;
        const fs::path manifest = fs::path(qc_dataset) / "manifest.json";
        if (fs::exists(manifest, ec)) {
          try {
            seed = json::parse(read_text_file(manifest)).value("seed", std::uint64_t{0});
          } catch (const json::exception&) {
          }
        }
      }
      const auto s = cmd_qc(qc_dataset, qc_out, sample, seed);
      for (const auto& e : s.stats.errors) err << "error: " << e << "\n";
      for (const auto& w : s.stats.warnings) err << "warning: " << w << "\n";
      out << json{{"command", "qc"},
                  {"ok", s.stats.ok()},
                  {"errors", s.stats.errors.size()},
                  {"warnings", s.stats.warnings.size()},
                  {"overlays", s.overlays},
                  {"stats", (fs::path(qc_out) / "stats.json").string()}}
                 .dump()
          << "\n";
      return s.stats.ok() ? kExitOk : kExitContentError;
    }
    if (*stats) {
      const DatasetStats s = validate_dataset(stats_dataset);
      out << s.to_json().dump() << "\n";
      return s.ok() ? kExitOk : kExitContentError;
    }
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitContentError;
  }
  return kExitUsage;
}

}  // namespace cardforge
