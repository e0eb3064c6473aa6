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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cardforge/cli.hpp"
#include "cardforge/image.hpp"
#include "synthetic.hpp"

using namespace cardforge;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "cardforge");
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

json last_line(const std::string& out) {
  std::istringstream in(out);
  std::string line, last;
  while (std::getline(in, line))
    if (!line.empty()) last = line;
  return json::parse(last);
}

struct Workspace {
  fs::path root;
  synthetic::InputTree inputs;
  Workspace() : root(fs::temp_directory_path() / "cardforge_unit_cli") {
    fs::remove_all(root);
    fs::create_directories(root);
    inputs = synthetic::write_input_tree(root);
  }
  ~Workspace() { fs::remove_all(root); }
  std::string path(const std::string& name) const { return (root / name).string(); }
};

Workspace& workspace() {
  static Workspace ws;
  return ws;
}

}  // namespace

TEST_CASE("usage errors exit with 2") {
  CHECK(cli({}).code == kExitUsage);
  CHECK(cli({"bogus"}).code == kExitUsage);
  CHECK(cli({"generate", "--assets", "a"}).code == kExitUsage);
  CHECK(cli({"qc"}).code == kExitUsage);
  const Workspace& ws = workspace();
  CHECK(cli({"generate", "--assets", ws.inputs.assets.string(), "--backgrounds", ws.inputs.backgrounds.string(), "--out",
             ws.path("bad"), "--count", "1", "--min-visibility", "1.5"})
            .code == kExitUsage);
  CHECK(cli({"generate", "--assets", ws.inputs.assets.string(), "--backgrounds", ws.inputs.backgrounds.string(), "--out",
             ws.path("bad"), "--count", "1", "--seed", "abc"})
            .code == kExitUsage);
  CHECK(cli({"--help"}).code == kExitOk);
}

TEST_CASE("generate, stats and qc round trip") {
  const Workspace& ws = workspace();
  const Run gen = cli({"generate", "--assets", ws.inputs.assets.string(), "--backgrounds",
                       ws.inputs.backgrounds.string(), "--out", ws.path("ds"), "--count", "12", "--seed", "5"});
  REQUIRE(gen.code == kExitOk);
  const json g = last_line(gen.out);
  CHECK(g["scenes"] == 12);
  CHECK(g["train"].get<int>() + g["test"].get<int>() == 12);
  CHECK(g["train"] == 10);

  const Run st = cli({"stats", "--dataset", ws.path("ds")});
  CHECK(st.code == kExitOk);
  CHECK(last_line(st.out)["errors"].empty());

  const Run qc = cli({"qc", "--dataset", ws.path("ds"), "--out", ws.path("qc"), "--sample", "10"});
  CHECK(qc.code == kExitOk);
  CHECK(last_line(qc.out)["overlays"] == 10);
  int overlays = 0;
  for (const auto& e : fs::directory_iterator(ws.path("qc") + "/overlays")) overlays += e.path().extension() == ".png";
  CHECK(overlays == 10);
  CHECK(fs::exists(ws.path("qc") + "/stats.json"));
}

TEST_CASE("count zero writes an empty dataset") {
  const Workspace& ws = workspace();
  const Run gen = cli({"generate", "--assets", ws.inputs.assets.string(), "--backgrounds",
                       ws.inputs.backgrounds.string(), "--out", ws.path("zero"), "--count", "0"});
  REQUIRE(gen.code == kExitOk);
  CHECK(last_line(gen.out)["scenes"] == 0);
  CHECK(fs::exists(ws.path("zero") + "/classes.names"));
  CHECK(cli({"stats", "--dataset", ws.path("zero")}).code == kExitOk);
}

TEST_CASE("corrupted label fails qc") {
  const Workspace& ws = workspace();
  REQUIRE(cli({"generate", "--assets", ws.inputs.assets.string(), "--backgrounds", ws.inputs.backgrounds.string(),
               "--out", ws.path("corrupt"), "--count", "3"})
              .code == kExitOk);
  fs::path label;
  for (const auto& e : fs::directory_iterator(ws.path("corrupt") + "/train"))
    if (e.path().extension() == ".txt") label = e.path();
  REQUIRE(!label.empty());
  std::ofstream(label, std::ios::app) << "52 0.5 0.5 0.1 0.1\n";
  const Run qc = cli({"qc", "--dataset", ws.path("corrupt"), "--out", ws.path("qc_corrupt")});
  CHECK(qc.code == kExitContentError);
  CHECK(qc.err.find("error") != std::string::npos);
  const json stats = json::parse(read_text_file(ws.path("qc_corrupt") + "/stats.json"));
  REQUIRE_FALSE(stats["errors"].empty());
  CHECK(stats["errors"][0].get<std::string>().find(label.filename().string()) != std::string::npos);
  CHECK(cli({"stats", "--dataset", ws.path("corrupt")}).code == kExitContentError);
}

TEST_CASE("missing inputs are content errors") {
  const Workspace& ws = workspace();
  CHECK(cli({"generate", "--assets", ws.path("nope"), "--backgrounds", ws.inputs.backgrounds.string(), "--out",
             ws.path("x"), "--count", "1"})
            .code == kExitContentError);
  fs::create_directories(ws.root / "no_textures");
  CHECK(cli({"generate", "--assets", ws.inputs.assets.string(), "--backgrounds", ws.path("no_textures"), "--out",
             ws.path("x"), "--count", "1"})
            .code == kExitContentError);
}

TEST_CASE("extract names a missing sequence") {
  const Workspace& ws = workspace();
  const fs::path frames = ws.root / "frames";
  const auto quad = synthetic::default_quad(160, 120, 0);
  const std::string ann = synthetic::write_sequences(frames, {{"seq_HA", parse_class_code("HA"), quad}}, 160, 120, 3);
  write_file_atomic(ws.root / "ann.txt", ann + "seq_gone;SA;10,10;60,10;60,90;10,90\n");
  const Run bad = cli({"extract", "--frames", frames.string(), "--annotations", ws.path("ann.txt"), "--out",
                       ws.path("lib_bad")});
  CHECK(bad.code != kExitOk);
  CHECK(bad.err.find("seq_gone") != std::string::npos);

  write_file_atomic(ws.root / "ann_ok.txt", ann);
  const Run ok = cli({"extract", "--frames", frames.string(), "--annotations", ws.path("ann_ok.txt"), "--out",
                      ws.path("lib_ok"), "--asset-stride", "1"});
  REQUIRE(ok.code == kExitOk);
  CHECK(last_line(ok.out)["assets"] == 3);
  CHECK(fs::exists(ws.path("lib_ok") + "/HA/2.png"));
}

TEST_CASE("seed precedence: flag over file over environment") {
  const Workspace& ws = workspace();
  auto seed_of = [&](const std::string& out) {
    return json::parse(read_text_file(fs::path(out) / "manifest.json"))["seed"].get<std::uint64_t>();
  };
  const std::vector<std::string> base = {"generate", "--assets", ws.inputs.assets.string(), "--backgrounds",
                                         ws.inputs.backgrounds.string(), "--count", "1", "--out"};
  ::setenv("CARDFORGE_SEED", "77", 1);
  auto args = base;
  args.push_back(ws.path("env"));
  REQUIRE(cli(args).code == kExitOk);
  CHECK(seed_of(ws.path("env")) == 77);

  write_file_atomic(ws.root / "cfg.json", std::string(R"({"seed": 88})"));
  args = base;
  args.insert(args.end(), {ws.path("file"), "--config", ws.path("cfg.json")});
  REQUIRE(cli(args).code == kExitOk);
  CHECK(seed_of(ws.path("file")) == 88);

  args = base;
  args.insert(args.end(), {ws.path("flag"), "--config", ws.path("cfg.json"), "--seed", "99"});
  REQUIRE(cli(args).code == kExitOk);
  CHECK(seed_of(ws.path("flag")) == 99);
  ::unsetenv("CARDFORGE_SEED");

  args = base;
  args.push_back(ws.path("none"));
  REQUIRE(cli(args).code == kExitOk);
  CHECK(seed_of(ws.path("none")) == 0);
}
