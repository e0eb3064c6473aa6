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

// Writes a self-contained demo input set: one synthetic card video per
// class, the matching corner annotations, and background textures.

#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "cardforge/error.hpp"
#include "cardforge/image.hpp"
#include "synthetic.hpp"

int main(int argc, char** argv) {
  namespace fs = std::filesystem;
  using namespace cardforge;

  CLI::App app{"cardforge_synth: synthetic card videos and textures for trying the pipeline"};
  std::string out;
  int frames = 30, frame_w = 320, frame_h = 240, textures = 16;
  app.add_option("--out", out, "output directory")->required();
  app.add_option("--frames", frames, "frames per card video")->check(CLI::PositiveNumber);
  app.add_option("--frame-width", frame_w, "frame width")->check(CLI::Range(64, 4096));
  app.add_option("--frame-height", frame_h, "frame height")->check(CLI::Range(64, 4096));
  app.add_option("--textures", textures, "background textures")->check(CLI::PositiveNumber);
  CLI11_PARSE(app, argc, argv);

  try {
    std::vector<synthetic::SequenceSpec> seqs;
    for (int i = 0; i < kCardCount; ++i) {
      const ClassCode code = ClassCode::from_ordinal(i);
      seqs.push_back({"seq_" + code.str(), code, synthetic::default_quad(frame_w, frame_h, i)});
    }
    const fs::path root(out);
    const std::string ann = synthetic::write_sequences(root / "frames", seqs, frame_w, frame_h, frames);
    write_file_atomic(root / "annotations.txt", ann);
    synthetic::write_textures(root / "backgrounds", textures, 320, 320, 7);
    std::cout << "{\"frames\":\"" << (root / "frames").string() << "\",\"annotations\":\""
              << (root / "annotations.txt").string() << "\",\"backgrounds\":\"" << (root / "backgrounds").string()
              << "\"}\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
