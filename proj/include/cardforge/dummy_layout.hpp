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

#include <string_view>
#include <vector>

#include "cardforge/class_catalog.hpp"
#include "cardforge/config.hpp"
#include "cardforge/occlusion.hpp"
#include "cardforge/rng.hpp"

namespace cardforge {

inline constexpr int kHandSize = 13;

// A bridge hand laid out as a dummy: cards grouped by suit in column order,
// ranks descending (ace high) within each suit.
struct DummyHand {
  std::vector<ClassCode> cards;
  std::vector<Suit> suit_order;  // suits present, left to right

  std::vector<std::vector<ClassCode>> columns() const;
};

// Ace-high strength used to order a column: A > K > Q > ... > 2.
int rank_strength(Rank r);

// Sorts `cards` into dummy order. Throws InvalidClassCode unless there are
// exactly 13 distinct cards.
DummyHand make_dummy_hand(std::vector<ClassCode> cards, std::string_view suit_order = "SHDC");

// 13 cards uniformly without replacement from the 52-card deck.
DummyHand sample_dummy_hand(Rng& rng, std::string_view suit_order = "SHDC");

// Overlapping suit columns. Column c sits c * column_pitch card widths to
// the right of the first; card k of a column sits k * overlap_offset card
// heights below the first and is drawn over it. The block gets one shared
// rotation, each card a small extra one. If some card would fall below
// min_visibility the card jitter is redrawn (up to max_attempts), then
// dropped, then the block jitter too. Placements carry variant 0 and z in
// column-major order. Long suits shrink the block until it fits.
std::vector<Placement> layout_dummy(const DummyHand& hand, const GeneratorConfig& config, Rng& rng,
                                    const CardGeometry& g, int canvas_w, int canvas_h);

}  // namespace cardforge
