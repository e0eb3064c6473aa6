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

#include "cardforge/dummy_layout.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <set>

#include "cardforge/error.hpp"

namespace cardforge {

int rank_strength(Rank r) { return r == Rank::Ace ? 14 : static_cast<int>(r) + 1; }

std::vector<std::vector<ClassCode>> DummyHand::columns() const {
  std::vector<std::vector<ClassCode>> cols;
  for (Suit s : suit_order) {
    auto& col = cols.emplace_back();
    for (const auto& c : cards)
      if (c.suit == s) col.push_back(c);
  }
  return cols;
}

DummyHand make_dummy_hand(std::vector<ClassCode> cards, std::string_view suit_order) {
  if (cards.size() != kHandSize) throw InvalidClassCode("a dummy hand has exactly 13 cards");
  if (std::set<ClassCode>(cards.begin(), cards.end()).size() != cards.size()) {
    throw InvalidClassCode("dummy hand contains a repeated card");
  }
  std::array<int, kSuitCount> column_of{};
  column_of.fill(-1);
  for (std::size_t i = 0; i < suit_order.size(); ++i) {
    const auto s = kSuitChars.find(suit_order[i]);
    if (s == std::string_view::npos) throw InvalidClassCode("bad suit in order: " + std::string(suit_order));
    column_of[s] = static_cast<int>(i);
  }
  for (int s = 0; s < kSuitCount; ++s)
    if (column_of[static_cast<std::size_t>(s)] < 0) throw InvalidClassCode("suit order must list all four suits");

  std::sort(cards.begin(), cards.end(), [&](const ClassCode& a, const ClassCode& b) {
    const int ca = column_of[static_cast<std::size_t>(a.suit)];
    const int cb = column_of[static_cast<std::size_t>(b.suit)];
    if (ca != cb) return ca < cb;
    return rank_strength(a.rank) > rank_strength(b.rank);
  });
  DummyHand hand;
  hand.cards = std::move(cards);
  for (char ch : suit_order) {
    const auto s = static_cast<Suit>(kSuitChars.find(ch));
    if (std::any_of(hand.cards.begin(), hand.cards.end(), [&](const ClassCode& c) { return c.suit == s; })) {
      hand.suit_order.push_back(s);
    }
  }
  return hand;
}

DummyHand sample_dummy_hand(Rng& rng, std::string_view suit_order) {
  std::array<int, kCardCount> deck{};
  for (int i = 0; i < kCardCount; ++i) deck[static_cast<std::size_t>(i)] = i;
  std::vector<ClassCode> cards;
  for (int i = 0; i < kHandSize; ++i) {
    const auto j = static_cast<std::size_t>(i) + rng.below(static_cast<std::uint64_t>(kCardCount - i));
    std::swap(deck[static_cast<std::size_t>(i)], deck[j]);
    cards.push_back(ClassCode::from_ordinal(deck[static_cast<std::size_t>(i)]));
  }
  return make_dummy_hand(std::move(cards), suit_order);
}

namespace {

struct Slot {
  ClassCode code;
  double dx, dy;  // offset from block center before rotation, in pixels at the given scale
};

// Card offsets relative to the block center, for card scale `s`.
std::vector<Slot> block_slots(const std::vector<std::vector<ClassCode>>& columns, const GeneratorConfig& cfg,
                              const CardGeometry& g, double s) {
  const double card_w = g.width * s;
  const double card_h = g.height * s;
  const double pitch = cfg.column_pitch * card_w;
  const double offset = cfg.overlap_offset * card_h;
  std::size_t longest = 0;
  for (const auto& c : columns) longest = std::max(longest, c.size());
  const double block_w = (static_cast<double>(columns.size()) - 1.0) * pitch + card_w;
  const double block_h = (static_cast<double>(longest) - 1.0) * offset + card_h;
  std::vector<Slot> slots;
  for (std::size_t c = 0; c < columns.size(); ++c) {
    for (std::size_t k = 0; k < columns[c].size(); ++k) {
      slots.push_back({columns[c][k], static_cast<double>(c) * pitch + card_w / 2.0 - block_w / 2.0,
                       static_cast<double>(k) * offset + card_h / 2.0 - block_h / 2.0});
    }
  }
  return slots;
}

struct Arrangement {
  std::vector<Placement> cards;  // centered on the origin
  double x_min, y_min, x_max, y_max;
};

Arrangement arrange(const std::vector<Slot>& slots, const CardGeometry& g, double s, double block_rot,
                    const std::vector<double>& jitter) {
  const CosSin cs = cos_sin_deg(block_rot);
  Arrangement a{{}, std::numeric_limits<double>::max(), std::numeric_limits<double>::max(),
                std::numeric_limits<double>::lowest(), std::numeric_limits<double>::lowest()};
  for (std::size_t i = 0; i < slots.size(); ++i) {
    Placement p;
    p.code = slots[i].code;
    p.cx = cs.cos * slots[i].dx - cs.sin * slots[i].dy;
    p.cy = cs.sin * slots[i].dx + cs.cos * slots[i].dy;
    p.rotation = normalize_degrees(block_rot + jitter[i]);
    p.scale = s;
    p.z = static_cast<int>(i);
    const HalfExtents e = rotated_half_extents(g.width * s, g.height * s, p.rotation);
    a.x_min = std::min(a.x_min, p.cx - e.x);
    a.x_max = std::max(a.x_max, p.cx + e.x);
    a.y_min = std::min(a.y_min, p.cy - e.y);
    a.y_max = std::max(a.y_max, p.cy + e.y);
    a.cards.push_back(p);
  }
  return a;
}

bool all_visible(const std::vector<Placement>& cards, const CardGeometry& g, int w, int h, double min_visibility) {
  for (const auto& r : compute_visibility(cards, g, w, h)) {
    if (r.total == 0 || r.fraction() < min_visibility) return false;
  }
  return true;
}

}  // namespace

std::vector<Placement> layout_dummy(const DummyHand& hand, const GeneratorConfig& cfg, Rng& rng,
                                    const CardGeometry& g, int canvas_w, int canvas_h) {
  const double four_col_w = (3.0 * cfg.column_pitch + 1.0) * g.width * cfg.dummy_scale_min;
  if (four_col_w > canvas_w || g.height * cfg.dummy_scale_min > canvas_h) {
    throw CanvasTooSmall("a " + std::to_string(canvas_w) + "x" + std::to_string(canvas_h) +
                         " canvas cannot hold four dummy columns at scale " + std::to_string(cfg.dummy_scale_min));
  }
  const auto columns = hand.columns();
  const double base_scale = rng.uniform(cfg.dummy_scale_min, cfg.dummy_scale_max);
  const double block_rot = rng.uniform(-cfg.block_jitter, cfg.block_jitter);
  const std::size_t n = hand.cards.size();

  auto attempt = [&](double rot, const std::vector<double>& jitter) {
    double s = base_scale;
    Arrangement a = arrange(block_slots(columns, cfg, g, s), g, s, rot, jitter);
    // Every offset scales linearly with s, so one correction suffices; the
    // loop only absorbs rounding.
    for (int i = 0; i < 8; ++i) {
      const double fx = canvas_w / (a.x_max - a.x_min);
      const double fy = canvas_h / (a.y_max - a.y_min);
      const double f = std::min(fx, fy);
      if (f >= 1.0) break;
      s *= f * (1.0 - 1e-9);
      a = arrange(block_slots(columns, cfg, g, s), g, s, rot, jitter);
    }
    const double bx = rng.uniform(-a.x_min, canvas_w - a.x_max);
    const double by = rng.uniform(-a.y_min, canvas_h - a.y_max);
    for (auto& p : a.cards) {
      p.cx += bx;
      p.cy += by;
    }
    return a.cards;
  };

  std::vector<double> jitter(n, 0.0);
  for (int tries = 0; tries < cfg.max_attempts; ++tries) {
    for (auto& j : jitter) j = rng.uniform(-cfg.card_jitter, cfg.card_jitter);
    auto cards = attempt(block_rot, jitter);
    if (all_visible(cards, g, canvas_w, canvas_h, cfg.min_visibility)) return cards;
  }
  std::fill(jitter.begin(), jitter.end(), 0.0);
  auto cards = attempt(block_rot, jitter);
  if (all_visible(cards, g, canvas_w, canvas_h, cfg.min_visibility)) return cards;
  return attempt(0.0, jitter);
}

}  // namespace cardforge
