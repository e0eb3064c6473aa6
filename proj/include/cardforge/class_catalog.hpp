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

#include <compare>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace cardforge {

// Suit and rank enumerators are declared in catalog order.
enum class Suit : std::uint8_t { Clubs, Diamonds, Hearts, Spades };
enum class Rank : std::uint8_t { Ace, Two, Three, Four, Five, Six, Seven, Eight, Nine, Ten, Jack, Queen, King };

inline constexpr int kSuitCount = 4;
inline constexpr int kRankCount = 13;
inline constexpr int kCardCount = kSuitCount * kRankCount;

inline constexpr std::string_view kSuitChars = "CDHS";
inline constexpr std::string_view kRankChars = "A23456789TJQK";

// Two-character card class name: suit letter then rank letter ("HJ" is the
// jack of hearts). Ten is 'T'.
struct ClassCode {
  Suit suit = Suit::Clubs;
  Rank rank = Rank::Ace;

  std::string str() const;
  // Position in the built-in 52-card ordering.
  int ordinal() const { return static_cast<int>(suit) * kRankCount + static_cast<int>(rank); }
  static ClassCode from_ordinal(int ordinal);

  friend auto operator<=>(const ClassCode&, const ClassCode&) = default;
};

// Case-insensitive; throws InvalidClassCode.
ClassCode parse_class_code(std::string_view text);
std::optional<ClassCode> try_parse_class_code(std::string_view text);

char suit_char(Suit s);
char rank_char(Rank r);

// Ordered class names <-> contiguous label indices. The default catalog is
// the 52 cards, suits C,D,H,S and ranks A,2..9,T,J,Q,K within each suit.
// Names files may append non-card classes; they are carried through but
// never drawn by the card generator.
class ClassCatalog {
 public:
  static ClassCatalog standard();
  static ClassCatalog from_names(std::vector<std::string> names);
  static ClassCatalog from_names_text(std::string_view text);
  static ClassCatalog from_names_file(const std::filesystem::path& path);
  // Reads `path` when it exists, else returns standard().
  static ClassCatalog load_or_standard(const std::filesystem::path& path);

  int size() const { return static_cast<int>(names_.size()); }
  const std::string& name(int index) const { return names_.at(static_cast<std::size_t>(index)); }
  const std::vector<std::string>& names() const { return names_; }

  std::optional<int> find(std::string_view name) const;
  // Throws InvalidClassCode when the card is not part of this catalog.
  int index_of(ClassCode code) const;

  // Entries that parse as playing cards, in index order.
  const std::vector<ClassCode>& cards() const { return cards_; }

  // One name per line, LF terminated.
  std::string names_text() const;
  void write_names_file(const std::filesystem::path& path) const;

  // FNV-1a 64 over names_text().
  std::uint64_t hash() const;

  friend bool operator==(const ClassCatalog& a, const ClassCatalog& b) { return a.names_ == b.names_; }

 private:
  explicit ClassCatalog(std::vector<std::string> names);

  std::vector<std::string> names_;
  std::unordered_map<std::string, int> index_;
  std::vector<ClassCode> cards_;
};

// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t value);

}  // namespace cardforge
