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

#include "cardforge/class_catalog.hpp"

#include <cctype>
#include <cstdio>

#include "cardforge/error.hpp"
#include "cardforge/image.hpp"

namespace cardforge {

std::string ClassCode::str() const { return {suit_char(suit), rank_char(rank)}; }

ClassCode ClassCode::from_ordinal(int ordinal) {
  if (ordinal < 0 || ordinal >= kCardCount) throw InvalidClassCode("card ordinal out of range");
  return {static_cast<Suit>(ordinal / kRankCount), static_cast<Rank>(ordinal % kRankCount)};
}

char suit_char(Suit s) { return kSuitChars[static_cast<std::size_t>(s)]; }
char rank_char(Rank r) { return kRankChars[static_cast<std::size_t>(r)]; }

std::optional<ClassCode> try_parse_class_code(std::string_view text) {
  if (text.size() != 2) return std::nullopt;
  const char s = static_cast<char>(std::toupper(static_cast<unsigned char>(text[0])));
  const char r = static_cast<char>(std::toupper(static_cast<unsigned char>(text[1])));
  const auto si = kSuitChars.find(s);
  const auto ri = kRankChars.find(r);
  if (si == std::string_view::npos || ri == std::string_view::npos) return std::nullopt;
  return ClassCode{static_cast<Suit>(si), static_cast<Rank>(ri)};
}

ClassCode parse_class_code(std::string_view text) {
  if (auto code = try_parse_class_code(text)) return *code;
  throw InvalidClassCode("invalid class code: \"" + std::string(text) + "\"");
}

ClassCatalog::ClassCatalog(std::vector<std::string> names) : names_(std::move(names)) {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i].empty()) throw InvalidClassCode("empty class name at index " + std::to_string(i));
    if (!index_.emplace(names_[i], static_cast<int>(i)).second) {
      throw InvalidClassCode("duplicate class name: " + names_[i]);
    }
    if (auto code = try_parse_class_code(names_[i]); code && code->str() == names_[i]) cards_.push_back(*code);
  }
}

ClassCatalog ClassCatalog::standard() {
  std::vector<std::string> names;
  names.reserve(kCardCount);
  for (int i = 0; i < kCardCount; ++i) names.push_back(ClassCode::from_ordinal(i).str());
  return ClassCatalog(std::move(names));
}

ClassCatalog ClassCatalog::from_names(std::vector<std::string> names) { return ClassCatalog(std::move(names)); }

ClassCatalog ClassCatalog::from_names_text(std::string_view text) {
  std::vector<std::string> names;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    names.emplace_back(line);
    pos = end + 1;
  }
  while (!names.empty() && names.back().empty()) names.pop_back();
  return ClassCatalog(std::move(names));
}

ClassCatalog ClassCatalog::from_names_file(const std::filesystem::path& path) {
  return from_names_text(read_text_file(path));
}

ClassCatalog ClassCatalog::load_or_standard(const std::filesystem::path& path) {
  std::error_code ec;
  if (std::filesystem::exists(path, ec)) return from_names_file(path);
  return standard();
}

std::optional<int> ClassCatalog::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int ClassCatalog::index_of(ClassCode code) const {
  if (auto i = find(code.str())) return *i;
  throw InvalidClassCode("class not in catalog: " + code.str());
}

std::string ClassCatalog::names_text() const {
  std::string out;
  for (const auto& n : names_) {
    out += n;
    out += '\n';
  }
  return out;
}

void ClassCatalog::write_names_file(const std::filesystem::path& path) const {
  write_file_atomic(path, names_text());
}

std::uint64_t ClassCatalog::hash() const { return fnv1a64(names_text()); }

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(value));
  return buf;
}

}  // namespace cardforge
