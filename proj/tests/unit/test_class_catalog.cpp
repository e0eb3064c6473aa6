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

#include "cardforge/class_catalog.hpp"
#include "cardforge/error.hpp"

using namespace cardforge;

TEST_CASE("class codes parse suit then rank") {
  const ClassCode hj = parse_class_code("HJ");
  CHECK(hj.suit == Suit::Hearts);
  CHECK(hj.rank == Rank::Jack);
  const ClassCode sa = parse_class_code("SA");
  CHECK(sa.suit == Suit::Spades);
  CHECK(sa.rank == Rank::Ace);
  CHECK(parse_class_code("dt").str() == "DT");
  CHECK_THROWS_AS(parse_class_code("H1"), InvalidClassCode);
  CHECK_THROWS_AS(parse_class_code("XA"), InvalidClassCode);
  CHECK_THROWS_AS(parse_class_code("H"), InvalidClassCode);
  CHECK_THROWS_AS(parse_class_code("HJJ"), InvalidClassCode);
  CHECK_FALSE(try_parse_class_code("10").has_value());
}

TEST_CASE("standard catalog ordering") {
  const ClassCatalog cat = ClassCatalog::standard();
  REQUIRE(cat.size() == 52);
  CHECK(cat.index_of(parse_class_code("CA")) == 0);
  CHECK(cat.index_of(parse_class_code("C2")) == 1);
  CHECK(cat.index_of(parse_class_code("CK")) == 12);
  CHECK(cat.index_of(parse_class_code("DA")) == 13);
  CHECK(cat.index_of(parse_class_code("SK")) == 51);
  CHECK(cat.name(22) == "DT");
}

TEST_CASE("every ordinal round-trips") {
  const ClassCatalog cat = ClassCatalog::standard();
  for (int i = 0; i < kCardCount; ++i) {
    const ClassCode c = ClassCode::from_ordinal(i);
    CHECK(c.ordinal() == i);
    CHECK(parse_class_code(c.str()) == c);
    CHECK(cat.index_of(c) == i);
    CHECK(cat.find(cat.name(i)) == i);
  }
}

TEST_CASE("names text round-trips including extra classes") {
  auto names = ClassCatalog::standard().names();
  names.push_back("joker");
  const ClassCatalog cat = ClassCatalog::from_names(names);
  CHECK(cat.size() == 53);
  CHECK(cat.cards().size() == 52);
  CHECK(ClassCatalog::from_names_text(cat.names_text()) == cat);
  CHECK(cat.names_text().back() == '\n');

  const auto path = std::filesystem::temp_directory_path() / "cardforge_unit_classes.names";
  cat.write_names_file(path);
  const ClassCatalog back = ClassCatalog::from_names_file(path);
  CHECK(back == cat);
  CHECK(back.hash() == cat.hash());
  std::filesystem::remove(path);
}

TEST_CASE("catalog subset rejects unknown cards") {
  const ClassCatalog cat = ClassCatalog::from_names({"HA", "SK"});
  CHECK(cat.index_of(parse_class_code("SK")) == 1);
  CHECK_THROWS_AS(cat.index_of(parse_class_code("CA")), InvalidClassCode);
  CHECK_FALSE(cat.find("CA").has_value());
}

TEST_CASE("fnv1a64 reference values") {
  // Published FNV-1a 64 test vectors.
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(fnv1a64("foobar") == 0x85944171f73967e8ULL);
  CHECK(hex64(0xabcULL) == "0000000000000abc");
}
