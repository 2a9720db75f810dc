// Copyright 2026 The mcrank Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <array>
#include <set>
#include <string>

#include <fmt/format.h>

#include "mcrank/benchgen.hpp"
#include "mcrank/error.hpp"
#include "mcrank/rng.hpp"

namespace mcrank {

namespace {

constexpr std::array<std::string_view, 24> kSyllables{
    "ka", "lo", "mi", "ren", "tu", "sa", "vor", "el", "dan", "qui", "ba", "zet",
    "or", "pha", "lin", "mar", "ost", "ye", "gra", "nu", "tor", "shi", "vel", "ab"};
constexpr std::array<std::string_view, 6> kContinents{
    "Africa", "Asia", "Europe", "North America", "South America", "Oceania"};
constexpr std::array<std::string_view, 8> kCountries{
    "Kenya", "Japan", "Brazil", "Canada", "France", "India", "Peru", "Norway"};
constexpr std::array<std::string_view, 5> kTypes{"fruit", "tool", "vehicle", "instrument", "animal"};
constexpr std::array<std::string_view, 6> kColors{"red", "blue", "green", "yellow", "black", "white"};
constexpr std::array<std::string_view, 6> kGenres{"jazz", "rock", "folk", "drama", "comedy", "thriller"};
constexpr std::array<std::string_view, 5> kCategories{"sports", "science", "history", "music", "food"};
constexpr std::array<std::string_view, 8> kFiller{
    "Reviewers described the overall experience as steady and unremarkable.",
    "Several readers mentioned that the packaging arrived slightly dented.",
    "The archive entry was updated after a routine audit of older records.",
    "Local coverage focused mostly on the people involved rather than the numbers.",
    "A follow-up note clarified a few details that had been reported inconsistently.",
    "Observers pointed out that the surrounding context changed over the years.",
    "The original listing included a short summary and a handful of photographs.",
    "Further details were promised in a later edition but never appeared."};

template <std::size_t N>
std::string_view pick(const std::array<std::string_view, N>& from, Rng& rng) {
  return from[rng.below(N)];
}

std::string word(Rng& rng) {
  std::string w;
  const auto syllables = 1 + rng.below(4);
  for (std::uint64_t i = 0; i < syllables; ++i) w += pick(kSyllables, rng);
  w[0] = static_cast<char>(w[0] - 'a' + 'A');
  return w;
}

std::string token_text(Rng& rng) {
  std::string out = word(rng);
  const auto extra = rng.below(5);
  for (std::uint64_t i = 0; i < extra; ++i) out += " " + word(rng);
  return out;
}

Date random_date(Rng& rng, int first_year, int last_year) {
  static constexpr int kDays[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  Date d;
  d.year = first_year + static_cast<int>(rng.below(static_cast<std::uint64_t>(last_year - first_year + 1)));
  d.month = 1 + static_cast<int>(rng.below(12));
  d.day = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(kDays[d.month - 1])));
  return d;
}

Number tenths(Rng& rng, int lo, int hi) {
  const auto raw = lo * 10 + static_cast<int>(rng.below(static_cast<std::uint64_t>((hi - lo) * 10)));
  return parse_number(fmt::format("{}.{}", raw / 10, raw % 10)).value();
}

std::map<std::string, Scalar> random_attributes(Rng& rng) {
  std::map<std::string, Scalar> a;
  a["location"] = std::string(pick(kContinents, rng));
  a["country_of_citizenship"] = std::string(pick(kCountries, rng));
  a["birth_place"] = std::string(pick(kCountries, rng));
  a["birthday"] = random_date(rng, 1940, 2005);
  a["deadline"] = random_date(rng, 2024, 2026);
  a["publication_date"] = random_date(rng, 1950, 2023);
  a["size"] = tenths(rng, 1, 400);
  a["height"] = tenths(rng, 1, 120);
  a["type"] = std::string(pick(kTypes, rng));
  a["color"] = std::string(pick(kColors, rng));
  a["genre"] = std::string(pick(kGenres, rng));
  a["category"] = std::string(pick(kCategories, rng));
  a["yards_of_touchdown"] = make_number(static_cast<double>(1 + rng.below(99)));
  a["attendance"] = make_number(static_cast<double>(1000 + rng.below(89000)));
  return a;
}

std::string paragraph_text(const std::string& name, const std::map<std::string, Scalar>& a,
                           Rng& rng) {
  std::string out = fmt::format(
      "{} is a {} {} filed under {} with a strong {} following. The piece was published on {} "
      "and the application deadline is {}. Records list a size of {} and a height of {}, and a "
      "related match report credits it with {} yards of touchdown in front of {} people. Its "
      "founder was born on {} in {}, holds citizenship of {}, and the team operates in {}.",
      name, to_text(a.at("color")), to_text(a.at("type")), to_text(a.at("category")),
      to_text(a.at("genre")), to_text(a.at("publication_date")), to_text(a.at("deadline")),
      to_text(a.at("size")), to_text(a.at("height")), to_text(a.at("yards_of_touchdown")),
      to_text(a.at("attendance")), to_text(a.at("birthday")), to_text(a.at("birth_place")),
      to_text(a.at("country_of_citizenship")), to_text(a.at("location")));
  const auto filler = rng.below(6);
  for (std::uint64_t i = 0; i < filler; ++i) out += " " + std::string(pick(kFiller, rng));
  return out;
}

// Rewrites `text` to exactly `target` characters (ASCII only here).
std::string fit_length(std::string text, std::size_t target, Rng& rng) {
  while (text.size() < target) text += " " + word(rng);
  text.resize(target);
  if (text.back() == ' ') text.back() = 'a';
  return text;
}

}  // namespace

ItemPool synth_pool(ItemLevel level, int size, std::uint64_t seed, SynthOptions options) {
  if (size < 7) throw Error(ErrorCode::InvalidInput, "synthetic pool needs at least 7 entries");
  Rng rng(derive_seed(seed, {static_cast<std::uint64_t>(level), 0x900Du}));
  std::vector<Item> entries;
  std::set<std::string> texts;
  const char* prefix = level == ItemLevel::Token ? "t" : "p";
  for (int i = 0; i < size; ++i) {
    Item item;
    item.id = fmt::format("{}{:05d}", prefix, i);
    item.level = level;
    item.attributes = random_attributes(rng);
    item.positional_ok = rng.unit() < 0.6;
    const bool collide = i > 0 && rng.unit() < options.char_collision_rate;
    const std::size_t target =
        collide ? char_count(entries[rng.below(entries.size())].text) : 0;
    for (int attempt = 0;; ++attempt) {
      auto name = token_text(rng);
      item.text = level == ItemLevel::Token ? name : paragraph_text(name, item.attributes, rng);
      // Short targets can run out of unique spellings; fall back to a free length.
      if (collide && attempt < 64) item.text = fit_length(std::move(item.text), target, rng);
      if (texts.insert(item.text).second) break;
    }
    entries.push_back(std::move(item));
  }
  return make_pool(level, std::move(entries));
}

}  // namespace mcrank
