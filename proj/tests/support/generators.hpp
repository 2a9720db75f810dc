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

#pragma once

// Hand-rolled generators shared by the unit, property and acceptance tests.

#include <algorithm>
#include <array>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "mcrank/batch.hpp"
#include "mcrank/benchgen.hpp"
#include "mcrank/condition.hpp"
#include "mcrank/rng.hpp"

namespace mcrank::testing {

inline std::string random_word(Rng& rng, bool capitalize = false) {
  static constexpr std::array<std::string_view, 10> kParts{"al", "bo", "cer", "du", "en",
                                                           "fi", "gor", "ha", "is", "jun"};
  std::string w;
  const auto n = 1 + rng.below(3);
  for (std::uint64_t i = 0; i < n; ++i) w += kParts[rng.below(kParts.size())];
  if (capitalize) w[0] = static_cast<char>(w[0] - 'a' + 'A');
  return w;
}

inline std::string random_phrase(Rng& rng) {
  std::string s = random_word(rng, true);
  const auto extra = rng.below(3);
  for (std::uint64_t i = 0; i < extra; ++i) s += " " + random_word(rng);
  return s;
}

inline std::string random_date_text(Rng& rng) {
  if (rng.coin()) return std::to_string(1900 + rng.below(120));
  return fmt::format("{:04d}-{:02d}-{:02d}", 1900 + rng.below(120), 1 + rng.below(12),
                     1 + rng.below(28));
}

inline std::string random_number_text(Rng& rng) {
  switch (rng.below(4)) {
    case 0: return std::to_string(rng.below(1000));
    case 1: return fmt::format("{}.{}", rng.below(500), rng.below(10));
    case 2: return fmt::format("{} cm", 1 + rng.below(300));
    default: return fmt::format("-{}.{}{}", rng.below(50), rng.below(10), 1 + rng.below(9));
  }
}

/// Valid slot values for `template_id`.
inline SlotValues random_slots(int template_id, Rng& rng) {
  const auto info = template_info(template_id);
  const auto fill = [&](SlotRole role) -> std::string {
    switch (role) {
      case SlotRole::None: return {};
      case SlotRole::ItemText: return random_phrase(rng);
      case SlotRole::AttributeName: {
        std::string a = random_word(rng);
        if (rng.coin()) a += " " + random_word(rng);
        return a;
      }
      case SlotRole::Value:
        if (info.y == SlotRole::None && info.value_kind == ScalarKind::Date) return random_date_text(rng);
        if (info.y == SlotRole::None && info.value_kind == ScalarKind::Number) return random_number_text(rng);
        return random_phrase(rng);
    }
    return {};
  };
  return {fill(info.x), fill(info.y)};
}

inline Priority random_priority(Rng& rng) { return static_cast<Priority>(rng.below(3)); }

/// Generator-accepted fixtures from the synthetic pools, cycling seeds until
/// `count` fixtures with n_items in `item_counts` exist.
inline std::vector<batch::Fixture> generated_fixtures(std::size_t count,
                                                      std::vector<int> item_counts,
                                                      std::uint64_t seed) {
  std::vector<batch::Fixture> out;
  const ItemPool pools[2] = {synth_pool(ItemLevel::Token, 300, seed),
                             synth_pool(ItemLevel::Paragraph, 300, seed)};
  for (std::uint64_t round = 0; out.size() < count; ++round) {
    for (const auto& sc : all_scenarios()) {
      if (std::find(item_counts.begin(), item_counts.end(), sc.n_items) == item_counts.end()) continue;
      for (auto& s : generate_scenario(pools[sc.level == ItemLevel::Paragraph], sc, 4,
                                       derive_seed(seed, {round}))) {
        out.push_back({s.items, s.presented(), s.conditions});
      }
    }
  }
  return out;
}

}  // namespace mcrank::testing
