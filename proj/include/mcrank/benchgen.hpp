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

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mcrank/condition.hpp"
#include "mcrank/engine.hpp"

namespace mcrank {

struct Scenario {
  ItemLevel level = ItemLevel::Token;
  int n_conditions = 1;
  int n_items = 3;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// The 18 scenarios, ordered by level, then condition count, then item count.
std::vector<Scenario> all_scenarios();

/// Position of `s` in all_scenarios(), or -1.
int scenario_index(const Scenario& s);

/// Short stable label, e.g. "token-c2-i5".
std::string scenario_label(const Scenario& s);

/// The five categories a sample's medium-priority condition is drawn from.
inline constexpr std::array<Category, 5> kSampleCategories{
    Category::Positional, Category::Locational, Category::Temporal, Category::Trait,
    Category::Reason};

struct ItemPool {
  ItemLevel level = ItemLevel::Token;
  std::map<std::string, ScalarKind> schema;
  std::vector<Item> entries;
};

/// Builds a pool from entries, inferring the schema. Throws InvalidInput when
/// an attribute's kind is inconsistent across entries or an entry's level
/// differs from `level`.
ItemPool make_pool(ItemLevel level, std::vector<Item> entries);

struct Sample {
  std::string id;
  Scenario scenario;
  Category category = Category::Positional;  // category of the medium-priority condition
  std::vector<Condition> conditions;         // surface order
  std::string condition_string;
  std::vector<Item> items;                   // presented order
  Ordering gold;
  std::uint64_t seed_trace = 0;

  Ordering presented() const { return ids_of(items); }
};

/// Reshuffles used by the uniqueness check in filter_sample.
inline constexpr int kUniquenessReshuffles = 20;

/// Builds `per_category` candidates for each of the five categories and
/// returns those that pass filter_sample, in category order.
std::vector<Sample> generate_scenario(const ItemPool& pool, const Scenario& scenario,
                                      int per_category, std::uint64_t seed);

/// Rejects candidates whose gold ranking is not well defined: duplicate
/// character counts under a character-count condition, tied keys under any
/// full sort, a partition that matches no item or every item, and (with two
/// or more conditions, one of which is a full sort) a gold ranking that
/// changes when the presented order is reshuffled.
bool filter_sample(const Sample& candidate);

/// Mean sample count per (level, condition count), averaged over the item
/// counts present in the input.
struct DatasetStats {
  std::map<std::pair<ItemLevel, int>, double> average;
};

DatasetStats dataset_stats(std::span<const Sample> samples);

/// Renders the stats as a two-row table (token/paragraph) with one column
/// per condition count.
std::string format_stats(const DatasetStats& stats);

struct SynthOptions {
  /// Fraction of entries whose text is rewritten to repeat the character
  /// count of an earlier entry.
  double char_collision_rate = 0.0;
};

/// Deterministic synthetic pool carrying every attribute the 36 templates
/// use. Texts are unique within the pool.
ItemPool synth_pool(ItemLevel level, int size, std::uint64_t seed, SynthOptions options = {});

}  // namespace mcrank
