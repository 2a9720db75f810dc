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

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mcrank/condition.hpp"
#include "mcrank/scalar.hpp"

namespace mcrank {

enum class ItemLevel { Token, Paragraph };

std::string_view to_string(ItemLevel level);
std::optional<ItemLevel> level_from_string(std::string_view s);

struct Item {
  std::string id;
  std::string text;
  ItemLevel level = ItemLevel::Token;
  std::map<std::string, Scalar> attributes;
  bool positional_ok = false;

  friend bool operator==(const Item&, const Item&) = default;
};

/// Item ids, first = leftmost.
using Ordering = std::vector<std::string>;

/// Unicode scalar values in the text after trimming surrounding whitespace.
std::size_t char_count(std::string_view text);

Ordering ids_of(std::span<const Item> items);

/// Per-item predicate results, in `items` order. IsMax/IsMin extremes are
/// taken over `items`.
std::vector<char> evaluate_predicate(const Predicate& pred, std::span<const Item> items);

/// One stable application of `cond` to `order`.
///
/// SortByKey is a stable sort; PartitionMove is a stable partition; a
/// PositionalMove removes the selected item and reinserts it at the front or
/// back, resolving CurrentFirst/CurrentLast against `order` itself.
Ordering apply_condition(const Ordering& order, std::span<const Item> items, const Condition& cond);

/// Folds apply_condition over sort_by_priority(conds), starting from
/// `presented`: the highest-priority condition is applied last.
Ordering gold_ranking(std::span<const Item> items, const Ordering& presented,
                      std::span<const Condition> conds);

/// Checks whether `order` meets `cond`. Self-referential positional
/// selectors resolve against `reference`, the order the condition was
/// applied to; omitting it for such a selector throws MissingReference.
bool satisfies(const Ordering& order, std::span<const Item> items, const Condition& cond,
               const Ordering* reference = nullptr);

/// How far `order` is from meeting `cond`: out-of-order pairs for a sort,
/// matching/non-matching pairs on the wrong side for a partition, and the
/// selected item's distance from its target end for a positional move.
/// Zero exactly when satisfies() holds.
std::size_t violation_count(const Ordering& order, std::span<const Item> items,
                            const Condition& cond, const Ordering* reference = nullptr);

inline constexpr std::size_t kBruteForceMaxItems = 8;

/// Exhaustive reference for gold_ranking, for test use. From the highest
/// priority down, keeps the permutations with the fewest violations of each
/// condition (the satisfying ones, whenever any remain), then breaks ties by
/// the fewest pairwise inversions against the fold of every condition except
/// the highest-priority one.
Ordering brute_force_gold(std::span<const Item> items, const Ordering& presented,
                          std::span<const Condition> conds);

/// Number of pairs ordered differently in `a` and `b` (Kendall distance).
std::size_t inversion_distance(const Ordering& a, const Ordering& b);

}  // namespace mcrank
