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

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mcrank/scalar.hpp"

namespace mcrank {

enum class Priority { Low, Medium, High };

enum class Category { Positional, Locational, Temporal, Trait, Reason, CharCount };

enum class KeyKind { Number, Date, TextLength, OrdinalLabel };
enum class SortOrder { Ascending, Descending };
enum class Placement { Front, Back };
enum class PredicateOp { Eq, Lt, Gt, IsMax, IsMin };
enum class SelectorKind { ByItemText, CurrentFirst, CurrentLast };

struct SortByKey {
  std::string attribute;
  KeyKind key_kind = KeyKind::Number;
  SortOrder order = SortOrder::Ascending;

  friend bool operator==(const SortByKey&, const SortByKey&) = default;
};

/// `value` is present iff op is Eq, Lt or Gt.
struct Predicate {
  std::string attribute;
  PredicateOp op = PredicateOp::Eq;
  std::optional<Scalar> value;

  friend bool operator==(const Predicate&, const Predicate&) = default;
};

struct PartitionMove {
  Predicate predicate;
  Placement placement = Placement::Front;

  friend bool operator==(const PartitionMove&, const PartitionMove&) = default;
};

struct Selector {
  SelectorKind kind = SelectorKind::ByItemText;
  std::string text;  // only for ByItemText

  friend bool operator==(const Selector&, const Selector&) = default;
};

struct PositionalMove {
  Selector selector;
  Placement target = Placement::Back;

  friend bool operator==(const PositionalMove&, const PositionalMove&) = default;
};

using Directive = std::variant<SortByKey, PartitionMove, PositionalMove>;

inline constexpr int kTemplateCount = 36;
inline constexpr std::string_view kCharCountAttribute = "char_count";
inline constexpr std::string_view kConditionSeparator = "; ";

struct Condition {
  int template_id = 0;
  Category category = Category::Positional;
  Priority priority = Priority::Medium;
  Directive directive;
  std::string surface;  // English rendering without the priority tag

  friend bool operator==(const Condition&, const Condition&) = default;
};

/// Slot values for a template. `x` is the primary slot ([X]), `y` the
/// secondary one ([Y]) used only by templates 9 and 10.
struct SlotValues {
  std::string x;
  std::string y;
};

std::string_view to_string(Priority p);
std::string_view to_string(Category c);
std::optional<Priority> priority_from_string(std::string_view s);
std::optional<Category> category_from_string(std::string_view s);

enum class SlotRole { None, ItemText, Value, AttributeName };

/// What a template's slots hold. `attribute` is the fixed attribute the
/// directive reads (empty when an AttributeName slot names it);
/// `value_kind` is the typed kind of a Value slot.
struct TemplateInfo {
  int id = 0;
  Category category = Category::Positional;
  SlotRole x = SlotRole::None;
  SlotRole y = SlotRole::None;
  std::string_view attribute;
  ScalarKind value_kind = ScalarKind::String;
};

TemplateInfo template_info(int template_id);

/// Category owned by a template id (1..36).
Category template_category(int template_id);

/// Number of slots ([X], [Y]) the template carries: 0, 1 or 2.
int template_slot_count(int template_id);

/// Template 24 duplicates 20; every other id is its own canonical form.
int canonical_template_id(int template_id);

/// Builds a condition from a template id and raw slot strings, applying the
/// same slot typing as parsing. Throws MalformedSlot on bad slot text.
Condition make_condition(int template_id, const SlotValues& slots,
                         Priority priority = Priority::Medium);

/// Parses one rendered condition, with an optional "(p priority): " prefix.
/// Priority defaults to Medium when untagged.
Condition parse_condition(std::string_view surface);

std::string render_condition(const Condition& cond, bool with_priority_tag);

/// Splits a "; "-joined condition string and parses each fragment.
std::vector<Condition> extract_conditions(std::string_view condition_string);

/// Joins tagged renderings with the condition separator.
std::string render_condition_string(std::span<const Condition> conds);

/// Stable ascending sort by priority: Low first, High last.
std::vector<Condition> sort_by_priority(std::span<const Condition> conds);

/// True for templates whose directive can never change an ordering
/// (#4 "first ... in the beginning", #5 "last ... in the end").
bool is_identity(const Condition& cond);

/// True when the directive imposes a total order (SortByKey).
bool is_full_order(const Condition& cond);

/// Strips a leading priority tag if present; returns the remainder.
std::string_view strip_priority_tag(std::string_view s, Priority* out = nullptr);

}  // namespace mcrank
