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

#include "mcrank/condition.hpp"

#include <algorithm>
#include <array>

#include "mcrank/error.hpp"

namespace mcrank {

namespace {

// How a template's slots map onto a directive.
enum class Shape {
  PositionByText,   // [X] is an item text
  PositionBySelf,   // current first/last item, no slots
  PartitionEq,      // fixed attribute == [X]
  PartitionEqNamed, // attribute [Y] == [X]
  PartitionCmp,     // fixed attribute before/after or less/more than [X]
  SortFixed,        // fixed attribute, no slots
  SortNamed,        // attribute [X]
  PartitionExtremal // attribute [X] largest/smallest
};

struct TemplateSpec {
  int id;
  Category category;
  Shape shape;
  std::string_view pattern;
  std::string_view attribute = {};
  KeyKind key_kind = KeyKind::Number;  // sort kind, or slot value kind for PartitionCmp
  PredicateOp op = PredicateOp::Eq;
  Placement placement = Placement::Front;
  SelectorKind selector = SelectorKind::ByItemText;
};

using enum Category;
using enum Shape;

// clang-format off
constexpr std::array<TemplateSpec, kTemplateCount> kTemplates{{
  {1, Positional, PositionByText, R"(Item "{X}" should be the last from left)", {}, {}, {}, Placement::Back},
  {2, Positional, PositionByText, R"(Item "{X}" should be the last from right)", {}, {}, {}, Placement::Front},
  {3, Positional, PositionBySelf, "First item in the final sorted order should appear in the end", {}, {}, {}, Placement::Back, SelectorKind::CurrentFirst},
  {4, Positional, PositionBySelf, "First item in the final sorted order should appear in the beginning", {}, {}, {}, Placement::Front, SelectorKind::CurrentFirst},
  {5, Positional, PositionBySelf, "Last item in the final sorted order should appear in the end", {}, {}, {}, Placement::Back, SelectorKind::CurrentLast},
  {6, Positional, PositionBySelf, "Last item in the final sorted order should appear in the beginning", {}, {}, {}, Placement::Front, SelectorKind::CurrentLast},
  {7, Locational, PartitionEq, R"(Items that are in "{X}" should appear at the beginning)", "location", {}, PredicateOp::Eq, Placement::Front},
  {8, Locational, PartitionEq, R"(Items that are in "{X}" should appear at the end)", "location", {}, PredicateOp::Eq, Placement::Back},
  {9, Locational, PartitionEqNamed, R"(Items that have "{Y}" in "{X}" should appear at the beginning)", {}, {}, PredicateOp::Eq, Placement::Front},
  {10, Locational, PartitionEqNamed, R"(Items that that have "{Y}" in "{X}" should appear at the end)", {}, {}, PredicateOp::Eq, Placement::Back},
  {11, Temporal, SortFixed, "Sort the items based on their birthday from the oldest to the newest", "birthday", KeyKind::Date},
  {12, Temporal, PartitionCmp, R"(Item that born before "{X}" should appear at the end)", "birthday", KeyKind::Date, PredicateOp::Lt, Placement::Back},
  {13, Temporal, PartitionCmp, R"(Item that born after "{X}" should appear at the beginning)", "birthday", KeyKind::Date, PredicateOp::Gt, Placement::Front},
  {14, Temporal, SortFixed, "Sort items based on their deadline from the first to the last", "deadline", KeyKind::Date},
  {15, Temporal, PartitionCmp, R"(Item that has a deadline before "{X}" should appear at the end)", "deadline", KeyKind::Date, PredicateOp::Lt, Placement::Back},
  {16, Temporal, PartitionCmp, R"(Item that has a deadline after "{X}" should appear at the beginning)", "deadline", KeyKind::Date, PredicateOp::Gt, Placement::Front},
  {17, Temporal, SortFixed, "Sort items based on mentioned publication date from the first to the last", "publication_date", KeyKind::Date},
  {18, Temporal, PartitionCmp, R"(Item that has a publication date before "{X}" should appear at the end)", "publication_date", KeyKind::Date, PredicateOp::Lt, Placement::Back},
  {19, Temporal, PartitionCmp, R"(Item that has a publication date after "{X}" should appear at the beginning)", "publication_date", KeyKind::Date, PredicateOp::Gt, Placement::Front},
  {20, Trait, SortFixed, "Sort the items based on their size from the smallest to the largest", "size", KeyKind::Number},
  {21, Trait, SortFixed, "Sort the items based on their height from the shortest to the tallest", "height", KeyKind::Number},
  {22, Trait, PartitionCmp, R"(Item with a size of less than "{X}" should appear at the end)", "size", KeyKind::Number, PredicateOp::Lt, Placement::Back},
  {23, Trait, PartitionCmp, R"(Item with a size of more than "{X}" should appear at the beginning)", "size", KeyKind::Number, PredicateOp::Gt, Placement::Front},
  {24, Trait, SortFixed, "Sort the items based on their size from the smallest to the largest", "size", KeyKind::Number},
  {25, Trait, PartitionEq, R"(Item that is a "{X}" should appear at the end)", "type", {}, PredicateOp::Eq, Placement::Back},
  {26, Trait, PartitionEq, R"(Item that is a "{X}" should appear at the beginning)", "type", {}, PredicateOp::Eq, Placement::Front},
  {27, Trait, PartitionEq, R"(Item with a "{X}" color should appear at the end)", "color", {}, PredicateOp::Eq, Placement::Back},
  {28, Trait, PartitionEq, R"(Item with a "{X}" color should appear at the beginning)", "color", {}, PredicateOp::Eq, Placement::Front},
  {29, Trait, PartitionEq, R"(Item with the "{X}" genre should appear at the end)", "genre", {}, PredicateOp::Eq, Placement::Back},
  {30, Trait, PartitionEq, R"(Item with the "{X}" genre should appear at the beginning)", "genre", {}, PredicateOp::Eq, Placement::Front},
  {31, CharCount, SortFixed, "Sort the items based on their character count from the smallest to largest", kCharCountAttribute, KeyKind::TextLength},
  {32, Reason, PartitionEq, R"(Items in the category "{X}" should appear at the beginning)", "category", {}, PredicateOp::Eq, Placement::Front},
  {33, Reason, PartitionEq, R"(Items in the category "{X}" should appear at the end)", "category", {}, PredicateOp::Eq, Placement::Back},
  {34, Reason, SortNamed, R"(Sort items based on "{X}" from the smallest to the largest)", {}, KeyKind::Number},
  {35, Reason, PartitionExtremal, R"(Items that has the largest "{X}" should appear at the beginning)", {}, {}, PredicateOp::IsMax, Placement::Front},
  {36, Reason, PartitionExtremal, R"(Items that has the smallest "{X}" should appear at the end)", {}, {}, PredicateOp::IsMin, Placement::Back},
}};
// clang-format on

const TemplateSpec& spec_for(int template_id) {
  if (template_id < 1 || template_id > kTemplateCount) {
    throw Error(ErrorCode::UnrecognizedTemplate, "template id " + std::to_string(template_id));
  }
  return kTemplates[static_cast<std::size_t>(template_id - 1)];
}

constexpr std::string_view kTagSuffix = " priority): ";

void check_slot_text(std::string_view slot, std::string_view which) {
  if (slot.empty()) throw Error(ErrorCode::MalformedSlot, std::string(which) + " is empty");
  if (slot.find('"') != std::string_view::npos) {
    throw Error(ErrorCode::MalformedSlot, std::string(which) + " contains a double quote");
  }
  if (slot.find(kConditionSeparator) != std::string_view::npos) {
    throw Error(ErrorCode::MalformedSlot, std::string(which) + " contains the condition separator");
  }
}

// Attribute names are stored snake_case and rendered with spaces.
std::string attribute_from_slot(std::string_view slot) {
  check_slot_text(slot, "attribute slot");
  if (slot.find('_') != std::string_view::npos) {
    throw Error(ErrorCode::MalformedSlot, "attribute slot contains '_': " + std::string(slot));
  }
  std::string name(slot);
  std::replace(name.begin(), name.end(), ' ', '_');
  return name;
}

std::string attribute_to_slot(std::string_view name) {
  std::string slot(name);
  std::replace(slot.begin(), slot.end(), '_', ' ');
  return slot;
}

Scalar typed_value(std::string_view slot, KeyKind kind) {
  check_slot_text(slot, "value slot");
  if (kind == KeyKind::Date) {
    auto d = parse_date(slot);
    if (!d) throw Error(ErrorCode::MalformedSlot, "not a date: " + std::string(slot));
    return *d;
  }
  auto n = parse_number(slot);
  if (!n) throw Error(ErrorCode::MalformedSlot, "not a number: " + std::string(slot));
  return *n;
}

Directive build_directive(const TemplateSpec& t, const SlotValues& slots) {
  switch (t.shape) {
    case PositionByText:
      check_slot_text(slots.x, "item slot");
      return PositionalMove{Selector{SelectorKind::ByItemText, slots.x}, t.placement};
    case PositionBySelf:
      return PositionalMove{Selector{t.selector, {}}, t.placement};
    case PartitionEq:
      check_slot_text(slots.x, "value slot");
      return PartitionMove{Predicate{std::string(t.attribute), PredicateOp::Eq, Scalar{slots.x}},
                           t.placement};
    case PartitionEqNamed: {
      auto attr = attribute_from_slot(slots.y);
      check_slot_text(slots.x, "value slot");
      return PartitionMove{Predicate{std::move(attr), PredicateOp::Eq, Scalar{slots.x}},
                           t.placement};
    }
    case PartitionCmp:
      return PartitionMove{
          Predicate{std::string(t.attribute), t.op, typed_value(slots.x, t.key_kind)}, t.placement};
    case SortFixed:
      return SortByKey{std::string(t.attribute), t.key_kind, SortOrder::Ascending};
    case SortNamed:
      return SortByKey{attribute_from_slot(slots.x), t.key_kind, SortOrder::Ascending};
    case PartitionExtremal:
      return PartitionMove{Predicate{attribute_from_slot(slots.x), t.op, std::nullopt},
                           t.placement};
  }
  throw Error(ErrorCode::UnrecognizedTemplate, "bad template shape");
}

SlotValues slots_of(const TemplateSpec& t, const Directive& d) {
  switch (t.shape) {
    case PositionByText:
      return {std::get<PositionalMove>(d).selector.text, {}};
    case PositionBySelf:
    case SortFixed:
      return {};
    case PartitionEq:
      return {to_text(*std::get<PartitionMove>(d).predicate.value), {}};
    case PartitionEqNamed: {
      const auto& p = std::get<PartitionMove>(d).predicate;
      return {to_text(*p.value), attribute_to_slot(p.attribute)};
    }
    case PartitionCmp:
      return {to_text(*std::get<PartitionMove>(d).predicate.value), {}};
    case SortNamed:
      return {attribute_to_slot(std::get<SortByKey>(d).attribute), {}};
    case PartitionExtremal:
      return {attribute_to_slot(std::get<PartitionMove>(d).predicate.attribute), {}};
  }
  return {};
}

std::string fill(std::string_view pattern, const SlotValues& slots) {
  std::string out;
  out.reserve(pattern.size() + slots.x.size() + slots.y.size());
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    if (pattern.compare(i, 3, "{X}") == 0) {
      out += slots.x;
      i += 2;
    } else if (pattern.compare(i, 3, "{Y}") == 0) {
      out += slots.y;
      i += 2;
    } else {
      out += pattern[i];
    }
  }
  return out;
}

// Matches `text` against a pattern whose slots are always followed by a
// literal beginning with '"'; slots never contain '"', so the first
// occurrence of the next literal closes the slot.
std::optional<SlotValues> match(std::string_view pattern, std::string_view text) {
  SlotValues slots;
  std::size_t p = 0, t = 0;
  while (p < pattern.size()) {
    const auto next_slot = pattern.find('{', p);
    const auto literal = pattern.substr(p, next_slot == std::string_view::npos ? std::string_view::npos
                                                                               : next_slot - p);
    if (text.compare(t, literal.size(), literal) != 0) return std::nullopt;
    t += literal.size();
    if (next_slot == std::string_view::npos) break;
    const char which = pattern[next_slot + 1];
    p = next_slot + 3;
    const auto close = pattern.find('{', p);
    const auto follow = pattern.substr(p, close == std::string_view::npos ? std::string_view::npos
                                                                          : close - p);
    const auto end = follow.empty() ? text.size() : text.find(follow, t);
    if (end == std::string_view::npos) return std::nullopt;
    (which == 'X' ? slots.x : slots.y) = std::string(text.substr(t, end - t));
    t = end;
  }
  if (t != text.size()) return std::nullopt;
  return slots;
}

}  // namespace

std::string_view to_string(Priority p) {
  switch (p) {
    case Priority::Low: return "low";
    case Priority::Medium: return "medium";
    case Priority::High: return "high";
  }
  return "?";
}

std::string_view to_string(Category c) {
  switch (c) {
    case Category::Positional: return "positional";
    case Category::Locational: return "locational";
    case Category::Temporal: return "temporal";
    case Category::Trait: return "trait";
    case Category::Reason: return "reason";
    case Category::CharCount: return "char_count";
  }
  return "?";
}

std::optional<Priority> priority_from_string(std::string_view s) {
  for (auto p : {Priority::Low, Priority::Medium, Priority::High}) {
    if (to_string(p) == s) return p;
  }
  return std::nullopt;
}

std::optional<Category> category_from_string(std::string_view s) {
  for (auto c : {Category::Positional, Category::Locational, Category::Temporal, Category::Trait,
                 Category::Reason, Category::CharCount}) {
    if (to_string(c) == s) return c;
  }
  return std::nullopt;
}

TemplateInfo template_info(int template_id) {
  const auto& t = spec_for(template_id);
  TemplateInfo info;
  info.id = t.id;
  info.category = t.category;
  info.attribute = t.attribute;
  switch (t.shape) {
    case PositionByText: info.x = SlotRole::ItemText; break;
    case PartitionEq: info.x = SlotRole::Value; break;
    case PartitionEqNamed:
      info.x = SlotRole::Value;
      info.y = SlotRole::AttributeName;
      break;
    case PartitionCmp:
      info.x = SlotRole::Value;
      info.value_kind = t.key_kind == KeyKind::Date ? ScalarKind::Date : ScalarKind::Number;
      break;
    case SortNamed:
    case PartitionExtremal: info.x = SlotRole::AttributeName; break;
    case PositionBySelf:
    case SortFixed: break;
  }
  return info;
}

Category template_category(int template_id) { return spec_for(template_id).category; }

int template_slot_count(int template_id) {
  const auto pattern = spec_for(template_id).pattern;
  return static_cast<int>(std::count(pattern.begin(), pattern.end(), '{'));
}

int canonical_template_id(int template_id) { return template_id == 24 ? 20 : template_id; }

Condition make_condition(int template_id, const SlotValues& slots, Priority priority) {
  const auto& t = spec_for(template_id);
  Condition c;
  c.template_id = template_id;
  c.category = t.category;
  c.priority = priority;
  c.directive = build_directive(t, slots);
  c.surface = fill(t.pattern, slots_of(t, c.directive));
  return c;
}

std::string_view strip_priority_tag(std::string_view s, Priority* out) {
  if (s.empty() || s.front() != '(') return s;
  const auto close = s.find(kTagSuffix);
  if (close == std::string_view::npos) return s;
  auto p = priority_from_string(s.substr(1, close - 1));
  if (!p) return s;
  if (out) *out = *p;
  return s.substr(close + kTagSuffix.size());
}

Condition parse_condition(std::string_view surface) {
  Priority priority = Priority::Medium;
  const auto body = strip_priority_tag(surface, &priority);
  for (const auto& t : kTemplates) {
    if (t.id != canonical_template_id(t.id)) continue;
    if (auto slots = match(t.pattern, body)) {
      return make_condition(t.id, *slots, priority);
    }
  }
  throw Error(ErrorCode::UnrecognizedTemplate, "\"" + std::string(surface) + "\"");
}

std::string render_condition(const Condition& cond, bool with_priority_tag) {
  const auto& t = spec_for(cond.template_id);
  auto body = fill(t.pattern, slots_of(t, cond.directive));
  if (!with_priority_tag) return body;
  return "(" + std::string(to_string(cond.priority)) + std::string(kTagSuffix) + body;
}

std::vector<Condition> extract_conditions(std::string_view condition_string) {
  std::vector<Condition> out;
  std::size_t start = 0;
  while (true) {
    const auto end = condition_string.find(kConditionSeparator, start);
    auto fragment = condition_string.substr(start, end == std::string_view::npos ? end : end - start);
    while (!fragment.empty() && fragment.front() == ' ') fragment.remove_prefix(1);
    while (!fragment.empty() && (fragment.back() == ' ' || fragment.back() == '\n')) {
      fragment.remove_suffix(1);
    }
    out.push_back(parse_condition(fragment));
    if (end == std::string_view::npos) break;
    start = end + kConditionSeparator.size();
  }
  return out;
}

std::string render_condition_string(std::span<const Condition> conds) {
  std::string out;
  for (std::size_t i = 0; i < conds.size(); ++i) {
    if (i) out += kConditionSeparator;
    out += render_condition(conds[i], true);
  }
  return out;
}

std::vector<Condition> sort_by_priority(std::span<const Condition> conds) {
  std::vector<Condition> out(conds.begin(), conds.end());
  std::stable_sort(out.begin(), out.end(),
                   [](const Condition& a, const Condition& b) { return a.priority < b.priority; });
  return out;
}

bool is_identity(const Condition& cond) {
  const auto* move = std::get_if<PositionalMove>(&cond.directive);
  if (!move) return false;
  return (move->selector.kind == SelectorKind::CurrentFirst && move->target == Placement::Front) ||
         (move->selector.kind == SelectorKind::CurrentLast && move->target == Placement::Back);
}

bool is_full_order(const Condition& cond) {
  return std::holds_alternative<SortByKey>(cond.directive);
}

}  // namespace mcrank
