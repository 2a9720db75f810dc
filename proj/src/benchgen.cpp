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

#include "mcrank/benchgen.hpp"

#include <algorithm>
#include <optional>
#include <set>

#include <fmt/format.h>

#include "mcrank/error.hpp"
#include "mcrank/rng.hpp"

namespace mcrank {

namespace {

// Attributes named through template 9/10's [Y] slot.
constexpr std::array<std::string_view, 4> kNamedLocationAttributes{
    "country_of_citizenship", "birth_place", "death_place", "headquarters_location"};

// Numeric attributes read by fixed templates; anything else numeric is a
// reason attribute for templates 34-36.
constexpr std::array<std::string_view, 2> kFixedNumericAttributes{"size", "height"};

constexpr int kMaxDrawAttempts = 32;

bool valid_slot_text(std::string_view s) {
  return !s.empty() && s.find('"') == std::string_view::npos &&
         s.find(kConditionSeparator) == std::string_view::npos;
}

struct Draw {
  std::vector<Item> items;
  Condition condition;
};

class CandidateBuilder {
 public:
  CandidateBuilder(const ItemPool& pool, const Scenario& scenario)
      : pool_(pool), scenario_(scenario) {
    for (const auto& [name, kind] : pool.schema) {
      if (kind == ScalarKind::String &&
          std::find(kNamedLocationAttributes.begin(), kNamedLocationAttributes.end(), name) !=
              kNamedLocationAttributes.end()) {
        named_location_.push_back(name);
      }
      if (kind == ScalarKind::Number &&
          std::find(kFixedNumericAttributes.begin(), kFixedNumericAttributes.end(), name) ==
              kFixedNumericAttributes.end()) {
        reason_numeric_.push_back(name);
      }
    }
    for (int id = 1; id <= kTemplateCount; ++id) {
      if (canonical_template_id(id) != id) continue;
      const auto info = template_info(id);
      if (info.category == Category::CharCount) continue;
      if (!template_usable(info)) continue;
      by_category_[static_cast<std::size_t>(info.category)].push_back(id);
    }
  }

  // Draws the category condition and its items.
  Draw draw(Category category, Rng& rng) const {
    const auto& ids = by_category_[static_cast<std::size_t>(category)];
    if (ids.empty()) {
      throw Error(ErrorCode::PoolExhausted,
                  fmt::format("pool cannot serve {} conditions with {} items",
                              to_string(category), scenario_.n_items));
    }
    const int id = ids[rng.below(ids.size())];
    const auto info = template_info(id);

    if (info.x == SlotRole::None || info.x == SlotRole::ItemText) {
      auto items = draw_items(eligible(category, info.attribute), rng);
      SlotValues slots;
      if (info.x == SlotRole::ItemText) {
        auto text = pick_item_text(items, rng);
        if (!text) throw Error(ErrorCode::UnsatisfiableSlot, "no drawn item text is slot-safe");
        slots.x = *text;
      }
      return {std::move(items), make_condition(id, slots)};
    }

    std::string attribute(info.attribute);
    SlotValues slots;
    if (info.y == SlotRole::AttributeName) {
      attribute = named_location_[rng.below(named_location_.size())];
      slots.y = attribute_slot(attribute);
    } else if (info.x == SlotRole::AttributeName) {
      attribute = reason_numeric_[rng.below(reason_numeric_.size())];
      slots.x = attribute_slot(attribute);
    }
    const auto pool_entries = eligible(category, attribute);

    for (int attempt = 0; attempt < kMaxDrawAttempts; ++attempt) {
      auto items = draw_items(pool_entries, rng);
      if (info.x != SlotRole::Value) {
        auto cond = make_condition(id, slots);
        if (std::holds_alternative<PartitionMove>(cond.directive) &&
            !non_degenerate(std::get<PartitionMove>(cond.directive).predicate, items)) {
          continue;
        }
        return {std::move(items), std::move(cond)};
      }
      // Value slots take a label of one of the drawn items.
      std::vector<std::size_t> order(items.size());
      for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
      rng.shuffle(order);
      for (auto i : order) {
        auto value = to_text(items[i].attributes.at(attribute));
        if (!valid_slot_text(value)) continue;
        slots.x = value;
        auto cond = make_condition(id, slots);
        if (non_degenerate(std::get<PartitionMove>(cond.directive).predicate, items)) {
          return {std::move(items), std::move(cond)};
        }
      }
    }
    throw Error(ErrorCode::UnsatisfiableSlot,
                fmt::format("template {} never splits {} drawn items", id, scenario_.n_items));
  }

  // Extra high-priority positional condition over already-drawn items.
  Condition positional_extra(const std::vector<Item>& items, Rng& rng) const {
    int id = static_cast<int>(rng.below(6)) + 1;
    SlotValues slots;
    if (id <= 2) {
      if (auto text = pick_item_text(items, rng)) {
        slots.x = *text;
      } else {
        id = 3;
      }
    }
    return make_condition(id, slots, Priority::High);
  }

 private:
  static std::string attribute_slot(std::string name) {
    std::replace(name.begin(), name.end(), '_', ' ');
    return name;
  }

  static std::optional<std::string> pick_item_text(const std::vector<Item>& items, Rng& rng) {
    std::vector<const Item*> safe;
    for (const auto& item : items) {
      if (valid_slot_text(item.text)) safe.push_back(&item);
    }
    if (safe.empty()) return std::nullopt;
    return safe[rng.below(safe.size())]->text;
  }

  static bool non_degenerate(const Predicate& pred, const std::vector<Item>& items) {
    const auto flags = evaluate_predicate(pred, items);
    const auto hits = std::count(flags.begin(), flags.end(), 1);
    if (hits == 0 || hits == static_cast<long>(flags.size())) return false;
    // Extremal predicates must single out one item.
    return pred.op == PredicateOp::Eq || pred.op == PredicateOp::Lt ||
           pred.op == PredicateOp::Gt || hits == 1;
  }

  bool has_attribute(const Item& item, std::string_view attribute, ScalarKind kind) const {
    auto it = item.attributes.find(std::string(attribute));
    return it != item.attributes.end() && kind_of(it->second) == kind;
  }

  std::vector<const Item*> eligible(Category category, std::string_view attribute) const {
    std::vector<const Item*> out;
    for (const auto& item : pool_.entries) {
      if (category == Category::Positional) {
        if (item.positional_ok) out.push_back(&item);
      } else if (item.attributes.count(std::string(attribute))) {
        out.push_back(&item);
      }
    }
    return out;
  }

  bool enough(Category category, std::string_view attribute, std::optional<ScalarKind> kind) const {
    int count = 0;
    for (const auto& item : pool_.entries) {
      if (category == Category::Positional) {
        count += item.positional_ok ? 1 : 0;
      } else if (kind ? has_attribute(item, attribute, *kind)
                      : item.attributes.count(std::string(attribute)) > 0) {
        ++count;
      }
    }
    return count >= scenario_.n_items;
  }

  bool template_usable(const TemplateInfo& info) const {
    if (info.category == Category::Positional) return enough(info.category, {}, std::nullopt);
    if (info.y == SlotRole::AttributeName) {
      return std::any_of(named_location_.begin(), named_location_.end(), [&](const auto& a) {
        return enough(info.category, a, ScalarKind::String);
      });
    }
    if (info.x == SlotRole::AttributeName) {
      return std::any_of(reason_numeric_.begin(), reason_numeric_.end(), [&](const auto& a) {
        return enough(info.category, a, ScalarKind::Number);
      });
    }
    auto it = pool_.schema.find(std::string(info.attribute));
    if (it == pool_.schema.end()) return false;
    return enough(info.category, info.attribute, it->second);
  }

  std::vector<Item> draw_items(std::vector<const Item*> from, Rng& rng) const {
    if (static_cast<int>(from.size()) < scenario_.n_items) {
      throw Error(ErrorCode::PoolExhausted,
                  fmt::format("{} eligible entries for {} items", from.size(), scenario_.n_items));
    }
    // Partial Fisher-Yates: the first n_items slots end up uniformly drawn.
    std::vector<Item> out;
    for (int i = 0; i < scenario_.n_items; ++i) {
      const auto j = static_cast<std::size_t>(i) + rng.below(from.size() - static_cast<std::size_t>(i));
      std::swap(from[static_cast<std::size_t>(i)], from[j]);
      out.push_back(*from[static_cast<std::size_t>(i)]);
    }
    return out;
  }

  const ItemPool& pool_;
  Scenario scenario_;
  std::vector<std::string> named_location_;
  std::vector<std::string> reason_numeric_;
  std::array<std::vector<int>, 5> by_category_;
};

bool has_duplicate_char_counts(const std::vector<Item>& items) {
  std::set<std::size_t> seen;
  for (const auto& item : items) {
    if (!seen.insert(char_count(item.text)).second) return true;
  }
  return false;
}

bool has_tied_keys(const std::vector<Item>& items, const Condition& cond) {
  // A stable sort leaves tied items in presented order; two adjacent tied
  // items in the sorted output are exactly the ties.
  Condition reversed = cond;
  auto& sort = std::get<SortByKey>(reversed.directive);
  const auto forward = apply_condition(ids_of(items), items, cond);
  sort.order = sort.order == SortOrder::Ascending ? SortOrder::Descending : SortOrder::Ascending;
  auto backward = apply_condition(ids_of(items), items, reversed);
  std::reverse(backward.begin(), backward.end());
  return forward != backward;
}

}  // namespace

std::vector<Scenario> all_scenarios() {
  std::vector<Scenario> out;
  for (auto level : {ItemLevel::Token, ItemLevel::Paragraph}) {
    for (int c = 1; c <= 3; ++c) {
      for (int n : {3, 5, 7}) out.push_back({level, c, n});
    }
  }
  return out;
}

int scenario_index(const Scenario& s) {
  const auto all = all_scenarios();
  auto it = std::find(all.begin(), all.end(), s);
  return it == all.end() ? -1 : static_cast<int>(it - all.begin());
}

std::string scenario_label(const Scenario& s) {
  return fmt::format("{}-c{}-i{}", to_string(s.level), s.n_conditions, s.n_items);
}

ItemPool make_pool(ItemLevel level, std::vector<Item> entries) {
  ItemPool pool;
  pool.level = level;
  for (const auto& item : entries) {
    if (item.level != level) {
      throw Error(ErrorCode::InvalidInput, "entry " + item.id + " has the wrong level");
    }
    for (const auto& [name, value] : item.attributes) {
      auto [it, inserted] = pool.schema.emplace(name, kind_of(value));
      if (!inserted && it->second != kind_of(value)) {
        throw Error(ErrorCode::InvalidInput,
                    fmt::format("attribute \"{}\" is both {} and {}", name, to_string(it->second),
                                to_string(kind_of(value))));
      }
    }
  }
  pool.entries = std::move(entries);
  return pool;
}

std::vector<Sample> generate_scenario(const ItemPool& pool, const Scenario& scenario,
                                      int per_category, std::uint64_t seed) {
  if (pool.level != scenario.level) {
    throw Error(ErrorCode::LevelMismatch, "pool level differs from scenario level");
  }
  if (per_category < 1) throw Error(ErrorCode::InvalidInput, "per_category must be >= 1");
  const int scenario_idx = scenario_index(scenario);
  if (scenario_idx < 0) throw Error(ErrorCode::InvalidInput, "unknown scenario");

  CandidateBuilder builder(pool, scenario);
  std::vector<Sample> out;
  for (std::size_t cat_idx = 0; cat_idx < kSampleCategories.size(); ++cat_idx) {
    const Category category = kSampleCategories[cat_idx];
    for (int k = 0; k < per_category; ++k) {
      const auto stream = derive_seed(seed, {static_cast<std::uint64_t>(scenario_idx), cat_idx,
                                             static_cast<std::uint64_t>(k)});
      Rng rng(stream);
      auto [items, category_cond] = builder.draw(category, rng);
      rng.shuffle(items);

      std::vector<Condition> conds{std::move(category_cond)};
      const bool add_char_count =
          scenario.n_conditions == 3 || (scenario.n_conditions == 2 && rng.coin());
      const bool add_positional =
          scenario.n_conditions == 3 || (scenario.n_conditions == 2 && !add_char_count);
      if (add_char_count) conds.push_back(make_condition(31, {}, Priority::Low));
      if (add_positional) conds.push_back(builder.positional_extra(items, rng));
      rng.shuffle(conds);

      Sample s;
      s.id = fmt::format("{}-{}-{:04d}", scenario_label(scenario), to_string(category), k);
      s.scenario = scenario;
      s.category = category;
      s.condition_string = render_condition_string(conds);
      s.conditions = std::move(conds);
      s.items = std::move(items);
      s.seed_trace = stream;
      try {
        s.gold = gold_ranking(s.items, s.presented(), s.conditions);
      } catch (const Error&) {
        continue;
      }
      if (filter_sample(s)) out.push_back(std::move(s));
    }
  }
  return out;
}

bool filter_sample(const Sample& candidate) {
  try {
    bool has_full_order = false;
    for (const auto& cond : candidate.conditions) {
      if (const auto* sort = std::get_if<SortByKey>(&cond.directive)) {
        has_full_order = true;
        if (sort->key_kind == KeyKind::TextLength && has_duplicate_char_counts(candidate.items)) {
          return false;
        }
        if (has_tied_keys(candidate.items, cond)) return false;
      } else if (const auto* part = std::get_if<PartitionMove>(&cond.directive)) {
        const auto flags = evaluate_predicate(part->predicate, candidate.items);
        const auto hits = std::count(flags.begin(), flags.end(), 1);
        if (hits == 0 || hits == static_cast<long>(flags.size())) return false;
      }
    }
    if (candidate.conditions.size() >= 2 && has_full_order) {
      const auto gold = gold_ranking(candidate.items, candidate.presented(), candidate.conditions);
      Rng rng(derive_seed(candidate.seed_trace, {0x5eed}));
      auto order = candidate.presented();
      for (int r = 0; r < kUniquenessReshuffles; ++r) {
        rng.shuffle(order);
        if (gold_ranking(candidate.items, order, candidate.conditions) != gold) return false;
      }
    }
    return true;
  } catch (const Error&) {
    return false;
  }
}

DatasetStats dataset_stats(std::span<const Sample> samples) {
  std::map<std::pair<ItemLevel, int>, std::map<int, int>> counts;
  for (const auto& s : samples) {
    ++counts[{s.scenario.level, s.scenario.n_conditions}][s.scenario.n_items];
  }
  DatasetStats stats;
  for (const auto& [key, per_items] : counts) {
    double total = 0;
    for (const auto& [n_items, count] : per_items) total += count;
    stats.average[key] = total / static_cast<double>(per_items.size());
  }
  return stats;
}

std::string format_stats(const DatasetStats& stats) {
  if (stats.average.empty()) return {};
  auto cell = [](double v) {
    auto s = fmt::format("{:.1f}", v);
    if (s.size() > 2 && s.compare(s.size() - 2, 2, ".0") == 0) s.resize(s.size() - 2);
    return s;
  };
  std::string out = fmt::format("{:<8} | {:>11} | {:>12} | {:>12}\n", "", "1 Condition",
                                "2 Conditions", "3 Conditions");
  for (auto level : {ItemLevel::Token, ItemLevel::Paragraph}) {
    bool any = false;
    std::array<std::string, 3> cells{"-", "-", "-"};
    for (int c = 1; c <= 3; ++c) {
      auto it = stats.average.find({level, c});
      if (it == stats.average.end()) continue;
      cells[static_cast<std::size_t>(c - 1)] = cell(it->second);
      any = true;
    }
    if (!any) continue;
    out += fmt::format("{:<8} | {:>11} | {:>12} | {:>12}\n",
                       level == ItemLevel::Token ? "T-level" : "P-level", cells[0], cells[1],
                       cells[2]);
  }
  return out;
}

}  // namespace mcrank
