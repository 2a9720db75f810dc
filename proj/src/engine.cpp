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

#include "mcrank/engine.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "mcrank/error.hpp"

namespace mcrank {

namespace {

using ItemIndex = std::unordered_map<std::string_view, const Item*>;

ItemIndex index_items(std::span<const Item> items) {
  ItemIndex index;
  index.reserve(items.size());
  for (const auto& item : items) index.emplace(item.id, &item);
  return index;
}

std::vector<const Item*> resolve(const Ordering& order, const ItemIndex& index) {
  if (order.size() != index.size()) {
    throw Error(ErrorCode::NotAPermutation, "ordering has " + std::to_string(order.size()) +
                                                " ids for " + std::to_string(index.size()) + " items");
  }
  std::vector<const Item*> out;
  out.reserve(order.size());
  for (const auto& id : order) {
    auto it = index.find(id);
    if (it == index.end()) throw Error(ErrorCode::UnknownItem, "id " + id);
    out.push_back(it->second);
  }
  auto sorted = out;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw Error(ErrorCode::NotAPermutation, "duplicate id in ordering");
  }
  return out;
}

Ordering to_ordering(const std::vector<const Item*>& seq) {
  Ordering out;
  out.reserve(seq.size());
  for (const auto* item : seq) out.push_back(item->id);
  return out;
}

const Scalar& attribute(const Item& item, const std::string& name) {
  auto it = item.attributes.find(name);
  if (it == item.attributes.end()) {
    throw Error(ErrorCode::MissingAttribute, "item " + item.id + " lacks \"" + name + "\"");
  }
  return it->second;
}

std::optional<double> ordinal_label_rank(std::string label) {
  std::transform(label.begin(), label.end(), label.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  static const std::unordered_map<std::string, double> kLadder{
      {"xs", 0},    {"extra small", 0}, {"s", 1},  {"small", 1},       {"m", 2},  {"medium", 2},
      {"l", 3},     {"large", 3},       {"xl", 4}, {"extra large", 4}, {"xxl", 5}};
  auto it = kLadder.find(label);
  if (it == kLadder.end()) return std::nullopt;
  return it->second;
}

double sort_key(const Item& item, const SortByKey& sort) {
  if (sort.key_kind == KeyKind::TextLength) return static_cast<double>(char_count(item.text));
  const Scalar& v = attribute(item, sort.attribute);
  auto mismatch = [&] {
    return Error(ErrorCode::TypeMismatch, "item " + item.id + " attribute \"" + sort.attribute +
                                              "\" is a " + std::string(to_string(kind_of(v))));
  };
  switch (sort.key_kind) {
    case KeyKind::Number:
      if (const auto* n = std::get_if<Number>(&v)) return n->value;
      throw mismatch();
    case KeyKind::Date:
      if (const auto* d = std::get_if<Date>(&v)) return static_cast<double>(d->ordinal());
      throw mismatch();
    case KeyKind::OrdinalLabel:
      if (const auto* n = std::get_if<Number>(&v)) return n->value;
      if (const auto* s = std::get_if<std::string>(&v)) {
        if (auto rank = ordinal_label_rank(*s)) return *rank;
      }
      throw mismatch();
    case KeyKind::TextLength:
      break;
  }
  throw mismatch();
}

double comparable_value(const Scalar& v, const Item& item, const std::string& attr) {
  if (const auto* n = std::get_if<Number>(&v)) return n->value;
  if (const auto* d = std::get_if<Date>(&v)) return static_cast<double>(d->ordinal());
  throw Error(ErrorCode::TypeMismatch,
              "item " + item.id + " attribute \"" + attr + "\" is not orderable");
}

// Evaluates predicates over a fixed item set; IsMax/IsMin extremes are
// computed once over the whole set.
class PredicateEval {
 public:
  PredicateEval(const Predicate& pred, const std::vector<const Item*>& items) : pred_(pred) {
    if (pred.op == PredicateOp::IsMax || pred.op == PredicateOp::IsMin) {
      for (const auto* item : items) {
        const double v = comparable_value(attribute(*item, pred.attribute), *item, pred.attribute);
        if (!extreme_ || (pred.op == PredicateOp::IsMax ? v > *extreme_ : v < *extreme_)) {
          extreme_ = v;
        }
      }
    }
  }

  bool operator()(const Item& item) const {
    const Scalar& v = attribute(item, pred_.attribute);
    switch (pred_.op) {
      case PredicateOp::IsMax:
      case PredicateOp::IsMin:
        return comparable_value(v, item, pred_.attribute) == *extreme_;
      case PredicateOp::Eq: {
        const Scalar& want = *pred_.value;
        if (std::holds_alternative<std::string>(want) || std::holds_alternative<std::string>(v)) {
          return to_text(v) == to_text(want);
        }
        if (v.index() != want.index()) throw type_error(item);
        return comparable_value(v, item, pred_.attribute) ==
               comparable_value(want, item, pred_.attribute);
      }
      case PredicateOp::Lt:
      case PredicateOp::Gt: {
        const Scalar& bound = *pred_.value;
        if (std::holds_alternative<std::string>(bound) || v.index() != bound.index()) {
          throw type_error(item);
        }
        const double lhs = comparable_value(v, item, pred_.attribute);
        const double rhs = comparable_value(bound, item, pred_.attribute);
        return pred_.op == PredicateOp::Lt ? lhs < rhs : lhs > rhs;
      }
    }
    return false;
  }

 private:
  Error type_error(const Item& item) const {
    return Error(ErrorCode::TypeMismatch, "item " + item.id + " attribute \"" + pred_.attribute +
                                              "\" is not comparable with the predicate value");
  }

  const Predicate& pred_;
  std::optional<double> extreme_;
};

const Item* select_by_text(const std::vector<const Item*>& seq, const std::string& text) {
  const Item* found = nullptr;
  for (const auto* item : seq) {
    if (item->text == text) {
      if (found) throw Error(ErrorCode::UnknownItem, "\"" + text + "\" matches several items");
      found = item;
    }
  }
  if (!found) throw Error(ErrorCode::UnknownItem, "\"" + text + "\" matches no item");
  return found;
}

const Item* select(const std::vector<const Item*>& seq, const Selector& sel) {
  switch (sel.kind) {
    case SelectorKind::ByItemText: return select_by_text(seq, sel.text);
    case SelectorKind::CurrentFirst: return seq.front();
    case SelectorKind::CurrentLast: return seq.back();
  }
  return nullptr;
}

struct Applier {
  std::vector<const Item*>& seq;

  void operator()(const SortByKey& sort) const {
    std::vector<std::pair<double, const Item*>> keyed;
    keyed.reserve(seq.size());
    for (const auto* item : seq) keyed.emplace_back(sort_key(*item, sort), item);
    const bool asc = sort.order == SortOrder::Ascending;
    std::stable_sort(keyed.begin(), keyed.end(), [asc](const auto& a, const auto& b) {
      return asc ? a.first < b.first : b.first < a.first;
    });
    for (std::size_t i = 0; i < seq.size(); ++i) seq[i] = keyed[i].second;
  }

  void operator()(const PartitionMove& move) const {
    PredicateEval matches(move.predicate, seq);
    std::vector<char> flags;
    flags.reserve(seq.size());
    for (const auto* item : seq) flags.push_back(matches(*item) ? 1 : 0);
    const char front_flag = move.placement == Placement::Front ? 1 : 0;
    std::vector<const Item*> out;
    out.reserve(seq.size());
    for (std::size_t i = 0; i < seq.size(); ++i) {
      if (flags[i] == front_flag) out.push_back(seq[i]);
    }
    for (std::size_t i = 0; i < seq.size(); ++i) {
      if (flags[i] != front_flag) out.push_back(seq[i]);
    }
    seq = std::move(out);
  }

  void operator()(const PositionalMove& move) const {
    if (seq.empty()) return;
    const Item* chosen = select(seq, move.selector);
    auto it = std::find(seq.begin(), seq.end(), chosen);
    seq.erase(it);
    if (move.target == Placement::Front) {
      seq.insert(seq.begin(), chosen);
    } else {
      seq.push_back(chosen);
    }
  }
};

}  // namespace

std::string_view to_string(ItemLevel level) {
  return level == ItemLevel::Token ? "token" : "paragraph";
}

std::optional<ItemLevel> level_from_string(std::string_view s) {
  if (s == "token") return ItemLevel::Token;
  if (s == "paragraph") return ItemLevel::Paragraph;
  return std::nullopt;
}

std::size_t char_count(std::string_view text) {
  auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; };
  while (!text.empty() && is_space(text.front())) text.remove_prefix(1);
  while (!text.empty() && is_space(text.back())) text.remove_suffix(1);
  // Count UTF-8 lead bytes; continuation bytes are 10xxxxxx.
  return static_cast<std::size_t>(std::count_if(text.begin(), text.end(), [](char c) {
    return (static_cast<unsigned char>(c) & 0xC0) != 0x80;
  }));
}

Ordering ids_of(std::span<const Item> items) {
  Ordering out;
  out.reserve(items.size());
  for (const auto& item : items) out.push_back(item.id);
  return out;
}

std::vector<char> evaluate_predicate(const Predicate& pred, std::span<const Item> items) {
  std::vector<const Item*> seq;
  seq.reserve(items.size());
  for (const auto& item : items) seq.push_back(&item);
  PredicateEval matches(pred, seq);
  std::vector<char> out;
  out.reserve(items.size());
  for (const auto* item : seq) out.push_back(matches(*item) ? 1 : 0);
  return out;
}

Ordering apply_condition(const Ordering& order, std::span<const Item> items, const Condition& cond) {
  auto seq = resolve(order, index_items(items));
  std::visit(Applier{seq}, cond.directive);
  return to_ordering(seq);
}

Ordering gold_ranking(std::span<const Item> items, const Ordering& presented,
                      std::span<const Condition> conds) {
  if (conds.empty()) throw Error(ErrorCode::InvalidInput, "gold_ranking needs conditions");
  const auto index = index_items(items);
  auto seq = resolve(presented, index);
  for (const auto& cond : sort_by_priority(conds)) std::visit(Applier{seq}, cond.directive);
  return to_ordering(seq);
}

std::size_t violation_count(const Ordering& order, std::span<const Item> items,
                            const Condition& cond, const Ordering* reference) {
  if (is_identity(cond)) return 0;
  const auto index = index_items(items);
  const auto seq = resolve(order, index);
  if (seq.empty()) return 0;
  std::size_t count = 0;

  if (const auto* sort = std::get_if<SortByKey>(&cond.directive)) {
    std::vector<double> keys;
    keys.reserve(seq.size());
    for (const auto* item : seq) keys.push_back(sort_key(*item, *sort));
    const bool asc = sort->order == SortOrder::Ascending;
    for (std::size_t i = 0; i < keys.size(); ++i) {
      for (std::size_t j = i + 1; j < keys.size(); ++j) count += asc ? keys[j] < keys[i] : keys[j] > keys[i];
    }
    return count;
  }

  if (const auto* part = std::get_if<PartitionMove>(&cond.directive)) {
    PredicateEval matches(part->predicate, seq);
    const bool want_front = part->placement == Placement::Front;
    std::size_t back_block_seen = 0;
    for (const auto* item : seq) {
      if (matches(*item) == want_front) {
        count += back_block_seen;
      } else {
        ++back_block_seen;
      }
    }
    return count;
  }

  const auto& move = std::get<PositionalMove>(cond.directive);
  const Item* chosen = nullptr;
  if (move.selector.kind == SelectorKind::ByItemText) {
    chosen = select_by_text(seq, move.selector.text);
  } else {
    if (!reference) throw Error(ErrorCode::MissingReference, "self-referential positional condition");
    chosen = select(resolve(*reference, index), move.selector);
  }
  const auto pos = static_cast<std::size_t>(std::find(seq.begin(), seq.end(), chosen) - seq.begin());
  return move.target == Placement::Front ? pos : seq.size() - 1 - pos;
}

bool satisfies(const Ordering& order, std::span<const Item> items, const Condition& cond,
               const Ordering* reference) {
  return violation_count(order, items, cond, reference) == 0;
}

std::size_t inversion_distance(const Ordering& a, const Ordering& b) {
  std::unordered_map<std::string_view, std::size_t> pos;
  for (std::size_t i = 0; i < b.size(); ++i) pos.emplace(b[i], i);
  std::size_t inversions = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      if (pos.at(a[i]) > pos.at(a[j])) ++inversions;
    }
  }
  return inversions;
}

Ordering brute_force_gold(std::span<const Item> items, const Ordering& presented,
                          std::span<const Condition> conds) {
  if (items.size() > kBruteForceMaxItems) {
    throw Error(ErrorCode::TooManyItems, std::to_string(items.size()) + " items");
  }
  if (conds.empty()) throw Error(ErrorCode::InvalidInput, "brute_force_gold needs conditions");
  const auto sorted = sort_by_priority(conds);

  // references[j]: the order condition j is applied to in the fold.
  std::vector<Ordering> references{presented};
  for (const auto& cond : sorted) references.push_back(apply_condition(references.back(), items, cond));

  std::vector<std::size_t> perm(items.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::vector<Ordering> candidates;
  do {
    Ordering o;
    o.reserve(perm.size());
    for (auto i : perm) o.push_back(items[i].id);
    candidates.push_back(std::move(o));
  } while (std::next_permutation(perm.begin(), perm.end()));

  for (std::size_t j = sorted.size(); j-- > 0;) {
    std::vector<std::size_t> cost;
    cost.reserve(candidates.size());
    for (const auto& c : candidates) cost.push_back(violation_count(c, items, sorted[j], &references[j]));
    const auto least = *std::min_element(cost.begin(), cost.end());
    std::vector<Ordering> kept;
    for (std::size_t k = 0; k < candidates.size(); ++k) {
      if (cost[k] == least) kept.push_back(std::move(candidates[k]));
    }
    candidates = std::move(kept);
  }

  const Ordering& tie_reference = references[sorted.size() - 1];
  const Ordering* best = nullptr;
  std::size_t best_distance = 0;
  for (const auto& c : candidates) {
    const auto d = inversion_distance(c, tie_reference);
    if (!best || d < best_distance) {
      best = &c;
      best_distance = d;
    }
  }
  return *best;
}

}  // namespace mcrank
