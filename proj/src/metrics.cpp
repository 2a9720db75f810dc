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

#include "mcrank/metrics.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <tuple>
#include <unordered_map>

#include <fmt/format.h>

#include "mcrank/llm/parsers.hpp"

namespace mcrank {

std::vector<std::string> expected_decomposition(const Sample& sample) {
  std::vector<std::string> out;
  for (const auto& c : sort_by_priority(sample.conditions)) {
    out.push_back(llm::normalize_condition_text(c.surface));
  }
  return out;
}

SampleScore score_sample(const RankingRun& run, const Sample& sample) {
  if (run.sample_id != sample.id) {
    throw Error(ErrorCode::GoldMismatch,
                fmt::format("run {} scored against sample {}", run.sample_id, sample.id));
  }
  SampleScore s;
  s.sample_id = sample.id;
  s.strategy = run.strategy;

  if (run.strategy == Strategy::Exsir) {
    bool ok = false;
    if (run.decomposition && !run.decomposition->sorted.empty()) {
      std::vector<std::string> got;
      for (const auto& line : run.decomposition->sorted) {
        got.push_back(llm::normalize_condition_text(line));
      }
      ok = got == expected_decomposition(sample);
    }
    s.decomposition_correct = ok;
  }

  if (!run.predicted) {
    s.high_priority_satisfied = false;
    return s;
  }
  const auto& pred = *run.predicted;
  {
    auto a = pred;
    auto b = sample.gold;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b || std::adjacent_find(a.begin(), a.end()) != a.end()) {
      throw Error(ErrorCode::GoldMismatch,
                  fmt::format("prediction for {} is not a permutation of its items", sample.id));
    }
  }
  std::size_t hits = 0;
  for (std::size_t i = 0; i < pred.size(); ++i) hits += pred[i] == sample.gold[i];
  s.averaged = pred.empty() ? 1.0 : static_cast<double>(hits) / static_cast<double>(pred.size());
  s.exact = hits == pred.size() ? 1 : 0;

  const auto ordered = sort_by_priority(sample.conditions);
  const auto presented = sample.presented();
  const auto reference =
      ordered.size() > 1
          ? gold_ranking(sample.items, presented, std::span(ordered).first(ordered.size() - 1))
          : presented;
  s.high_priority_satisfied = satisfies(pred, sample.items, ordered.back(), &reference);
  return s;
}

std::string_view to_string(GroupDim d) {
  switch (d) {
    case GroupDim::Level: return "level";
    case GroupDim::Conditions: return "conds";
    case GroupDim::Items: return "items";
    case GroupDim::Category: return "category";
    case GroupDim::Strategy: return "strategy";
  }
  return "?";
}

std::vector<GroupDim> parse_group_by(std::string_view list) {
  std::vector<GroupDim> out;
  std::size_t start = 0;
  while (start <= list.size()) {
    auto end = list.find(',', start);
    if (end == std::string_view::npos) end = list.size();
    auto name = list.substr(start, end - start);
    while (!name.empty() && name.front() == ' ') name.remove_prefix(1);
    while (!name.empty() && name.back() == ' ') name.remove_suffix(1);
    if (!name.empty()) {
      auto it = std::find_if(kAllGroupDims.begin(), kAllGroupDims.end(),
                             [&](GroupDim d) { return to_string(d) == name; });
      if (it == kAllGroupDims.end()) {
        throw Error(ErrorCode::InvalidInput, fmt::format("unknown group-by dimension \"{}\"", name));
      }
      if (std::find(out.begin(), out.end(), *it) == out.end()) out.push_back(*it);
    }
    start = end + 1;
  }
  return out;
}

GroupStats& GroupStats::operator+=(const GroupStats& o) {
  n += o.n;
  sum_exact += o.sum_exact;
  sum_averaged += o.sum_averaged;
  n_high += o.n_high;
  sum_high += o.sum_high;
  n_decomposition += o.n_decomposition;
  sum_decomposition += o.sum_decomposition;
  return *this;
}

double GroupStats::accuracy_pct() const { return n ? 100.0 * sum_exact / n : 0.0; }
double GroupStats::avg_accuracy_pct() const { return n ? 100.0 * sum_averaged / n : 0.0; }

std::optional<double> GroupStats::high_priority_pct() const {
  if (!n_high) return std::nullopt;
  return 100.0 * static_cast<double>(sum_high) / static_cast<double>(n_high);
}

std::optional<double> GroupStats::decomposition_pct() const {
  if (!n_decomposition) return std::nullopt;
  return 100.0 * static_cast<double>(sum_decomposition) / static_cast<double>(n_decomposition);
}

namespace {

bool has(std::span<const GroupDim> dims, GroupDim d) {
  return std::find(dims.begin(), dims.end(), d) != dims.end();
}

int category_index(Category c) {
  auto it = std::find(kSampleCategories.begin(), kSampleCategories.end(), c);
  return static_cast<int>(it - kSampleCategories.begin());
}

// Values are collected and summed in sorted order so the floating-point
// result is the same for any input order.
struct Accumulator {
  std::vector<double> exact, averaged;
  long n_high = 0, sum_high = 0, n_decomposition = 0, sum_decomposition = 0;

  GroupStats finish() {
    std::sort(exact.begin(), exact.end());
    std::sort(averaged.begin(), averaged.end());
    GroupStats g;
    g.n = static_cast<long>(exact.size());
    g.sum_exact = std::accumulate(exact.begin(), exact.end(), 0.0);
    g.sum_averaged = std::accumulate(averaged.begin(), averaged.end(), 0.0);
    g.n_high = n_high;
    g.sum_high = sum_high;
    g.n_decomposition = n_decomposition;
    g.sum_decomposition = sum_decomposition;
    return g;
  }
};

std::string category_label(int idx) {
  if (idx == kAllCategoriesRow) return "All";
  return std::string(to_string(kSampleCategories[static_cast<std::size_t>(idx)]));
}

std::string pct(std::optional<double> v) { return v ? fmt::format("{:.1f}", *v) : std::string(); }

template <typename T, typename F>
std::string or_star(const std::optional<T>& v, F&& f) {
  return v ? f(*v) : std::string("*");
}

std::vector<std::string> csv_fields(const GroupKey& k, const GroupStats& g) {
  return {or_star(k.level, [](auto l) { return std::string(to_string(l)); }),
          or_star(k.n_conditions, [](int v) { return std::to_string(v); }),
          or_star(k.n_items, [](int v) { return std::to_string(v); }),
          or_star(k.category, category_label),
          or_star(k.strategy, [](auto s) { return std::string(to_string(s)); }),
          std::to_string(g.n),
          pct(g.accuracy_pct()),
          pct(g.avg_accuracy_pct()),
          pct(g.high_priority_pct()),
          pct(g.decomposition_pct())};
}

std::string emit_csv(const MetricsReport& report) {
  std::string out(kReportCsvHeader);
  out += '\n';
  for (const auto& [k, g] : report.rows) out += fmt::format("{}\n", fmt::join(csv_fields(k, g), ","));
  return out;
}

std::string emit_flat_markdown(const MetricsReport& report) {
  std::string out = "| level | conds | items | category | strategy | n | ACC | Avg ACC | High | Decomp |\n";
  out += "|---|---|---|---|---|---|---|---|---|---|\n";
  for (const auto& [k, g] : report.rows) {
    auto f = csv_fields(k, g);
    for (auto& cell : f) {
      if (cell.empty()) cell = "-";
    }
    out += fmt::format("| {} |\n", fmt::join(f, " | "));
  }
  return out;
}

std::string emit_paper_markdown(const MetricsReport& report) {
  using Block = std::tuple<std::optional<Strategy>, ItemLevel, int>;
  std::map<Block, std::map<int, std::map<int, GroupStats>>> blocks;  // block -> category -> items
  std::map<Block, std::set<int>> block_items;
  std::map<std::pair<std::optional<Strategy>, ItemLevel>, std::map<int, GroupStats>> summary;
  for (const auto& [k, g] : report.rows) {
    const Block b{k.strategy, *k.level, *k.n_conditions};
    blocks[b][*k.category][*k.n_items] = g;
    block_items[b].insert(*k.n_items);
    if (*k.category == kAllCategoriesRow) summary[{k.strategy, *k.level}][*k.n_conditions] += g;
  }

  std::string out;
  for (const auto& [b, cats] : blocks) {
    const auto& [strategy, level, conds] = b;
    out += fmt::format("### {}{} level, {} condition{}\n\n",
                       strategy ? fmt::format("{}, ", to_string(*strategy)) : std::string(),
                       to_string(level), conds, conds == 1 ? "" : "s");
    std::string head = "| Category |", rule = "|---|";
    for (int items : block_items[b]) {
      head += fmt::format(" {} items ACC | {} items Avg ACC |", items, items);
      rule += "---|---|";
    }
    out += head + "\n" + rule + "\n";
    for (const auto& [cat, by_items] : cats) {
      out += fmt::format("| {} |", category_label(cat));
      for (int items : block_items[b]) {
        auto it = by_items.find(items);
        if (it == by_items.end()) {
          out += " - | - |";
        } else {
          out += fmt::format(" {:.1f} | {:.1f} |", it->second.accuracy_pct(),
                             it->second.avg_accuracy_pct());
        }
      }
      out += "\n";
    }
    out += "\n";
  }

  const auto summary_table = [&](std::string_view title, std::vector<int> conds_cols,
                                 auto&& value) {
    std::string t = fmt::format("### {}\n\n| Strategy | Level |", title);
    std::string rule = "|---|---|";
    for (int c : conds_cols) {
      t += fmt::format(" {} condition{} |", c, c == 1 ? "" : "s");
      rule += "---|";
    }
    t += "\n" + rule + "\n";
    bool any = false;
    for (const auto& [key, by_conds] : summary) {
      std::string row = fmt::format("| {} | {} |", key.first ? to_string(*key.first) : "*",
                                    to_string(key.second));
      bool row_any = false;
      for (int c : conds_cols) {
        auto it = by_conds.find(c);
        std::optional<double> v = it == by_conds.end() ? std::nullopt : value(it->second);
        row += fmt::format(" {} |", v ? fmt::format("{:.1f}", *v) : "-");
        row_any |= v.has_value();
      }
      if (row_any) {
        t += row + "\n";
        any = true;
      }
    }
    return any ? t + "\n" : std::string();
  };
  out += summary_table("Decomposition accuracy", {2, 3},
                       [](const GroupStats& g) { return g.decomposition_pct(); });
  out += summary_table("High-priority condition satisfied", {1, 2, 3},
                       [](const GroupStats& g) { return g.high_priority_pct(); });
  return out;
}

}  // namespace

MetricsReport aggregate(std::span<const SampleScore> scores, std::span<const Sample> samples,
                        std::span<const GroupDim> group_by) {
  std::unordered_map<std::string_view, const Sample*> by_id;
  for (const auto& s : samples) by_id.emplace(s.id, &s);

  std::map<GroupKey, Accumulator> acc;
  for (const auto& sc : scores) {
    auto it = by_id.find(sc.sample_id);
    if (it == by_id.end()) {
      throw Error(ErrorCode::InvalidInput, fmt::format("score for unknown sample {}", sc.sample_id));
    }
    const Sample& sample = *it->second;
    GroupKey key;
    if (has(group_by, GroupDim::Level)) key.level = sample.scenario.level;
    if (has(group_by, GroupDim::Conditions)) key.n_conditions = sample.scenario.n_conditions;
    if (has(group_by, GroupDim::Items)) key.n_items = sample.scenario.n_items;
    if (has(group_by, GroupDim::Strategy)) key.strategy = sc.strategy;

    std::vector<GroupKey> keys;
    if (has(group_by, GroupDim::Category)) {
      key.category = category_index(sample.category);
      keys.push_back(key);
      key.category = kAllCategoriesRow;
    }
    keys.push_back(key);
    for (const auto& k : keys) {
      auto& a = acc[k];
      a.exact.push_back(sc.exact);
      a.averaged.push_back(sc.averaged);
      if (sc.high_priority_satisfied) {
        ++a.n_high;
        a.sum_high += *sc.high_priority_satisfied;
      }
      if (sc.decomposition_correct && sample.scenario.n_conditions >= 2) {
        ++a.n_decomposition;
        a.sum_decomposition += *sc.decomposition_correct;
      }
    }
  }

  MetricsReport report;
  report.group_by.assign(group_by.begin(), group_by.end());
  for (auto& [k, a] : acc) report.rows.emplace(k, a.finish());
  return report;
}

std::string emit_report(const MetricsReport& report, ReportFormat format) {
  if (format == ReportFormat::Csv) return emit_csv(report);
  const bool layout = has(report.group_by, GroupDim::Level) &&
                      has(report.group_by, GroupDim::Conditions) &&
                      has(report.group_by, GroupDim::Items) &&
                      has(report.group_by, GroupDim::Category);
  if (!layout || report.rows.empty()) return emit_flat_markdown(report);
  return emit_paper_markdown(report);
}

}  // namespace mcrank
