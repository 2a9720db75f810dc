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
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mcrank/benchgen.hpp"
#include "mcrank/pipelines.hpp"

namespace mcrank {

struct SampleScore {
  std::string sample_id;
  Strategy strategy = Strategy::Base;
  int exact = 0;
  double averaged = 0.0;
  std::optional<bool> high_priority_satisfied;
  std::optional<bool> decomposition_correct;  // EXSIR only

  friend bool operator==(const SampleScore&, const SampleScore&) = default;
};

/// Scores one run. Invalid runs score (0, 0) with the high-priority check
/// failed. The high-priority check resolves self-referential selectors
/// against the fold of the lower-priority conditions over the presented
/// order. Throws GoldMismatch when ids or item sets disagree.
SampleScore score_sample(const RankingRun& run, const Sample& sample);

/// The gold surfaces in ascending priority, normalized for comparison
/// against a decomposition's sorted list.
std::vector<std::string> expected_decomposition(const Sample& sample);

enum class GroupDim { Level, Conditions, Items, Category, Strategy };

inline constexpr std::array<GroupDim, 5> kAllGroupDims{
    GroupDim::Level, GroupDim::Conditions, GroupDim::Items, GroupDim::Category,
    GroupDim::Strategy};

std::string_view to_string(GroupDim d);
/// Parses a comma list such as "level,conds,items,category,strategy".
/// Throws InvalidInput on unknown names.
std::vector<GroupDim> parse_group_by(std::string_view list);

/// Ungrouped dimensions are nullopt. `category` indexes kSampleCategories;
/// kAllCategoriesRow marks the per-(level, conditions, items) "All" row.
struct GroupKey {
  std::optional<ItemLevel> level;
  std::optional<int> n_conditions;
  std::optional<int> n_items;
  std::optional<int> category;
  std::optional<Strategy> strategy;

  friend auto operator<=>(const GroupKey&, const GroupKey&) = default;
};

inline constexpr int kAllCategoriesRow = static_cast<int>(kSampleCategories.size());

/// Raw sums, so groups can be merged exactly.
struct GroupStats {
  long n = 0;
  double sum_exact = 0.0;
  double sum_averaged = 0.0;
  long n_high = 0;
  long sum_high = 0;
  long n_decomposition = 0;
  long sum_decomposition = 0;

  GroupStats& operator+=(const GroupStats& o);

  double accuracy_pct() const;
  double avg_accuracy_pct() const;
  std::optional<double> high_priority_pct() const;
  /// Reported for two and three conditions only.
  std::optional<double> decomposition_pct() const;
};

struct MetricsReport {
  std::vector<GroupDim> group_by;
  std::map<GroupKey, GroupStats> rows;
};

/// Joins scores to samples by id (InvalidInput if one is missing) and sums
/// each group. When grouping by category, an extra "All" row is added per
/// remaining key. The result does not depend on score order.
MetricsReport aggregate(std::span<const SampleScore> scores, std::span<const Sample> samples,
                        std::span<const GroupDim> group_by);

enum class ReportFormat { Csv, Markdown };

/// CSV is one row per group with one-decimal percentages. Markdown uses the
/// category-by-item-count table layout when level, conditions, items and
/// category are all grouped, followed by decomposition and high-priority
/// tables; otherwise it is a flat table of the CSV columns.
std::string emit_report(const MetricsReport& report, ReportFormat format);

inline constexpr std::string_view kReportCsvHeader =
    "level,n_conditions,n_items,category,strategy,n,accuracy_pct,avg_accuracy_pct,"
    "high_priority_pct,decomposition_pct";

}  // namespace mcrank
