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

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mcrank/benchgen.hpp"
#include "mcrank/metrics.hpp"
#include "mcrank/pipelines.hpp"

namespace mcrank::io {

using nlohmann::json;

std::optional<ErrorCode> error_code_from_string(std::string_view s);

/// Plain decimals whose text is their shortest spelling become JSON numbers;
/// dates and unit-bearing numbers become strings. Reading infers the kind:
/// JSON numbers are Numbers, strings are tried as a date, then a number.
json scalar_to_json(const Scalar& s);
Scalar scalar_from_json(const json& j);

json item_to_json(const Item& item);
Item item_from_json(const json& j);

json sample_to_json(const Sample& s);
/// Conditions are re-parsed from the condition string and checked against
/// the stored template ids; the gold ranking must be a permutation of the
/// items. Throws InvalidInput otherwise.
Sample sample_from_json(const json& j);

json run_to_json(const RankingRun& r);
RankingRun run_from_json(const json& j);

json score_to_json(const SampleScore& s);
SampleScore score_from_json(const json& j);

/// Parses every non-blank line. Errors name the file and line.
std::vector<json> read_jsonl(const std::filesystem::path& path);
/// Writes through a temporary file renamed into place.
void write_text_atomic(const std::filesystem::path& path, const std::string& content);

std::vector<Item> read_pool(const std::filesystem::path& path);
void write_pool(const std::filesystem::path& path, std::span<const Item> items);

std::vector<Sample> read_dataset(const std::filesystem::path& path);
void write_dataset(const std::filesystem::path& path, std::span<const Sample> samples);

std::vector<RankingRun> read_trace(const std::filesystem::path& path);
void write_trace(const std::filesystem::path& path, std::span<const RankingRun> runs);

std::vector<SampleScore> read_scores(const std::filesystem::path& path);
void write_scores(const std::filesystem::path& path, std::span<const SampleScore> scores);

}  // namespace mcrank::io
