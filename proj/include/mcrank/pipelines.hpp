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
#include <string>
#include <string_view>
#include <vector>

#include "mcrank/benchgen.hpp"
#include "mcrank/error.hpp"
#include "mcrank/llm/backend.hpp"

namespace mcrank {

enum class Strategy { Base, CoT, Exsir };

std::string_view to_string(Strategy s);
std::optional<Strategy> strategy_from_string(std::string_view s);

struct RunStep {
  llm::PromptKind prompt_kind = llm::PromptKind::RankTokenLevel;
  std::string rendered_prompt;
  std::string raw_response;
  /// Item ids for ranking steps, condition lines for extract/sort steps.
  std::vector<std::string> parsed;
  int attempts = 0;
  bool cached = false;
  std::string error;  // empty on success
};

struct Decomposition {
  std::vector<std::string> extracted;
  std::vector<std::string> sorted;
};

struct RankingRun {
  std::string sample_id;
  Strategy strategy = Strategy::Base;
  std::optional<Ordering> predicted;  // nullopt = Invalid
  std::vector<RunStep> steps;
  std::optional<Decomposition> decomposition;
  llm::Usage usage_totals;
  std::optional<ErrorCode> error_code;
  std::string error;

  bool valid() const { return predicted.has_value(); }
};

struct RunOptions {
  std::string model_name = "oracle";
  double temperature = 0.0;
  int max_output_tokens = 1024;
  /// Re-asks allowed per step when the answer cannot be parsed.
  int parse_retries = 1;
};

/// One ranking prompt holding the full condition string.
RankingRun run_base(const Sample& sample, llm::Backend& backend, const RunOptions& opts = {});

/// As run_base with the chain-of-thought template. Only the trailing list
/// of the answer is parsed.
RankingRun run_cot(const Sample& sample, llm::Backend& backend, const RunOptions& opts = {});

/// Extract, sort by priority, then one ranking call per sorted condition,
/// each fed the previous step's ordering. The first ranking call sees the
/// presented order. A failing step ends the run as Invalid.
RankingRun run_exsir(const Sample& sample, llm::Backend& backend, const RunOptions& opts = {});

RankingRun run_strategy(Strategy strategy, const Sample& sample, llm::Backend& backend,
                        const RunOptions& opts = {});

/// The extract/sort record of an EXSIR run; nullopt for other strategies.
std::optional<Decomposition> decomposition_of(const RankingRun& run);

}  // namespace mcrank
