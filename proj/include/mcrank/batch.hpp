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
#include <vector>

#include "mcrank/benchgen.hpp"
#include "mcrank/metrics.hpp"
#include "mcrank/pipelines.hpp"

// Batch kernels over independent samples. Each OpenMP kernel has a serial
// twin with identical output, used by the tests and the benchmark.
namespace mcrank::batch {

struct Fixture {
  std::vector<Item> items;
  Ordering presented;
  std::vector<Condition> conditions;
};

/// gold_ranking for every sample. Rethrows the lowest-index failure.
std::vector<Ordering> gold_all(std::span<const Sample> samples);
std::vector<Ordering> gold_all_serial(std::span<const Sample> samples);

/// Indices (ascending) of fixtures where gold_ranking and brute_force_gold
/// disagree or either throws.
std::vector<std::size_t> brute_force_mismatches(std::span<const Fixture> fixtures);
std::vector<std::size_t> brute_force_mismatches_serial(std::span<const Fixture> fixtures);

/// Scores runs[i] against samples[i]; nullopt where score_sample throws.
std::vector<std::optional<SampleScore>> score_all(std::span<const RankingRun> runs,
                                                  std::span<const Sample> samples);
std::vector<std::optional<SampleScore>> score_all_serial(std::span<const RankingRun> runs,
                                                         std::span<const Sample> samples);

/// Runs the strategy on every sample with up to `num_threads` samples in
/// flight. The backend must be safe to call concurrently. Output order
/// follows `samples`.
std::vector<RankingRun> run_all(std::span<const Sample> samples, llm::Backend& backend,
                                Strategy strategy, const RunOptions& opts, int num_threads);
std::vector<RankingRun> run_all_serial(std::span<const Sample> samples, llm::Backend& backend,
                                       Strategy strategy, const RunOptions& opts);

}  // namespace mcrank::batch
