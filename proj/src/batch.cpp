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

#include "mcrank/batch.hpp"

#include <algorithm>
#include <exception>

namespace mcrank::batch {

namespace {

using Index = std::ptrdiff_t;

Index ssize_of(std::size_t n) { return static_cast<Index>(n); }

bool mismatch(const Fixture& f) {
  try {
    return gold_ranking(f.items, f.presented, f.conditions) !=
           brute_force_gold(f.items, f.presented, f.conditions);
  } catch (const std::exception&) {
    return true;
  }
}

std::optional<SampleScore> try_score(const RankingRun& run, const Sample& sample) {
  try {
    return score_sample(run, sample);
  } catch (const Error&) {
    return std::nullopt;
  }
}

RankingRun guarded_run(const Sample& sample, llm::Backend& backend, Strategy strategy,
                       const RunOptions& opts) {
  try {
    return run_strategy(strategy, sample, backend, opts);
  } catch (const std::exception& e) {
    RankingRun r;
    r.sample_id = sample.id;
    r.strategy = strategy;
    r.error = e.what();
    return r;
  }
}

void check_sizes(std::span<const RankingRun> runs, std::span<const Sample> samples) {
  if (runs.size() != samples.size()) {
    throw Error(ErrorCode::InvalidInput, "score_all needs one run per sample");
  }
}

}  // namespace

std::vector<Ordering> gold_all(std::span<const Sample> samples) {
  std::vector<Ordering> out(samples.size());
  std::vector<std::exception_ptr> errors(samples.size());
  const Index n = ssize_of(samples.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (Index i = 0; i < n; ++i) {
    try {
      const auto& s = samples[static_cast<std::size_t>(i)];
      out[static_cast<std::size_t>(i)] = gold_ranking(s.items, s.presented(), s.conditions);
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

std::vector<Ordering> gold_all_serial(std::span<const Sample> samples) {
  std::vector<Ordering> out;
  out.reserve(samples.size());
  for (const auto& s : samples) out.push_back(gold_ranking(s.items, s.presented(), s.conditions));
  return out;
}

std::vector<std::size_t> brute_force_mismatches(std::span<const Fixture> fixtures) {
  std::vector<char> bad(fixtures.size(), 0);
  const Index n = ssize_of(fixtures.size());
#pragma omp parallel for schedule(dynamic, 8)
  for (Index i = 0; i < n; ++i) {
    bad[static_cast<std::size_t>(i)] = mismatch(fixtures[static_cast<std::size_t>(i)]);
  }
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < bad.size(); ++i) {
    if (bad[i]) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> brute_force_mismatches_serial(std::span<const Fixture> fixtures) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < fixtures.size(); ++i) {
    if (mismatch(fixtures[i])) out.push_back(i);
  }
  return out;
}

std::vector<std::optional<SampleScore>> score_all(std::span<const RankingRun> runs,
                                                  std::span<const Sample> samples) {
  check_sizes(runs, samples);
  std::vector<std::optional<SampleScore>> out(runs.size());
  const Index n = ssize_of(runs.size());
#pragma omp parallel for schedule(static)
  for (Index i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    out[k] = try_score(runs[k], samples[k]);
  }
  return out;
}

std::vector<std::optional<SampleScore>> score_all_serial(std::span<const RankingRun> runs,
                                                         std::span<const Sample> samples) {
  check_sizes(runs, samples);
  std::vector<std::optional<SampleScore>> out;
  out.reserve(runs.size());
  for (std::size_t i = 0; i < runs.size(); ++i) out.push_back(try_score(runs[i], samples[i]));
  return out;
}

std::vector<RankingRun> run_all(std::span<const Sample> samples, llm::Backend& backend,
                                Strategy strategy, const RunOptions& opts, int num_threads) {
  std::vector<RankingRun> out(samples.size());
  const Index n = ssize_of(samples.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(std::max(1, num_threads))
  for (Index i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    out[k] = guarded_run(samples[k], backend, strategy, opts);
  }
  return out;
}

std::vector<RankingRun> run_all_serial(std::span<const Sample> samples, llm::Backend& backend,
                                       Strategy strategy, const RunOptions& opts) {
  std::vector<RankingRun> out;
  out.reserve(samples.size());
  for (const auto& s : samples) out.push_back(guarded_run(s, backend, strategy, opts));
  return out;
}

}  // namespace mcrank::batch
