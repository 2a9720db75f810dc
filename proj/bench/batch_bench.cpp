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


// Parallel batch kernels against their serial twins.

#include <algorithm>

#include <benchmark/benchmark.h>

#include "../tests/support/generators.hpp"
#include "mcrank/batch.hpp"

namespace mcrank {
namespace {

const std::vector<Sample>& samples() {
  static const std::vector<Sample> data = [] {
    std::vector<Sample> out;
    const ItemPool pools[2] = {synth_pool(ItemLevel::Token, 400, 11), synth_pool(ItemLevel::Paragraph, 400, 11)};
    for (const auto& sc : all_scenarios()) {
      for (auto& s : generate_scenario(pools[sc.level == ItemLevel::Paragraph], sc, 40, 5)) {
        out.push_back(std::move(s));
      }
    }
    return out;
  }();
  return data;
}

const std::vector<batch::Fixture>& fixtures() {
  static const auto data = testing::generated_fixtures(600, {3, 5}, 23);
  return data;
}

const std::vector<RankingRun>& runs() {
  static const std::vector<RankingRun> data = [] {
    std::vector<RankingRun> out;
    for (const auto& s : samples()) {
      RankingRun r;
      r.sample_id = s.id;
      r.strategy = Strategy::Base;
      r.predicted = s.gold;
      if (out.size() % 2) std::reverse(r.predicted->begin(), r.predicted->end());
      out.push_back(std::move(r));
    }
    return out;
  }();
  return data;
}

void BM_GoldAll(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(batch::gold_all(samples()));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(samples().size()));
}

void BM_GoldAllSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(batch::gold_all_serial(samples()));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(samples().size()));
}

void BM_BruteForce(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(batch::brute_force_mismatches(fixtures()));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(fixtures().size()));
}

void BM_BruteForceSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(batch::brute_force_mismatches_serial(fixtures()));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(fixtures().size()));
}

void BM_ScoreAll(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(batch::score_all(runs(), samples()));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(runs().size()));
}

void BM_ScoreAllSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(batch::score_all_serial(runs(), samples()));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(runs().size()));
}

void BM_RunAllOracle(benchmark::State& state) {
  std::vector<Item> catalog;
  for (const auto& s : samples()) catalog.insert(catalog.end(), s.items.begin(), s.items.end());
  llm::OracleBackend oracle({}, catalog);
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        threads == 0 ? batch::run_all_serial(samples(), oracle, Strategy::Exsir, {})
                     : batch::run_all(samples(), oracle, Strategy::Exsir, {}, threads));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(samples().size()));
}

BENCHMARK(BM_GoldAll)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GoldAllSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BruteForce)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BruteForceSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ScoreAll)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ScoreAllSerial)->Unit(benchmark::kMillisecond);
// Argument 0 selects the serial twin; otherwise it is the thread count.
BENCHMARK(BM_RunAllOracle)->Arg(0)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace mcrank

BENCHMARK_MAIN();
