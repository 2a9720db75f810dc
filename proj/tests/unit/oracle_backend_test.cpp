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


#include <cmath>

#include <gtest/gtest.h>

#include "mcrank/benchgen.hpp"
#include "mcrank/error.hpp"
#include "mcrank/llm/backend.hpp"
#include "mcrank/llm/parsers.hpp"
#include "mcrank/llm/prompts.hpp"

namespace mcrank::llm {
namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::InvalidInput;
}

std::vector<Sample> samples_for(ItemLevel level) {
  const auto pool = synth_pool(level, 300, 8);
  std::vector<Sample> out;
  for (const auto& sc : all_scenarios()) {
    if (sc.level != level) continue;
    for (auto& s : generate_scenario(pool, sc, 3, 4)) out.push_back(std::move(s));
  }
  return out;
}

BackendConfig oracle_config(double epsilon, std::uint64_t seed = 1) {
  BackendConfig cfg;
  cfg.kind = BackendKind::Oracle;
  cfg.oracle_noise_epsilon = epsilon;
  cfg.rng_seed = seed;
  return cfg;
}

Ordering ranking_answer(Backend& backend, const Sample& s, PromptKind kind, CallContext ctx = {}) {
  ModelRequest req;
  req.prompt_kind = kind;
  req.rendered_prompt = render_prompt(kind, s.condition_string, s.items);
  req.context = ctx;
  const auto text = backend.complete(req).text;
  if (required_level(kind) == ItemLevel::Token) return parse_token_ranking(text, s.items);
  Ordering out;
  for (auto label : parse_paragraph_ranking(text, s.items.size())) out.push_back(s.items[label - 1].id);
  return out;
}

TEST(OracleBackend, NoiselessAnswersMatchEngine) {
  for (auto level : {ItemLevel::Token, ItemLevel::Paragraph}) {
    const auto samples = samples_for(level);
    std::vector<Item> catalog;
    for (const auto& s : samples) catalog.insert(catalog.end(), s.items.begin(), s.items.end());
    OracleBackend oracle(oracle_config(0.0), catalog);
    for (const auto& s : samples) {
      for (bool cot : {false, true}) {
        EXPECT_EQ(ranking_answer(oracle, s, ranking_kind(level, cot), {s.id, 0, 0}), s.gold) << s.id;
      }

      ModelRequest extract{PromptKind::ExtractConditions,
                           render_prompt(PromptKind::ExtractConditions, s.condition_string, {})};
      const auto lines = parse_condition_list(oracle.complete(extract).text);
      ASSERT_EQ(lines.size(), s.conditions.size());
      for (std::size_t i = 0; i < lines.size(); ++i) EXPECT_EQ(parse_condition(lines[i]), s.conditions[i]);

      ModelRequest sort{PromptKind::SortConditions,
                        render_prompt(PromptKind::SortConditions, numbered_list(lines), {})};
      const auto sorted_lines = parse_condition_list(oracle.complete(sort).text);
      const auto expected = sort_by_priority(s.conditions);
      ASSERT_EQ(sorted_lines.size(), expected.size());
      for (std::size_t i = 0; i < expected.size(); ++i) {
        EXPECT_EQ(parse_condition(sorted_lines[i]), expected[i]);
      }
    }
  }
}

TEST(OracleBackend, FullNoiseSwapsTheOnlyPair) {
  const auto pool = synth_pool(ItemLevel::Token, 100, 3);
  Sample s;
  s.items = {pool.entries[0], pool.entries[1]};
  s.conditions = {make_condition(1, {s.items[0].text, ""})};
  s.condition_string = render_condition_string(s.conditions);
  OracleBackend oracle(oracle_config(1.0), s.items);
  EXPECT_EQ(ranking_answer(oracle, s, PromptKind::RankTokenLevel, {"x", 0, 0}),
            (Ordering{s.items[0].id, s.items[1].id}));
}

TEST(OracleBackend, SingleItemIsNeverPerturbed) {
  const auto pool = synth_pool(ItemLevel::Token, 100, 3);
  Sample s;
  s.items = {pool.entries[0]};
  s.conditions = {make_condition(31, {})};
  s.condition_string = render_condition_string(s.conditions);
  OracleBackend oracle(oracle_config(1.0), s.items);
  EXPECT_EQ(ranking_answer(oracle, s, PromptKind::RankTokenLevel), (Ordering{s.items[0].id}));
}

// The perturbation rate over many call contexts should match epsilon, and a
// larger epsilon should perturb every context a smaller one does.
TEST(OracleBackend, NoiseRateAndNesting) {
  const auto samples = samples_for(ItemLevel::Token);
  std::vector<Item> catalog;
  for (const auto& s : samples) catalog.insert(catalog.end(), s.items.begin(), s.items.end());
  OracleBackend low(oracle_config(0.3, 9), catalog);
  OracleBackend high(oracle_config(0.5, 9), catalog);
  int trials = 0, low_hits = 0, high_hits = 0;
  for (const auto& s : samples) {
    for (int step = 0; step < 12; ++step) {
      const CallContext ctx{s.id, step, 0};
      const bool a = ranking_answer(low, s, PromptKind::RankTokenLevel, ctx) != s.gold;
      const bool b = ranking_answer(high, s, PromptKind::RankTokenLevel, ctx) != s.gold;
      EXPECT_TRUE(!a || b) << s.id << " step " << step;
      low_hits += a;
      high_hits += b;
      ++trials;
    }
  }
  // Five standard deviations of a binomial proportion.
  auto tolerance = [&](double p) { return 5.0 * std::sqrt(p * (1 - p) / trials); };
  EXPECT_NEAR(static_cast<double>(low_hits) / trials, 0.3, tolerance(0.3));
  EXPECT_NEAR(static_cast<double>(high_hits) / trials, 0.5, tolerance(0.5));
}

TEST(OracleBackend, DeterministicPerContext) {
  const auto samples = samples_for(ItemLevel::Paragraph);
  std::vector<Item> catalog;
  for (const auto& s : samples) catalog.insert(catalog.end(), s.items.begin(), s.items.end());
  OracleBackend a(oracle_config(0.5, 2), catalog);
  OracleBackend b(oracle_config(0.5, 2), catalog);
  for (const auto& s : samples) {
    for (int attempt = 0; attempt < 3; ++attempt) {
      const CallContext ctx{s.id, 1, attempt};
      EXPECT_EQ(ranking_answer(a, s, PromptKind::RankParagraphLevel, ctx),
                ranking_answer(b, s, PromptKind::RankParagraphLevel, ctx));
    }
  }
}

TEST(OracleBackend, Errors) {
  const auto pool = synth_pool(ItemLevel::Token, 100, 3);
  std::vector<Item> catalog{pool.entries[0], pool.entries[1]};
  OracleBackend oracle(oracle_config(0.0), catalog);

  ModelRequest garbage{PromptKind::RankTokenLevel, "rank these please"};
  EXPECT_EQ(code_of([&] { oracle.complete(garbage); }), ErrorCode::PromptUnparseable);

  std::vector<Item> unknown{pool.entries[2], pool.entries[3]};
  ModelRequest stranger{PromptKind::RankTokenLevel,
                        render_prompt(PromptKind::RankTokenLevel, make_condition(31, {}).surface, unknown)};
  EXPECT_EQ(code_of([&] { oracle.complete(stranger); }), ErrorCode::PromptUnparseable);

  auto clash = pool.entries[0];
  clash.id = "other";
  clash.attributes["size"] = make_number(123456);
  std::vector<Item> conflicting{pool.entries[0], clash};
  EXPECT_EQ(code_of([&] { OracleBackend(oracle_config(0.0), conflicting); }), ErrorCode::InvalidInput);
}

TEST(BackendConfig, Validation) {
  EXPECT_EQ(code_of([] { validate(oracle_config(1.5)); }), ErrorCode::InvalidInput);
  EXPECT_EQ(code_of([] { validate(oracle_config(-0.1)); }), ErrorCode::InvalidInput);
  auto cfg = oracle_config(0.0);
  cfg.concurrency_limit = 0;
  EXPECT_EQ(code_of([&] { validate(cfg); }), ErrorCode::InvalidInput);
  cfg = oracle_config(0.0);
  cfg.kind = BackendKind::HttpChat;
  EXPECT_EQ(code_of([&] { validate(cfg); }), ErrorCode::InvalidInput);
  cfg.base_url = "http://localhost:1";
  EXPECT_NO_THROW(validate(cfg));
  EXPECT_EQ(backend_kind_from_string(to_string(BackendKind::HttpChat)), BackendKind::HttpChat);
  EXPECT_FALSE(backend_kind_from_string("grpc"));
}

}  // namespace
}  // namespace mcrank::llm
