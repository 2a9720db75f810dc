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

#include <algorithm>
#include <numeric>

#include <fmt/format.h>

#include "mcrank/condition.hpp"
#include "mcrank/error.hpp"
#include "mcrank/llm/backend.hpp"
#include "mcrank/llm/parsers.hpp"
#include "mcrank/rng.hpp"

namespace mcrank::llm {

std::string_view to_string(BackendKind kind) {
  return kind == BackendKind::HttpChat ? "http" : "oracle";
}

std::optional<BackendKind> backend_kind_from_string(std::string_view s) {
  if (s == "http") return BackendKind::HttpChat;
  if (s == "oracle") return BackendKind::Oracle;
  return std::nullopt;
}

void validate(const BackendConfig& cfg) {
  if (cfg.concurrency_limit < 1) throw Error(ErrorCode::InvalidInput, "concurrency_limit must be >= 1");
  if (cfg.retry.max_attempts < 1) throw Error(ErrorCode::InvalidInput, "retry.max_attempts must be >= 1");
  if (cfg.retry.backoff_base_ms < 0) throw Error(ErrorCode::InvalidInput, "retry.backoff_base_ms must be >= 0");
  if (!(cfg.oracle_noise_epsilon >= 0.0 && cfg.oracle_noise_epsilon <= 1.0)) {
    throw Error(ErrorCode::InvalidInput, "oracle_noise_epsilon must lie in [0, 1]");
  }
  if (cfg.kind == BackendKind::HttpChat && cfg.base_url.empty()) {
    throw Error(ErrorCode::InvalidInput, "http backend needs base_url");
  }
}

OracleBackend::OracleBackend(BackendConfig cfg, std::span<const Item> catalog) : cfg_(std::move(cfg)) {
  validate(cfg_);
  for (const auto& item : catalog) {
    auto [it, inserted] = catalog_.emplace(item.text, item);
    if (!inserted && it->second.attributes != item.attributes) {
      throw Error(ErrorCode::InvalidInput,
                  fmt::format("items {} and {} share a text but not attributes", it->second.id, item.id));
    }
  }
}

ModelResponse OracleBackend::complete(const ModelRequest& req) {
  const auto parsed = parse_prompt(req.prompt_kind, req.rendered_prompt);
  ModelResponse resp;
  try {
    switch (req.prompt_kind) {
      case PromptKind::ExtractConditions: resp.text = answer_extract(parsed); break;
      case PromptKind::SortConditions: resp.text = answer_sort(parsed); break;
      default: resp.text = answer_ranking(req, parsed); break;
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::PromptUnparseable) throw;
    throw Error(ErrorCode::PromptUnparseable, e.what());
  }
  return resp;
}

std::string OracleBackend::answer_ranking(const ModelRequest& req, const ParsedPrompt& parsed) const {
  const auto conds = extract_conditions(parsed.conditions);
  std::vector<Item> items;
  items.reserve(parsed.item_texts.size());
  for (const auto& text : parsed.item_texts) {
    auto it = catalog_.find(text);
    if (it == catalog_.end()) {
      throw Error(ErrorCode::PromptUnparseable, fmt::format("unknown item text \"{}\"", text));
    }
    items.push_back(it->second);
  }
  auto answer = gold_ranking(items, ids_of(items), conds);

  // Both draws are made unconditionally so a larger epsilon perturbs a
  // superset of the steps a smaller one does.
  Rng rng(derive_seed(cfg_.rng_seed, {stable_hash(req.context.sample_id),
                                      static_cast<std::uint64_t>(req.context.step_index),
                                      static_cast<std::uint64_t>(req.context.attempt)}));
  const double u = rng.unit();
  const auto pair = answer.size() > 1 ? static_cast<std::size_t>(rng.below(answer.size() - 1)) : 0;
  if (answer.size() > 1 && u < cfg_.oracle_noise_epsilon) std::swap(answer[pair], answer[pair + 1]);

  std::vector<std::string> lines;
  const bool token = required_level(req.prompt_kind) == ItemLevel::Token;
  for (const auto& id : answer) {
    const auto pos = static_cast<std::size_t>(
        std::find_if(items.begin(), items.end(), [&](const Item& i) { return i.id == id; }) -
        items.begin());
    lines.push_back(token ? items[pos].text : fmt::format("Item-{}", pos + 1));
  }
  return fmt::format("{}", fmt::join(lines, token ? ", " : "\n"));
}

std::string OracleBackend::answer_extract(const ParsedPrompt& parsed) const {
  // Validates every fragment; the answer repeats them verbatim.
  const auto conds = extract_conditions(parsed.conditions);
  std::vector<std::string> fragments;
  for (const auto& c : conds) fragments.push_back(render_condition(c, true));
  return numbered_list(fragments);
}

std::string OracleBackend::answer_sort(const ParsedPrompt& parsed) const {
  const auto lines = parse_condition_list(parsed.conditions);
  std::vector<Condition> conds;
  for (const auto& line : lines) conds.push_back(parse_condition(line));
  std::vector<std::size_t> order(lines.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](auto a, auto b) { return conds[a].priority < conds[b].priority; });
  std::vector<std::string> sorted;
  for (auto i : order) sorted.push_back(lines[i]);
  return numbered_list(sorted);
}

std::unique_ptr<Backend> make_backend(const BackendConfig& cfg, std::span<const Item> catalog) {
  if (cfg.kind == BackendKind::Oracle) return std::make_unique<OracleBackend>(cfg, catalog);
  return std::make_unique<HttpChatBackend>(cfg);
}

}  // namespace mcrank::llm
