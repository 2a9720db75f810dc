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

#include "mcrank/pipelines.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "mcrank/llm/parsers.hpp"

namespace mcrank {

using llm::PromptKind;

std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::Base: return "base";
    case Strategy::CoT: return "cot";
    case Strategy::Exsir: return "exsir";
  }
  return "?";
}

std::optional<Strategy> strategy_from_string(std::string_view s) {
  if (s == "base") return Strategy::Base;
  if (s == "cot") return Strategy::CoT;
  if (s == "exsir") return Strategy::Exsir;
  return std::nullopt;
}

namespace {

std::vector<std::string_view> lines_of(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(start, end - start);
    if (line.find_first_not_of(" \t\r") != std::string_view::npos) out.push_back(line);
    start = end + 1;
  }
  return out;
}

Ordering parse_ranking(std::string_view text, const std::vector<Item>& current, ItemLevel level) {
  if (level == ItemLevel::Token) return llm::parse_token_ranking(text, current);
  Ordering out;
  for (auto label : llm::parse_paragraph_ranking(text, current.size())) {
    out.push_back(current[label - 1].id);
  }
  return out;
}

// Chain-of-thought answers carry reasoning before the list; try the shortest
// trailing block of lines that parses.
Ordering parse_trailing_ranking(std::string_view text, const std::vector<Item>& current,
                                ItemLevel level) {
  const auto lines = lines_of(text);
  for (std::size_t k = 1; k <= lines.size(); ++k) {
    const auto* first = lines[lines.size() - k].data();
    const std::string_view tail(first, static_cast<std::size_t>(text.data() + text.size() - first));
    try {
      return parse_ranking(tail, current, level);
    } catch (const Error&) {
    }
  }
  return parse_ranking(text, current, level);
}

class Driver {
 public:
  Driver(const Sample& sample, llm::Backend& backend, const RunOptions& opts, Strategy strategy)
      : sample_(sample), backend_(backend), opts_(opts) {
    run_.sample_id = sample.id;
    run_.strategy = strategy;
  }

  // Sends one prompt, re-asking on parse failure. `parse` turns the answer
  // into the step's parsed list. Returns false once the run is Invalid.
  template <typename Parse>
  bool step(PromptKind kind, std::string prompt, Parse&& parse) {
    RunStep& st = run_.steps.emplace_back();
    st.prompt_kind = kind;
    st.rendered_prompt = std::move(prompt);
    const int index = static_cast<int>(run_.steps.size()) - 1;
    for (int attempt = 0; attempt <= opts_.parse_retries; ++attempt) {
      st.attempts = attempt + 1;
      llm::ModelRequest req;
      req.prompt_kind = kind;
      req.rendered_prompt = st.rendered_prompt;
      req.model_name = opts_.model_name;
      req.temperature = opts_.temperature;
      req.max_output_tokens = opts_.max_output_tokens;
      req.context = {sample_.id, index, attempt};
      req.bypass_cache = attempt > 0;
      try {
        auto resp = backend_.complete(req);
        st.raw_response = resp.text;
        st.cached = resp.cached;
        if (resp.usage) {
          run_.usage_totals.prompt_tokens += resp.usage->prompt_tokens;
          run_.usage_totals.completion_tokens += resp.usage->completion_tokens;
        }
      } catch (const Error& e) {
        return fail(st, e.code(), e.what());  // transport-level retries live in the backend
      } catch (const std::exception& e) {
        return fail(st, ErrorCode::TransportError, e.what());
      }
      try {
        st.parsed = parse(st.raw_response);
        st.error.clear();
        run_.error_code.reset();
        return true;
      } catch (const Error& e) {
        st.error = e.what();
        run_.error_code = e.code();
      }
    }
    return fail(st, *run_.error_code, st.error);
  }

  bool rank(PromptKind kind, std::string_view conditions, const Ordering& order, bool trailing) {
    std::vector<Item> current;
    current.reserve(order.size());
    for (const auto& id : order) {
      current.push_back(*std::find_if(sample_.items.begin(), sample_.items.end(),
                                      [&](const Item& i) { return i.id == id; }));
    }
    std::string prompt;
    try {
      prompt = llm::render_prompt(kind, conditions, current);
    } catch (const Error& e) {
      run_.steps.emplace_back().prompt_kind = kind;
      return fail(run_.steps.back(), e.code(), e.what());
    }
    const auto level = sample_.scenario.level;
    return step(kind, std::move(prompt), [&](std::string_view text) {
      return trailing ? parse_trailing_ranking(text, current, level)
                      : parse_ranking(text, current, level);
    });
  }

  RankingRun finish(bool ok) {
    if (ok) run_.predicted = Ordering(run_.steps.back().parsed);
    return std::move(run_);
  }

  RankingRun& run() { return run_; }

 private:
  bool fail(RunStep& st, ErrorCode code, std::string what) {
    st.error = what;
    run_.error_code = code;
    run_.error = fmt::format("step {}: {}", run_.steps.size() - 1, what);
    return false;
  }

  const Sample& sample_;
  llm::Backend& backend_;
  const RunOptions& opts_;
  RankingRun run_;
};

RankingRun run_single(const Sample& sample, llm::Backend& backend, const RunOptions& opts,
                      bool cot) {
  Driver d(sample, backend, opts, cot ? Strategy::CoT : Strategy::Base);
  const bool ok = d.rank(llm::ranking_kind(sample.scenario.level, cot), sample.condition_string,
                         sample.presented(), cot);
  return d.finish(ok);
}

}  // namespace

RankingRun run_base(const Sample& sample, llm::Backend& backend, const RunOptions& opts) {
  return run_single(sample, backend, opts, false);
}

RankingRun run_cot(const Sample& sample, llm::Backend& backend, const RunOptions& opts) {
  return run_single(sample, backend, opts, true);
}

RankingRun run_exsir(const Sample& sample, llm::Backend& backend, const RunOptions& opts) {
  Driver d(sample, backend, opts, Strategy::Exsir);
  auto& run = d.run();
  run.decomposition.emplace();

  const auto as_list = [](std::string_view text) { return llm::parse_condition_list(text); };
  if (!d.step(PromptKind::ExtractConditions,
              llm::render_prompt(PromptKind::ExtractConditions, sample.condition_string, {}),
              as_list)) {
    return d.finish(false);
  }
  run.decomposition->extracted = run.steps.back().parsed;

  const auto listed = llm::numbered_list(run.decomposition->extracted);
  if (!d.step(PromptKind::SortConditions,
              llm::render_prompt(PromptKind::SortConditions, listed, {}), as_list)) {
    return d.finish(false);
  }
  run.decomposition->sorted = run.steps.back().parsed;

  Ordering order = sample.presented();
  const auto kind = llm::ranking_kind(sample.scenario.level, false);
  for (std::size_t i = 0; i < run.decomposition->sorted.size(); ++i) {
    // Copy: the step list may reallocate while the condition is in use.
    const std::string cond = run.decomposition->sorted[i];
    if (!d.rank(kind, cond, order, false)) return d.finish(false);
    order = run.steps.back().parsed;
  }
  return d.finish(true);
}

RankingRun run_strategy(Strategy strategy, const Sample& sample, llm::Backend& backend,
                        const RunOptions& opts) {
  switch (strategy) {
    case Strategy::Base: return run_base(sample, backend, opts);
    case Strategy::CoT: return run_cot(sample, backend, opts);
    case Strategy::Exsir: return run_exsir(sample, backend, opts);
  }
  throw Error(ErrorCode::InvalidInput, "unknown strategy");
}

std::optional<Decomposition> decomposition_of(const RankingRun& run) {
  if (run.strategy != Strategy::Exsir) return std::nullopt;
  return run.decomposition;
}

}  // namespace mcrank
