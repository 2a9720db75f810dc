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

#include "mcrank/config.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <charconv>
#include <type_traits>

#include <fmt/format.h>
#include <toml.hpp>

#include "mcrank/rng.hpp"

namespace mcrank {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::InvalidInput, what); }

std::string_view trim(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    auto end = s.find(sep, start);
    if (end == std::string_view::npos) end = s.size();
    out.push_back(trim(s.substr(start, end - start)));
    start = end + 1;
  }
  return out;
}

int to_int(std::string_view key, std::string_view v) {
  int out = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size()) bad(fmt::format("{}: \"{}\" is not an integer", key, v));
  return out;
}

}  // namespace

bool ScenarioFilter::matches(const Scenario& s) const {
  return (levels.empty() || levels.count(s.level)) &&
         (n_conditions.empty() || n_conditions.count(s.n_conditions)) &&
         (n_items.empty() || n_items.count(s.n_items));
}

bool ScenarioFilter::matches(const Sample& s) const {
  return matches(s.scenario) && (categories.empty() || categories.count(s.category));
}

ScenarioFilter parse_filter(std::string_view text) {
  ScenarioFilter f;
  if (trim(text).empty()) return f;
  for (auto clause : split(text, ',')) {
    if (clause.empty()) continue;
    const auto eq = clause.find('=');
    if (eq == std::string_view::npos) bad(fmt::format("filter clause \"{}\" lacks '='", clause));
    const auto key = trim(clause.substr(0, eq));
    for (auto v : split(clause.substr(eq + 1), '|')) {
      if (key == "level") {
        auto l = level_from_string(v);
        if (!l) bad(fmt::format("unknown level \"{}\"", v));
        f.levels.insert(*l);
      } else if (key == "conds") {
        f.n_conditions.insert(to_int(key, v));
      } else if (key == "items") {
        f.n_items.insert(to_int(key, v));
      } else if (key == "category") {
        auto c = category_from_string(v);
        if (!c) bad(fmt::format("unknown category \"{}\"", v));
        f.categories.insert(*c);
      } else {
        bad(fmt::format("unknown filter key \"{}\"", key));
      }
    }
  }
  return f;
}

std::string interpolate_env(std::string_view text) {
  std::string out;
  std::size_t pos = 0;
  while (true) {
    const auto open = text.find("${", pos);
    if (open == std::string_view::npos) break;
    const auto close = text.find('}', open + 2);
    if (close == std::string_view::npos) bad(fmt::format("unterminated ${{ in \"{}\"", text));
    out.append(text.substr(pos, open - pos));
    const std::string name(text.substr(open + 2, close - open - 2));
    const char* value = std::getenv(name.c_str());
    if (!value) bad(fmt::format("environment variable {} is not set", name));
    out += value;
    pos = close + 1;
  }
  out.append(text.substr(pos));
  return out;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  toml::table tbl;
  try {
    tbl = toml::parse_file(path.string());
  } catch (const toml::parse_error& e) {
    bad(fmt::format("{}: {}", path.string(), e.description()));
  }
  RunConfig cfg;
  const auto str = [](toml::node_view<toml::node> n, std::string& dst) {
    if (auto v = n.value<std::string>()) dst = interpolate_env(*v);
  };
  const auto num = [](toml::node_view<toml::node> n, auto& dst) {
    using T = std::remove_reference_t<decltype(dst)>;
    if (auto v = n.value<T>()) dst = *v;
  };

  str(tbl["dataset"], cfg.dataset_path);
  str(tbl["output_dir"], cfg.output_dir);
  std::string s;
  str(tbl["strategy"], s);
  if (!s.empty()) {
    auto st = strategy_from_string(s);
    if (!st) bad(fmt::format("unknown strategy \"{}\"", s));
    cfg.strategy = *st;
  }
  s.clear();
  str(tbl["filter"], s);
  cfg.filter = parse_filter(s);
  if (auto v = tbl["limit"].value<int>()) cfg.sample_limit = *v;
  if (auto v = tbl["seed"].value<std::int64_t>()) cfg.seed = static_cast<std::uint64_t>(*v);
  str(tbl["model"], cfg.run.model_name);
  num(tbl["temperature"], cfg.run.temperature);
  num(tbl["max_output_tokens"], cfg.run.max_output_tokens);
  num(tbl["parse_retries"], cfg.run.parse_retries);

  auto b = tbl["backend"];
  s.clear();
  str(b["kind"], s);
  if (!s.empty()) {
    auto k = llm::backend_kind_from_string(s);
    if (!k) bad(fmt::format("unknown backend \"{}\"", s));
    cfg.backend.kind = *k;
  }
  str(b["base_url"], cfg.backend.base_url);
  str(b["api_key_env"], cfg.backend.api_key_env_name);
  str(b["cache_dir"], cfg.backend.cache_dir);
  num(b["concurrency"], cfg.backend.concurrency_limit);
  num(b["epsilon"], cfg.backend.oracle_noise_epsilon);
  num(b["retry"]["max_attempts"], cfg.backend.retry.max_attempts);
  num(b["retry"]["backoff_base_ms"], cfg.backend.retry.backoff_base_ms);
  cfg.backend.rng_seed = cfg.seed;
  return cfg;
}

std::vector<Sample> select_samples(std::span<const Sample> samples, const ScenarioFilter& filter,
                                   std::optional<int> limit, std::uint64_t seed) {
  std::map<int, std::vector<std::size_t>> by_scenario;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (filter.matches(samples[i])) by_scenario[scenario_index(samples[i].scenario)].push_back(i);
  }
  std::vector<std::size_t> keep;
  for (auto& [idx, members] : by_scenario) {
    if (limit && static_cast<int>(members.size()) > *limit) {
      Rng rng(derive_seed(seed, {static_cast<std::uint64_t>(idx), 0x11u}));
      rng.shuffle(members);
      members.resize(static_cast<std::size_t>(std::max(0, *limit)));
    }
    keep.insert(keep.end(), members.begin(), members.end());
  }
  std::sort(keep.begin(), keep.end());
  std::vector<Sample> out;
  out.reserve(keep.size());
  for (auto i : keep) out.push_back(samples[i]);
  return out;
}

}  // namespace mcrank
