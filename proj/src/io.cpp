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

#include "mcrank/io.hpp"

#include <fstream>
#include <regex>
#include <algorithm>

#include <fmt/format.h>

namespace mcrank::io {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::InvalidInput, what); }

template <typename T, typename F>
T enum_field(const json& j, const char* key, F&& from_string) {
  const auto s = j.at(key).get<std::string>();
  auto v = from_string(s);
  if (!v) bad(fmt::format("unknown {} \"{}\"", key, s));
  return *v;
}

template <typename T, typename ToJson>
std::string jsonl(std::span<const T> values, ToJson&& to_json) {
  std::string out;
  for (const auto& v : values) {
    out += to_json(v).dump();
    out += '\n';
  }
  return out;
}

template <typename T, typename FromJson>
std::vector<T> load(const std::filesystem::path& path, FromJson&& from_json) {
  std::vector<T> out;
  std::size_t line = 0;
  for (const auto& j : read_jsonl(path)) {
    ++line;
    try {
      out.push_back(from_json(j));
    } catch (const json::exception& e) {
      bad(fmt::format("{}: record {}: {}", path.string(), line, e.what()));
    } catch (const Error& e) {
      bad(fmt::format("{}: record {}: {}", path.string(), line, e.what()));
    }
  }
  return out;
}


// Schema violations surface as InvalidInput rather than json exceptions.
template <typename T, typename F>
T guarded(const json& j, F&& parse) {
  try {
    return parse(j);
  } catch (const json::exception& e) {
    bad(e.what());
  }
}

}  // namespace

std::optional<ErrorCode> error_code_from_string(std::string_view s) {
  for (int i = 0; i <= static_cast<int>(ErrorCode::InvalidInput); ++i) {
    if (to_string(static_cast<ErrorCode>(i)) == s) return static_cast<ErrorCode>(i);
  }
  return std::nullopt;
}

json scalar_to_json(const Scalar& s) {
  if (const auto* n = std::get_if<Number>(&s)) {
    static const std::regex kPlain(R"(-?\d+(\.\d+)?)");
    if (std::regex_match(n->text, kPlain) && make_number(n->value).text == n->text) return n->value;
    return n->text;
  }
  return to_text(s);
}

Scalar scalar_from_json(const json& j) {
  if (j.is_number()) return make_number(j.get<double>());
  if (!j.is_string()) bad(fmt::format("attribute value {} is neither a string nor a number", j.dump()));
  const auto text = j.get<std::string>();
  if (auto d = parse_date(text)) return *d;
  if (auto n = parse_number(text)) return *n;
  return text;
}

json item_to_json(const Item& item) {
  json attrs = json::object();
  for (const auto& [k, v] : item.attributes) attrs[k] = scalar_to_json(v);
  return {{"id", item.id},
          {"text", item.text},
          {"level", to_string(item.level)},
          {"attributes", attrs},
          {"positional_ok", item.positional_ok}};
}

static Item item_from_json_unchecked(const json& j) {
  Item item;
  item.id = j.at("id").get<std::string>();
  item.text = j.at("text").get<std::string>();
  item.level = enum_field<ItemLevel>(j, "level", level_from_string);
  if (auto it = j.find("attributes"); it != j.end()) {
    for (const auto& [k, v] : it->items()) item.attributes[k] = scalar_from_json(v);
  }
  item.positional_ok = j.value("positional_ok", false);
  return item;
}

json sample_to_json(const Sample& s) {
  json conds = json::array();
  for (const auto& c : s.conditions) {
    conds.push_back({{"template_id", c.template_id},
                     {"category", to_string(c.category)},
                     {"priority", to_string(c.priority)},
                     {"surface", c.surface}});
  }
  json items = json::array();
  for (const auto& i : s.items) items.push_back(item_to_json(i));
  return {{"id", s.id},
          {"scenario",
           {{"level", to_string(s.scenario.level)},
            {"n_conditions", s.scenario.n_conditions},
            {"n_items", s.scenario.n_items}}},
          {"category", to_string(s.category)},
          {"conditions", conds},
          {"condition_string", s.condition_string},
          {"items", items},
          {"gold", s.gold},
          {"seed_trace", s.seed_trace}};
}

static Sample sample_from_json_unchecked(const json& j) {
  Sample s;
  s.id = j.at("id").get<std::string>();
  const auto& sc = j.at("scenario");
  s.scenario.level = enum_field<ItemLevel>(sc, "level", level_from_string);
  s.scenario.n_conditions = sc.at("n_conditions").get<int>();
  s.scenario.n_items = sc.at("n_items").get<int>();
  s.category = enum_field<Category>(j, "category", category_from_string);
  s.condition_string = j.at("condition_string").get<std::string>();
  s.conditions = extract_conditions(s.condition_string);
  const auto& stored = j.at("conditions");
  if (stored.size() != s.conditions.size()) {
    bad(fmt::format("sample {}: {} stored conditions, {} in the condition string", s.id,
                    stored.size(), s.conditions.size()));
  }
  for (std::size_t i = 0; i < stored.size(); ++i) {
    if (canonical_template_id(stored[i].at("template_id").get<int>()) != s.conditions[i].template_id) {
      bad(fmt::format("sample {}: condition {} does not match its template id", s.id, i));
    }
  }
  for (const auto& i : j.at("items")) s.items.push_back(item_from_json(i));
  s.gold = j.at("gold").get<Ordering>();
  s.seed_trace = j.value("seed_trace", std::uint64_t{0});
  auto a = s.gold;
  auto b = s.presented();
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  if (a != b) bad(fmt::format("sample {}: gold is not a permutation of its items", s.id));
  return s;
}

json run_to_json(const RankingRun& r) {
  json steps = json::array();
  for (const auto& st : r.steps) {
    steps.push_back({{"prompt_kind", llm::to_string(st.prompt_kind)},
                     {"rendered_prompt", st.rendered_prompt},
                     {"raw_response", st.raw_response},
                     {"parsed", st.parsed},
                     {"attempts", st.attempts},
                     {"cached", st.cached},
                     {"error", st.error}});
  }
  json out{{"sample_id", r.sample_id},
           {"strategy", to_string(r.strategy)},
           {"predicted", r.predicted ? json(*r.predicted) : json(nullptr)},
           {"steps", steps},
           {"decomposition", nullptr},
           {"usage_totals",
            {{"prompt_tokens", r.usage_totals.prompt_tokens},
             {"completion_tokens", r.usage_totals.completion_tokens}}},
           {"error_code", r.error_code ? json(to_string(*r.error_code)) : json(nullptr)},
           {"error", r.error}};
  if (r.decomposition) {
    out["decomposition"] = {{"extracted", r.decomposition->extracted},
                            {"sorted", r.decomposition->sorted}};
  }
  return out;
}

static RankingRun run_from_json_unchecked(const json& j) {
  RankingRun r;
  r.sample_id = j.at("sample_id").get<std::string>();
  r.strategy = enum_field<Strategy>(j, "strategy", strategy_from_string);
  if (const auto& p = j.at("predicted"); !p.is_null()) r.predicted = p.get<Ordering>();
  for (const auto& s : j.at("steps")) {
    RunStep st;
    st.prompt_kind = enum_field<llm::PromptKind>(s, "prompt_kind", llm::prompt_kind_from_string);
    st.rendered_prompt = s.at("rendered_prompt").get<std::string>();
    st.raw_response = s.at("raw_response").get<std::string>();
    st.parsed = s.at("parsed").get<std::vector<std::string>>();
    st.attempts = s.value("attempts", 1);
    st.cached = s.value("cached", false);
    st.error = s.value("error", "");
    r.steps.push_back(std::move(st));
  }
  if (const auto& d = j.at("decomposition"); !d.is_null()) {
    r.decomposition = Decomposition{d.at("extracted").get<std::vector<std::string>>(),
                                    d.at("sorted").get<std::vector<std::string>>()};
  }
  if (auto it = j.find("usage_totals"); it != j.end()) {
    r.usage_totals = {it->value("prompt_tokens", 0L), it->value("completion_tokens", 0L)};
  }
  if (auto it = j.find("error_code"); it != j.end() && !it->is_null()) {
    r.error_code = enum_field<ErrorCode>(j, "error_code", error_code_from_string);
  }
  r.error = j.value("error", "");
  return r;
}

json score_to_json(const SampleScore& s) {
  const auto opt = [](const std::optional<bool>& b) { return b ? json(*b) : json(nullptr); };
  return {{"sample_id", s.sample_id},
          {"strategy", to_string(s.strategy)},
          {"exact", s.exact},
          {"averaged", s.averaged},
          {"high_priority_satisfied", opt(s.high_priority_satisfied)},
          {"decomposition_correct", opt(s.decomposition_correct)}};
}

static SampleScore score_from_json_unchecked(const json& j) {
  SampleScore s;
  s.sample_id = j.at("sample_id").get<std::string>();
  s.strategy = enum_field<Strategy>(j, "strategy", strategy_from_string);
  s.exact = j.at("exact").get<int>();
  s.averaged = j.at("averaged").get<double>();
  for (auto [key, field] : {std::pair{"high_priority_satisfied", &s.high_priority_satisfied},
                            std::pair{"decomposition_correct", &s.decomposition_correct}}) {
    if (auto it = j.find(key); it != j.end() && !it->is_null()) *field = it->get<bool>();
  }
  return s;
}

std::vector<json> read_jsonl(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) bad(fmt::format("cannot open {}", path.string()));
  std::vector<json> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(json::parse(line));
    } catch (const json::parse_error& e) {
      bad(fmt::format("{}:{}: {}", path.string(), lineno, e.what()));
    }
  }
  return out;
}

void write_text_atomic(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) bad(fmt::format("cannot write {}", tmp.string()));
    out << content;
    if (!out.flush()) bad(fmt::format("write to {} failed", tmp.string()));
  }
  std::filesystem::rename(tmp, path);
}

std::vector<Item> read_pool(const std::filesystem::path& path) {
  return load<Item>(path, item_from_json);
}

void write_pool(const std::filesystem::path& path, std::span<const Item> items) {
  write_text_atomic(path, jsonl(items, item_to_json));
}

std::vector<Sample> read_dataset(const std::filesystem::path& path) {
  return load<Sample>(path, sample_from_json);
}

void write_dataset(const std::filesystem::path& path, std::span<const Sample> samples) {
  write_text_atomic(path, jsonl(samples, sample_to_json));
}

std::vector<RankingRun> read_trace(const std::filesystem::path& path) {
  return load<RankingRun>(path, run_from_json);
}

void write_trace(const std::filesystem::path& path, std::span<const RankingRun> runs) {
  write_text_atomic(path, jsonl(runs, run_to_json));
}

std::vector<SampleScore> read_scores(const std::filesystem::path& path) {
  return load<SampleScore>(path, score_from_json);
}

void write_scores(const std::filesystem::path& path, std::span<const SampleScore> scores) {
  write_text_atomic(path, jsonl(scores, score_to_json));
}

Item item_from_json(const json& j) { return guarded<Item>(j, item_from_json_unchecked); }

Sample sample_from_json(const json& j) { return guarded<Sample>(j, sample_from_json_unchecked); }

RankingRun run_from_json(const json& j) { return guarded<RankingRun>(j, run_from_json_unchecked); }

SampleScore score_from_json(const json& j) { return guarded<SampleScore>(j, score_from_json_unchecked); }

}  // namespace mcrank::io
