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
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <unordered_map>
#include <unordered_set>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "mcrank/batch.hpp"
#include "mcrank/cli.hpp"
#include "mcrank/config.hpp"
#include "mcrank/io.hpp"
#include "mcrank/rng.hpp"

namespace mcrank::cli {

namespace fs = std::filesystem;

namespace {

constexpr std::size_t kRunChunk = 64;

struct SynthArgs {
  std::string out;
  int size = 400;
  std::uint64_t seed = 0;
  double collision_rate = 0.0;
  std::string level;
};

struct GenArgs {
  std::vector<std::string> pools;
  std::string out = "dataset.jsonl";
  int per_category = 10;
  std::uint64_t seed = 0;
  std::string filter;
};

struct RunArgs {
  std::string config;
  std::string dataset, strategy, backend, model, base_url, out, trace, cache_dir, filter;
  std::optional<double> epsilon;
  std::optional<std::uint64_t> seed;
  std::optional<int> limit, concurrency;
};

struct EvalArgs {
  std::vector<std::string> traces;
  std::string dataset;
  std::string out = "eval";
  std::string group_by = "level,conds,items,category,strategy";
};

struct ReportArgs {
  std::vector<std::string> scores;
  std::string dataset;
  std::string out;
  std::string group_by = "level,conds,items,category,strategy";
  std::string format = "md";
};

int cmd_synth(const SynthArgs& a, std::ostream& out) {
  std::vector<Item> items;
  for (auto level : {ItemLevel::Token, ItemLevel::Paragraph}) {
    if (!a.level.empty() && to_string(level) != a.level) continue;
    auto pool = synth_pool(level, a.size, derive_seed(a.seed, {static_cast<std::uint64_t>(level)}),
                           SynthOptions{a.collision_rate});
    items.insert(items.end(), pool.entries.begin(), pool.entries.end());
  }
  io::write_pool(a.out, items);
  fmt::print(out, "wrote {} pool entries to {}\n", items.size(), a.out);
  return 0;
}

int cmd_gen(const GenArgs& a, std::ostream& out) {
  std::map<ItemLevel, std::vector<Item>> by_level;
  for (const auto& path : a.pools) {
    for (auto& item : io::read_pool(path)) by_level[item.level].push_back(std::move(item));
  }
  std::map<ItemLevel, ItemPool> pools;
  for (auto& [level, entries] : by_level) pools.emplace(level, make_pool(level, std::move(entries)));

  const auto filter = parse_filter(a.filter);
  std::vector<Sample> dataset;
  for (const auto& sc : all_scenarios()) {
    if (!filter.matches(sc)) continue;
    auto it = pools.find(sc.level);
    if (it == pools.end()) {
      throw Error(ErrorCode::InvalidInput,
                  fmt::format("no {}-level pool entries for {}", to_string(sc.level), scenario_label(sc)));
    }
    auto samples = generate_scenario(it->second, sc, a.per_category, a.seed);
    std::size_t kept = 0;
    for (auto& s : samples) {
      if (!filter.matches(s)) continue;
      dataset.push_back(std::move(s));
      ++kept;
    }
    fmt::print(out, "{:<18} {:>5} samples\n", scenario_label(sc), kept);
  }
  io::write_dataset(a.out, dataset);
  fmt::print(out, "\n{}\nwrote {} samples to {}\n", format_stats(dataset_stats(dataset)),
             dataset.size(), a.out);
  return 0;
}

RunConfig resolve_run_config(const RunArgs& a) {
  RunConfig cfg = a.config.empty() ? RunConfig{} : load_run_config(a.config);
  if (!a.dataset.empty()) cfg.dataset_path = a.dataset;
  if (!a.out.empty()) cfg.output_dir = a.out;
  if (!a.strategy.empty()) {
    auto s = strategy_from_string(a.strategy);
    if (!s) throw Error(ErrorCode::InvalidInput, fmt::format("unknown strategy \"{}\"", a.strategy));
    cfg.strategy = *s;
  }
  if (!a.backend.empty()) {
    auto k = llm::backend_kind_from_string(a.backend);
    if (!k) throw Error(ErrorCode::InvalidInput, fmt::format("unknown backend \"{}\"", a.backend));
    cfg.backend.kind = *k;
  }
  if (!a.model.empty()) cfg.run.model_name = a.model;
  if (!a.base_url.empty()) cfg.backend.base_url = a.base_url;
  if (!a.cache_dir.empty()) cfg.backend.cache_dir = a.cache_dir;
  if (!a.filter.empty()) cfg.filter = parse_filter(a.filter);
  if (a.epsilon) cfg.backend.oracle_noise_epsilon = *a.epsilon;
  if (a.seed) cfg.seed = *a.seed;
  if (a.limit) cfg.sample_limit = *a.limit;
  if (a.concurrency) cfg.backend.concurrency_limit = *a.concurrency;
  cfg.backend.rng_seed = cfg.seed;
  if (cfg.dataset_path.empty()) throw Error(ErrorCode::InvalidInput, "no dataset given");
  llm::validate(cfg.backend);
  return cfg;
}

int cmd_run(const RunArgs& a, std::ostream& out) {
  const auto cfg = resolve_run_config(a);
  const auto dataset = io::read_dataset(cfg.dataset_path);
  const auto selected = select_samples(dataset, cfg.filter, cfg.sample_limit, cfg.seed);
  const fs::path trace_path =
      a.trace.empty() ? fs::path(cfg.output_dir) / fmt::format("{}.trace.jsonl", to_string(cfg.strategy))
                      : fs::path(a.trace);

  std::vector<RankingRun> existing;
  if (fs::exists(trace_path)) existing = io::read_trace(trace_path);
  std::unordered_set<std::string> done;
  for (const auto& r : existing) done.insert(r.sample_id);

  std::vector<Sample> todo;
  for (const auto& s : selected) {
    if (!done.count(s.id)) todo.push_back(s);
  }

  std::vector<Item> catalog;
  for (const auto& s : selected) catalog.insert(catalog.end(), s.items.begin(), s.items.end());
  auto backend = llm::make_backend(cfg.backend, catalog);

  // Finished chunks are appended as they complete so an interrupted run
  // resumes from them; the final rewrite puts selected samples in dataset
  // order after any runs for samples outside the selection.
  std::unordered_map<std::string, RankingRun> fresh;
  const auto append = [&](std::span<const RankingRun> runs) {
    if (trace_path.has_parent_path()) fs::create_directories(trace_path.parent_path());
    std::ofstream f(trace_path, std::ios::app | std::ios::binary);
    std::string text;
    for (const auto& r : runs) text += io::run_to_json(r).dump() + "\n";
    f << text;
    if (!f.flush()) throw Error(ErrorCode::InvalidInput, "cannot append to " + trace_path.string());
  };
  const auto rewrite = [&] {
    std::unordered_set<std::string> selected_ids;
    for (const auto& s : selected) selected_ids.insert(s.id);
    std::unordered_map<std::string, const RankingRun*> old;
    std::vector<RankingRun> runs;
    for (const auto& r : existing) {
      if (selected_ids.count(r.sample_id)) {
        old.emplace(r.sample_id, &r);
      } else {
        runs.push_back(r);
      }
    }
    for (const auto& s : selected) {
      if (auto it = fresh.find(s.id); it != fresh.end()) {
        runs.push_back(it->second);
      } else if (auto jt = old.find(s.id); jt != old.end()) {
        runs.push_back(*jt->second);
      }
    }
    io::write_trace(trace_path, runs);
  };

  fmt::print(out, "{} of {} selected samples to run ({} already in {})\n", todo.size(),
             selected.size(), selected.size() - todo.size(), trace_path.string());
  llm::Usage usage;
  std::size_t invalid = 0, cached_steps = 0;
  for (std::size_t start = 0; start < todo.size(); start += kRunChunk) {
    const auto chunk = std::span(todo).subspan(start, std::min(kRunChunk, todo.size() - start));
    auto runs = batch::run_all(chunk, *backend, cfg.strategy, cfg.run, cfg.backend.concurrency_limit);
    append(runs);
    for (auto& r : runs) {
      usage.prompt_tokens += r.usage_totals.prompt_tokens;
      usage.completion_tokens += r.usage_totals.completion_tokens;
      invalid += !r.valid();
      for (const auto& st : r.steps) cached_steps += st.cached;
      fresh.emplace(r.sample_id, std::move(r));
    }
    if ((start / kRunChunk) % 8 == 7 || start + chunk.size() == todo.size()) {
      fmt::print(out, "  {}/{} done\n", start + chunk.size(), todo.size());
    }
  }
  rewrite();
  fmt::print(out, "strategy {}: {} runs, {} invalid, {} cached steps, tokens {} prompt / {} completion\n",
             to_string(cfg.strategy), todo.size(), invalid, cached_steps, usage.prompt_tokens,
             usage.completion_tokens);
  if (auto* http = dynamic_cast<llm::HttpChatBackend*>(backend.get())) {
    fmt::print(out, "network calls: {}\n", http->network_calls());
  }
  fmt::print(out, "trace: {}\n", trace_path.string());
  return 0;
}

void write_reports(const MetricsReport& report, const fs::path& dir) {
  io::write_text_atomic(dir / "report.csv", emit_report(report, ReportFormat::Csv));
  io::write_text_atomic(dir / "report.md", emit_report(report, ReportFormat::Markdown));
}

int cmd_eval(const EvalArgs& a, std::ostream& out, std::ostream& err) {
  const auto dataset = io::read_dataset(a.dataset);
  std::unordered_map<std::string, const Sample*> by_id;
  for (const auto& s : dataset) by_id.emplace(s.id, &s);

  std::vector<RankingRun> runs;
  std::vector<Sample> joined;
  std::size_t total = 0;
  for (const auto& path : a.traces) {
    for (auto& r : io::read_trace(path)) {
      ++total;
      auto it = by_id.find(r.sample_id);
      if (it == by_id.end()) {
        fmt::print(err, "warning: GoldMismatch: {} is not in {}, skipped\n", r.sample_id, a.dataset);
        continue;
      }
      joined.push_back(*it->second);
      runs.push_back(std::move(r));
    }
  }
  if (total == 0) {
    fmt::print(err, "error: no runs in the given traces\n");
    return 1;
  }
  const auto maybe = batch::score_all(runs, joined);
  std::vector<SampleScore> scores;
  for (std::size_t i = 0; i < maybe.size(); ++i) {
    if (maybe[i]) {
      scores.push_back(*maybe[i]);
    } else {
      fmt::print(err, "warning: GoldMismatch: run for {} does not match its sample, skipped\n",
                 runs[i].sample_id);
    }
  }
  if (scores.empty()) {
    fmt::print(err, "error: none of the {} runs joined the dataset\n", total);
    return 1;
  }
  const fs::path dir(a.out);
  io::write_scores(dir / "scores.jsonl", scores);
  const auto dims = parse_group_by(a.group_by);
  const auto report = aggregate(scores, dataset, dims);
  write_reports(report, dir);
  fmt::print(out, "scored {} of {} runs; wrote {}/scores.jsonl, report.csv, report.md\n",
             scores.size(), total, dir.string());
  return 0;
}

int cmd_report(const ReportArgs& a, std::ostream& out) {
  const auto dataset = io::read_dataset(a.dataset);
  std::vector<SampleScore> scores;
  for (const auto& path : a.scores) {
    auto part = io::read_scores(path);
    scores.insert(scores.end(), part.begin(), part.end());
  }
  const auto dims = parse_group_by(a.group_by);
  const auto report = aggregate(scores, dataset, dims);
  if (!a.out.empty()) {
    write_reports(report, a.out);
    fmt::print(out, "wrote {}/report.csv and report.md\n", a.out);
    return 0;
  }
  out << emit_report(report, a.format == "csv" ? ReportFormat::Csv : ReportFormat::Markdown);
  return 0;
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multi-condition ranking benchmark: generate, run, evaluate, report"};
  app.require_subcommand(1);

  SynthArgs synth;
  auto* s = app.add_subcommand("synth", "Write a deterministic synthetic item pool");
  s->add_option("--out", synth.out, "Pool JSONL path")->required();
  s->add_option("--size", synth.size, "Entries per level")->check(CLI::PositiveNumber);
  s->add_option("--seed", synth.seed);
  s->add_option("--collision-rate", synth.collision_rate,
                "Fraction of entries reusing an earlier character count")
      ->check(CLI::Range(0.0, 1.0));
  s->add_option("--level", synth.level)->check(CLI::IsMember({"token", "paragraph"}));

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "Generate a dataset from item pools");
  g->add_option("--pool", gen.pools, "Pool JSONL (repeatable)")->required();
  g->add_option("--out", gen.out, "Dataset JSONL path");
  g->add_option("--per-category", gen.per_category)->check(CLI::PositiveNumber);
  g->add_option("--seed", gen.seed);
  g->add_option("--filter", gen.filter, "level=…,conds=…,items=…,category=…");

  RunArgs run_args;
  auto* r = app.add_subcommand("run", "Run a strategy over a dataset");
  r->add_option("--config", run_args.config, "TOML run configuration");
  r->add_option("--dataset", run_args.dataset);
  r->add_option("--strategy", run_args.strategy)->check(CLI::IsMember({"base", "cot", "exsir"}));
  r->add_option("--backend", run_args.backend)->check(CLI::IsMember({"http", "oracle"}));
  r->add_option("--model", run_args.model);
  r->add_option("--base-url", run_args.base_url);
  r->add_option("--epsilon", run_args.epsilon, "Oracle swap probability");
  r->add_option("--seed", run_args.seed);
  r->add_option("--limit", run_args.limit, "Samples per scenario");
  r->add_option("--filter", run_args.filter);
  r->add_option("--out", run_args.out, "Output directory");
  r->add_option("--trace", run_args.trace, "Trace path (default <out>/<strategy>.trace.jsonl)");
  r->add_option("--cache-dir", run_args.cache_dir);
  r->add_option("--concurrency", run_args.concurrency);

  EvalArgs eval;
  auto* e = app.add_subcommand("eval", "Score traces against a dataset");
  e->add_option("--trace", eval.traces, "Trace JSONL (repeatable)")->required();
  e->add_option("--dataset", eval.dataset)->required();
  e->add_option("--out", eval.out, "Output directory");
  e->add_option("--group-by", eval.group_by);

  ReportArgs rep;
  auto* p = app.add_subcommand("report", "Aggregate score files into report tables");
  p->add_option("--scores", rep.scores, "Scores JSONL (repeatable)")->required();
  p->add_option("--dataset", rep.dataset)->required();
  p->add_option("--out", rep.out, "Write report.csv and report.md here instead of stdout");
  p->add_option("--group-by", rep.group_by);
  p->add_option("--format", rep.format)->check(CLI::IsMember({"md", "csv"}));

  std::vector<const char*> argv{"mcrank"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& ex) {
    return app.exit(ex, out, err);
  }

  try {
    if (s->parsed()) return cmd_synth(synth, out);
    if (g->parsed()) return cmd_gen(gen, out);
    if (r->parsed()) return cmd_run(run_args, out);
    if (e->parsed()) return cmd_eval(eval, out, err);
    if (p->parsed()) return cmd_report(rep, out);
  } catch (const Error& ex) {
    fmt::print(err, "error: {}\n", ex.what());
    return 2;
  } catch (const std::exception& ex) {
    fmt::print(err, "error: {}\n", ex.what());
    return 2;
  }
  return 1;
}

}  // namespace mcrank::cli
