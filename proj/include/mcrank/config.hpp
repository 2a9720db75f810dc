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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mcrank/benchgen.hpp"
#include "mcrank/llm/backend.hpp"
#include "mcrank/pipelines.hpp"

namespace mcrank {

/// Empty sets match everything.
struct ScenarioFilter {
  std::set<ItemLevel> levels;
  std::set<int> n_conditions;
  std::set<int> n_items;
  std::set<Category> categories;

  bool matches(const Scenario& s) const;
  bool matches(const Sample& s) const;
};

/// "level=token,conds=2|3,items=5,category=temporal". Alternatives within a
/// key are separated by '|'. Throws InvalidInput on unknown keys or values.
ScenarioFilter parse_filter(std::string_view text);

struct RunConfig {
  std::string dataset_path;
  Strategy strategy = Strategy::Exsir;
  llm::BackendConfig backend;
  RunOptions run;
  std::string output_dir = "out";
  ScenarioFilter filter;
  std::optional<int> sample_limit;
  std::uint64_t seed = 0;
};

/// Replaces ${NAME} with the environment variable's value. Throws
/// InvalidInput when a referenced variable is unset.
std::string interpolate_env(std::string_view text);

/// Reads a TOML run configuration; every string value is passed through
/// interpolate_env. Keys absent from the file keep their defaults.
RunConfig load_run_config(const std::filesystem::path& path);

/// Samples matching `filter`, in dataset order. With a limit, each scenario
/// keeps a seeded random subset of at most `limit` samples.
std::vector<Sample> select_samples(std::span<const Sample> samples, const ScenarioFilter& filter,
                                   std::optional<int> limit, std::uint64_t seed);

}  // namespace mcrank
