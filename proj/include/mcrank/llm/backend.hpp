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

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <semaphore>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "mcrank/engine.hpp"
#include "mcrank/llm/prompts.hpp"

namespace mcrank::llm {

/// Where a request sits within a run; drives the oracle's noise stream so
/// that concurrency never changes which steps are perturbed.
struct CallContext {
  std::string sample_id;
  int step_index = 0;
  int attempt = 0;
};

struct ModelRequest {
  PromptKind prompt_kind = PromptKind::RankTokenLevel;
  std::string rendered_prompt;
  std::string model_name;
  double temperature = 0.0;
  int max_output_tokens = 1024;
  CallContext context;
  bool bypass_cache = false;  // set on re-asks after an unparseable answer
};

struct Usage {
  long prompt_tokens = 0;
  long completion_tokens = 0;
};

struct ModelResponse {
  std::string text;
  std::optional<Usage> usage;
  bool cached = false;
  double latency_ms = 0.0;
};

enum class BackendKind { HttpChat, Oracle };

std::string_view to_string(BackendKind kind);
std::optional<BackendKind> backend_kind_from_string(std::string_view s);

struct RetryPolicy {
  int max_attempts = 4;
  int backoff_base_ms = 500;
};

struct BackendConfig {
  BackendKind kind = BackendKind::Oracle;
  std::string base_url;
  std::string api_key_env_name = "MCRANK_API_KEY";
  int concurrency_limit = 4;
  RetryPolicy retry;
  std::string cache_dir;  // empty disables the response cache
  double oracle_noise_epsilon = 0.0;
  std::uint64_t rng_seed = 0;
};

/// Throws InvalidInput on out-of-range fields.
void validate(const BackendConfig& cfg);

class Backend {
 public:
  virtual ~Backend() = default;
  virtual ModelResponse complete(const ModelRequest& req) = 0;
};

/// Answers prompts with the rule engine. The prompt is parsed back into
/// conditions and item texts; texts are resolved against `catalog`. With
/// probability epsilon (per sample id and step) one adjacent pair of a
/// ranking answer is swapped before rendering; extract and sort answers are
/// never perturbed.
class OracleBackend final : public Backend {
 public:
  OracleBackend(BackendConfig cfg, std::span<const Item> catalog);

  ModelResponse complete(const ModelRequest& req) override;

 private:
  std::string answer_ranking(const ModelRequest& req, const ParsedPrompt& parsed) const;
  std::string answer_extract(const ParsedPrompt& parsed) const;
  std::string answer_sort(const ParsedPrompt& parsed) const;

  BackendConfig cfg_;
  std::unordered_map<std::string, Item> catalog_;
};

/// On-disk response cache: one JSON file per key, named by the SHA-256 hex
/// digest of (model, temperature, prompt). Writes go through a temporary
/// file and an atomic rename, so concurrent readers never see partial files.
class ResponseCache {
 public:
  explicit ResponseCache(std::filesystem::path dir);

  static std::string key(std::string_view model, double temperature, std::string_view prompt);

  std::optional<nlohmann::json> load(const std::string& key) const;
  void store(const std::string& key, const nlohmann::json& request_digest,
             const nlohmann::json& response) const;

 private:
  std::filesystem::path dir_;
};

std::string sha256_hex(std::string_view data);

/// OpenAI-compatible chat completions client with retry, caching and a
/// bounded number of in-flight requests.
class HttpChatBackend final : public Backend {
 public:
  /// Throws AuthError when the API key variable is unset.
  explicit HttpChatBackend(BackendConfig cfg);

  ModelResponse complete(const ModelRequest& req) override;

  long network_calls() const { return network_calls_.load(); }
  int max_in_flight() const { return max_in_flight_.load(); }

 private:
  nlohmann::json post(const ModelRequest& req);

  BackendConfig cfg_;
  std::string api_key_;
  std::string scheme_host_port_;
  std::string path_prefix_;
  std::optional<ResponseCache> cache_;
  std::counting_semaphore<> slots_;
  std::atomic<long> network_calls_{0};
  std::atomic<int> in_flight_{0};
  std::atomic<int> max_in_flight_{0};
};

/// `catalog` is only read by the oracle backend.
std::unique_ptr<Backend> make_backend(const BackendConfig& cfg, std::span<const Item> catalog);

}  // namespace mcrank::llm
