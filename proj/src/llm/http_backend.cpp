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

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <regex>
#include <sstream>
#include <thread>

#include <fmt/format.h>
#include <httplib.h>
#include <openssl/evp.h>

#include "mcrank/error.hpp"
#include "mcrank/llm/backend.hpp"

namespace mcrank::llm {

using nlohmann::json;

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr);
  std::string out;
  out.reserve(len * 2);
  for (unsigned int i = 0; i < len; ++i) out += fmt::format("{:02x}", digest[i]);
  return out;
}

ResponseCache::ResponseCache(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::filesystem::create_directories(dir_);
}

std::string ResponseCache::key(std::string_view model, double temperature, std::string_view prompt) {
  return sha256_hex(fmt::format("{}\n{}\n{}", model, temperature, prompt));
}

std::optional<json> ResponseCache::load(const std::string& key) const {
  std::ifstream in(dir_ / (key + ".json"));
  if (!in) return std::nullopt;
  try {
    return json::parse(in).at("response");
  } catch (const json::exception&) {
    return std::nullopt;  // torn or foreign file: treat as a miss
  }
}

void ResponseCache::store(const std::string& key, const json& request_digest,
                          const json& response) const {
  static std::atomic<unsigned long> counter{0};
  const auto tmp = dir_ / fmt::format("{}.{}.{}.tmp", key,
                                      std::hash<std::thread::id>{}(std::this_thread::get_id()),
                                      counter.fetch_add(1));
  {
    std::ofstream out(tmp);
    out << json{{"request_digest", request_digest}, {"response", response}}.dump();
  }
  std::filesystem::rename(tmp, dir_ / (key + ".json"));
}

namespace {

ModelResponse to_response(const json& body) {
  ModelResponse resp;
  try {
    resp.text = body.at("choices").at(0).at("message").at("content").get<std::string>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::TransportError, fmt::format("malformed completion body: {}", e.what()));
  }
  if (resp.text.empty()) throw Error(ErrorCode::TransportError, "empty completion");
  if (auto it = body.find("usage"); it != body.end() && it->is_object()) {
    resp.usage = Usage{it->value("prompt_tokens", 0L), it->value("completion_tokens", 0L)};
  }
  return resp;
}

}  // namespace

HttpChatBackend::HttpChatBackend(BackendConfig cfg)
    : cfg_(std::move(cfg)), slots_(std::max(1, cfg_.concurrency_limit)) {
  validate(cfg_);
  const char* key = std::getenv(cfg_.api_key_env_name.c_str());
  if (!key || !*key) {
    throw Error(ErrorCode::AuthError, fmt::format("environment variable {} is not set",
                                                  cfg_.api_key_env_name));
  }
  api_key_ = key;
  static const std::regex kUrl(R"(^(https?://[^/]+)(/.*)?$)");
  std::smatch m;
  if (!std::regex_match(cfg_.base_url, m, kUrl)) {
    throw Error(ErrorCode::InvalidInput, "base_url must look like http(s)://host[:port][/path]");
  }
  scheme_host_port_ = m[1].str();
  path_prefix_ = m[2].str();
  while (!path_prefix_.empty() && path_prefix_.back() == '/') path_prefix_.pop_back();
  if (!cfg_.cache_dir.empty()) cache_.emplace(cfg_.cache_dir);
}

ModelResponse HttpChatBackend::complete(const ModelRequest& req) {
  const auto key = ResponseCache::key(req.model_name, req.temperature, req.rendered_prompt);
  if (cache_ && !req.bypass_cache) {
    if (auto hit = cache_->load(key)) {
      auto resp = to_response(*hit);
      resp.cached = true;
      return resp;
    }
  }

  const auto start = std::chrono::steady_clock::now();
  slots_.acquire();
  json body;
  try {
    body = post(req);
  } catch (...) {
    slots_.release();
    throw;
  }
  slots_.release();

  auto resp = to_response(body);
  resp.latency_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  if (cache_) {
    cache_->store(key,
                  json{{"model", req.model_name},
                       {"temperature", req.temperature},
                       {"prompt_sha256", sha256_hex(req.rendered_prompt)}},
                  body);
  }
  return resp;
}

json HttpChatBackend::post(const ModelRequest& req) {
  const json payload{
      {"model", req.model_name},
      {"messages", json::array({json{{"role", "user"}, {"content", req.rendered_prompt}}})},
      {"temperature", req.temperature},
      {"max_tokens", req.max_output_tokens}};
  const auto body = payload.dump();
  const httplib::Headers headers{{"Authorization", "Bearer " + api_key_}};
  const auto path = path_prefix_ + "/chat/completions";

  std::string last_failure;
  bool rate_limited = false;
  for (int attempt = 1; attempt <= cfg_.retry.max_attempts; ++attempt) {
    if (attempt > 1) {
      std::this_thread::sleep_for(
          std::chrono::milliseconds(static_cast<long>(cfg_.retry.backoff_base_ms) << (attempt - 2)));
    }
    httplib::Client client(scheme_host_port_);
    client.set_connection_timeout(10);
    client.set_read_timeout(120);

    const int now = in_flight_.fetch_add(1) + 1;
    int seen = max_in_flight_.load();
    while (now > seen && !max_in_flight_.compare_exchange_weak(seen, now)) {
    }
    ++network_calls_;
    auto res = client.Post(path, headers, body, "application/json");
    in_flight_.fetch_sub(1);

    if (!res) {
      last_failure = httplib::to_string(res.error());
      rate_limited = false;
      continue;
    }
    if (res->status == 200) {
      try {
        return json::parse(res->body);
      } catch (const json::exception& e) {
        throw Error(ErrorCode::TransportError, fmt::format("response is not JSON: {}", e.what()));
      }
    }
    if (res->status == 401 || res->status == 403) {
      throw Error(ErrorCode::AuthError, fmt::format("HTTP {}", res->status));
    }
    if (res->status == 429 || res->status >= 500) {
      last_failure = fmt::format("HTTP {}", res->status);
      rate_limited = res->status == 429;
      continue;
    }
    throw Error(ErrorCode::TransportError, fmt::format("HTTP {}: {}", res->status, res->body));
  }
  throw Error(rate_limited ? ErrorCode::RateLimited : ErrorCode::TransportError,
              fmt::format("{} attempts failed, last: {}", cfg_.retry.max_attempts, last_failure));
}

}  // namespace mcrank::llm
