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

#include "mcrank/llm/parsers.hpp"

#include <algorithm>
#include <cctype>
#include <regex>

#include <fmt/format.h>

#include "mcrank/condition.hpp"
#include "mcrank/error.hpp"

namespace mcrank::llm {

namespace {

bool is_blank(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_blank(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_blank(s.back())) s.remove_suffix(1);
  return s;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

// Strips "1.", "1)", "-", "*" list markers at the start of a line.
std::string_view strip_enumeration(std::string_view s) {
  s = trim(s);
  std::size_t i = 0;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
  if (i > 0 && i < s.size() && (s[i] == '.' || s[i] == ')') &&
      (i + 1 == s.size() || is_blank(s[i + 1]))) {
    return trim(s.substr(i + 1));
  }
  if (!s.empty() && (s[0] == '-' || s[0] == '*') && (s.size() == 1 || is_blank(s[1]))) {
    return trim(s.substr(1));
  }
  return s;
}

std::string_view strip_wrapping(std::string_view s) {
  static constexpr std::string_view kCurly[] = {"\xE2\x80\x9C", "\xE2\x80\x9D", "\xE2\x80\x98",
                                                "\xE2\x80\x99"};
  bool changed = true;
  while (changed && !s.empty()) {
    changed = false;
    s = trim(s);
    if (s.empty()) break;
    if (s.front() == '"' || s.front() == '\'' || s.front() == '`') {
      s.remove_prefix(1);
      changed = true;
    }
    if (!s.empty() && (s.back() == '"' || s.back() == '\'' || s.back() == '`' || s.back() == '.')) {
      s.remove_suffix(1);
      changed = true;
    }
    for (auto q : kCurly) {
      if (s.substr(0, q.size()) == q) {
        s.remove_prefix(q.size());
        changed = true;
      }
      if (s.size() >= q.size() && s.substr(s.size() - q.size()) == q) {
        s.remove_suffix(q.size());
        changed = true;
      }
    }
  }
  return s;
}

std::string normalize_fragment(std::string_view s) {
  return lower(strip_wrapping(strip_enumeration(s)));
}

[[noreturn]] void not_a_permutation(const std::string& why) {
  throw Error(ErrorCode::NotAPermutation, why);
}

}  // namespace

Ordering parse_token_ranking(std::string_view text, std::span<const Item> items) {
  static const std::regex kInlineMarker(R"((^|\s)\d+[.)](\s|$))");
  std::vector<std::string> fragments;
  std::string current;
  auto flush = [&] {
    const std::string marked = std::regex_replace(current, kInlineMarker, "\n");
    std::size_t start = 0;
    while (start <= marked.size()) {
      auto end = marked.find('\n', start);
      if (end == std::string::npos) end = marked.size();
      auto frag = normalize_fragment(std::string_view(marked).substr(start, end - start));
      if (!frag.empty()) fragments.push_back(std::move(frag));
      start = end + 1;
    }
    current.clear();
  };
  for (char c : text) {
    if (c == '\n' || c == ',') {
      flush();
    } else {
      current += c;
    }
  }
  flush();

  std::vector<std::string> names;
  names.reserve(items.size());
  for (const auto& item : items) names.push_back(lower(trim(item.text)));

  Ordering out;
  std::vector<char> used(items.size(), 0);
  for (const auto& frag : fragments) {
    std::vector<std::size_t> hits;
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (names[i] == frag) hits.push_back(i);
    }
    if (hits.empty()) {
      for (std::size_t i = 0; i < names.size(); ++i) {
        if (names[i].find(frag) != std::string::npos || frag.find(names[i]) != std::string::npos) {
          hits.push_back(i);
        }
      }
    }
    if (hits.size() != 1) {
      not_a_permutation(fmt::format("\"{}\" matches {} items", frag, hits.size()));
    }
    if (used[hits[0]]) not_a_permutation(fmt::format("\"{}\" repeated", items[hits[0]].text));
    used[hits[0]] = 1;
    out.push_back(items[hits[0]].id);
  }
  if (out.size() != items.size()) {
    not_a_permutation(fmt::format("{} of {} items ranked", out.size(), items.size()));
  }
  return out;
}

std::vector<std::size_t> parse_paragraph_ranking(std::string_view text, std::size_t n_items) {
  static const std::regex kLabel(R"(item-(\d+))", std::regex::icase);
  std::vector<std::size_t> out;
  std::vector<char> seen(n_items + 1, 0);
  const std::string s(text);
  for (auto it = std::sregex_iterator(s.begin(), s.end(), kLabel); it != std::sregex_iterator();
       ++it) {
    const auto& digits = (*it)[1].str();
    const std::size_t k = digits.size() > 3 ? n_items + 1 : std::stoul(digits);
    if (k < 1 || k > n_items) not_a_permutation(fmt::format("label Item-{} out of range", digits));
    if (seen[k]) not_a_permutation(fmt::format("label Item-{} repeated", k));
    seen[k] = 1;
    out.push_back(k);
  }
  if (out.size() != n_items) {
    not_a_permutation(fmt::format("{} of {} labels present", out.size(), n_items));
  }
  return out;
}

std::vector<std::string> parse_condition_list(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    auto line = strip_enumeration(text.substr(start, end - start));
    if (!line.empty()) out.emplace_back(line);
    start = end + 1;
  }
  if (out.empty()) throw Error(ErrorCode::EmptyOutput, "no conditions in model output");
  return out;
}

std::string normalize_condition_text(std::string_view text) {
  const auto lowered = lower(strip_enumeration(text));
  const auto body = strip_wrapping(strip_priority_tag(lowered));
  std::string out;
  bool pending_space = false;
  for (char c : body) {
    if (is_blank(c)) {
      pending_space = !out.empty();
    } else {
      if (pending_space) out += ' ';
      pending_space = false;
      out += c;
    }
  }
  return out;
}

}  // namespace mcrank::llm
