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

#include <stdexcept>
#include <string>
#include <string_view>

namespace mcrank {

enum class ErrorCode {
  UnrecognizedTemplate,
  MalformedSlot,
  MissingAttribute,
  UnknownItem,
  TypeMismatch,
  MissingReference,
  TooManyItems,
  NotAPermutation,
  PoolExhausted,
  UnsatisfiableSlot,
  LevelMismatch,
  AuthError,
  RateLimited,
  TransportError,
  PromptUnparseable,
  EmptyOutput,
  GoldMismatch,
  InvalidInput,
};

std::string_view to_string(ErrorCode code);

// Every failure in the library surfaces as this exception; `code()` is the
// typed error the caller dispatches on.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnrecognizedTemplate: return "UnrecognizedTemplate";
    case ErrorCode::MalformedSlot: return "MalformedSlot";
    case ErrorCode::MissingAttribute: return "MissingAttribute";
    case ErrorCode::UnknownItem: return "UnknownItem";
    case ErrorCode::TypeMismatch: return "TypeMismatch";
    case ErrorCode::MissingReference: return "MissingReference";
    case ErrorCode::TooManyItems: return "TooManyItems";
    case ErrorCode::NotAPermutation: return "NotAPermutation";
    case ErrorCode::PoolExhausted: return "PoolExhausted";
    case ErrorCode::UnsatisfiableSlot: return "UnsatisfiableSlot";
    case ErrorCode::LevelMismatch: return "LevelMismatch";
    case ErrorCode::AuthError: return "AuthError";
    case ErrorCode::RateLimited: return "RateLimited";
    case ErrorCode::TransportError: return "TransportError";
    case ErrorCode::PromptUnparseable: return "PromptUnparseable";
    case ErrorCode::EmptyOutput: return "EmptyOutput";
    case ErrorCode::GoldMismatch: return "GoldMismatch";
    case ErrorCode::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

}  // namespace mcrank
