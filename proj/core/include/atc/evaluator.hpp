// Copyright 2026 The atc Authors
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

//
// Tree-walking evaluator.
//
// Every operand of every operator finishes, side effects included, before
// the next one starts, strictly left to right. Call arguments follow
// EvalConfig::arg_order. Arithmetic wraps at 32 bits; shift counts are
// taken modulo 32.

#ifndef ATC_EVALUATOR_HPP_
#define ATC_EVALUATOR_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "atc/binder.hpp"
#include "atc/diagnostic.hpp"
#include "atc/source.hpp"

namespace atc {

enum class ArgOrder { kLeftToRight, kRightToLeft };

struct EvalConfig {
  ArgOrder arg_order = ArgOrder::kLeftToRight;
  std::uint64_t step_limit = 50'000'000;
  int max_call_depth = 100'000;
  // Receives program output. Defaults to standard output when empty.
  std::function<void(std::string_view)> output;
};

struct RuntimeError {
  std::string code;
  Span span;
  std::string message;
};

struct RunResult {
  int exit_status = 0;  // main's return value, or 101 after a runtime error
  std::optional<RuntimeError> error;
};

inline constexpr int kRuntimeErrorStatus = 101;

// Initializes globals in source order, then calls main. Runs on a private
// thread with a stack large enough for max_call_depth activations.
RunResult Run(const BoundProgram& program, const EvalConfig& config);

// "CODE: message @ file:line:col".
std::string FormatRuntimeError(const SourceManager& sm, const RuntimeError& error);

}  // namespace atc

#endif  // ATC_EVALUATOR_HPP_
