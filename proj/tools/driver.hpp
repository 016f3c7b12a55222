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
// Command implementations behind the `atc` executable, usable in-process.

#ifndef ATC_TOOLS_DRIVER_HPP_
#define ATC_TOOLS_DRIVER_HPP_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "atc/diagnostic.hpp"
#include "atc/evaluator.hpp"

namespace CLI {
class App;
}

namespace atc::driver {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCompileError = 1;
inline constexpr int kExitUsage = 2;

struct Options {
  ArgOrder arg_order = ArgOrder::kLeftToRight;
  Severity ambiguous = Severity::kError;
  int max_pp_iters = 8;
  int max_while_iters = 10000;
  bool pp_trace = false;
  std::vector<std::string> include_dirs;
  std::uint64_t step_limit = 50'000'000;
  bool color = false;
};

// Registers --argeval, --ambiguous, --max-pp-iters, --max-while-iters,
// --pp-trace, -I and --step-limit on `app`.
void AddOptions(CLI::App& app, Options& options);

// Parses a flags string such as the contents of a `.flags` file.
// Returns an error message on failure.
std::optional<std::string> ParseFlags(const std::string& text, Options& options);

struct Streams {
  std::function<void(std::string_view)> out;
  std::function<void(std::string_view)> err;
  std::function<std::optional<std::string>()> read_stdin;
};

enum class Command { kRun, kPp, kLex, kAst, kCheck };

std::optional<Command> ParseCommand(std::string_view name);

// Runs `command` over `inputs` ("-" is standard input). Every diagnostic
// and runtime error code is appended to `codes` when given.
int Execute(Command command, const std::vector<std::string>& inputs, const Options& options,
            const Streams& streams, std::vector<std::string>* codes = nullptr);

enum class Verdict { kPass, kFail, kError };

std::string_view VerdictName(Verdict v);

struct CaseResult {
  std::string name;
  Verdict verdict = Verdict::kPass;
  std::string detail;
};

struct CorpusSummary {
  std::vector<CaseResult> cases;  // sorted by name
  int passed = 0;
  int failed = 0;  // FAIL and ERROR verdicts

  // One `VERDICT<TAB>name<TAB>detail` line per case, then
  // "N passed, M failed".
  std::string Render() const;
};

// Runs every `*.atc` and `*.c` case under `dir`. A case may carry `.expect`
// (stdout bytes, required), `.status` (exit code, default 0), `.diag` (one
// code per line, compared in order) and `.flags` (added to `base`).
CorpusSummary RunCorpus(const std::filesystem::path& dir, const Options& base, int jobs = 0);

// Index of the first differing byte, or nullopt when equal.
std::optional<std::size_t> FirstDifference(std::string_view a, std::string_view b);

}  // namespace atc::driver

#endif  // ATC_TOOLS_DRIVER_HPP_
