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


// Helpers shared by the unit, property and acceptance tests.

#ifndef ATC_TESTS_SUPPORT_HPP_
#define ATC_TESTS_SUPPORT_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "atc/diagnostic.hpp"
#include "atc/evaluator.hpp"
#include "atc/fixpoint.hpp"
#include "atc/lexer.hpp"
#include "atc/source.hpp"

namespace atc::testing {

std::vector<std::string> Codes(const Diagnostics& diags);
bool HasCode(const Diagnostics& diags, std::string_view code);

// Tokens other than trivia and Eof.
TokenList Significant(const TokenList& tokens);

struct Compiled {
  SourceManager sm;
  CompileResult result;
};

// Owns the SourceManager so spans stay printable.
std::unique_ptr<Compiled> CompileSource(std::string_view source, const PpConfig& config = {});

struct Outcome {
  int status = 0;
  std::string out;
  std::string error;  // runtime error code, or the first compile error code
  Diagnostics diagnostics;
};

Outcome RunSource(std::string_view source, ArgOrder order = ArgOrder::kLeftToRight,
                  std::uint64_t step_limit = 50'000'000);

// Directory holding the golden corpus, injected by CMake.
std::string CorpusDir();

}  // namespace atc::testing

#endif  // ATC_TESTS_SUPPORT_HPP_
