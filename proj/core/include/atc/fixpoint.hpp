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
// Alternates preprocessing with parsing and binding until the code
// predicates consulted by the preprocessor agree with the program it
// produced.
//
// Iteration 0 answers every `declared`/`coded`/`used` question with true.
// Each iteration then binds its own output; when some consulted answer
// differs from the facts of that output, the next iteration adopts those
// facts. E_PP_FIXPOINT_DIVERGE is reported after max_fixpoint_iters.

#ifndef ATC_FIXPOINT_HPP_
#define ATC_FIXPOINT_HPP_

#include <memory>
#include <vector>

#include "atc/binder.hpp"
#include "atc/diagnostic.hpp"
#include "atc/lexer.hpp"
#include "atc/preprocessor.hpp"
#include "atc/source.hpp"

namespace atc {

struct TraceEntry {
  int iteration = 0;  // 0-based
  PredicateConsult consult;
};

struct CompileResult {
  bool converged = false;
  int iterations = 0;
  TokenList tokens;  // preprocessed output of the last iteration
  CodeFacts facts;   // facts of that output
  std::vector<TraceEntry> trace;
  std::shared_ptr<BoundProgram> program;
  // Diagnostics of the last iteration: lexer, preprocessor, parser, binder.
  Diagnostics diagnostics;
};

CompileResult FixpointCompile(SourceManager& sm, FileId file, const PpConfig& config);

}  // namespace atc

#endif  // ATC_FIXPOINT_HPP_
