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


#include "atc/fixpoint.hpp"

#include <algorithm>
#include <optional>
#include <string>

#include "atc/parser.hpp"

namespace atc {

CompileResult FixpointCompile(SourceManager& sm, FileId file, const PpConfig& config) {
  CompileResult result;
  std::optional<CodeFacts> assumed;
  int limit = std::max(1, config.max_fixpoint_iters);
  for (int iter = 0; iter < limit; ++iter) {
    PpResult pp = Preprocess(sm, file, assumed ? &*assumed : nullptr, config);
    ParseResult parsed = Parse(pp.tokens);
    BindResult bound = Bind(std::move(parsed.unit));

    for (const auto& c : pp.trace) result.trace.push_back(TraceEntry{iter, c});
    bool agree = true;
    for (const auto& c : pp.trace) {
      if (bound.facts.Query(c.predicate, c.identifier) != c.value) {
        agree = false;
        break;
      }
    }

    result.iterations = iter + 1;
    result.tokens = std::move(pp.tokens);
    result.program = std::move(bound.program);
    result.diagnostics = std::move(pp.diagnostics);
    result.diagnostics.insert(result.diagnostics.end(), parsed.diagnostics.begin(), parsed.diagnostics.end());
    result.diagnostics.insert(result.diagnostics.end(), bound.diagnostics.begin(), bound.diagnostics.end());
    result.facts = bound.facts;
    if (agree) {
      result.converged = true;
      return result;
    }
    assumed = std::move(bound.facts);
  }
  Span where;
  where.file_id = file;
  result.diagnostics.push_back(Diagnostic{
      std::string(diag::kPpFixpointDiverge), Severity::kError, where,
      "preprocessor predicates did not stabilize after " + std::to_string(limit) + " iteration(s)"});
  return result;
}

}  // namespace atc
