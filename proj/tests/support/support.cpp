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


#include "support.hpp"

#include <algorithm>

namespace atc::testing {

std::vector<std::string> Codes(const Diagnostics& diags) {
  std::vector<std::string> codes;
  for (const auto& d : diags) codes.push_back(d.code);
  return codes;
}

bool HasCode(const Diagnostics& diags, std::string_view code) {
  return std::any_of(diags.begin(), diags.end(), [&](const Diagnostic& d) { return d.code == code; });
}

TokenList Significant(const TokenList& tokens) {
  TokenList out;
  for (const auto& t : tokens) {
    if (!t.IsTrivia() && t.kind != TokenKind::kEof) out.push_back(t);
  }
  return out;
}

std::unique_ptr<Compiled> CompileSource(std::string_view source, const PpConfig& config) {
  auto c = std::make_unique<Compiled>();
  FileId id = c->sm.AddBuffer("test.atc", std::string(source));
  c->result = FixpointCompile(c->sm, id, config);
  return c;
}

Outcome RunSource(std::string_view source, ArgOrder order, std::uint64_t step_limit) {
  Outcome o;
  auto c = CompileSource(source);
  o.diagnostics = c->result.diagnostics;
  if (HasErrors(o.diagnostics)) {
    o.status = 1;
    for (const auto& d : o.diagnostics) {
      if (d.severity == Severity::kError) {
        o.error = d.code;
        break;
      }
    }
    return o;
  }
  EvalConfig config;
  config.arg_order = order;
  config.step_limit = step_limit;
  config.output = [&o](std::string_view s) { o.out.append(s); };
  RunResult r = Run(*c->result.program, config);
  o.status = r.exit_status;
  if (r.error) o.error = r.error->code;
  return o;
}

std::string CorpusDir() { return ATC_CORPUS_DIR; }

}  // namespace atc::testing
