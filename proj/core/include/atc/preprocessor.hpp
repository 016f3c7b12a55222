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
// Token-level preprocessor.
//
// Besides the ISO directives it understands:
//
//   #while <expr> ... #endwhile   re-scans the body while <expr> is nonzero
//   #defeval NAME <expr>          defines NAME as the decimal value of <expr>,
//                                 replacing any previous definition
//
// and, inside #if/#elif/#while conditions, the code predicates
// `declared X`, `coded X` and `used X` (parenthesized forms too). Those are
// answered from CodeFacts computed by the front end; see fixpoint.hpp for the
// loop that makes the two agree.

#ifndef ATC_PREPROCESSOR_HPP_
#define ATC_PREPROCESSOR_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "atc/diagnostic.hpp"
#include "atc/lexer.hpp"
#include "atc/source.hpp"

namespace atc {

enum class Predicate { kDeclared, kCoded, kUsed };

std::string_view PredicateName(Predicate p);

// Whole-identifier facts about the program that survived preprocessing.
//   declared: some declaration of the name exists
//   coded:    a definition with a body or initializer exists (implies declared)
//   used:     the name is called, read or assigned outside its own definition
struct CodeFacts {
  std::set<std::string> declared;
  std::set<std::string> coded;
  std::set<std::string> used;

  bool Query(Predicate p, const std::string& name) const;
  friend bool operator==(const CodeFacts&, const CodeFacts&) = default;
};

struct PredicateConsult {
  Predicate predicate;
  std::string identifier;
  bool value;
  Span span;
};

struct MacroDef {
  enum class Kind { kObject, kFunction, kEvaluated };

  std::string name;
  Kind kind = Kind::kObject;
  std::vector<std::string> params;  // __VA_ARGS__ last when variadic
  bool variadic = false;
  TokenList body;  // no trivia
  Span span;

  // Same kind, parameters and body spelling.
  bool SameDefinition(const MacroDef& other) const;
};

using MacroTable = std::map<std::string, MacroDef, std::less<>>;

struct PpConfig {
  int max_fixpoint_iters = 8;
  int max_while_iters = 10000;
  int max_include_depth = 64;
  std::vector<std::filesystem::path> include_dirs;
  Severity ambiguous_severity = Severity::kError;
};

struct PpResult {
  TokenList tokens;  // with trivia, ends with Eof
  std::vector<PredicateConsult> trace;
  MacroTable macros;
  Diagnostics diagnostics;  // lexer diagnostics of every file included
};

// Preprocesses file `file` of `sm`. With `facts == nullptr` every code
// predicate is assumed true.
PpResult Preprocess(SourceManager& sm, FileId file, const CodeFacts* facts,
                    const PpConfig& config);

// Same, over an already lexed token stream.
PpResult PreprocessTokens(SourceManager& sm, const TokenList& tokens, const CodeFacts* facts,
                          const PpConfig& config);

// Evaluates a #if condition: predicates first, then macro expansion, then C
// integer arithmetic in signed 64 bits. Identifiers left over evaluate to 0.
// Returns nullopt after appending E_PP_BAD_EXPR to `diags`.
std::optional<std::int64_t> EvalPpExpr(const TokenList& tokens, const MacroTable& macros,
                                       const CodeFacts* facts, Diagnostics& diags,
                                       std::vector<PredicateConsult>* trace = nullptr);

// Formats a token stream as re-lexable source text. A space is inserted
// between tokens that were not adjacent in the original source.
std::string RenderSource(const TokenList& tokens);

}  // namespace atc

#endif  // ATC_PREPROCESSOR_HPP_
