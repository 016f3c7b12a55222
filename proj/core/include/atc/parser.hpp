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
// Recursive-descent parser for the C subset accepted by atc.
//
// Types: void, char (unsigned byte), int (32-bit), struct, one array suffix
// per declarator ([N] fixed, [] dynamic, [0] zero-size final struct member)
// and procedure types written `R(P1, P2)`, e.g. `int(int) f = adder;`.
//
// A procedure defined inside another one is a closure, unless it carries
// `volatile`, which makes it a nested procedure that dies with its parent.

#ifndef ATC_PARSER_HPP_
#define ATC_PARSER_HPP_

#include <memory>

#include "atc/ast.hpp"
#include "atc/diagnostic.hpp"
#include "atc/lexer.hpp"

namespace atc {

struct ParseResult {
  std::unique_ptr<ast::TranslationUnit> unit;
  Diagnostics diagnostics;
};

// Trivia in `tokens` is skipped. Recovers at statement and declaration
// boundaries, so one call can report several errors.
ParseResult Parse(const TokenList& tokens);

struct ExprParseResult {
  ast::ExprPtr expr;
  Diagnostics diagnostics;
};

// Parses a whole token list as one expression (comma operator included).
ExprParseResult ParseExpression(const TokenList& tokens);

}  // namespace atc

#endif  // ATC_PARSER_HPP_
