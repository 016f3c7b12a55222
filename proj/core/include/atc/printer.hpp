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


#ifndef ATC_PRINTER_HPP_
#define ATC_PRINTER_HPP_

#include <string>

#include "atc/ast.hpp"

namespace atc {

// S-expression rendering, one node per line, two-space indent, no spans.
std::string DumpAst(const ast::TranslationUnit& unit);

// Single-line S-expression of one expression, e.g.
// "(Binary + (Unary post++ (Ident i)) (Ident j))".
std::string DumpExpr(const ast::Expr& expr);

// C source for the tree. Every compound expression is parenthesized, so
// parsing the output yields the same tree.
std::string PrintC(const ast::TranslationUnit& unit);
std::string PrintExprC(const ast::Expr& expr);

}  // namespace atc

#endif  // ATC_PRINTER_HPP_
