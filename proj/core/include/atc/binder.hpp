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
// Name resolution, static typing and CodeFacts.
//
// Every scope gets a dense slot numbering so the evaluator can allocate one
// frame per scope. A procedure's parameters and the outermost block of its
// body share one scope.

#ifndef ATC_BINDER_HPP_
#define ATC_BINDER_HPP_

#include <deque>
#include <memory>
#include <string>
#include <vector>

#include "atc/ast.hpp"
#include "atc/diagnostic.hpp"
#include "atc/preprocessor.hpp"

namespace atc {
namespace ast {

enum class SymbolKind { kVariable, kParameter, kProcedure, kBuiltin };

enum class Builtin { kNone, kPrintf };

struct Symbol {
  SymbolKind kind = SymbolKind::kVariable;
  std::string name;
  TypePtr type;
  int scope = 0;
  int slot = 0;
  Span span;
  const VarDecl* var = nullptr;   // variables and parameters
  const ProcDef* proc = nullptr;  // the definition with a body, if any
  Builtin builtin = Builtin::kNone;
};

enum class ScopeKind { kGlobal, kProc, kBlock };

struct Scope {
  ScopeKind kind = ScopeKind::kGlobal;
  int parent = -1;
  const ProcDef* proc = nullptr;  // owning procedure, null at global scope
  std::vector<TypePtr> slot_types;
  // Local procedures defined directly in this scope, created on entry.
  std::vector<const ProcDef*> procs;
};

}  // namespace ast

struct BoundProgram {
  std::unique_ptr<ast::TranslationUnit> unit;
  std::deque<ast::Symbol> symbols;
  std::vector<ast::Scope> scopes;  // scopes[0] is the global scope
  const ast::Symbol* main = nullptr;
};

struct BindResult {
  std::shared_ptr<BoundProgram> program;
  CodeFacts facts;
  Diagnostics diagnostics;
};

// Annotates `unit` in place and takes ownership of it.
BindResult Bind(std::unique_ptr<ast::TranslationUnit> unit);

}  // namespace atc

#endif  // ATC_BINDER_HPP_
