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


#include "atc/binder.hpp"

#include <cstdint>
#include <map>
#include <set>

namespace atc {
namespace {

using namespace ast;

bool IsArray(const TypePtr& t) { return t && t->kind == TypeKind::kArray; }
bool IsStruct(const TypePtr& t) { return t && t->kind == TypeKind::kStruct; }

class Binder {
 public:
  explicit Binder(std::unique_ptr<TranslationUnit> unit) : prog_(std::make_shared<BoundProgram>()) {
    prog_->unit = std::move(unit);
  }

  BindResult Run() {
    NewScope(ScopeKind::kGlobal, -1, nullptr);
    Symbol& printf_sym = prog_->symbols.emplace_back();
    printf_sym.kind = SymbolKind::kBuiltin;
    printf_sym.name = "printf";
    printf_sym.builtin = Builtin::kPrintf;
    printf_sym.scope = 0;
    printf_sym.slot = -1;
    names_[0]["printf"] = &printf_sym;

    for (auto& d : prog_->unit->decls) BindStmt(*d);

    for (const Symbol* s : called_procs_) {
      if (s->kind == SymbolKind::kProcedure && !s->proc) {
        Error(diag::kUndeclared, s->span, "procedure '" + s->name + "' is declared but never defined");
      }
    }
    auto it = names_[0].find("main");
    if (it != names_[0].end() && it->second->kind == SymbolKind::kProcedure && it->second->proc) {
      const Symbol* m = it->second;
      if (m->type->result->kind != TypeKind::kInt || !m->type->params.empty()) {
        Error(diag::kType, m->span, "'main' must be declared as 'int main()'");
      }
      prog_->main = m;
    }
    BindResult result;
    result.program = prog_;
    result.facts = std::move(facts_);
    result.diagnostics = std::move(diags_);
    return result;
  }

 private:
  struct ProcContext {
    const ProcDef* proc = nullptr;
    std::map<std::string, Labeled*> labels;
    std::map<const Labeled*, int> label_scopes;
    struct PendingGoto {
      Goto* stmt;
      int scope;
    };
    std::vector<PendingGoto> gotos;
    struct PendingCase {
      const Stmt* label;
      int label_scope;
      int switch_scope;
    };
    std::vector<PendingCase> cases;
    int loops = 0;
    struct SwitchContext {
      Switch* stmt;
      int scope;
      std::set<std::int32_t> values;
    };
    std::vector<SwitchContext> switches;
  };

  // -- scopes and symbols ---------------------------------------------------

  int NewScope(ScopeKind kind, int parent, const ProcDef* proc) {
    int id = static_cast<int>(prog_->scopes.size());
    Scope s;
    s.kind = kind;
    s.parent = parent;
    s.proc = proc;
    prog_->scopes.push_back(std::move(s));
    names_.emplace_back();
    init_orders_.emplace_back();
    return id;
  }

  int AddSlot(int scope, TypePtr type) {
    auto& slots = prog_->scopes[scope].slot_types;
    slots.push_back(std::move(type));
    return static_cast<int>(slots.size()) - 1;
  }

  Symbol* Lookup(const std::string& name) const {
    for (int s = scope_; s >= 0; s = prog_->scopes[s].parent) {
      auto it = names_[s].find(name);
      if (it != names_[s].end()) return it->second;
    }
    return nullptr;
  }

  Symbol* NewSymbol(SymbolKind kind, const std::string& name, TypePtr type, const Span& span) {
    Symbol& sym = prog_->symbols.emplace_back();
    sym.kind = kind;
    sym.name = name;
    sym.type = std::move(type);
    sym.span = span;
    sym.scope = scope_;
    sym.slot = AddSlot(scope_, sym.type);
    if (!name.empty()) {
      names_[scope_][name] = &sym;
      facts_.declared.insert(name);
    }
    return &sym;
  }

  void Error(std::string_view code, const Span& span, std::string message) {
    diags_.push_back(Diagnostic{std::string(code), Severity::kError, span, std::move(message)});
  }

  void TypeError(const Span& span, std::string message) { Error(diag::kType, span, std::move(message)); }

  void NoteUse(const std::string& name, const Symbol* sym) {
    for (const Symbol* d : defining_) {
      if (d == sym) return;
    }
    facts_.used.insert(name);
  }

  // -- declarations ---------------------------------------------------------

  void BindVar(VarDecl& v) {
    Symbol* existing = nullptr;
    auto it = names_[scope_].find(v.name);
    if (it != names_[scope_].end()) existing = it->second;
    Symbol* sym = nullptr;
    if (existing) {
      bool mergeable = scope_ == 0 && existing->kind == SymbolKind::kVariable &&
                       SameType(*existing->type, *v.type) && !(existing->var->init && v.init);
      if (!mergeable) {
        Error(diag::kRedefinition, v.span, "redefinition of '" + v.name + "'");
        return;
      }
      sym = existing;
      if (v.init) sym->var = &v;
    } else {
      sym = NewSymbol(SymbolKind::kVariable, v.name, v.type, v.span);
      sym->var = &v;
    }
    v.symbol = sym;
    if (v.type->kind == TypeKind::kStruct && !v.type->struct_def->complete) {
      TypeError(v.span, "variable '" + v.name + "' has incomplete type " + TypeName(*v.type));
    }
    if (v.type->kind == TypeKind::kArray && v.type->array_kind == ArrayKind::kFlexZero) {
      TypeError(v.span, "a zero-length array is only allowed as the last struct member");
    }
    if (v.init) {
      facts_.coded.insert(v.name);
      defining_.push_back(sym);
      BindInitializer(*v.init, v.type);
      defining_.pop_back();
    }
  }

  void BindInitializer(Initializer& init, const TypePtr& type) {
    if (!init.is_list) {
      TypePtr src = BindExpr(*init.expr);
      if (!src) return;
      if (type->kind == TypeKind::kArray && type->array_kind == ArrayKind::kFixed) {
        if (init.expr->kind == ExprKind::kStrLit && type->element->kind == TypeKind::kChar) {
          if (init.expr->As<StrLit>().bytes.size() > type->count) {
            TypeError(init.span, "string literal does not fit in " + TypeName(*type));
          }
          return;
        }
        TypeError(init.span, "a fixed-size array can only be initialized from a string literal or a list");
        return;
      }
      CheckAssignable(type, src, init.span, "initialize");
      return;
    }
    switch (type->kind) {
      case TypeKind::kArray: {
        if (type->array_kind == ArrayKind::kFlexZero) {
          TypeError(init.span, "a zero-length array member cannot be initialized");
          return;
        }
        if (type->array_kind == ArrayKind::kFixed && init.list.size() > type->count) {
          TypeError(init.span, "too many initializers for " + TypeName(*type));
        }
        for (auto& e : init.list) BindInitializer(e, type->element);
        return;
      }
      case TypeKind::kStruct: {
        const auto& fields = type->struct_def->fields;
        if (init.list.size() > fields.size()) {
          TypeError(init.span, "too many initializers for " + TypeName(*type));
        }
        for (std::size_t i = 0; i < init.list.size() && i < fields.size(); ++i) {
          BindInitializer(init.list[i], fields[i].type);
        }
        return;
      }
      default:
        if (init.list.size() != 1) {
          TypeError(init.span, "scalar initializer list must have exactly one element");
          for (auto& e : init.list) BindInitializer(e, type);
          return;
        }
        BindInitializer(init.list[0], type);
        return;
    }
  }

  void CheckAssignable(const TypePtr& dst, const TypePtr& src, const Span& span, std::string_view what) {
    if (!dst || !src) return;
    bool ok = false;
    if (dst->IsScalar()) {
      ok = src->IsScalar();
    } else if (dst->kind == TypeKind::kStruct) {
      ok = src->kind == TypeKind::kStruct && src->struct_def == dst->struct_def;
    } else if (dst->kind == TypeKind::kArray) {
      ok = dst->array_kind == ArrayKind::kDynamic && src->kind == TypeKind::kArray &&
           SameType(*dst->element, *src->element);
    } else if (dst->kind == TypeKind::kProc) {
      ok = SameType(*dst, *src);
    }
    if (!ok) {
      TypeError(span, "cannot " + std::string(what) + " " + TypeName(*dst) + " from " + TypeName(*src));
    }
  }

  void BindProc(ProcStmt& stmt) {
    ProcDef& proc = stmt.proc;
    TypePtr type = proc.ProcType();
    if (proc.result->kind == TypeKind::kArray) TypeError(proc.span, "procedures cannot return arrays");
    Symbol* sym = nullptr;
    auto it = names_[scope_].find(proc.name);
    if (it != names_[scope_].end()) {
      Symbol* existing = it->second;
      if (scope_ == 0 && existing->kind == SymbolKind::kProcedure && SameType(*existing->type, *type) &&
          !(existing->proc && proc.body)) {
        sym = existing;
      } else {
        Error(diag::kRedefinition, proc.span, "redefinition of '" + proc.name + "'");
        // Bind the body anyway so its own errors surface.
        sym = &prog_->symbols.emplace_back();
        sym->kind = SymbolKind::kProcedure;
        sym->name = proc.name;
        sym->type = type;
        sym->scope = scope_;
        sym->slot = AddSlot(scope_, type);
      }
    } else {
      sym = NewSymbol(SymbolKind::kProcedure, proc.name, type, proc.span);
    }
    proc.symbol = sym;
    facts_.declared.insert(proc.name);
    if (!proc.body) return;

    facts_.coded.insert(proc.name);
    if (!sym->proc) sym->proc = &proc;
    prog_->scopes[scope_].procs.push_back(&proc);

    int saved_scope = scope_;
    ProcContext ctx;
    ctx.proc = &proc;
    ProcContext* saved_ctx = ctx_;
    ctx_ = &ctx;
    scope_ = NewScope(ScopeKind::kProc, saved_scope, &proc);
    proc.param_scope = scope_;
    for (auto& p : proc.params) {
      if (!p.name.empty() && names_[scope_].count(p.name)) {
        Error(diag::kRedefinition, p.span, "duplicate parameter '" + p.name + "'");
        p.symbol = nullptr;
        AddSlot(scope_, p.type);
        continue;
      }
      if (p.type->kind == TypeKind::kStruct && !p.type->struct_def->complete) {
        TypeError(p.span, "parameter has incomplete type " + TypeName(*p.type));
      }
      Symbol* ps = NewSymbol(SymbolKind::kParameter, p.name, p.type, p.span);
      ps->var = &p;
      p.symbol = ps;
    }
    defining_.push_back(sym);
    Block& body = *proc.body;
    body.scope = scope_;
    body.order = order_++;
    for (auto& s : body.stmts) BindStmt(*s);
    body.order_end = order_ - 1;
    defining_.pop_back();
    ResolveLabels(ctx);
    ctx_ = saved_ctx;
    scope_ = saved_scope;
  }

  // Entering scopes (those enclosing the label but not the jump) must not
  // skip an initialized declaration that precedes the label.
  bool SkipsInitializer(int from_scope, int label_scope, int label_order) const {
    std::set<int> from_chain;
    for (int s = from_scope; s >= 0; s = prog_->scopes[s].parent) from_chain.insert(s);
    for (int s = label_scope; s >= 0 && !from_chain.count(s); s = prog_->scopes[s].parent) {
      for (int order : init_orders_[s]) {
        if (order < label_order) return true;
      }
    }
    return false;
  }

  void ResolveLabels(ProcContext& ctx) {
    for (auto& g : ctx.gotos) {
      auto it = ctx.labels.find(g.stmt->label);
      if (it == ctx.labels.end()) {
        Error(diag::kUnresolvedLabel, g.stmt->span, "label '" + g.stmt->label + "' is not defined");
        continue;
      }
      g.stmt->target = it->second;
      if (SkipsInitializer(g.scope, ctx.label_scopes[it->second], it->second->order)) {
        Error(diag::kGotoIntoScope, g.stmt->span,
              "goto '" + g.stmt->label + "' jumps into a scope past an initialized declaration");
      }
    }
    for (auto& c : ctx.cases) {
      if (SkipsInitializer(c.switch_scope, c.label_scope, c.label->order)) {
        Error(diag::kGotoIntoScope, c.label->span, "case label skips an initialized declaration");
      }
    }
  }

  // -- statements -----------------------------------------------------------

  void BindCondition(Expr& e, std::string_view what) {
    TypePtr t = BindExpr(e);
    if (t && !t->IsScalar()) TypeError(e.span, std::string(what) + " must be a scalar, found " + TypeName(*t));
  }

  void EnterBlock(Block& b) {
    int saved = scope_;
    scope_ = NewScope(ScopeKind::kBlock, saved, ctx_ ? ctx_->proc : nullptr);
    b.scope = scope_;
    for (auto& s : b.stmts) BindStmt(*s);
    scope_ = saved;
  }

  void BindStmt(Stmt& stmt) {
    stmt.order = order_++;
    BindStmtInner(stmt);
    stmt.order_end = order_ - 1;
  }

  void BindStmtInner(Stmt& stmt) {
    switch (stmt.kind) {
      case StmtKind::kExpr:
        BindExpr(*stmt.As<ExprStmt>().expr);
        return;
      case StmtKind::kDecl: {
        auto& d = stmt.As<DeclStmt>();
        bool has_init = false;
        for (auto& v : d.vars) {
          BindVar(v);
          has_init = has_init || v.init.has_value();
        }
        if (has_init) init_orders_[scope_].push_back(stmt.order);
        return;
      }
      case StmtKind::kProc:
        BindProc(stmt.As<ProcStmt>());
        return;
      case StmtKind::kBlock:
        EnterBlock(stmt.As<Block>());
        return;
      case StmtKind::kIf: {
        auto& s = stmt.As<If>();
        BindCondition(*s.cond, "if condition");
        BindStmt(*s.then_stmt);
        if (s.else_stmt) BindStmt(*s.else_stmt);
        return;
      }
      case StmtKind::kWhile: {
        auto& s = stmt.As<While>();
        BindCondition(*s.cond, "while condition");
        BindLoopBody(*s.body);
        return;
      }
      case StmtKind::kDoWhile: {
        auto& s = stmt.As<DoWhile>();
        BindLoopBody(*s.body);
        BindCondition(*s.cond, "do-while condition");
        return;
      }
      case StmtKind::kFor: {
        auto& s = stmt.As<For>();
        int saved = scope_;
        scope_ = NewScope(ScopeKind::kBlock, saved, ctx_ ? ctx_->proc : nullptr);
        s.scope = scope_;
        if (s.init) BindStmt(*s.init);
        if (s.cond) BindCondition(*s.cond, "for condition");
        if (s.step) BindExpr(*s.step);
        BindLoopBody(*s.body);
        scope_ = saved;
        return;
      }
      case StmtKind::kSwitch: {
        auto& s = stmt.As<Switch>();
        BindCondition(*s.value, "switch value");
        if (!ctx_) return;
        ctx_->switches.push_back({&s, scope_, {}});
        BindStmt(*s.body);
        ctx_->switches.pop_back();
        return;
      }
      case StmtKind::kCase: {
        auto& s = stmt.As<Case>();
        BindExpr(*s.value);
        auto v = FoldConstant(*s.value);
        if (!ctx_ || ctx_->switches.empty()) {
          Error(diag::kParse, stmt.span, "'case' outside of a switch");
        } else if (!v) {
          Error(diag::kParse, s.value->span, "case value must be an integer constant");
        } else {
          auto& sw = ctx_->switches.back();
          s.constant = *v;
          if (!sw.values.insert(*v).second) {
            Error(diag::kParse, s.value->span, "duplicate case value " + std::to_string(*v));
          } else {
            sw.stmt->cases.push_back(&s);
            ctx_->cases.push_back({&s, scope_, sw.scope});
          }
        }
        BindStmt(*s.body);
        return;
      }
      case StmtKind::kDefault: {
        auto& s = stmt.As<Default>();
        if (!ctx_ || ctx_->switches.empty()) {
          Error(diag::kParse, stmt.span, "'default' outside of a switch");
        } else {
          auto& sw = ctx_->switches.back();
          if (sw.stmt->default_label) {
            Error(diag::kParse, stmt.span, "multiple default labels in one switch");
          } else {
            sw.stmt->default_label = &s;
            ctx_->cases.push_back({&s, scope_, sw.scope});
          }
        }
        BindStmt(*s.body);
        return;
      }
      case StmtKind::kBreak:
        if (!ctx_ || (ctx_->loops == 0 && ctx_->switches.empty())) {
          Error(diag::kParse, stmt.span, "'break' outside of a loop or switch");
        }
        return;
      case StmtKind::kContinue:
        if (!ctx_ || ctx_->loops == 0) Error(diag::kParse, stmt.span, "'continue' outside of a loop");
        return;
      case StmtKind::kReturn: {
        auto& s = stmt.As<Return>();
        if (!ctx_) return;
        const TypePtr& result = ctx_->proc->result;
        if (s.value) {
          TypePtr t = BindExpr(*s.value);
          if (result->kind == TypeKind::kVoid) {
            TypeError(s.value->span, "void procedure '" + ctx_->proc->name + "' returns a value");
          } else {
            CheckAssignable(result, t, s.value->span, "return");
          }
        }
        return;
      }
      case StmtKind::kGoto:
        if (ctx_) ctx_->gotos.push_back({&stmt.As<Goto>(), scope_});
        return;
      case StmtKind::kLabeled: {
        auto& s = stmt.As<Labeled>();
        if (ctx_) {
          if (!ctx_->labels.emplace(s.label, &s).second) {
            Error(diag::kRedefinition, stmt.span, "duplicate label '" + s.label + "'");
          }
          ctx_->label_scopes[&s] = scope_;
        }
        BindStmt(*s.body);
        return;
      }
      case StmtKind::kEmpty:
        return;
    }
  }

  void BindLoopBody(Stmt& body) {
    if (ctx_) ++ctx_->loops;
    // Switches outside the loop do not take `break` from inside it; the
    // innermost construct wins, which a counter models well enough because
    // both accept break.
    BindStmt(body);
    if (ctx_) --ctx_->loops;
  }

  // -- expressions ----------------------------------------------------------

  static bool IsLvalue(const Expr& e) {
    switch (e.kind) {
      case ExprKind::kIdent: {
        const Symbol* s = e.As<Ident>().symbol;
        return s && (s->kind == SymbolKind::kVariable || s->kind == SymbolKind::kParameter);
      }
      case ExprKind::kIndex:
        return true;
      case ExprKind::kMember:
        return IsLvalue(*e.As<Member>().base);
      default:
        return false;
    }
  }

  bool CheckModifiable(const Expr& target, std::string_view what) {
    if (!IsLvalue(target)) {
      TypeError(target.span, "expression is not assignable (" + std::string(what) + ")");
      return false;
    }
    const TypePtr& t = target.type;
    if (t && t->kind == TypeKind::kArray && t->array_kind != ArrayKind::kDynamic) {
      TypeError(target.span, "cannot assign to " + TypeName(*t) + "; only [] arrays are assignable");
      return false;
    }
    return true;
  }

  TypePtr Set(Expr& e, TypePtr t) {
    e.type = t;
    return t;
  }

  TypePtr BindExpr(Expr& e) {
    switch (e.kind) {
      case ExprKind::kIntLit:
        if (e.As<IntLit>().value > 0xFFFFFFFFull) {
          Error(diag::kBadLiteral, e.span, "integer literal does not fit in 32 bits");
        }
        return Set(e, Type::Int());
      case ExprKind::kCharLit:
        return Set(e, Type::Int());
      case ExprKind::kStrLit:
        return Set(e, Type::Array(Type::Char(), ArrayKind::kDynamic));
      case ExprKind::kIdent: {
        auto& id = e.As<Ident>();
        Symbol* sym = Lookup(id.name);
        NoteUse(id.name, sym);
        if (!sym) {
          Error(diag::kUndeclared, e.span, "use of undeclared identifier '" + id.name + "'");
          return Set(e, nullptr);
        }
        id.symbol = sym;
        if (sym->kind == SymbolKind::kBuiltin) {
          TypeError(e.span, "built-in '" + id.name + "' can only be called");
          return Set(e, nullptr);
        }
        if (sym->kind == SymbolKind::kProcedure) called_procs_.insert(sym);
        return Set(e, sym->type);
      }
      case ExprKind::kUnary: {
        auto& u = e.As<Unary>();
        TypePtr t = BindExpr(*u.operand);
        if (!t) return Set(e, nullptr);
        if (!t->IsScalar()) {
          TypeError(e.span, "operator '" + std::string(UnaryOpName(u.op)) + "' needs a scalar, found " + TypeName(*t));
          return Set(e, nullptr);
        }
        switch (u.op) {
          case UnaryOp::kPreInc:
          case UnaryOp::kPreDec:
          case UnaryOp::kPostInc:
          case UnaryOp::kPostDec:
            CheckModifiable(*u.operand, "increment");
            return Set(e, t);
          default:
            return Set(e, Type::Int());
        }
      }
      case ExprKind::kBinary: {
        auto& b = e.As<Binary>();
        TypePtr l = BindExpr(*b.lhs);
        TypePtr r = BindExpr(*b.rhs);
        if (!l || !r) return Set(e, nullptr);
        if (!l->IsScalar() || !r->IsScalar()) {
          TypeError(e.span, "operator '" + std::string(BinaryOpName(b.op)) + "' needs scalar operands, found " +
                                TypeName(*l) + " and " + TypeName(*r));
          return Set(e, nullptr);
        }
        return Set(e, Type::Int());
      }
      case ExprKind::kAssign: {
        auto& a = e.As<Assign>();
        TypePtr t = BindExpr(*a.target);
        TypePtr v = BindExpr(*a.value);
        if (!t) return Set(e, nullptr);
        if (!CheckModifiable(*a.target, "assignment")) return Set(e, t);
        if (a.op) {
          if (!t->IsScalar() || (v && !v->IsScalar())) {
            TypeError(e.span, "compound assignment needs scalar operands");
          }
        } else {
          CheckAssignable(t, v, e.span, "assign");
        }
        return Set(e, t);
      }
      case ExprKind::kTernary: {
        auto& t = e.As<Ternary>();
        BindCondition(*t.cond, "condition");
        TypePtr a = BindExpr(*t.then_expr);
        TypePtr b = BindExpr(*t.else_expr);
        if (!a || !b) return Set(e, nullptr);
        if (a->IsScalar() && b->IsScalar()) return Set(e, Type::Int());
        if (IsArray(a) && IsArray(b) && SameType(*a->element, *b->element)) {
          return Set(e, Type::Array(a->element, ArrayKind::kDynamic));
        }
        if (SameType(*a, *b)) return Set(e, a);
        TypeError(e.span, "branches of ?: have incompatible types " + TypeName(*a) + " and " + TypeName(*b));
        return Set(e, nullptr);
      }
      case ExprKind::kComma: {
        auto& c = e.As<Comma>();
        BindExpr(*c.lhs);
        return Set(e, BindExpr(*c.rhs));
      }
      case ExprKind::kCall:
        return Set(e, BindCall(e.As<Call>()));
      case ExprKind::kIndex: {
        auto& ix = e.As<Index>();
        TypePtr base = BindExpr(*ix.base);
        TypePtr index = BindExpr(*ix.index);
        if (index && !index->IsScalar()) TypeError(ix.index->span, "array index must be a scalar");
        if (!base) return Set(e, nullptr);
        if (!IsArray(base)) {
          TypeError(ix.base->span, "subscripted value is not an array: " + TypeName(*base));
          return Set(e, nullptr);
        }
        return Set(e, base->element);
      }
      case ExprKind::kMember: {
        auto& m = e.As<Member>();
        TypePtr base = BindExpr(*m.base);
        if (!base) return Set(e, nullptr);
        if (!IsStruct(base)) {
          TypeError(m.base->span, "member access on non-struct type " + TypeName(*base));
          return Set(e, nullptr);
        }
        int idx = base->struct_def->FieldIndex(m.field);
        if (idx < 0) {
          TypeError(e.span, TypeName(*base) + " has no member '" + m.field + "'");
          return Set(e, nullptr);
        }
        m.field_index = idx;
        return Set(e, base->struct_def->fields[idx].type);
      }
      case ExprKind::kSizeofExpr: {
        auto& s = e.As<SizeofExpr>();
        TypePtr t = BindExpr(*s.operand);
        if (t) s.size = StaticSize(*s.operand);
        return Set(e, Type::Int());
      }
      case ExprKind::kSizeofType: {
        auto& s = e.As<SizeofType>();
        s.size = SizeOf(*s.operand);
        return Set(e, Type::Int());
      }
      case ExprKind::kLengthOf: {
        auto& l = e.As<LengthOf>();
        TypePtr t = BindExpr(*l.operand);
        if (t && !IsArray(t)) TypeError(l.operand->span, "length() needs an array, found " + TypeName(*t));
        return Set(e, Type::Int());
      }
      case ExprKind::kCast: {
        auto& c = e.As<Cast>();
        TypePtr t = BindExpr(*c.operand);
        if (!c.target->IsScalar()) {
          TypeError(e.span, "cast to " + TypeName(*c.target) + " is not supported");
          return Set(e, nullptr);
        }
        if (t && !t->IsScalar()) {
          TypeError(e.span, "cannot cast " + TypeName(*t) + " to " + TypeName(*c.target));
        }
        return Set(e, c.target);
      }
    }
    return nullptr;
  }

  // A `[]` variable is sized by its visible literal or list initializer.
  static std::optional<std::int32_t> StaticSize(const Expr& e) {
    if (e.kind == ExprKind::kStrLit) {
      return static_cast<std::int32_t>(e.As<StrLit>().bytes.size() + 1);
    }
    const TypePtr& t = e.type;
    if (t->kind == TypeKind::kArray && t->array_kind == ArrayKind::kDynamic) {
      if (e.kind != ExprKind::kIdent) return std::nullopt;
      const Symbol* sym = e.As<Ident>().symbol;
      if (!sym || sym->kind != SymbolKind::kVariable || !sym->var || !sym->var->init) return std::nullopt;
      const Initializer& init = *sym->var->init;
      auto elem = SizeOf(*t->element);
      if (!elem) return std::nullopt;
      if (init.is_list) return static_cast<std::int32_t>(init.list.size()) * *elem;
      if (init.expr->kind == ExprKind::kStrLit) {
        return static_cast<std::int32_t>(init.expr->As<StrLit>().bytes.size() + 1) * *elem;
      }
      return std::nullopt;
    }
    return SizeOf(*t);
  }

  TypePtr BindCall(Call& call) {
    if (call.callee->kind == ExprKind::kIdent) {
      auto& id = call.callee->As<Ident>();
      Symbol* sym = Lookup(id.name);
      if (sym && sym->kind == SymbolKind::kBuiltin) {
        NoteUse(id.name, sym);
        id.symbol = sym;
        return BindPrintf(call);
      }
    }
    TypePtr callee = BindExpr(*call.callee);
    std::vector<TypePtr> args;
    for (auto& a : call.args) args.push_back(BindExpr(*a));
    if (!callee) return nullptr;
    if (callee->kind != TypeKind::kProc) {
      TypeError(call.callee->span, "called object of type " + TypeName(*callee) + " is not a procedure");
      return nullptr;
    }
    if (args.size() != callee->params.size()) {
      Error(diag::kParse, call.span,
            "call expects " + std::to_string(callee->params.size()) + " argument(s), got " +
                std::to_string(args.size()));
      return callee->result;
    }
    for (std::size_t i = 0; i < args.size(); ++i) {
      CheckAssignable(callee->params[i], args[i], call.args[i]->span, "pass");
    }
    return callee->result;
  }

  TypePtr BindPrintf(Call& call) {
    call.callee->type = nullptr;
    if (call.args.empty()) {
      Error(diag::kParse, call.span, "printf needs a format argument");
      return Type::Int();
    }
    for (std::size_t i = 0; i < call.args.size(); ++i) {
      TypePtr t = BindExpr(*call.args[i]);
      if (!t) continue;
      bool char_array = IsArray(t) && t->element->kind == TypeKind::kChar;
      if (i == 0 ? !char_array : !(t->IsScalar() || char_array)) {
        TypeError(call.args[i]->span, "printf argument of type " + TypeName(*t) + " is not supported");
      }
    }
    return Type::Int();
  }

  std::shared_ptr<BoundProgram> prog_;
  std::vector<std::map<std::string, Symbol*>> names_;
  std::vector<std::vector<int>> init_orders_;
  std::vector<const Symbol*> defining_;
  std::set<const Symbol*> called_procs_;
  ProcContext* ctx_ = nullptr;
  int scope_ = 0;
  int order_ = 0;
  CodeFacts facts_;
  Diagnostics diags_;
};

}  // namespace

BindResult Bind(std::unique_ptr<ast::TranslationUnit> unit) {
  if (!unit) unit = std::make_unique<ast::TranslationUnit>();
  return Binder(std::move(unit)).Run();
}

}  // namespace atc
