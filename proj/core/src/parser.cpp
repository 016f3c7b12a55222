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

#include "atc/parser.hpp"

#include <array>
#include <map>

namespace atc {
namespace {

using namespace ast;

struct ParseError {};

constexpr std::array<std::string_view, 10> kUnsupportedTypeWords = {
    "float", "double", "long", "short", "unsigned", "signed", "union", "enum", "typedef", "_Bool"};

bool IsUnsupportedTypeWord(const Token& t) {
  if (t.kind != TokenKind::kKeyword) return false;
  for (auto w : kUnsupportedTypeWords) {
    if (t.text == w) return true;
  }
  return false;
}

int BinaryPrecedence(const Token& t, BinaryOp& op) {
  if (t.kind != TokenKind::kPunctuator) return -1;
  struct Entry {
    std::string_view spelling;
    BinaryOp op;
    int prec;
  };
  static constexpr std::array<Entry, 18> kTable = {{
      {"||", BinaryOp::kLogOr, 1},  {"&&", BinaryOp::kLogAnd, 2}, {"|", BinaryOp::kBitOr, 3},
      {"^", BinaryOp::kBitXor, 4},  {"&", BinaryOp::kBitAnd, 5},  {"==", BinaryOp::kEq, 6},
      {"!=", BinaryOp::kNe, 6},     {"<", BinaryOp::kLt, 7},      {">", BinaryOp::kGt, 7},
      {"<=", BinaryOp::kLe, 7},     {">=", BinaryOp::kGe, 7},     {"<<", BinaryOp::kShl, 8},
      {">>", BinaryOp::kShr, 8},    {"+", BinaryOp::kAdd, 9},     {"-", BinaryOp::kSub, 9},
      {"*", BinaryOp::kMul, 10},    {"/", BinaryOp::kDiv, 10},    {"%", BinaryOp::kMod, 10},
  }};
  for (const auto& e : kTable) {
    if (t.text == e.spelling) {
      op = e.op;
      return e.prec;
    }
  }
  return -1;
}

std::optional<std::optional<BinaryOp>> AssignmentOp(const Token& t) {
  if (t.kind != TokenKind::kPunctuator) return std::nullopt;
  if (t.text == "=") return std::optional<BinaryOp>{};
  static const std::map<std::string, BinaryOp, std::less<>> kCompound = {
      {"+=", BinaryOp::kAdd},    {"-=", BinaryOp::kSub},    {"*=", BinaryOp::kMul},
      {"/=", BinaryOp::kDiv},    {"%=", BinaryOp::kMod},    {"<<=", BinaryOp::kShl},
      {">>=", BinaryOp::kShr},   {"&=", BinaryOp::kBitAnd}, {"^=", BinaryOp::kBitXor},
      {"|=", BinaryOp::kBitOr}};
  auto it = kCompound.find(t.text);
  if (it == kCompound.end()) return std::nullopt;
  return std::optional<BinaryOp>{it->second};
}

template <typename T>
std::unique_ptr<T> Node(const Span& span) {
  auto n = std::make_unique<T>();
  n->span = span;
  return n;
}

class Parser {
 public:
  explicit Parser(const TokenList& tokens) {
    for (const Token& t : tokens) {
      if (t.IsTrivia() || t.kind == TokenKind::kUnknown) continue;
      toks_.push_back(&t);
      if (t.kind == TokenKind::kEof) break;
    }
    if (toks_.empty() || toks_.back()->kind != TokenKind::kEof) {
      eof_.kind = TokenKind::kEof;
      if (!toks_.empty()) {
        eof_.span = toks_.back()->span;
        eof_.span.byte_start = eof_.span.byte_end;
      }
      toks_.push_back(&eof_);
    }
  }

  std::unique_ptr<TranslationUnit> ParseUnit() {
    auto unit = std::make_unique<TranslationUnit>();
    while (!AtEof()) {
      std::size_t before = pos_;
      try {
        if (Peek().IsPunct(";")) {
          Advance();
          continue;
        }
        unit->decls.push_back(ParseDeclaration(/*top_level=*/true));
      } catch (const ParseError&) {
        Synchronize(/*top_level=*/true);
      }
      if (pos_ == before) Advance();
    }
    return unit;
  }

  ExprPtr ParseWholeExpression() {
    try {
      ExprPtr e = ParseExpr();
      if (!AtEof()) Fail(Peek().span, "unexpected token '" + Peek().bytes + "' after expression");
      return e;
    } catch (const ParseError&) {
      return nullptr;
    }
  }

  Diagnostics TakeDiagnostics() { return std::move(diags_); }

 private:
  // -- cursor ---------------------------------------------------------------

  const Token& Peek(std::size_t k = 0) const {
    std::size_t i = std::min(pos_ + k, toks_.size() - 1);
    return *toks_[i];
  }
  const Token& Advance() {
    const Token& t = *toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }
  bool AtEof() const { return toks_[pos_]->kind == TokenKind::kEof; }
  Span PrevSpan() const { return pos_ > 0 ? toks_[pos_ - 1]->span : toks_[0]->span; }

  bool Accept(std::string_view punct) {
    if (Peek().IsPunct(punct)) {
      Advance();
      return true;
    }
    return false;
  }

  const Token& Expect(std::string_view punct, std::string_view context) {
    if (!Peek().IsPunct(punct)) {
      Fail(Peek().span, "expected '" + std::string(punct) + "' " + std::string(context) + ", found " +
                            Describe(Peek()));
    }
    return Advance();
  }

  static std::string Describe(const Token& t) {
    if (t.kind == TokenKind::kEof) return "end of input";
    return "'" + t.bytes + "'";
  }

  [[noreturn]] void Fail(const Span& span, std::string message) {
    diags_.push_back(Diagnostic{std::string(diag::kParse), Severity::kError, span, std::move(message)});
    throw ParseError{};
  }

  void Note(std::string_view code, const Span& span, std::string message) {
    diags_.push_back(Diagnostic{std::string(code), Severity::kNote, span, std::move(message)});
  }

  void Synchronize(bool top_level) {
    int depth = 0;
    while (!AtEof()) {
      const Token& t = Peek();
      if (t.IsPunct("{")) {
        ++depth;
      } else if (t.IsPunct("}")) {
        if (depth == 0) {
          if (top_level) Advance();
          return;
        }
        if (--depth == 0 && top_level) {
          Advance();
          if (Peek().IsPunct(";")) Advance();
          return;
        }
      } else if (t.IsPunct(";") && depth == 0) {
        Advance();
        return;
      }
      Advance();
    }
  }

  // -- types ----------------------------------------------------------------

  bool StartsType(const Token& t) const {
    if (t.kind != TokenKind::kKeyword) return false;
    return t.text == "void" || t.text == "char" || t.text == "int" || t.text == "struct" ||
           t.text == "const" || t.text == "volatile" || IsUnsupportedTypeWord(t);
  }

  bool StartsDeclaration() const {
    const Token& t = Peek();
    if (StartsType(t)) return true;
    return t.kind == TokenKind::kKeyword &&
           (t.text == "static" || t.text == "extern" || t.text == "register" || t.text == "auto" ||
            t.text == "inline");
  }

  struct DeclSpec {
    TypePtr base;
    bool is_volatile = false;
    bool is_static = false;
    std::shared_ptr<StructDef> defines;
    Span span;
  };

  std::shared_ptr<StructDef> StructTag(const Token& name) {
    auto& slot = structs_[name.text];
    if (!slot) {
      slot = std::make_shared<StructDef>();
      slot->name = name.text;
      slot->span = name.span;
    }
    return slot;
  }

  DeclSpec ParseDeclSpec() {
    DeclSpec spec;
    spec.span = Peek().span;
    for (;;) {
      const Token& t = Peek();
      if (t.IsKeyword("volatile")) {
        spec.is_volatile = true;
      } else if (t.IsKeyword("static")) {
        spec.is_static = true;
      } else if (t.IsKeyword("const") || t.IsKeyword("extern") || t.IsKeyword("register") ||
                 t.IsKeyword("auto") || t.IsKeyword("inline")) {
        // accepted, no effect
      } else {
        break;
      }
      Advance();
    }
    const Token& t = Peek();
    if (IsUnsupportedTypeWord(t)) Fail(t.span, "type '" + t.text + "' is not supported");
    if (t.IsKeyword("void")) {
      Advance();
      spec.base = Type::Void();
    } else if (t.IsKeyword("char")) {
      Advance();
      spec.base = Type::Char();
    } else if (t.IsKeyword("int")) {
      Advance();
      spec.base = Type::Int();
    } else if (t.IsKeyword("struct")) {
      Advance();
      if (Peek().kind != TokenKind::kIdentifier) Fail(Peek().span, "expected struct tag");
      const Token& name = Advance();
      auto def = StructTag(name);
      if (Peek().IsPunct("{")) {
        if (def->complete) Fail(name.span, "redefinition of struct '" + name.text + "'");
        ParseStructBody(*def);
        def->span = Cover(name.span, PrevSpan());
        spec.defines = def;
      }
      spec.base = Type::Struct(def);
    } else {
      Fail(t.span, "expected a type, found " + Describe(t));
    }
    while (Peek().IsKeyword("const") || Peek().IsKeyword("volatile")) {
      if (Peek().IsKeyword("volatile")) spec.is_volatile = true;
      Advance();
    }
    spec.base = ParseProcSuffixes(spec.base);
    spec.span = Cover(spec.span, PrevSpan());
    return spec;
  }

  // `R(P, ...)` procedure types, possibly repeated: `int(int)(char)`.
  TypePtr ParseProcSuffixes(TypePtr base) {
    while (Peek().IsPunct("(")) {
      Advance();
      auto params = ParseParams();
      std::vector<TypePtr> types;
      for (auto& p : params) types.push_back(p.type);
      base = Type::Proc(base, std::move(types));
    }
    return base;
  }

  void ParseStructBody(StructDef& def) {
    Expect("{", "to open struct body");
    std::vector<Field> fields;
    bool flex_seen = false;
    Span flex_span;
    while (!Peek().IsPunct("}") && !AtEof()) {
      DeclSpec spec = ParseDeclSpec();
      if (spec.is_volatile) Note(diag::kVolatileIgnored, spec.span, "'volatile' on a struct member has no effect");
      do {
        if (Peek().kind != TokenKind::kIdentifier) Fail(Peek().span, "expected member name");
        const Token& name = Advance();
        TypePtr type = ParseArraySuffix(spec.base, /*in_struct=*/true);
        if (flex_seen) {
          diags_.push_back(Diagnostic{std::string(diag::kFlexNotLast), Severity::kError, flex_span,
                                      "a zero-length array must be the last member of a struct"});
          flex_seen = false;
        }
        if (type->kind == TypeKind::kArray && type->array_kind == ArrayKind::kFlexZero) {
          flex_seen = true;
          flex_span = Cover(name.span, PrevSpan());
        }
        if (type->kind == TypeKind::kVoid) Fail(name.span, "member '" + name.text + "' has type void");
        for (const auto& f : fields) {
          if (f.name == name.text) Fail(name.span, "duplicate member '" + name.text + "'");
        }
        fields.push_back(Field{name.text, type, Cover(name.span, PrevSpan())});
      } while (Accept(","));
      Expect(";", "after struct member");
    }
    Expect("}", "to close struct body");
    def.fields = std::move(fields);
    def.complete = true;
  }

  std::int32_t ParseConstant(std::string_view what) {
    ExprPtr e = ParseConditional();
    auto v = FoldConstant(*e);
    if (!v) Fail(e->span, std::string(what) + " must be an integer constant");
    return *v;
  }

  // At most one `[...]` per declarator.
  TypePtr ParseArraySuffix(TypePtr base, bool in_struct) {
    if (!Peek().IsPunct("[")) return base;
    Span open = Advance().span;
    TypePtr result;
    if (Accept("]")) {
      result = Type::Array(base, ArrayKind::kDynamic);
    } else {
      std::int32_t n = ParseConstant("array size");
      Expect("]", "after array size");
      if (n < 0) Fail(open, "array size is negative");
      if (n == 0) {
        if (!in_struct) Fail(Cover(open, PrevSpan()), "a zero-length array is only allowed as the last struct member");
        result = Type::Array(base, ArrayKind::kFlexZero);
      } else {
        result = Type::Array(base, ArrayKind::kFixed, static_cast<std::uint32_t>(n));
      }
    }
    if (Peek().IsPunct("[")) Fail(Peek().span, "only one array dimension per declarator is supported");
    if (base->kind == TypeKind::kVoid) Fail(open, "array of void");
    return result;
  }

  std::vector<VarDecl> ParseParams() {
    // Cursor just past '('.
    std::vector<VarDecl> params;
    if (Accept(")")) return params;
    if (Peek().IsKeyword("void") && Peek(1).IsPunct(")")) {
      Advance();
      Advance();
      return params;
    }
    do {
      if (Peek().IsPunct("...")) Fail(Peek().span, "variadic procedures are not supported");
      Span start = Peek().span;
      DeclSpec spec = ParseDeclSpec();
      VarDecl p;
      if (Peek().kind == TokenKind::kIdentifier) p.name = Advance().text;
      TypePtr type = ParseArraySuffix(spec.base, false);
      // Array parameters are views onto the caller's storage.
      if (type->kind == TypeKind::kArray && type->array_kind == ArrayKind::kFixed)
        type = Type::Array(type->element, ArrayKind::kDynamic);
      if (type->kind == TypeKind::kVoid) Fail(start, "parameter of type void");
      p.type = type;
      p.span = Cover(start, PrevSpan());
      params.push_back(std::move(p));
    } while (Accept(","));
    Expect(")", "to close parameter list");
    return params;
  }

  TypePtr ParseTypeName() {
    DeclSpec spec = ParseDeclSpec();
    return ParseArraySuffix(spec.base, false);
  }

  // -- declarations ---------------------------------------------------------

  StmtPtr ParseDeclaration(bool top_level) {
    if (!StartsDeclaration()) {
      Fail(Peek().span, "expected a declaration, found " + Describe(Peek()));
    }
    Span start = Peek().span;
    DeclSpec spec = ParseDeclSpec();
    if (spec.is_static && !top_level) Fail(start, "static local variables are not supported");

    auto decl = Node<DeclStmt>(start);
    decl->defines = spec.defines;
    if (Accept(";")) {
      decl->span = Cover(start, PrevSpan());
      if (!spec.defines) Fail(start, "declaration declares nothing");
      return decl;
    }

    bool first = true;
    bool volatile_noted = false;
    do {
      if (Peek().kind != TokenKind::kIdentifier) {
        Fail(Peek().span, "expected a name in declaration, found " + Describe(Peek()));
      }
      const Token& name = Advance();
      if (first && Peek().IsPunct("(")) {
        return ParseProcedure(spec, name, start, top_level);
      }
      first = false;
      VarDecl v;
      v.name = name.text;
      v.type = ParseArraySuffix(spec.base, false);
      v.is_volatile = spec.is_volatile;
      if (v.type->kind == TypeKind::kVoid) Fail(name.span, "variable '" + name.text + "' has type void");
      if (Accept("=")) v.init = ParseInitializer();
      v.span = Cover(name.span, PrevSpan());
      if (spec.is_volatile && !volatile_noted) {
        Note(diag::kVolatileIgnored, start, "'volatile' has no effect on data declarations");
        volatile_noted = true;
      }
      decl->vars.push_back(std::move(v));
    } while (Accept(","));
    Expect(";", "after declaration");
    decl->span = Cover(start, PrevSpan());
    return decl;
  }

  Initializer ParseInitializer() {
    Initializer init;
    init.span = Peek().span;
    if (Accept("{")) {
      init.is_list = true;
      while (!Peek().IsPunct("}")) {
        init.list.push_back(ParseInitializer());
        if (!Accept(",")) break;
      }
      Expect("}", "to close initializer list");
    } else {
      init.expr = ParseAssignment();
    }
    init.span = Cover(init.span, PrevSpan());
    return init;
  }

  StmtPtr ParseProcedure(const DeclSpec& spec, const Token& name, const Span& start, bool top_level) {
    Advance();  // '('
    auto stmt = Node<ProcStmt>(start);
    ProcDef& proc = stmt->proc;
    proc.name = name.text;
    proc.result = spec.base;
    proc.params = ParseParams();
    if (top_level) {
      proc.placement = Placement::kTopLevel;
      if (spec.is_volatile)
        Note(diag::kVolatileIgnored, start, "'volatile' has no effect on a top-level procedure");
    } else {
      proc.placement = spec.is_volatile ? Placement::kNested : Placement::kClosure;
    }
    if (Accept(";")) {
      if (!top_level) Fail(name.span, "local procedure declarations need a body");
    } else {
      if (!Peek().IsPunct("{")) Fail(Peek().span, "expected '{' or ';' after procedure declarator");
      ++proc_depth_;
      proc.body = ParseBlock();
      --proc_depth_;
    }
    proc.span = Cover(start, PrevSpan());
    stmt->span = proc.span;
    return stmt;
  }

  // -- statements -----------------------------------------------------------

  std::unique_ptr<Block> ParseBlock() {
    Span start = Expect("{", "to open block").span;
    auto block = Node<Block>(start);
    while (!Peek().IsPunct("}") && !AtEof()) {
      std::size_t before = pos_;
      try {
        block->stmts.push_back(ParseStatement());
      } catch (const ParseError&) {
        Synchronize(/*top_level=*/false);
      }
      if (pos_ == before) Advance();
    }
    Expect("}", "to close block");
    block->span = Cover(start, PrevSpan());
    return block;
  }

  StmtPtr ParseStatement() {
    const Token& t = Peek();
    Span start = t.span;
    if (t.IsPunct("{")) return ParseBlock();
    if (t.IsPunct(";")) {
      Advance();
      return Node<Empty>(start);
    }
    if (t.kind == TokenKind::kIdentifier && Peek(1).IsPunct(":")) {
      Advance();
      Advance();
      auto s = Node<Labeled>(start);
      s->label = t.text;
      s->body = ParseStatement();
      s->span = Cover(start, s->body->span);
      return s;
    }
    if (t.kind == TokenKind::kKeyword) {
      if (t.text == "if") return ParseIf();
      if (t.text == "while") {
        Advance();
        auto s = Node<While>(start);
        Expect("(", "after 'while'");
        s->cond = ParseExpr();
        Expect(")", "after condition");
        s->body = ParseStatement();
        s->span = Cover(start, s->body->span);
        return s;
      }
      if (t.text == "do") {
        Advance();
        auto s = Node<DoWhile>(start);
        s->body = ParseStatement();
        if (!Peek().IsKeyword("while")) Fail(Peek().span, "expected 'while' after do body");
        Advance();
        Expect("(", "after 'while'");
        s->cond = ParseExpr();
        Expect(")", "after condition");
        Expect(";", "after do-while");
        s->span = Cover(start, PrevSpan());
        return s;
      }
      if (t.text == "for") return ParseFor();
      if (t.text == "switch") {
        Advance();
        auto s = Node<Switch>(start);
        Expect("(", "after 'switch'");
        s->value = ParseExpr();
        Expect(")", "after switch value");
        s->body = ParseStatement();
        s->span = Cover(start, s->body->span);
        return s;
      }
      if (t.text == "case") {
        Advance();
        auto s = Node<Case>(start);
        s->value = ParseConditional();
        Expect(":", "after case value");
        s->body = ParseStatement();
        s->span = Cover(start, s->body->span);
        return s;
      }
      if (t.text == "default") {
        Advance();
        Expect(":", "after 'default'");
        auto s = Node<Default>(start);
        s->body = ParseStatement();
        s->span = Cover(start, s->body->span);
        return s;
      }
      if (t.text == "break" || t.text == "continue") {
        Advance();
        Expect(";", "after '" + t.text + "'");
        StmtPtr s;
        if (t.text == "break") {
          s = Node<Break>(start);
        } else {
          s = Node<Continue>(start);
        }
        s->span = Cover(start, PrevSpan());
        return s;
      }
      if (t.text == "return") {
        Advance();
        auto s = Node<Return>(start);
        if (!Peek().IsPunct(";")) s->value = ParseExpr();
        Expect(";", "after return");
        s->span = Cover(start, PrevSpan());
        return s;
      }
      if (t.text == "goto") {
        Advance();
        if (Peek().kind != TokenKind::kIdentifier) Fail(Peek().span, "expected label after 'goto'");
        auto s = Node<Goto>(start);
        s->label = Advance().text;
        Expect(";", "after goto");
        s->span = Cover(start, PrevSpan());
        return s;
      }
    }
    if (StartsDeclaration()) return ParseDeclaration(/*top_level=*/false);
    auto s = Node<ExprStmt>(start);
    s->expr = ParseExpr();
    Expect(";", "after expression");
    s->span = Cover(start, PrevSpan());
    return s;
  }

  StmtPtr ParseIf() {
    Span start = Advance().span;
    auto s = Node<If>(start);
    Expect("(", "after 'if'");
    s->cond = ParseExpr();
    Expect(")", "after condition");
    s->then_stmt = ParseStatement();
    if (Peek().IsKeyword("else")) {
      Advance();
      s->else_stmt = ParseStatement();
    }
    s->span = Cover(start, PrevSpan());
    return s;
  }

  StmtPtr ParseFor() {
    Span start = Advance().span;
    auto s = Node<For>(start);
    Expect("(", "after 'for'");
    if (Accept(";")) {
      // no init
    } else if (StartsDeclaration()) {
      s->init = ParseDeclaration(/*top_level=*/false);
      if (s->init->kind == StmtKind::kProc) Fail(s->init->span, "procedure definition in for initializer");
    } else {
      auto init = Node<ExprStmt>(Peek().span);
      init->expr = ParseExpr();
      Expect(";", "after for initializer");
      init->span = Cover(init->span, PrevSpan());
      s->init = std::move(init);
    }
    if (!Peek().IsPunct(";")) s->cond = ParseExpr();
    Expect(";", "after for condition");
    if (!Peek().IsPunct(")")) s->step = ParseExpr();
    Expect(")", "after for clauses");
    s->body = ParseStatement();
    s->span = Cover(start, s->body->span);
    return s;
  }

  // -- expressions ----------------------------------------------------------

 public:
  ExprPtr ParseExpr() {
    ExprPtr lhs = ParseAssignment();
    while (Peek().IsPunct(",")) {
      Advance();
      auto c = Node<Comma>(lhs->span);
      c->lhs = std::move(lhs);
      c->rhs = ParseAssignment();
      c->span = Cover(c->lhs->span, c->rhs->span);
      lhs = std::move(c);
    }
    return lhs;
  }

 private:
  ExprPtr ParseAssignment() {
    ExprPtr lhs = ParseConditional();
    if (auto op = AssignmentOp(Peek())) {
      Advance();
      auto a = Node<Assign>(lhs->span);
      a->op = *op;
      a->target = std::move(lhs);
      a->value = ParseAssignment();
      a->span = Cover(a->target->span, a->value->span);
      return a;
    }
    return lhs;
  }

  ExprPtr ParseConditional() {
    ExprPtr cond = ParseBinary(1);
    if (!Peek().IsPunct("?")) return cond;
    Advance();
    auto t = Node<Ternary>(cond->span);
    t->cond = std::move(cond);
    t->then_expr = ParseExpr();
    Expect(":", "in conditional expression");
    t->else_expr = ParseConditional();
    t->span = Cover(t->cond->span, t->else_expr->span);
    return t;
  }

  // Precedence climbing over the C binary operator table.
  ExprPtr ParseBinary(int min_prec) {
    ExprPtr lhs = ParseUnary();
    for (;;) {
      BinaryOp op = BinaryOp::kAdd;
      int prec = BinaryPrecedence(Peek(), op);
      if (prec < min_prec) break;
      Advance();
      ExprPtr rhs = ParseBinary(prec + 1);
      auto b = Node<Binary>(lhs->span);
      b->op = op;
      b->span = Cover(lhs->span, rhs->span);
      b->lhs = std::move(lhs);
      b->rhs = std::move(rhs);
      lhs = std::move(b);
    }
    return lhs;
  }

  ExprPtr MakeUnary(UnaryOp op, const Span& start, ExprPtr operand) {
    auto u = Node<Unary>(start);
    u->op = op;
    u->span = Cover(start, operand->span);
    u->operand = std::move(operand);
    return u;
  }

  ExprPtr ParseUnary() {
    const Token& t = Peek();
    Span start = t.span;
    if (t.kind == TokenKind::kPunctuator) {
      if (t.text == "++" || t.text == "--") {
        Advance();
        return MakeUnary(t.text == "++" ? UnaryOp::kPreInc : UnaryOp::kPreDec, start, ParseUnary());
      }
      if (t.text == "+" || t.text == "-" || t.text == "!" || t.text == "~") {
        Advance();
        UnaryOp op = t.text == "+" ? UnaryOp::kPlus
                     : t.text == "-" ? UnaryOp::kNeg
                     : t.text == "!" ? UnaryOp::kNot
                                     : UnaryOp::kBitNot;
        return MakeUnary(op, start, ParseUnary());
      }
      if (t.text == "&" || t.text == "*") {
        Fail(t.span, "pointer operator '" + t.text + "' is not supported");
      }
      if (t.text == "(" && StartsType(Peek(1))) {
        Advance();
        TypePtr type = ParseTypeName();
        Expect(")", "after cast type");
        auto c = Node<Cast>(start);
        c->target = type;
        c->operand = ParseUnary();
        c->span = Cover(start, c->operand->span);
        return c;
      }
    }
    if (t.IsKeyword("sizeof")) {
      Advance();
      if (Peek().IsPunct("(") && StartsType(Peek(1))) {
        Advance();
        auto s = Node<SizeofType>(start);
        s->operand = ParseTypeName();
        Expect(")", "after sizeof type");
        s->span = Cover(start, PrevSpan());
        return s;
      }
      auto s = Node<SizeofExpr>(start);
      s->operand = ParseUnary();
      s->span = Cover(start, s->operand->span);
      return s;
    }
    return ParsePostfix();
  }

  ExprPtr ParsePostfix() {
    ExprPtr e = ParsePrimary();
    for (;;) {
      const Token& t = Peek();
      if (t.IsPunct("[")) {
        Advance();
        auto ix = Node<Index>(e->span);
        ix->base = std::move(e);
        ix->index = ParseExpr();
        Expect("]", "after index");
        ix->span = Cover(ix->base->span, PrevSpan());
        e = std::move(ix);
      } else if (t.IsPunct("(")) {
        Advance();
        auto call = Node<Call>(e->span);
        call->callee = std::move(e);
        if (!Peek().IsPunct(")")) {
          do {
            call->args.push_back(ParseAssignment());
          } while (Accept(","));
        }
        Expect(")", "to close argument list");
        call->span = Cover(call->callee->span, PrevSpan());
        e = std::move(call);
      } else if (t.IsPunct(".") || t.IsPunct("->")) {
        Advance();
        if (Peek().kind != TokenKind::kIdentifier) Fail(Peek().span, "expected member name");
        auto m = Node<Member>(e->span);
        m->arrow = t.text == "->";
        m->field = Advance().text;
        m->base = std::move(e);
        m->span = Cover(m->base->span, PrevSpan());
        e = std::move(m);
      } else if (t.IsPunct("++") || t.IsPunct("--")) {
        Advance();
        auto u = Node<Unary>(e->span);
        u->op = t.text == "++" ? UnaryOp::kPostInc : UnaryOp::kPostDec;
        u->span = Cover(e->span, t.span);
        u->operand = std::move(e);
        e = std::move(u);
      } else {
        return e;
      }
    }
  }

  ExprPtr ParsePrimary() {
    const Token& t = Peek();
    switch (t.kind) {
      case TokenKind::kIntLiteral: {
        Advance();
        auto n = Node<IntLit>(t.span);
        n->value = t.value;
        return n;
      }
      case TokenKind::kCharLiteral: {
        Advance();
        auto n = Node<CharLit>(t.span);
        n->value = static_cast<std::uint8_t>(t.value);
        return n;
      }
      case TokenKind::kStringLiteral: {
        auto n = Node<StrLit>(t.span);
        while (Peek().kind == TokenKind::kStringLiteral) {
          n->bytes += Peek().text;
          n->span = Cover(n->span, Advance().span);
        }
        return n;
      }
      case TokenKind::kIdentifier: {
        Advance();
        if (t.text == "length" && Peek().IsPunct("(")) {
          Advance();
          auto n = Node<LengthOf>(t.span);
          n->operand = ParseExpr();
          Expect(")", "after length operand");
          n->span = Cover(t.span, PrevSpan());
          return n;
        }
        auto n = Node<Ident>(t.span);
        n->name = t.text;
        return n;
      }
      case TokenKind::kPunctuator:
        if (t.text == "(") {
          Advance();
          ExprPtr inner = ParseExpr();
          Expect(")", "to close parenthesis");
          return inner;
        }
        break;
      default:
        break;
    }
    Fail(t.span, "expected an expression, found " + Describe(t));
  }

  std::vector<const Token*> toks_;
  Token eof_;
  std::size_t pos_ = 0;
  int proc_depth_ = 0;
  std::map<std::string, std::shared_ptr<StructDef>> structs_;
  Diagnostics diags_;
};

}  // namespace

ParseResult Parse(const TokenList& tokens) {
  Parser parser(tokens);
  ParseResult result;
  result.unit = parser.ParseUnit();
  result.diagnostics = parser.TakeDiagnostics();
  return result;
}

ExprParseResult ParseExpression(const TokenList& tokens) {
  Parser parser(tokens);
  ExprParseResult result;
  result.expr = parser.ParseWholeExpression();
  result.diagnostics = parser.TakeDiagnostics();
  return result;
}

}  // namespace atc
