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

#ifndef ATC_AST_HPP_
#define ATC_AST_HPP_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "atc/diagnostic.hpp"

namespace atc::ast {

struct StructDef;
struct Symbol;

// ---------------------------------------------------------------------------
// Types

enum class TypeKind { kVoid, kChar, kInt, kStruct, kArray, kProc };

// `[N]`, `[]` and `[0]` declarators.
enum class ArrayKind { kFixed, kDynamic, kFlexZero };

struct Type;
using TypePtr = std::shared_ptr<const Type>;

struct Type {
  TypeKind kind = TypeKind::kInt;
  std::shared_ptr<StructDef> struct_def;  // kStruct
  TypePtr element;                        // kArray
  ArrayKind array_kind = ArrayKind::kFixed;
  std::uint32_t count = 0;                // kArray, kFixed
  TypePtr result;                         // kProc
  std::vector<TypePtr> params;            // kProc

  bool IsScalar() const { return kind == TypeKind::kInt || kind == TypeKind::kChar; }

  static TypePtr Void();
  static TypePtr Char();
  static TypePtr Int();
  static TypePtr Struct(std::shared_ptr<StructDef> def);
  static TypePtr Array(TypePtr element, ArrayKind kind, std::uint32_t count = 0);
  static TypePtr Proc(TypePtr result, std::vector<TypePtr> params);
};

bool SameType(const Type& a, const Type& b);

// Byte size: char 1, int 4, structs packed, [0] members 0. Empty for void,
// procedures, `[]` arrays and structs containing them.
std::optional<std::int32_t> SizeOf(const Type& t);

// C spelling, e.g. "int", "struct S", "char[]", "int(int, char[])".
std::string TypeName(const Type& t);

struct Field {
  std::string name;
  TypePtr type;
  Span span;
};

struct StructDef {
  std::string name;
  std::vector<Field> fields;
  bool complete = false;
  Span span;

  // Index of `name` in fields, or -1.
  int FieldIndex(const std::string& name) const;
};

// ---------------------------------------------------------------------------
// Expressions

enum class ExprKind {
  kIntLit,
  kCharLit,
  kStrLit,
  kIdent,
  kUnary,
  kBinary,
  kAssign,
  kTernary,
  kComma,
  kCall,
  kIndex,
  kMember,
  kSizeofExpr,
  kSizeofType,
  kLengthOf,
  kCast,
};

enum class UnaryOp { kPlus, kNeg, kNot, kBitNot, kPreInc, kPreDec, kPostInc, kPostDec };

enum class BinaryOp {
  kMul, kDiv, kMod, kAdd, kSub, kShl, kShr, kLt, kGt, kLe, kGe, kEq, kNe,
  kBitAnd, kBitXor, kBitOr, kLogAnd, kLogOr,
};

std::string_view UnaryOpName(UnaryOp op);
std::string_view BinaryOpName(BinaryOp op);

struct Expr {
  explicit Expr(ExprKind k) : kind(k) {}
  virtual ~Expr() = default;
  Expr(const Expr&) = delete;
  Expr& operator=(const Expr&) = delete;

  template <typename T>
  T& As() { return static_cast<T&>(*this); }
  template <typename T>
  const T& As() const { return static_cast<const T&>(*this); }

  const ExprKind kind;
  Span span;
  TypePtr type;  // static type, filled in by the binder
};

using ExprPtr = std::unique_ptr<Expr>;

struct IntLit : Expr {
  IntLit() : Expr(ExprKind::kIntLit) {}
  std::uint64_t value = 0;
};

struct CharLit : Expr {
  CharLit() : Expr(ExprKind::kCharLit) {}
  std::uint8_t value = 0;
};

// Adjacent literals are already concatenated; `bytes` may contain NUL.
struct StrLit : Expr {
  StrLit() : Expr(ExprKind::kStrLit) {}
  std::string bytes;
};

struct Ident : Expr {
  Ident() : Expr(ExprKind::kIdent) {}
  std::string name;
  const Symbol* symbol = nullptr;
};

struct Unary : Expr {
  Unary() : Expr(ExprKind::kUnary) {}
  UnaryOp op = UnaryOp::kPlus;
  ExprPtr operand;
};

struct Binary : Expr {
  Binary() : Expr(ExprKind::kBinary) {}
  BinaryOp op = BinaryOp::kAdd;
  ExprPtr lhs;
  ExprPtr rhs;
};

// `op` empty for plain `=`, otherwise the compound operator.
struct Assign : Expr {
  Assign() : Expr(ExprKind::kAssign) {}
  std::optional<BinaryOp> op;
  ExprPtr target;
  ExprPtr value;
};

struct Ternary : Expr {
  Ternary() : Expr(ExprKind::kTernary) {}
  ExprPtr cond;
  ExprPtr then_expr;
  ExprPtr else_expr;
};

struct Comma : Expr {
  Comma() : Expr(ExprKind::kComma) {}
  ExprPtr lhs;
  ExprPtr rhs;
};

struct Call : Expr {
  Call() : Expr(ExprKind::kCall) {}
  ExprPtr callee;
  std::vector<ExprPtr> args;
};

struct Index : Expr {
  Index() : Expr(ExprKind::kIndex) {}
  ExprPtr base;
  ExprPtr index;
};

// `.` and `->` (the latter is an alias on struct values).
struct Member : Expr {
  Member() : Expr(ExprKind::kMember) {}
  ExprPtr base;
  std::string field;
  bool arrow = false;
  int field_index = -1;
};

// `size` is computed by the binder; empty means E_SIZEOF_UNSIZED at run time.
struct SizeofExpr : Expr {
  SizeofExpr() : Expr(ExprKind::kSizeofExpr) {}
  ExprPtr operand;
  std::optional<std::int32_t> size;
};

struct SizeofType : Expr {
  SizeofType() : Expr(ExprKind::kSizeofType) {}
  TypePtr operand;
  std::optional<std::int32_t> size;
};

struct LengthOf : Expr {
  LengthOf() : Expr(ExprKind::kLengthOf) {}
  ExprPtr operand;
};

struct Cast : Expr {
  Cast() : Expr(ExprKind::kCast) {}
  TypePtr target;
  ExprPtr operand;
};

// Folds an integer constant expression built from literals, unary and
// binary operators, casts and ?:. Arithmetic wraps to 32 bits like the
// evaluator. nullopt when the expression is not constant or divides by zero.
std::optional<std::int32_t> FoldConstant(const Expr& e);

// ---------------------------------------------------------------------------
// Declarations and statements

// `= expr` or `= { ... }`.
struct Initializer {
  ExprPtr expr;
  std::vector<Initializer> list;
  bool is_list = false;
  Span span;
};

struct VarDecl {
  std::string name;
  TypePtr type;
  std::optional<Initializer> init;
  bool is_volatile = false;
  Span span;
  const Symbol* symbol = nullptr;
};

enum class Placement { kTopLevel, kNested, kClosure };

std::string_view PlacementName(Placement p);

struct Stmt;
using StmtPtr = std::unique_ptr<Stmt>;
struct Block;

struct ProcDef {
  std::string name;
  TypePtr result;
  std::vector<VarDecl> params;
  std::unique_ptr<Block> body;  // null for a prototype
  Placement placement = Placement::kTopLevel;
  Span span;
  const Symbol* symbol = nullptr;
  int param_scope = -1;

  TypePtr ProcType() const;
};

enum class StmtKind {
  kExpr,
  kDecl,
  kProc,
  kBlock,
  kIf,
  kWhile,
  kDoWhile,
  kFor,
  kSwitch,
  kCase,
  kDefault,
  kBreak,
  kContinue,
  kReturn,
  kGoto,
  kLabeled,
  kEmpty,
};

struct Stmt {
  explicit Stmt(StmtKind k) : kind(k) {}
  virtual ~Stmt() = default;
  Stmt(const Stmt&) = delete;
  Stmt& operator=(const Stmt&) = delete;

  template <typename T>
  T& As() { return static_cast<T&>(*this); }
  template <typename T>
  const T& As() const { return static_cast<const T&>(*this); }

  const StmtKind kind;
  Span span;
  // Pre-order numbering of the statement tree of one procedure; a statement
  // contains another iff its range covers the other's `order`.
  int order = -1;
  int order_end = -1;

  bool Contains(const Stmt& inner) const {
    return order <= inner.order && inner.order <= order_end;
  }
};

struct ExprStmt : Stmt {
  ExprStmt() : Stmt(StmtKind::kExpr) {}
  ExprPtr expr;
};

// Variables, optionally preceded by a struct definition.
struct DeclStmt : Stmt {
  DeclStmt() : Stmt(StmtKind::kDecl) {}
  std::shared_ptr<StructDef> defines;
  std::vector<VarDecl> vars;
};

struct ProcStmt : Stmt {
  ProcStmt() : Stmt(StmtKind::kProc) {}
  ProcDef proc;
};

struct Block : Stmt {
  Block() : Stmt(StmtKind::kBlock) {}
  std::vector<StmtPtr> stmts;
  int scope = -1;
};

struct If : Stmt {
  If() : Stmt(StmtKind::kIf) {}
  ExprPtr cond;
  StmtPtr then_stmt;
  StmtPtr else_stmt;
};

struct While : Stmt {
  While() : Stmt(StmtKind::kWhile) {}
  ExprPtr cond;
  StmtPtr body;
};

struct DoWhile : Stmt {
  DoWhile() : Stmt(StmtKind::kDoWhile) {}
  StmtPtr body;
  ExprPtr cond;
};

struct For : Stmt {
  For() : Stmt(StmtKind::kFor) {}
  StmtPtr init;  // DeclStmt, ExprStmt or null
  ExprPtr cond;
  ExprPtr step;
  StmtPtr body;
  int scope = -1;
};

struct Case;
struct Default;

struct Switch : Stmt {
  Switch() : Stmt(StmtKind::kSwitch) {}
  ExprPtr value;
  StmtPtr body;
  std::vector<const Case*> cases;  // filled by the binder
  const Default* default_label = nullptr;
};

struct Case : Stmt {
  Case() : Stmt(StmtKind::kCase) {}
  ExprPtr value;
  std::int32_t constant = 0;  // folded by the binder
  StmtPtr body;
};

struct Default : Stmt {
  Default() : Stmt(StmtKind::kDefault) {}
  StmtPtr body;
};

struct Break : Stmt {
  Break() : Stmt(StmtKind::kBreak) {}
};

struct Continue : Stmt {
  Continue() : Stmt(StmtKind::kContinue) {}
};

struct Return : Stmt {
  Return() : Stmt(StmtKind::kReturn) {}
  ExprPtr value;
};

struct Goto : Stmt {
  Goto() : Stmt(StmtKind::kGoto) {}
  std::string label;
  const Stmt* target = nullptr;  // the Labeled statement
};

struct Labeled : Stmt {
  Labeled() : Stmt(StmtKind::kLabeled) {}
  std::string label;
  StmtPtr body;
};

struct Empty : Stmt {
  Empty() : Stmt(StmtKind::kEmpty) {}
};

// Top-level items are DeclStmt or ProcStmt nodes, in source order.
struct TranslationUnit {
  std::vector<StmtPtr> decls;
};

}  // namespace atc::ast

#endif  // ATC_AST_HPP_
