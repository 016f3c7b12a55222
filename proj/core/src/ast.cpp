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

#include "atc/ast.hpp"

#include <cstdint>

namespace atc::ast {

TypePtr Type::Void() {
  static const TypePtr t = [] {
    Type v;
    v.kind = TypeKind::kVoid;
    return std::make_shared<const Type>(std::move(v));
  }();
  return t;
}

TypePtr Type::Char() {
  static const TypePtr t = [] {
    Type v;
    v.kind = TypeKind::kChar;
    return std::make_shared<const Type>(std::move(v));
  }();
  return t;
}

TypePtr Type::Int() {
  static const TypePtr t = [] {
    Type v;
    v.kind = TypeKind::kInt;
    return std::make_shared<const Type>(std::move(v));
  }();
  return t;
}

TypePtr Type::Struct(std::shared_ptr<StructDef> def) {
  Type t;
  t.kind = TypeKind::kStruct;
  t.struct_def = std::move(def);
  return std::make_shared<Type>(std::move(t));
}

TypePtr Type::Array(TypePtr element, ArrayKind kind, std::uint32_t count) {
  Type t;
  t.kind = TypeKind::kArray;
  t.element = std::move(element);
  t.array_kind = kind;
  t.count = kind == ArrayKind::kFixed ? count : 0;
  return std::make_shared<Type>(std::move(t));
}

TypePtr Type::Proc(TypePtr result, std::vector<TypePtr> params) {
  Type t;
  t.kind = TypeKind::kProc;
  t.result = std::move(result);
  t.params = std::move(params);
  return std::make_shared<Type>(std::move(t));
}

bool SameType(const Type& a, const Type& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case TypeKind::kVoid:
    case TypeKind::kChar:
    case TypeKind::kInt:
      return true;
    case TypeKind::kStruct:
      return a.struct_def == b.struct_def;
    case TypeKind::kArray:
      return a.array_kind == b.array_kind && a.count == b.count && SameType(*a.element, *b.element);
    case TypeKind::kProc:
      if (!SameType(*a.result, *b.result) || a.params.size() != b.params.size()) return false;
      for (std::size_t i = 0; i < a.params.size(); ++i) {
        if (!SameType(*a.params[i], *b.params[i])) return false;
      }
      return true;
  }
  return false;
}

std::optional<std::int32_t> SizeOf(const Type& t) {
  switch (t.kind) {
    case TypeKind::kChar:
      return 1;
    case TypeKind::kInt:
      return 4;
    case TypeKind::kStruct: {
      if (!t.struct_def || !t.struct_def->complete) return std::nullopt;
      std::int64_t total = 0;
      for (const auto& f : t.struct_def->fields) {
        auto s = SizeOf(*f.type);
        if (!s) return std::nullopt;
        total += *s;
      }
      if (total > INT32_MAX) return std::nullopt;
      return static_cast<std::int32_t>(total);
    }
    case TypeKind::kArray: {
      if (t.array_kind == ArrayKind::kFlexZero) return 0;
      if (t.array_kind == ArrayKind::kDynamic) return std::nullopt;
      auto e = SizeOf(*t.element);
      if (!e) return std::nullopt;
      std::int64_t total = static_cast<std::int64_t>(*e) * t.count;
      if (total > INT32_MAX) return std::nullopt;
      return static_cast<std::int32_t>(total);
    }
    case TypeKind::kVoid:
    case TypeKind::kProc:
      return std::nullopt;
  }
  return std::nullopt;
}

std::string TypeName(const Type& t) {
  switch (t.kind) {
    case TypeKind::kVoid:
      return "void";
    case TypeKind::kChar:
      return "char";
    case TypeKind::kInt:
      return "int";
    case TypeKind::kStruct:
      return "struct " + (t.struct_def ? t.struct_def->name : std::string("?"));
    case TypeKind::kArray:
      switch (t.array_kind) {
        case ArrayKind::kFixed:
          return TypeName(*t.element) + "[" + std::to_string(t.count) + "]";
        case ArrayKind::kDynamic:
          return TypeName(*t.element) + "[]";
        case ArrayKind::kFlexZero:
          return TypeName(*t.element) + "[0]";
      }
      break;
    case TypeKind::kProc: {
      std::string s = TypeName(*t.result) + "(";
      for (std::size_t i = 0; i < t.params.size(); ++i) {
        if (i) s += ", ";
        s += TypeName(*t.params[i]);
      }
      return s + ")";
    }
  }
  return "?";
}

int StructDef::FieldIndex(const std::string& field) const {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (fields[i].name == field) return static_cast<int>(i);
  }
  return -1;
}

std::string_view UnaryOpName(UnaryOp op) {
  switch (op) {
    case UnaryOp::kPlus: return "+";
    case UnaryOp::kNeg: return "-";
    case UnaryOp::kNot: return "!";
    case UnaryOp::kBitNot: return "~";
    case UnaryOp::kPreInc: return "pre++";
    case UnaryOp::kPreDec: return "pre--";
    case UnaryOp::kPostInc: return "post++";
    case UnaryOp::kPostDec: return "post--";
  }
  return "?";
}

std::string_view BinaryOpName(BinaryOp op) {
  switch (op) {
    case BinaryOp::kMul: return "*";
    case BinaryOp::kDiv: return "/";
    case BinaryOp::kMod: return "%";
    case BinaryOp::kAdd: return "+";
    case BinaryOp::kSub: return "-";
    case BinaryOp::kShl: return "<<";
    case BinaryOp::kShr: return ">>";
    case BinaryOp::kLt: return "<";
    case BinaryOp::kGt: return ">";
    case BinaryOp::kLe: return "<=";
    case BinaryOp::kGe: return ">=";
    case BinaryOp::kEq: return "==";
    case BinaryOp::kNe: return "!=";
    case BinaryOp::kBitAnd: return "&";
    case BinaryOp::kBitXor: return "^";
    case BinaryOp::kBitOr: return "|";
    case BinaryOp::kLogAnd: return "&&";
    case BinaryOp::kLogOr: return "||";
  }
  return "?";
}

std::string_view PlacementName(Placement p) {
  switch (p) {
    case Placement::kTopLevel:
      return "TopLevel";
    case Placement::kNested:
      return "Nested";
    case Placement::kClosure:
      return "Closure";
  }
  return "?";
}

std::optional<std::int32_t> FoldConstant(const Expr& e) {
  auto wrap = [](std::uint32_t v) { return static_cast<std::int32_t>(v); };
  switch (e.kind) {
    case ExprKind::kIntLit:
      return wrap(static_cast<std::uint32_t>(e.As<IntLit>().value));
    case ExprKind::kCharLit:
      return static_cast<std::int32_t>(e.As<CharLit>().value);
    case ExprKind::kCast: {
      const auto& c = e.As<Cast>();
      auto v = FoldConstant(*c.operand);
      if (!v) return std::nullopt;
      if (c.target->kind == TypeKind::kChar) return static_cast<std::int32_t>(*v & 0xFF);
      if (c.target->kind == TypeKind::kInt) return v;
      return std::nullopt;
    }
    case ExprKind::kUnary: {
      const auto& u = e.As<Unary>();
      auto v = FoldConstant(*u.operand);
      if (!v) return std::nullopt;
      auto uv = static_cast<std::uint32_t>(*v);
      switch (u.op) {
        case UnaryOp::kPlus: return v;
        case UnaryOp::kNeg: return wrap(0u - uv);
        case UnaryOp::kNot: return *v == 0 ? 1 : 0;
        case UnaryOp::kBitNot: return wrap(~uv);
        default: return std::nullopt;
      }
    }
    case ExprKind::kTernary: {
      const auto& t = e.As<Ternary>();
      auto c = FoldConstant(*t.cond);
      if (!c) return std::nullopt;
      return FoldConstant(*c ? *t.then_expr : *t.else_expr);
    }
    case ExprKind::kBinary: {
      const auto& b = e.As<Binary>();
      auto l = FoldConstant(*b.lhs);
      auto r = FoldConstant(*b.rhs);
      if (!l || !r) return std::nullopt;
      std::int32_t x = *l, y = *r;
      auto ux = static_cast<std::uint32_t>(x), uy = static_cast<std::uint32_t>(y);
      switch (b.op) {
        case BinaryOp::kMul: return wrap(ux * uy);
        case BinaryOp::kDiv:
        case BinaryOp::kMod:
          if (y == 0 || (x == INT32_MIN && y == -1)) return std::nullopt;
          return b.op == BinaryOp::kDiv ? x / y : x % y;
        case BinaryOp::kAdd: return wrap(ux + uy);
        case BinaryOp::kSub: return wrap(ux - uy);
        case BinaryOp::kShl: return wrap(ux << (uy & 31));
        case BinaryOp::kShr: return x >> (uy & 31);
        case BinaryOp::kLt: return x < y;
        case BinaryOp::kGt: return x > y;
        case BinaryOp::kLe: return x <= y;
        case BinaryOp::kGe: return x >= y;
        case BinaryOp::kEq: return x == y;
        case BinaryOp::kNe: return x != y;
        case BinaryOp::kBitAnd: return x & y;
        case BinaryOp::kBitXor: return x ^ y;
        case BinaryOp::kBitOr: return x | y;
        case BinaryOp::kLogAnd: return (x && y) ? 1 : 0;
        case BinaryOp::kLogOr: return (x || y) ? 1 : 0;
      }
      return std::nullopt;
    }
    default:
      return std::nullopt;
  }
}

TypePtr ProcDef::ProcType() const {
  std::vector<TypePtr> ps;
  ps.reserve(params.size());
  for (const auto& p : params) ps.push_back(p.type);
  return Type::Proc(result, std::move(ps));
}

}  // namespace atc::ast
