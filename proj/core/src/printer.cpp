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


#include "atc/printer.hpp"

#include <cstdio>

namespace atc {
namespace {

using namespace ast;

std::string Quote(const std::string& bytes, char quote) {
  std::string out(1, quote);
  for (unsigned char c : bytes) {
    switch (c) {
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\\': out += "\\\\"; break;
      default:
        if (c == static_cast<unsigned char>(quote)) {
          out += '\\';
          out += static_cast<char>(c);
        } else if (c < 0x20 || c == 0x7F) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\%03o", c);
          out += buf;
        } else {
          out += static_cast<char>(c);
        }
    }
  }
  out += quote;
  return out;
}

std::string TypeSexpr(const Type& t) {
  switch (t.kind) {
    case TypeKind::kVoid: return "void";
    case TypeKind::kChar: return "char";
    case TypeKind::kInt: return "int";
    case TypeKind::kStruct: return "(struct " + t.struct_def->name + ")";
    case TypeKind::kArray:
      switch (t.array_kind) {
        case ArrayKind::kFixed:
          return "(Array Fixed " + std::to_string(t.count) + " " + TypeSexpr(*t.element) + ")";
        case ArrayKind::kDynamic:
          return "(Array Dynamic " + TypeSexpr(*t.element) + ")";
        case ArrayKind::kFlexZero:
          return "(Array FlexZero " + TypeSexpr(*t.element) + ")";
      }
      break;
    case TypeKind::kProc: {
      std::string s = "(Proc " + TypeSexpr(*t.result) + " (";
      for (std::size_t i = 0; i < t.params.size(); ++i) {
        if (i) s += " ";
        s += TypeSexpr(*t.params[i]);
      }
      return s + "))";
    }
  }
  return "?";
}

// -- S-expressions ----------------------------------------------------------

class SexprWriter {
 public:
  std::string Take() { return std::move(out_); }

  void Unit(const TranslationUnit& unit) {
    Open("TranslationUnit");
    for (const auto& d : unit.decls) Statement(*d);
    Close();
  }

  void Expression(const Expr& e) {
    switch (e.kind) {
      case ExprKind::kIntLit: Leaf("IntLit " + std::to_string(e.As<IntLit>().value)); return;
      case ExprKind::kCharLit: Leaf("CharLit " + std::to_string(e.As<CharLit>().value)); return;
      case ExprKind::kStrLit: Leaf("StrLit " + Quote(e.As<StrLit>().bytes, '"')); return;
      case ExprKind::kIdent: Leaf("Ident " + e.As<Ident>().name); return;
      case ExprKind::kUnary: {
        const auto& u = e.As<Unary>();
        Open("Unary " + std::string(UnaryOpName(u.op)));
        Expression(*u.operand);
        Close();
        return;
      }
      case ExprKind::kBinary: {
        const auto& b = e.As<Binary>();
        Open("Binary " + std::string(BinaryOpName(b.op)));
        Expression(*b.lhs);
        Expression(*b.rhs);
        Close();
        return;
      }
      case ExprKind::kAssign: {
        const auto& a = e.As<Assign>();
        Open("Assign " + (a.op ? std::string(BinaryOpName(*a.op)) + "=" : std::string("=")));
        Expression(*a.target);
        Expression(*a.value);
        Close();
        return;
      }
      case ExprKind::kTernary: {
        const auto& t = e.As<Ternary>();
        Open("Ternary");
        Expression(*t.cond);
        Expression(*t.then_expr);
        Expression(*t.else_expr);
        Close();
        return;
      }
      case ExprKind::kComma: {
        const auto& c = e.As<Comma>();
        Open("Comma");
        Expression(*c.lhs);
        Expression(*c.rhs);
        Close();
        return;
      }
      case ExprKind::kCall: {
        const auto& c = e.As<Call>();
        Open("Call");
        Expression(*c.callee);
        for (const auto& a : c.args) Expression(*a);
        Close();
        return;
      }
      case ExprKind::kIndex: {
        const auto& ix = e.As<Index>();
        Open("Index");
        Expression(*ix.base);
        Expression(*ix.index);
        Close();
        return;
      }
      case ExprKind::kMember: {
        const auto& m = e.As<Member>();
        Open(std::string("Member ") + (m.arrow ? "-> " : ". ") + m.field);
        Expression(*m.base);
        Close();
        return;
      }
      case ExprKind::kSizeofExpr:
        Open("SizeofExpr");
        Expression(*e.As<SizeofExpr>().operand);
        Close();
        return;
      case ExprKind::kSizeofType:
        Leaf("SizeofType " + TypeSexpr(*e.As<SizeofType>().operand));
        return;
      case ExprKind::kLengthOf:
        Open("LengthOf");
        Expression(*e.As<LengthOf>().operand);
        Close();
        return;
      case ExprKind::kCast: {
        const auto& c = e.As<Cast>();
        Open("Cast " + TypeSexpr(*c.target));
        Expression(*c.operand);
        Close();
        return;
      }
    }
  }

  void Init(const Initializer& init) {
    if (!init.is_list) {
      Expression(*init.expr);
      return;
    }
    Open("InitList");
    for (const auto& i : init.list) Init(i);
    Close();
  }

  void Var(const VarDecl& v, std::string_view tag) {
    std::string head = std::string(tag) + " " + (v.name.empty() ? "_" : v.name) + " " + TypeSexpr(*v.type);
    if (v.is_volatile) head += " volatile";
    if (!v.init) {
      Leaf(head);
      return;
    }
    Open(head);
    Init(*v.init);
    Close();
  }

  void Statement(const Stmt& s) {
    switch (s.kind) {
      case StmtKind::kExpr:
        Open("ExprStmt");
        Expression(*s.As<ExprStmt>().expr);
        Close();
        return;
      case StmtKind::kDecl: {
        const auto& d = s.As<DeclStmt>();
        Open("DeclStmt");
        if (d.defines) {
          Open("Struct " + d.defines->name);
          for (const auto& f : d.defines->fields) Leaf("Field " + f.name + " " + TypeSexpr(*f.type));
          Close();
        }
        for (const auto& v : d.vars) Var(v, "Var");
        Close();
        return;
      }
      case StmtKind::kProc: {
        const auto& p = s.As<ProcStmt>().proc;
        Open("Proc " + p.name + " " + std::string(PlacementName(p.placement)) + " " + TypeSexpr(*p.result));
        for (const auto& param : p.params) Var(param, "Param");
        if (p.body) Statement(*p.body);
        Close();
        return;
      }
      case StmtKind::kBlock:
        Open("Block");
        for (const auto& c : s.As<Block>().stmts) Statement(*c);
        Close();
        return;
      case StmtKind::kIf: {
        const auto& i = s.As<If>();
        Open("If");
        Expression(*i.cond);
        Statement(*i.then_stmt);
        if (i.else_stmt) Statement(*i.else_stmt);
        Close();
        return;
      }
      case StmtKind::kWhile: {
        const auto& w = s.As<While>();
        Open("While");
        Expression(*w.cond);
        Statement(*w.body);
        Close();
        return;
      }
      case StmtKind::kDoWhile: {
        const auto& w = s.As<DoWhile>();
        Open("DoWhile");
        Statement(*w.body);
        Expression(*w.cond);
        Close();
        return;
      }
      case StmtKind::kFor: {
        const auto& f = s.As<For>();
        Open("For");
        if (f.init) Statement(*f.init); else Leaf("None");
        if (f.cond) Expression(*f.cond); else Leaf("None");
        if (f.step) Expression(*f.step); else Leaf("None");
        Statement(*f.body);
        Close();
        return;
      }
      case StmtKind::kSwitch: {
        const auto& w = s.As<Switch>();
        Open("Switch");
        Expression(*w.value);
        Statement(*w.body);
        Close();
        return;
      }
      case StmtKind::kCase: {
        const auto& c = s.As<Case>();
        Open("Case");
        Expression(*c.value);
        Statement(*c.body);
        Close();
        return;
      }
      case StmtKind::kDefault:
        Open("Default");
        Statement(*s.As<Default>().body);
        Close();
        return;
      case StmtKind::kBreak: Leaf("Break"); return;
      case StmtKind::kContinue: Leaf("Continue"); return;
      case StmtKind::kReturn: {
        const auto& r = s.As<Return>();
        if (!r.value) {
          Leaf("Return");
          return;
        }
        Open("Return");
        Expression(*r.value);
        Close();
        return;
      }
      case StmtKind::kGoto: Leaf("Goto " + s.As<Goto>().label); return;
      case StmtKind::kLabeled: {
        const auto& l = s.As<Labeled>();
        Open("Labeled " + l.label);
        Statement(*l.body);
        Close();
        return;
      }
      case StmtKind::kEmpty: Leaf("Empty"); return;
    }
  }

  bool single_line = false;

 private:
  void Indent() {
    if (single_line) {
      if (!out_.empty() && out_.back() != '(') out_ += ' ';
      return;
    }
    if (!out_.empty()) out_ += '\n';
    out_.append(2 * depth_, ' ');
  }
  void Open(const std::string& head) {
    Indent();
    out_ += "(" + head;
    ++depth_;
  }
  void Close() {
    --depth_;
    out_ += ")";
  }
  void Leaf(const std::string& text) {
    Indent();
    out_ += "(" + text + ")";
  }

  std::string out_;
  int depth_ = 0;
};

// -- C source ---------------------------------------------------------------

std::string Declarator(const Type& t, const std::string& name) {
  if (t.kind == TypeKind::kArray) {
    std::string base = TypeName(*t.element) + " " + name;
    switch (t.array_kind) {
      case ArrayKind::kFixed: return base + "[" + std::to_string(t.count) + "]";
      case ArrayKind::kDynamic: return base + "[]";
      case ArrayKind::kFlexZero: return base + "[0]";
    }
  }
  return name.empty() ? TypeName(t) : TypeName(t) + " " + name;
}

class CWriter {
 public:
  std::string Take() { return std::move(out_); }

  std::string Expression(const Expr& e) {
    switch (e.kind) {
      case ExprKind::kIntLit: return std::to_string(e.As<IntLit>().value);
      case ExprKind::kCharLit: return Quote(std::string(1, static_cast<char>(e.As<CharLit>().value)), '\'');
      case ExprKind::kStrLit: return Quote(e.As<StrLit>().bytes, '"');
      case ExprKind::kIdent: return e.As<Ident>().name;
      case ExprKind::kUnary: {
        const auto& u = e.As<Unary>();
        std::string x = Expression(*u.operand);
        switch (u.op) {
          case UnaryOp::kPlus: return "(+" + x + ")";
          case UnaryOp::kNeg: return "(-" + x + ")";
          case UnaryOp::kNot: return "(!" + x + ")";
          case UnaryOp::kBitNot: return "(~" + x + ")";
          case UnaryOp::kPreInc: return "(++" + x + ")";
          case UnaryOp::kPreDec: return "(--" + x + ")";
          case UnaryOp::kPostInc: return "(" + x + "++)";
          case UnaryOp::kPostDec: return "(" + x + "--)";
        }
        return x;
      }
      case ExprKind::kBinary: {
        const auto& b = e.As<Binary>();
        return "(" + Expression(*b.lhs) + " " + std::string(BinaryOpName(b.op)) + " " + Expression(*b.rhs) + ")";
      }
      case ExprKind::kAssign: {
        const auto& a = e.As<Assign>();
        std::string op = a.op ? std::string(BinaryOpName(*a.op)) + "=" : "=";
        return "(" + Expression(*a.target) + " " + op + " " + Expression(*a.value) + ")";
      }
      case ExprKind::kTernary: {
        const auto& t = e.As<Ternary>();
        return "(" + Expression(*t.cond) + " ? " + Expression(*t.then_expr) + " : " + Expression(*t.else_expr) + ")";
      }
      case ExprKind::kComma: {
        const auto& c = e.As<Comma>();
        return "(" + Expression(*c.lhs) + ", " + Expression(*c.rhs) + ")";
      }
      case ExprKind::kCall: {
        const auto& c = e.As<Call>();
        std::string s = Expression(*c.callee) + "(";
        for (std::size_t i = 0; i < c.args.size(); ++i) {
          if (i) s += ", ";
          s += Expression(*c.args[i]);
        }
        return s + ")";
      }
      case ExprKind::kIndex: {
        const auto& ix = e.As<Index>();
        return Expression(*ix.base) + "[" + Expression(*ix.index) + "]";
      }
      case ExprKind::kMember: {
        const auto& m = e.As<Member>();
        return Expression(*m.base) + (m.arrow ? "->" : ".") + m.field;
      }
      case ExprKind::kSizeofExpr: return "sizeof(" + Expression(*e.As<SizeofExpr>().operand) + ")";
      case ExprKind::kSizeofType: return "sizeof(" + Declarator(*e.As<SizeofType>().operand, "") + ")";
      case ExprKind::kLengthOf: return "length(" + Expression(*e.As<LengthOf>().operand) + ")";
      case ExprKind::kCast: {
        const auto& c = e.As<Cast>();
        return "((" + TypeName(*c.target) + ")" + Expression(*c.operand) + ")";
      }
    }
    return "?";
  }

  void Unit(const TranslationUnit& unit) {
    for (const auto& d : unit.decls) Statement(*d);
  }

 private:
  std::string Init(const Initializer& init) {
    if (!init.is_list) return Expression(*init.expr);
    std::string s = "{";
    for (std::size_t i = 0; i < init.list.size(); ++i) {
      if (i) s += ", ";
      s += Init(init.list[i]);
    }
    return s + "}";
  }

  void Line(const std::string& text) {
    out_.append(2 * depth_, ' ');
    out_ += text;
    out_ += '\n';
  }

  std::string DeclText(const DeclStmt& d) {
    std::string s;
    if (d.defines) {
      s = "struct " + d.defines->name + " {";
      for (const auto& f : d.defines->fields) s += " " + Declarator(*f.type, f.name) + ";";
      s += " }";
    }
    for (std::size_t i = 0; i < d.vars.size(); ++i) {
      const auto& v = d.vars[i];
      if (i == 0) {
        if (d.defines) {
          // Reuse the struct specifier just written.
          s += " " + Declarator(*v.type, v.name).substr(TypeName(*Type::Struct(d.defines)).size() + 1);
        } else {
          s = (v.is_volatile ? "volatile " : "") + Declarator(*v.type, v.name);
        }
      } else {
        std::string full = Declarator(*v.type, v.name);
        std::string base = v.type->kind == TypeKind::kArray ? TypeName(*v.type->element) : TypeName(*v.type);
        s += ", " + full.substr(base.size() + 1);
      }
      if (v.init) s += " = " + Init(*v.init);
    }
    return s + ";";
  }

  void Statement(const Stmt& s) {
    switch (s.kind) {
      case StmtKind::kExpr:
        Line(Expression(*s.As<ExprStmt>().expr) + ";");
        return;
      case StmtKind::kDecl:
        Line(DeclText(s.As<DeclStmt>()));
        return;
      case StmtKind::kProc: {
        const auto& p = s.As<ProcStmt>().proc;
        std::string head = p.placement == Placement::kNested ? "volatile " : "";
        head += TypeName(*p.result) + " " + p.name + "(";
        for (std::size_t i = 0; i < p.params.size(); ++i) {
          if (i) head += ", ";
          head += Declarator(*p.params[i].type, p.params[i].name);
        }
        head += ")";
        if (!p.body) {
          Line(head + ";");
          return;
        }
        Line(head);
        Statement(*p.body);
        return;
      }
      case StmtKind::kBlock:
        Line("{");
        ++depth_;
        for (const auto& c : s.As<Block>().stmts) Statement(*c);
        --depth_;
        Line("}");
        return;
      case StmtKind::kIf: {
        const auto& i = s.As<If>();
        Line("if (" + Expression(*i.cond) + ")");
        Nested(*i.then_stmt);
        if (i.else_stmt) {
          Line("else");
          Nested(*i.else_stmt);
        }
        return;
      }
      case StmtKind::kWhile: {
        const auto& w = s.As<While>();
        Line("while (" + Expression(*w.cond) + ")");
        Nested(*w.body);
        return;
      }
      case StmtKind::kDoWhile: {
        const auto& w = s.As<DoWhile>();
        Line("do");
        Nested(*w.body);
        Line("while (" + Expression(*w.cond) + ");");
        return;
      }
      case StmtKind::kFor: {
        const auto& f = s.As<For>();
        std::string init = ";";
        if (f.init) {
          init = f.init->kind == StmtKind::kDecl ? DeclText(f.init->As<DeclStmt>())
                                                 : Expression(*f.init->As<ExprStmt>().expr) + ";";
        }
        Line("for (" + init + " " + (f.cond ? Expression(*f.cond) : "") + "; " +
             (f.step ? Expression(*f.step) : "") + ")");
        Nested(*f.body);
        return;
      }
      case StmtKind::kSwitch: {
        const auto& w = s.As<Switch>();
        Line("switch (" + Expression(*w.value) + ")");
        Nested(*w.body);
        return;
      }
      case StmtKind::kCase: {
        const auto& c = s.As<Case>();
        Line("case " + Expression(*c.value) + ":");
        Nested(*c.body);
        return;
      }
      case StmtKind::kDefault:
        Line("default:");
        Nested(*s.As<Default>().body);
        return;
      case StmtKind::kBreak: Line("break;"); return;
      case StmtKind::kContinue: Line("continue;"); return;
      case StmtKind::kReturn: {
        const auto& r = s.As<Return>();
        Line(r.value ? "return " + Expression(*r.value) + ";" : "return;");
        return;
      }
      case StmtKind::kGoto: Line("goto " + s.As<Goto>().label + ";"); return;
      case StmtKind::kLabeled: {
        const auto& l = s.As<Labeled>();
        Line(l.label + ":");
        Nested(*l.body);
        return;
      }
      case StmtKind::kEmpty: Line(";"); return;
    }
  }

  void Nested(const Stmt& s) {
    if (s.kind == StmtKind::kBlock) {
      Statement(s);
      return;
    }
    ++depth_;
    Statement(s);
    --depth_;
  }

  std::string out_;
  int depth_ = 0;
};

}  // namespace

std::string DumpAst(const TranslationUnit& unit) {
  SexprWriter w;
  w.Unit(unit);
  return w.Take() + "\n";
}

std::string DumpExpr(const Expr& expr) {
  SexprWriter w;
  w.single_line = true;
  w.Expression(expr);
  return w.Take();
}

std::string PrintC(const TranslationUnit& unit) {
  CWriter w;
  w.Unit(unit);
  return w.Take();
}

std::string PrintExprC(const Expr& expr) {
  CWriter w;
  return w.Expression(expr);
}

}  // namespace atc
