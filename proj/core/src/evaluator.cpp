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


#include "atc/evaluator.hpp"

#include <pthread.h>

#include <algorithm>
#include <climits>
#include <cstdio>
#include <exception>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

namespace atc {
namespace {

using namespace ast;

struct Value;
struct Frame;
struct StructVal;

using Storage = std::vector<Value>;

struct Activation {
  bool alive = true;
};

struct ArrayVal {
  std::shared_ptr<Storage> storage;
  std::uint32_t offset = 0;
  std::uint32_t length = 0;
};

struct Callable {
  const ProcDef* proc = nullptr;
  std::shared_ptr<Frame> env;
  std::shared_ptr<Activation> parent;  // activation the procedure was created in
};

struct Value {
  std::variant<std::monostate, std::int32_t, std::uint8_t, ArrayVal, std::shared_ptr<StructVal>, Callable> v;
};

struct StructVal {
  std::vector<Value> fields;
};

struct Frame {
  int scope = 0;
  std::shared_ptr<Frame> parent;
  std::shared_ptr<Activation> act;
  std::vector<Value> slots;
};

struct LRef {
  Value* ptr = nullptr;
  std::shared_ptr<void> keep;
};

struct Trap {
  RuntimeError error;
};

enum class Flow { kNormal, kBreak, kContinue, kReturn, kGoto };

std::int32_t Wrap(std::uint32_t v) { return static_cast<std::int32_t>(v); }

class Interp {
 public:
  Interp(const BoundProgram& program, const EvalConfig& config) : prog_(program), cfg_(config) {}

  RunResult Run() {
    RunResult result;
    try {
      auto act = std::make_shared<Activation>();
      global_ = NewFrame(0, nullptr, act);
      cur_ = global_;
      for (const auto& d : prog_.unit->decls) {
        if (d->kind == StmtKind::kDecl) ExecDecl(d->As<DeclStmt>());
      }
      if (!prog_.main) Fail(diag::kNoMain, Span{}, "no 'main' procedure is defined");
      const Value& m = global_->slots[prog_.main->slot];
      std::vector<Value> none;
      Value status = CallValue(std::get<Callable>(m.v), none, prog_.main->span);
      Flush();
      result.exit_status = ToInt(status, prog_.main->span);
    } catch (Trap& t) {
      Flush();
      result.exit_status = kRuntimeErrorStatus;
      result.error = std::move(t.error);
    }
    return result;
  }

 private:
  // -- plumbing -------------------------------------------------------------

  [[noreturn]] void Fail(std::string_view code, const Span& span, std::string message) {
    throw Trap{RuntimeError{std::string(code), span, std::move(message)}};
  }

  void Tick(const Span& span) {
    if (++steps_ > cfg_.step_limit) {
      Fail(diag::kStepLimit, span, "step limit of " + std::to_string(cfg_.step_limit) + " exceeded");
    }
  }

  void Write(std::string_view bytes) {
    out_.append(bytes);
    if (out_.size() >= 1 << 16) Flush();
  }

  void Flush() {
    if (out_.empty()) return;
    if (cfg_.output) {
      cfg_.output(out_);
    } else {
      std::fwrite(out_.data(), 1, out_.size(), stdout);
      std::fflush(stdout);
    }
    out_.clear();
  }

  std::int32_t ToInt(const Value& v, const Span& span) {
    if (auto* i = std::get_if<std::int32_t>(&v.v)) return *i;
    if (auto* b = std::get_if<std::uint8_t>(&v.v)) return *b;
    Fail(diag::kType, span, "expected an integer value");
  }

  static Value Int(std::int32_t i) { return Value{i}; }

  // -- values ---------------------------------------------------------------

  Value Zero(const TypePtr& t) {
    switch (t->kind) {
      case TypeKind::kInt:
        return Int(0);
      case TypeKind::kChar:
        return Value{std::uint8_t{0}};
      case TypeKind::kStruct: {
        auto s = std::make_shared<StructVal>();
        for (const auto& f : t->struct_def->fields) s->fields.push_back(Zero(f.type));
        return Value{std::move(s)};
      }
      case TypeKind::kArray: {
        std::uint32_t n = t->array_kind == ArrayKind::kFixed ? t->count : 0;
        auto storage = std::make_shared<Storage>();
        storage->reserve(n);
        for (std::uint32_t i = 0; i < n; ++i) storage->push_back(Zero(t->element));
        return Value{ArrayVal{std::move(storage), 0, n}};
      }
      case TypeKind::kVoid:
      case TypeKind::kProc:
        return Value{};
    }
    return Value{};
  }

  // Converts `v` for storage in a location of type `t`; aggregates are
  // copied so the new location owns its elements.
  Value Store(const TypePtr& t, const Value& v, const Span& span) {
    switch (t->kind) {
      case TypeKind::kInt:
        return Int(ToInt(v, span));
      case TypeKind::kChar:
        return Value{static_cast<std::uint8_t>(ToInt(v, span) & 0xFF)};
      case TypeKind::kStruct: {
        const auto& src = std::get<std::shared_ptr<StructVal>>(v.v);
        auto s = std::make_shared<StructVal>();
        const auto& fields = t->struct_def->fields;
        for (std::size_t i = 0; i < fields.size(); ++i) s->fields.push_back(Store(fields[i].type, src->fields[i], span));
        return Value{std::move(s)};
      }
      case TypeKind::kArray: {
        const auto& src = std::get<ArrayVal>(v.v);
        std::uint32_t n = src.length;
        if (t->array_kind == ArrayKind::kFixed) n = t->count;
        if (t->array_kind == ArrayKind::kFlexZero) n = 0;
        auto storage = std::make_shared<Storage>();
        storage->reserve(n);
        for (std::uint32_t i = 0; i < n; ++i) {
          storage->push_back(i < src.length ? Store(t->element, (*src.storage)[src.offset + i], span)
                                            : Zero(t->element));
        }
        return Value{ArrayVal{std::move(storage), 0, n}};
      }
      case TypeKind::kProc:
        return v;
      case TypeKind::kVoid:
        return Value{};
    }
    return v;
  }

  // Arrays are passed as views on the caller's storage.
  Value Pass(const TypePtr& t, const Value& v, const Span& span) {
    if (t->kind == TypeKind::kArray) return v;
    return Store(t, v, span);
  }

  Value StringValue(const std::string& bytes) {
    auto storage = std::make_shared<Storage>();
    storage->reserve(bytes.size() + 1);
    for (unsigned char c : bytes) storage->push_back(Value{static_cast<std::uint8_t>(c)});
    storage->push_back(Value{std::uint8_t{0}});  // compatibility terminator, outside length
    return Value{ArrayVal{std::move(storage), 0, static_cast<std::uint32_t>(bytes.size())}};
  }

  // -- frames ---------------------------------------------------------------

  std::shared_ptr<Frame> NewFrame(int scope, std::shared_ptr<Frame> parent, std::shared_ptr<Activation> act) {
    auto f = std::make_shared<Frame>();
    f->scope = scope;
    f->parent = std::move(parent);
    f->act = std::move(act);
    const Scope& s = prog_.scopes[scope];
    f->slots.reserve(s.slot_types.size());
    for (const auto& t : s.slot_types) f->slots.push_back(Zero(t));
    for (const ProcDef* p : s.procs) f->slots[p->symbol->slot] = Value{Callable{p, f, f->act}};
    return f;
  }

  const std::shared_ptr<Frame>& FrameFor(int scope) const {
    const std::shared_ptr<Frame>* f = &cur_;
    while ((*f)->scope != scope) f = &(*f)->parent;
    return *f;
  }

  class FrameScope {
   public:
    FrameScope(Interp& in, std::shared_ptr<Frame> f) : in_(in), saved_(std::move(in.cur_)) {
      in_.cur_ = std::move(f);
    }
    ~FrameScope() { in_.cur_ = std::move(saved_); }
    FrameScope(const FrameScope&) = delete;
    FrameScope& operator=(const FrameScope&) = delete;

   private:
    Interp& in_;
    std::shared_ptr<Frame> saved_;
  };

  // -- calls ----------------------------------------------------------------

  Value CallValue(const Callable& c, std::vector<Value>& args, const Span& span) {
    if (!c.proc) Fail(diag::kType, span, "call through a procedure variable that holds no procedure");
    const ProcDef& proc = *c.proc;
    if (proc.placement == Placement::kNested && !(c.parent && c.parent->alive)) {
      Fail(diag::kEscapedNested, span,
           "nested procedure '" + proc.name + "' called after its parent returned");
    }
    if (depth_ >= cfg_.max_call_depth) {
      Fail(diag::kStepLimit, span, "call depth limit of " + std::to_string(cfg_.max_call_depth) + " exceeded");
    }
    ++depth_;
    auto act = std::make_shared<Activation>();
    auto frame = NewFrame(proc.param_scope, c.env, act);
    for (std::size_t i = 0; i < proc.params.size(); ++i) {
      frame->slots[i] = Pass(proc.params[i].type, args[i], span);
    }
    Flow flow;
    {
      FrameScope fs(*this, frame);
      flow = ExecBlock(*proc.body, /*new_frame=*/false);
    }
    act->alive = false;
    --depth_;
    if (proc.result->kind == TypeKind::kVoid) return Value{};
    if (flow != Flow::kReturn || std::holds_alternative<std::monostate>(ret_.v)) return Zero(proc.result);
    Value r = std::move(ret_);
    ret_ = Value{};
    return Store(proc.result, r, span);
  }

  std::vector<Value> EvalArgs(const std::vector<ExprPtr>& exprs) {
    std::vector<Value> args(exprs.size());
    if (cfg_.arg_order == ArgOrder::kLeftToRight) {
      for (std::size_t i = 0; i < exprs.size(); ++i) args[i] = Eval(*exprs[i]);
    } else {
      for (std::size_t i = exprs.size(); i-- > 0;) args[i] = Eval(*exprs[i]);
    }
    return args;
  }

  // -- printf ---------------------------------------------------------------

  const ArrayVal& CharArray(const Value& v, const Span& span, std::string_view what) {
    if (auto* a = std::get_if<ArrayVal>(&v.v)) return *a;
    Fail(diag::kBadFormat, span, std::string(what) + " needs a char array argument");
  }

  std::uint8_t ByteAt(const ArrayVal& a, std::uint32_t i) {
    return static_cast<std::uint8_t>(std::get<std::uint8_t>((*a.storage)[a.offset + i].v));
  }

  Value Printf(const Call& call) {
    std::vector<Value> args = EvalArgs(call.args);
    const Span& span = call.span;
    const ArrayVal& fmt = CharArray(args[0], call.args[0]->span, "printf format");
    std::size_t next = 1;
    auto take = [&](std::string_view conv) -> const Value& {
      if (next >= args.size()) {
        Fail(diag::kBadFormat, span, "missing argument for '%" + std::string(conv) + "'");
      }
      return args[next++];
    };
    auto take_int = [&](std::string_view conv) -> std::int32_t {
      const Value& v = take(conv);
      if (std::holds_alternative<std::int32_t>(v.v)) return std::get<std::int32_t>(v.v);
      if (std::holds_alternative<std::uint8_t>(v.v)) return std::get<std::uint8_t>(v.v);
      Fail(diag::kBadFormat, span, "'%" + std::string(conv) + "' needs an integer argument");
    };

    std::string out;
    std::uint32_t i = 0;
    auto at_end = [&] { return i >= fmt.length || ByteAt(fmt, i) == 0; };
    while (!at_end()) {
      char c = static_cast<char>(ByteAt(fmt, i++));
      if (c != '%') {
        out += c;
        continue;
      }
      std::string flags;
      while (!at_end()) {
        char f = static_cast<char>(ByteAt(fmt, i));
        if (f != '-' && f != '+' && f != ' ' && f != '#' && f != '0') break;
        flags += f;
        ++i;
      }
      int width = -1;
      if (!at_end() && ByteAt(fmt, i) == '*') {
        ++i;
        width = take_int("*");
        if (width < 0) {
          flags += '-';
          width = width == INT_MIN ? INT_MAX : -width;
        }
      } else {
        while (!at_end() && ByteAt(fmt, i) >= '0' && ByteAt(fmt, i) <= '9') {
          width = std::max(width, 0) * 10 + (ByteAt(fmt, i++) - '0');
          if (width > 1'000'000) Fail(diag::kBadFormat, span, "field width too large");
        }
      }
      int precision = -1;
      if (!at_end() && ByteAt(fmt, i) == '.') {
        ++i;
        if (!at_end() && ByteAt(fmt, i) == '*') {
          ++i;
          precision = take_int(".*");
          if (precision < 0) Fail(diag::kBadFormat, span, "negative precision");
        } else {
          precision = 0;
          while (!at_end() && ByteAt(fmt, i) >= '0' && ByteAt(fmt, i) <= '9') {
            precision = precision * 10 + (ByteAt(fmt, i++) - '0');
            if (precision > 1'000'000) Fail(diag::kBadFormat, span, "precision too large");
          }
        }
      }
      if (at_end()) Fail(diag::kBadFormat, span, "format ends inside a conversion");
      char conv = static_cast<char>(ByteAt(fmt, i++));
      bool left = flags.find('-') != std::string::npos;
      auto pad = [&](std::string body) {
        if (width > 0 && body.size() < static_cast<std::size_t>(width)) {
          std::string fill(static_cast<std::size_t>(width) - body.size(), ' ');
          body = left ? body + fill : fill + body;
        }
        out += body;
      };
      switch (conv) {
        case '%':
          out += '%';
          break;
        case 'd':
        case 'i':
        case 'u':
        case 'x':
        case 'X': {
          std::int32_t v = take_int(std::string(1, conv));
          std::string spec = "%" + flags;
          if (width >= 0) spec += std::to_string(width);
          if (precision >= 0) spec += "." + std::to_string(precision);
          spec += conv;
          int n = (conv == 'd' || conv == 'i') ? std::snprintf(nullptr, 0, spec.c_str(), v)
                                               : std::snprintf(nullptr, 0, spec.c_str(), static_cast<unsigned>(v));
          std::string buf(static_cast<std::size_t>(n) + 1, '\0');
          if (conv == 'd' || conv == 'i') {
            std::snprintf(buf.data(), buf.size(), spec.c_str(), v);
          } else {
            std::snprintf(buf.data(), buf.size(), spec.c_str(), static_cast<unsigned>(v));
          }
          buf.resize(static_cast<std::size_t>(n));
          out += buf;
          break;
        }
        case 'c':
          pad(std::string(1, static_cast<char>(take_int("c") & 0xFF)));
          break;
        case 's': {
          const ArrayVal& a = CharArray(take("s"), span, "'%s'");
          std::string body;
          if (precision >= 0) {
            if (static_cast<std::uint32_t>(precision) > a.length) {
              Fail(diag::kOobIndex, span,
                   "precision " + std::to_string(precision) + " exceeds array length " + std::to_string(a.length));
            }
            for (std::uint32_t k = 0; k < static_cast<std::uint32_t>(precision); ++k) body += static_cast<char>(ByteAt(a, k));
          } else {
            for (std::uint32_t k = 0; k < a.length && ByteAt(a, k) != 0; ++k) body += static_cast<char>(ByteAt(a, k));
          }
          pad(std::move(body));
          break;
        }
        default:
          Fail(diag::kBadFormat, span, std::string("unknown conversion '%") + conv + "'");
      }
    }
    Write(out);
    return Int(static_cast<std::int32_t>(out.size()));
  }

  // -- expressions ----------------------------------------------------------

  std::int32_t Arith(BinaryOp op, std::int32_t a, std::int32_t b, const Span& span) {
    auto ua = static_cast<std::uint32_t>(a), ub = static_cast<std::uint32_t>(b);
    switch (op) {
      case BinaryOp::kMul: return Wrap(ua * ub);
      case BinaryOp::kDiv:
      case BinaryOp::kMod:
        if (b == 0) Fail(diag::kDivZero, span, "division by zero");
        if (a == INT32_MIN && b == -1) Fail(diag::kDivZero, span, "INT_MIN / -1 overflows");
        return op == BinaryOp::kDiv ? a / b : a % b;
      case BinaryOp::kAdd: return Wrap(ua + ub);
      case BinaryOp::kSub: return Wrap(ua - ub);
      case BinaryOp::kShl: return Wrap(ua << (ub & 31));
      case BinaryOp::kShr: return a >> (ub & 31);
      case BinaryOp::kLt: return a < b;
      case BinaryOp::kGt: return a > b;
      case BinaryOp::kLe: return a <= b;
      case BinaryOp::kGe: return a >= b;
      case BinaryOp::kEq: return a == b;
      case BinaryOp::kNe: return a != b;
      case BinaryOp::kBitAnd: return a & b;
      case BinaryOp::kBitXor: return a ^ b;
      case BinaryOp::kBitOr: return a | b;
      case BinaryOp::kLogAnd: return (a && b) ? 1 : 0;
      case BinaryOp::kLogOr: return (a || b) ? 1 : 0;
    }
    return 0;
  }

  bool Truthy(const Expr& e) { return ToInt(Eval(e), e.span) != 0; }

  LRef Lvalue(const Expr& e) {
    switch (e.kind) {
      case ExprKind::kIdent: {
        const Symbol* s = e.As<Ident>().symbol;
        const auto& f = FrameFor(s->scope);
        return LRef{&f->slots[s->slot], f};
      }
      case ExprKind::kIndex: {
        const auto& ix = e.As<Index>();
        Value base = Eval(*ix.base);
        std::int32_t i = ToInt(Eval(*ix.index), ix.index->span);
        const auto& a = std::get<ArrayVal>(base.v);
        CheckIndex(a, i, e.span);
        return LRef{&(*a.storage)[a.offset + static_cast<std::uint32_t>(i)], a.storage};
      }
      case ExprKind::kMember: {
        const auto& m = e.As<Member>();
        LRef base = Lvalue(*m.base);
        auto s = std::get<std::shared_ptr<StructVal>>(base.ptr->v);
        return LRef{&s->fields[m.field_index], s};
      }
      default:
        Fail(diag::kType, e.span, "expression is not assignable");
    }
  }

  void CheckIndex(const ArrayVal& a, std::int32_t i, const Span& span) {
    if (i < 0 || static_cast<std::uint32_t>(i) >= a.length) {
      Fail(diag::kOobIndex, span,
           "index " + std::to_string(i) + " is outside [0, " + std::to_string(a.length) + ")");
    }
  }

  Value Step(const Unary& u) {
    LRef r = Lvalue(*u.operand);
    bool inc = u.op == UnaryOp::kPreInc || u.op == UnaryOp::kPostInc;
    bool pre = u.op == UnaryOp::kPreInc || u.op == UnaryOp::kPreDec;
    Value old = *r.ptr;
    std::int32_t x = ToInt(old, u.span);
    std::int32_t next = Wrap(static_cast<std::uint32_t>(x) + (inc ? 1u : 0xFFFFFFFFu));
    *r.ptr = Store(u.operand->type, Int(next), u.span);
    return pre ? *r.ptr : old;
  }

  Value Eval(const Expr& e) {
    Tick(e.span);
    switch (e.kind) {
      case ExprKind::kIntLit:
        return Int(Wrap(static_cast<std::uint32_t>(e.As<IntLit>().value)));
      case ExprKind::kCharLit:
        return Int(e.As<CharLit>().value);
      case ExprKind::kStrLit:
        return StringValue(e.As<StrLit>().bytes);
      case ExprKind::kIdent: {
        const Symbol* s = e.As<Ident>().symbol;
        return FrameFor(s->scope)->slots[s->slot];
      }
      case ExprKind::kUnary: {
        const auto& u = e.As<Unary>();
        switch (u.op) {
          case UnaryOp::kPlus: return Int(ToInt(Eval(*u.operand), e.span));
          case UnaryOp::kNeg: return Int(Wrap(0u - static_cast<std::uint32_t>(ToInt(Eval(*u.operand), e.span))));
          case UnaryOp::kNot: return Int(ToInt(Eval(*u.operand), e.span) == 0 ? 1 : 0);
          case UnaryOp::kBitNot: return Int(~ToInt(Eval(*u.operand), e.span));
          default: return Step(u);
        }
      }
      case ExprKind::kBinary: {
        const auto& b = e.As<Binary>();
        if (b.op == BinaryOp::kLogAnd) return Int(Truthy(*b.lhs) && Truthy(*b.rhs) ? 1 : 0);
        if (b.op == BinaryOp::kLogOr) return Int(Truthy(*b.lhs) || Truthy(*b.rhs) ? 1 : 0);
        std::int32_t l = ToInt(Eval(*b.lhs), b.lhs->span);
        std::int32_t r = ToInt(Eval(*b.rhs), b.rhs->span);
        return Int(Arith(b.op, l, r, e.span));
      }
      case ExprKind::kAssign: {
        const auto& a = e.As<Assign>();
        LRef t = Lvalue(*a.target);
        if (a.op) {
          std::int32_t old = ToInt(*t.ptr, a.target->span);
          std::int32_t rhs = ToInt(Eval(*a.value), a.value->span);
          *t.ptr = Store(a.target->type, Int(Arith(*a.op, old, rhs, e.span)), e.span);
        } else {
          Value v = Eval(*a.value);
          *t.ptr = Store(a.target->type, v, e.span);
        }
        return *t.ptr;
      }
      case ExprKind::kTernary: {
        const auto& t = e.As<Ternary>();
        return Truthy(*t.cond) ? Eval(*t.then_expr) : Eval(*t.else_expr);
      }
      case ExprKind::kComma: {
        const auto& c = e.As<Comma>();
        Eval(*c.lhs);
        return Eval(*c.rhs);
      }
      case ExprKind::kCall: {
        const auto& call = e.As<Call>();
        if (call.callee->kind == ExprKind::kIdent) {
          const Symbol* s = call.callee->As<Ident>().symbol;
          if (s && s->kind == SymbolKind::kBuiltin) return Printf(call);
        }
        Value callee = Eval(*call.callee);
        std::vector<Value> args = EvalArgs(call.args);
        const auto* c = std::get_if<Callable>(&callee.v);
        if (!c) Fail(diag::kType, call.callee->span, "called value is not a procedure");
        return CallValue(*c, args, e.span);
      }
      case ExprKind::kIndex: {
        const auto& ix = e.As<Index>();
        Value base = Eval(*ix.base);
        std::int32_t i = ToInt(Eval(*ix.index), ix.index->span);
        const auto& a = std::get<ArrayVal>(base.v);
        CheckIndex(a, i, e.span);
        return (*a.storage)[a.offset + static_cast<std::uint32_t>(i)];
      }
      case ExprKind::kMember: {
        const auto& m = e.As<Member>();
        Value base = Eval(*m.base);
        return std::get<std::shared_ptr<StructVal>>(base.v)->fields[m.field_index];
      }
      case ExprKind::kSizeofExpr: {
        const auto& s = e.As<SizeofExpr>();
        if (!s.size) Fail(diag::kSizeofUnsized, e.span, "sizeof operand has no visible definite size");
        return Int(*s.size);
      }
      case ExprKind::kSizeofType: {
        const auto& s = e.As<SizeofType>();
        if (!s.size) Fail(diag::kSizeofUnsized, e.span, "sizeof of type " + TypeName(*s.operand) + " is undefined");
        return Int(*s.size);
      }
      case ExprKind::kLengthOf: {
        Value v = Eval(*e.As<LengthOf>().operand);
        return Int(static_cast<std::int32_t>(std::get<ArrayVal>(v.v).length));
      }
      case ExprKind::kCast: {
        const auto& c = e.As<Cast>();
        std::int32_t v = ToInt(Eval(*c.operand), c.operand->span);
        if (c.target->kind == TypeKind::kChar) return Value{static_cast<std::uint8_t>(v & 0xFF)};
        return Int(v);
      }
    }
    return Value{};
  }

  // -- statements -----------------------------------------------------------

  Value InitValue(const TypePtr& t, const Initializer& init) {
    if (!init.is_list) {
      Value v = Eval(*init.expr);
      return Store(t, v, init.span);
    }
    switch (t->kind) {
      case TypeKind::kArray: {
        std::uint32_t n = t->array_kind == ArrayKind::kFixed ? t->count : static_cast<std::uint32_t>(init.list.size());
        auto storage = std::make_shared<Storage>();
        storage->reserve(n);
        for (std::uint32_t i = 0; i < n; ++i) {
          storage->push_back(i < init.list.size() ? InitValue(t->element, init.list[i]) : Zero(t->element));
        }
        return Value{ArrayVal{std::move(storage), 0, n}};
      }
      case TypeKind::kStruct: {
        auto s = std::make_shared<StructVal>();
        const auto& fields = t->struct_def->fields;
        for (std::size_t i = 0; i < fields.size(); ++i) {
          s->fields.push_back(i < init.list.size() ? InitValue(fields[i].type, init.list[i]) : Zero(fields[i].type));
        }
        return Value{std::move(s)};
      }
      default:
        return InitValue(t, init.list.at(0));
    }
  }

  void ExecDecl(const DeclStmt& d) {
    for (const auto& v : d.vars) {
      const Symbol* s = v.symbol;
      if (!s) continue;
      Value value = v.init ? InitValue(v.type, *v.init) : Zero(v.type);
      // Globals without an initializer keep what an earlier declaration stored.
      if (!v.init && s->scope == 0) continue;
      FrameFor(s->scope)->slots[s->slot] = std::move(value);
    }
  }

  Flow ExecBlock(const Block& b, bool new_frame) {
    std::optional<FrameScope> fs;
    if (new_frame) fs.emplace(*this, NewFrame(b.scope, cur_, cur_->act));
    for (;;) {
      bool restarted = false;
      for (const auto& child : b.stmts) {
        Flow f = Exec(*child);
        if (f == Flow::kNormal) continue;
        if (f == Flow::kGoto && b.Contains(*goto_target_)) {
          seek_ = goto_target_;
          restarted = true;
          break;
        }
        return f;
      }
      if (!restarted) return Flow::kNormal;
    }
  }

  Flow Exec(const Stmt& s) {
    for (;;) {
      Flow f = ExecInner(s);
      if (f == Flow::kGoto && s.kind != StmtKind::kBlock && s.Contains(*goto_target_)) {
        seek_ = goto_target_;
        continue;
      }
      return f;
    }
  }

  // Runs a loop body; returns true when the loop should stop with `out`.
  bool LoopBody(const Stmt& body, Flow& out) {
    Flow f = Exec(body);
    switch (f) {
      case Flow::kNormal:
      case Flow::kContinue:
        return false;
      case Flow::kBreak:
        out = Flow::kNormal;
        return true;
      default:
        out = f;
        return true;
    }
  }

  Flow ExecInner(const Stmt& s) {
    Tick(s.span);
    if (seek_) {
      if (seek_ == &s) {
        seek_ = nullptr;
      } else if (!s.Contains(*seek_)) {
        return Flow::kNormal;
      }
    }
    bool seeking = seek_ != nullptr;
    switch (s.kind) {
      case StmtKind::kExpr:
        Eval(*s.As<ExprStmt>().expr);
        return Flow::kNormal;
      case StmtKind::kDecl:
        ExecDecl(s.As<DeclStmt>());
        return Flow::kNormal;
      case StmtKind::kProc:
      case StmtKind::kEmpty:
        return Flow::kNormal;
      case StmtKind::kBlock:
        return ExecBlock(s.As<Block>(), /*new_frame=*/true);
      case StmtKind::kIf: {
        const auto& i = s.As<If>();
        if (seeking) {
          if (i.then_stmt->Contains(*seek_)) return Exec(*i.then_stmt);
          return Exec(*i.else_stmt);
        }
        if (Truthy(*i.cond)) return Exec(*i.then_stmt);
        if (i.else_stmt) return Exec(*i.else_stmt);
        return Flow::kNormal;
      }
      case StmtKind::kWhile: {
        const auto& w = s.As<While>();
        Flow out = Flow::kNormal;
        for (bool skip = seeking;; skip = false) {
          if (!skip && !Truthy(*w.cond)) return Flow::kNormal;
          if (LoopBody(*w.body, out)) return out;
        }
      }
      case StmtKind::kDoWhile: {
        const auto& w = s.As<DoWhile>();
        Flow out = Flow::kNormal;
        do {
          if (LoopBody(*w.body, out)) return out;
        } while (Truthy(*w.cond));
        return Flow::kNormal;
      }
      case StmtKind::kFor: {
        const auto& f = s.As<For>();
        FrameScope fs(*this, NewFrame(f.scope, cur_, cur_->act));
        if (!seeking && f.init) Exec(*f.init);
        Flow out = Flow::kNormal;
        for (bool skip = seeking;; skip = false) {
          if (!skip && f.cond && !Truthy(*f.cond)) return Flow::kNormal;
          if (LoopBody(*f.body, out)) return out;
          if (f.step) Eval(*f.step);
        }
      }
      case StmtKind::kSwitch: {
        const auto& w = s.As<Switch>();
        if (!seeking) {
          std::int32_t v = ToInt(Eval(*w.value), w.value->span);
          const Stmt* target = w.default_label;
          for (const Case* c : w.cases) {
            if (c->constant == v) {
              target = c;
              break;
            }
          }
          if (!target) return Flow::kNormal;
          seek_ = target;
        }
        Flow f = Exec(*w.body);
        return f == Flow::kBreak ? Flow::kNormal : f;
      }
      case StmtKind::kCase:
        return Exec(*s.As<Case>().body);
      case StmtKind::kDefault:
        return Exec(*s.As<Default>().body);
      case StmtKind::kLabeled:
        return Exec(*s.As<Labeled>().body);
      case StmtKind::kBreak:
        return Flow::kBreak;
      case StmtKind::kContinue:
        return Flow::kContinue;
      case StmtKind::kReturn: {
        const auto& r = s.As<Return>();
        ret_ = r.value ? Eval(*r.value) : Value{};
        return Flow::kReturn;
      }
      case StmtKind::kGoto:
        goto_target_ = s.As<Goto>().target;
        return Flow::kGoto;
    }
    return Flow::kNormal;
  }

  const BoundProgram& prog_;
  const EvalConfig& cfg_;
  std::shared_ptr<Frame> global_;
  std::shared_ptr<Frame> cur_;
  Value ret_;
  const Stmt* seek_ = nullptr;
  const Stmt* goto_target_ = nullptr;
  std::uint64_t steps_ = 0;
  int depth_ = 0;
  std::string out_;
};

struct ThreadTask {
  const BoundProgram* program;
  const EvalConfig* config;
  RunResult result;
  std::exception_ptr failure;
};

void* RunThread(void* arg) {
  auto* task = static_cast<ThreadTask*>(arg);
  try {
    Interp interp(*task->program, *task->config);
    task->result = interp.Run();
  } catch (...) {
    task->failure = std::current_exception();
  }
  return nullptr;
}

// Bytes of native stack reserved per permitted call level.
constexpr std::size_t kStackPerCall = 8 * 1024;

}  // namespace

RunResult Run(const BoundProgram& program, const EvalConfig& config) {
  ThreadTask task{&program, &config, {}, nullptr};
  std::size_t stack = std::max<std::size_t>(std::size_t{64} << 20,
                                            static_cast<std::size_t>(std::max(config.max_call_depth, 0)) * kStackPerCall);
  pthread_attr_t attr;
  pthread_attr_init(&attr);
  pthread_attr_setstacksize(&attr, stack);
  pthread_t thread;
  if (pthread_create(&thread, &attr, RunThread, &task) == 0) {
    pthread_join(thread, nullptr);
  } else {
    RunThread(&task);
  }
  pthread_attr_destroy(&attr);
  if (task.failure) std::rethrow_exception(task.failure);
  return task.result;
}

std::string FormatRuntimeError(const SourceManager& sm, const RuntimeError& error) {
  std::string where = error.span.file_id < sm.FileCount() ? sm.Location(error.span) : "<unknown>";
  return error.code + ": " + error.message + " @ " + where;
}

}  // namespace atc
