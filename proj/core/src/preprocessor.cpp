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

#include "atc/preprocessor.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <memory>

namespace atc {
namespace {

using HideSet = std::shared_ptr<const std::set<std::string, std::less<>>>;

// A token travelling through macro expansion, with the names of the macros
// it must no longer expand ("painted blue").
struct PPTok {
  Token tok;
  HideSet hide;

  bool Hidden(const std::string& name) const { return hide && hide->count(name) != 0; }
};

HideSet Union(const HideSet& hs, const std::string& name) {
  auto out = std::make_shared<std::set<std::string, std::less<>>>();
  if (hs) *out = *hs;
  out->insert(name);
  return out;
}

HideSet Intersect(const HideSet& a, const HideSet& b) {
  auto out = std::make_shared<std::set<std::string, std::less<>>>();
  if (a && b) {
    std::set_intersection(a->begin(), a->end(), b->begin(), b->end(),
                          std::inserter(*out, out->begin()));
  }
  return out;
}

TokenList Significant(const TokenList& tokens, std::size_t begin, std::size_t end) {
  TokenList out;
  for (std::size_t i = begin; i < end && i < tokens.size(); ++i) {
    if (!tokens[i].IsTrivia() && tokens[i].kind != TokenKind::kEof) out.push_back(tokens[i]);
  }
  return out;
}

Token MakeIntToken(std::uint64_t v, const Span& span) {
  Token t;
  t.kind = TokenKind::kIntLiteral;
  t.bytes = std::to_string(v);
  t.text = t.bytes;
  t.value = v;
  t.span = span;
  t.from_macro = true;
  return t;
}

Token MakePunct(std::string_view p, const Span& span) {
  Token t;
  t.kind = TokenKind::kPunctuator;
  t.bytes = std::string(p);
  t.text = t.bytes;
  t.span = span;
  t.from_macro = true;
  return t;
}

std::string QuoteForString(std::string_view spelled) {
  std::string out = "\"";
  for (char c : spelled) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

Diagnostic Error(std::string_view code, const Span& span, std::string message) {
  return Diagnostic{std::string(code), Severity::kError, span, std::move(message)};
}

bool IsPredicateWord(std::string_view w) {
  return w == "defined" || w == "declared" || w == "coded" || w == "used";
}

// ---------------------------------------------------------------------------
// Macro expansion over a token deque (Prosser's hide-set algorithm).

class MacroExpander {
 public:
  MacroExpander(const MacroTable& macros, Diagnostics& diags, std::string file_name)
      : macros_(macros), diags_(diags), file_name_(std::move(file_name)) {}

  // Expands `input` completely. Trivia outside macro invocations is kept.
  std::vector<PPTok> Expand(std::deque<PPTok> input) {
    std::vector<PPTok> out;
    while (!input.empty()) {
      PPTok t = std::move(input.front());
      input.pop_front();
      if (t.tok.kind != TokenKind::kIdentifier) {
        out.push_back(std::move(t));
        continue;
      }
      const std::string& name = t.tok.text;
      auto it = macros_.find(name);
      if (it == macros_.end() || t.Hidden(name)) {
        if (it == macros_.end() && !t.Hidden(name) && (name == "__LINE__" || name == "__FILE__")) {
          out.push_back(PPTok{Builtin(name, t.tok.span), t.hide});
        } else {
          out.push_back(std::move(t));
        }
        continue;
      }
      const MacroDef& m = it->second;
      if (m.kind != MacroDef::Kind::kFunction) {
        auto result = Substitute(m, {}, Union(t.hide, name), t.tok.span);
        for (auto r = result.rbegin(); r != result.rend(); ++r) input.push_front(std::move(*r));
        continue;
      }

      std::size_t k = 0;
      while (k < input.size() && input[k].tok.IsTrivia()) ++k;
      if (k == input.size() || !input[k].tok.IsPunct("(")) {
        out.push_back(std::move(t));
        continue;
      }
      input.erase(input.begin(), input.begin() + static_cast<std::ptrdiff_t>(k + 1));

      std::vector<std::vector<PPTok>> args(1);
      std::optional<PPTok> rparen;
      int depth = 1;
      std::size_t fixed_params = m.variadic ? m.params.size() - 1 : m.params.size();
      while (!input.empty()) {
        PPTok p = std::move(input.front());
        input.pop_front();
        if (p.tok.IsPunct("(")) {
          ++depth;
        } else if (p.tok.IsPunct(")")) {
          if (--depth == 0) {
            rparen = std::move(p);
            break;
          }
        } else if (p.tok.IsPunct(",") && depth == 1 &&
                   !(m.variadic && args.size() > fixed_params)) {
          args.emplace_back();
          continue;
        }
        args.back().push_back(std::move(p));
      }
      if (!rparen) {
        diags_.push_back(Error(diag::kPpMacroArgs, t.tok.span,
                               "unterminated argument list invoking macro '" + name + "'"));
        continue;
      }

      auto all_trivia = [](const std::vector<PPTok>& a) {
        return std::all_of(a.begin(), a.end(), [](const PPTok& p) { return p.tok.IsTrivia(); });
      };
      if (m.params.empty() && args.size() == 1 && all_trivia(args[0])) args.clear();
      if (m.variadic && args.size() == fixed_params) args.emplace_back();
      if (args.size() != m.params.size()) {
        diags_.push_back(Error(diag::kPpMacroArgs, t.tok.span,
                               "macro '" + name + "' expects " + std::to_string(m.params.size()) +
                                   " arguments, got " + std::to_string(args.size())));
        continue;
      }
      Span call_span = Cover(t.tok.span, rparen->tok.span);
      auto result = Substitute(m, args, Union(Intersect(t.hide, rparen->hide), name), call_span);
      for (auto r = result.rbegin(); r != result.rend(); ++r) input.push_front(std::move(*r));
    }
    return out;
  }

 private:
  Token Builtin(const std::string& name, const Span& span) {
    if (name == "__LINE__") return MakeIntToken(span.line, span);
    Token t;
    t.kind = TokenKind::kStringLiteral;
    t.text = file_name_;
    t.bytes = QuoteForString(file_name_);
    t.span = span;
    t.from_macro = true;
    return t;
  }

  static std::vector<PPTok> StripTrivia(const std::vector<PPTok>& arg) {
    std::vector<PPTok> out;
    for (const auto& p : arg) {
      if (!p.tok.IsTrivia()) out.push_back(p);
    }
    return out;
  }

  Token Stringize(const std::vector<PPTok>& arg, const Span& span) {
    std::string spelled;
    bool pending_space = false;
    for (const auto& p : arg) {
      if (p.tok.IsTrivia()) {
        pending_space = !spelled.empty();
        continue;
      }
      if (pending_space) spelled += ' ';
      pending_space = false;
      if (p.tok.kind == TokenKind::kStringLiteral || p.tok.kind == TokenKind::kCharLiteral) {
        for (char c : p.tok.bytes) {
          if (c == '"' || c == '\\') spelled += '\\';
          spelled += c;
        }
      } else {
        spelled += p.tok.bytes;
      }
    }
    Token t;
    t.kind = TokenKind::kStringLiteral;
    t.bytes = "\"" + spelled + "\"";
    // Decoding the quoted form undoes exactly the escaping above.
    t.text.clear();
    for (std::size_t i = 0; i < spelled.size(); ++i) {
      if (spelled[i] == '\\' && i + 1 < spelled.size()) ++i;
      t.text += spelled[i];
    }
    t.span = span;
    t.from_macro = true;
    return t;
  }

  std::optional<Token> Paste(const Token& lhs, const Token& rhs, const Span& span) {
    std::string joined = lhs.bytes + rhs.bytes;
    LexResult lr = Lex(joined, LexConfig{span.file_id, Severity::kWarning});
    TokenList sig = Significant(lr.tokens, 0, lr.tokens.size());
    if (sig.size() != 1 || !lr.diagnostics.empty() || sig[0].kind == TokenKind::kUnknown) {
      diags_.push_back(Error(diag::kPpBadPaste, span,
                             "pasting '" + lhs.bytes + "' and '" + rhs.bytes +
                                 "' does not give a valid token"));
      return std::nullopt;
    }
    Token t = sig[0];
    t.span = span;
    t.from_macro = true;
    return t;
  }

  std::vector<PPTok> Substitute(const MacroDef& m, const std::vector<std::vector<PPTok>>& args,
                                const HideSet& hide, const Span& call_span) {
    auto param_index = [&](const Token& t) -> int {
      if (t.kind != TokenKind::kIdentifier) return -1;
      for (std::size_t i = 0; i < m.params.size(); ++i) {
        if (m.params[i] == t.text) return static_cast<int>(i);
      }
      return -1;
    };
    auto body_tok = [&](const Token& t) {
      Token c = t;
      c.span = call_span;
      c.from_macro = true;
      return PPTok{std::move(c), nullptr};
    };
    auto arg_tok = [](PPTok p) {
      p.tok.from_macro = true;
      return p;
    };

    // An Unknown token with empty bytes is a placemarker.
    auto placemarker = [&] {
      Token t;
      t.kind = TokenKind::kUnknown;
      t.span = call_span;
      return PPTok{std::move(t), nullptr};
    };
    auto is_placemarker = [](const PPTok& p) {
      return p.tok.kind == TokenKind::kUnknown && p.tok.bytes.empty();
    };

    const TokenList& body = m.body;
    std::vector<PPTok> r;
    bool function_like = m.kind == MacroDef::Kind::kFunction;
    for (std::size_t i = 0; i < body.size(); ++i) {
      const Token& t = body[i];
      bool next_is_paste = i + 1 < body.size() && body[i + 1].IsPunct("##");
      if (function_like && t.IsPunct("#") && i + 1 < body.size() && param_index(body[i + 1]) >= 0) {
        r.push_back(PPTok{Stringize(args[static_cast<std::size_t>(param_index(body[i + 1]))], call_span),
                          nullptr});
        ++i;
        continue;
      }
      if (t.IsPunct("##") && i + 1 < body.size()) {
        std::vector<PPTok> rhs;
        const Token& next = body[i + 1];
        if (int pi = param_index(next); function_like && pi >= 0) {
          rhs = StripTrivia(args[static_cast<std::size_t>(pi)]);
          for (auto& p : rhs) p = arg_tok(std::move(p));
        } else {
          rhs.push_back(body_tok(next));
        }
        ++i;
        if (r.empty() || is_placemarker(r.back())) {
          if (!r.empty()) r.pop_back();
          if (rhs.empty()) {
            r.push_back(placemarker());
          } else {
            for (auto& p : rhs) r.push_back(std::move(p));
          }
        } else if (!rhs.empty()) {
          Token lhs = r.back().tok;
          r.pop_back();
          if (auto pasted = Paste(lhs, rhs.front().tok, call_span)) {
            r.push_back(PPTok{std::move(*pasted), nullptr});
          } else {
            r.push_back(PPTok{lhs, nullptr});
          }
          for (std::size_t k = 1; k < rhs.size(); ++k) r.push_back(std::move(rhs[k]));
        }
        continue;
      }
      if (int pi = param_index(t); function_like && pi >= 0) {
        const auto& arg = args[static_cast<std::size_t>(pi)];
        if (next_is_paste) {
          auto raw = StripTrivia(arg);
          if (raw.empty()) r.push_back(placemarker());
          for (auto& p : raw) r.push_back(arg_tok(std::move(p)));
        } else {
          auto stripped = StripTrivia(arg);
          std::deque<PPTok> in(stripped.begin(), stripped.end());
          for (auto& p : Expand(std::move(in))) r.push_back(arg_tok(std::move(p)));
        }
        continue;
      }
      r.push_back(body_tok(t));
    }

    std::vector<PPTok> out;
    for (auto& p : r) {
      if (is_placemarker(p)) continue;
      auto merged = std::make_shared<std::set<std::string, std::less<>>>();
      if (p.hide) *merged = *p.hide;
      if (hide) merged->insert(hide->begin(), hide->end());
      p.hide = std::move(merged);
      out.push_back(std::move(p));
    }
    return out;
  }

  const MacroTable& macros_;
  Diagnostics& diags_;
  std::string file_name_;
};

// ---------------------------------------------------------------------------
// #if expression evaluation over 64-bit signed integers.

class PpExprParser {
 public:
  PpExprParser(const TokenList& tokens, Diagnostics& diags, Span where)
      : toks_(tokens), diags_(diags), where_(where) {}

  std::optional<std::int64_t> Run() {
    if (toks_.empty()) return Fail("empty expression");
    auto v = Comma();
    if (!v) return std::nullopt;
    if (pos_ != toks_.size()) return Fail("unexpected token '" + toks_[pos_].bytes + "'");
    return v;
  }

 private:
  using Value = std::optional<std::int64_t>;

  Value Fail(const std::string& msg) {
    if (!failed_) diags_.push_back(Error(diag::kPpBadExpr, Here(), msg));
    failed_ = true;
    return std::nullopt;
  }
  Span Here() const { return pos_ < toks_.size() ? toks_[pos_].span : where_; }
  bool Accept(std::string_view p) {
    if (pos_ < toks_.size() && toks_[pos_].IsPunct(p)) {
      ++pos_;
      return true;
    }
    return false;
  }
  bool PeekIs(std::string_view p) const { return pos_ < toks_.size() && toks_[pos_].IsPunct(p); }

  static std::int64_t Wrap(std::uint64_t v) { return static_cast<std::int64_t>(v); }

  Value Comma() {
    Value v = Ternary();
    while (v && Accept(",")) v = Ternary();
    return v;
  }

  Value Ternary() {
    Value c = Binary(0);
    if (!c || !Accept("?")) return c;
    Value a = Comma();
    if (!a) return a;
    if (!Accept(":")) return Fail("expected ':'");
    Value b = Ternary();
    if (!b) return b;
    return *c ? a : b;
  }

  static int Precedence(std::string_view op) {
    static constexpr std::array<std::pair<std::string_view, int>, 18> kTable = {{
        {"||", 1}, {"&&", 2}, {"|", 3},  {"^", 4},  {"&", 5},  {"==", 6},
        {"!=", 6}, {"<", 7},  {">", 7},  {"<=", 7}, {">=", 7}, {"<<", 8},
        {">>", 8}, {"+", 9},  {"-", 9},  {"*", 10}, {"/", 10}, {"%", 10},
    }};
    for (auto [s, p] : kTable) {
      if (s == op) return p;
    }
    return -1;
  }

  Value Binary(int min_prec) {
    Value lhs = Unary();
    while (lhs && pos_ < toks_.size() && toks_[pos_].kind == TokenKind::kPunctuator) {
      std::string op = toks_[pos_].text;
      int prec = Precedence(op);
      if (prec < 0 || prec < min_prec) break;
      Span op_span = toks_[pos_].span;
      ++pos_;
      Value rhs = Binary(prec + 1);
      if (!rhs) return rhs;
      std::int64_t a = *lhs, b = *rhs;
      auto ua = static_cast<std::uint64_t>(a), ub = static_cast<std::uint64_t>(b);
      if (op == "||") lhs = (a || b) ? 1 : 0;
      else if (op == "&&") lhs = (a && b) ? 1 : 0;
      else if (op == "|") lhs = a | b;
      else if (op == "^") lhs = a ^ b;
      else if (op == "&") lhs = a & b;
      else if (op == "==") lhs = a == b;
      else if (op == "!=") lhs = a != b;
      else if (op == "<") lhs = a < b;
      else if (op == ">") lhs = a > b;
      else if (op == "<=") lhs = a <= b;
      else if (op == ">=") lhs = a >= b;
      else if (op == "<<") lhs = Wrap(ua << (ub & 63));
      else if (op == ">>") lhs = a >> (ub & 63);
      else if (op == "+") lhs = Wrap(ua + ub);
      else if (op == "-") lhs = Wrap(ua - ub);
      else if (op == "*") lhs = Wrap(ua * ub);
      else if (op == "/" || op == "%") {
        if (b == 0 || (a == INT64_MIN && b == -1)) {
          if (!failed_) diags_.push_back(Error(diag::kPpBadExpr, op_span, "division by zero in #if"));
          failed_ = true;
          return std::nullopt;
        }
        lhs = op == "/" ? a / b : a % b;
      }
    }
    return lhs;
  }

  Value Unary() {
    if (Accept("+")) return Unary();
    if (Accept("-")) {
      Value v = Unary();
      return v ? Value(Wrap(0 - static_cast<std::uint64_t>(*v))) : v;
    }
    if (Accept("!")) {
      Value v = Unary();
      return v ? Value(*v == 0 ? 1 : 0) : v;
    }
    if (Accept("~")) {
      Value v = Unary();
      return v ? Value(~*v) : v;
    }
    return Primary();
  }

  Value Primary() {
    if (pos_ >= toks_.size()) return Fail("unexpected end of expression");
    const Token& t = toks_[pos_];
    if (Accept("(")) {
      Value v = Comma();
      if (!v) return v;
      if (!Accept(")")) return Fail("expected ')'");
      return v;
    }
    if (t.kind == TokenKind::kIntLiteral || t.kind == TokenKind::kCharLiteral) {
      ++pos_;
      return static_cast<std::int64_t>(t.value);
    }
    if (t.kind == TokenKind::kIdentifier || t.kind == TokenKind::kKeyword) {
      ++pos_;
      return 0;
    }
    return Fail("unexpected token '" + t.bytes + "'");
  }

  const TokenList& toks_;
  Diagnostics& diags_;
  Span where_;
  std::size_t pos_ = 0;
  bool failed_ = false;
};

// Replaces predicate forms with 0/1 literals; records code predicates.
std::optional<TokenList> ResolvePredicates(const TokenList& toks, const MacroTable& macros,
                                           const CodeFacts* facts, Diagnostics& diags,
                                           std::vector<PredicateConsult>* trace) {
  TokenList out;
  for (std::size_t i = 0; i < toks.size(); ++i) {
    const Token& t = toks[i];
    if (t.kind != TokenKind::kIdentifier || !IsPredicateWord(t.text)) {
      out.push_back(t);
      continue;
    }
    std::size_t j = i + 1;
    bool paren = j < toks.size() && toks[j].IsPunct("(");
    if (paren) ++j;
    if (j >= toks.size() || (toks[j].kind != TokenKind::kIdentifier && toks[j].kind != TokenKind::kKeyword)) {
      diags.push_back(Error(diag::kPpBadExpr, t.span, "'" + t.text + "' expects an identifier"));
      return std::nullopt;
    }
    const std::string& name = toks[j].text;
    ++j;
    if (paren) {
      if (j >= toks.size() || !toks[j].IsPunct(")")) {
        diags.push_back(Error(diag::kPpBadExpr, t.span, "missing ')' after '" + t.text + "'"));
        return std::nullopt;
      }
      ++j;
    }
    bool value;
    if (t.text == "defined") {
      value = macros.count(name) != 0 || name == "__LINE__" || name == "__FILE__";
    } else {
      Predicate p = t.text == "declared" ? Predicate::kDeclared
                    : t.text == "coded"  ? Predicate::kCoded
                                         : Predicate::kUsed;
      value = facts == nullptr || facts->Query(p, name);
      if (trace) trace->push_back(PredicateConsult{p, name, value, t.span});
    }
    out.push_back(MakeIntToken(value ? 1 : 0, t.span));
    i = j - 1;
  }
  return out;
}

std::optional<std::int64_t> EvalCondition(const TokenList& line, const MacroTable& macros,
                                          const CodeFacts* facts, Diagnostics& diags,
                                          std::vector<PredicateConsult>* trace,
                                          const std::string& file_name, const Span& where) {
  TokenList sig = Significant(line, 0, line.size());
  auto resolved = ResolvePredicates(sig, macros, facts, diags, trace);
  if (!resolved) return std::nullopt;
  MacroExpander expander(macros, diags, file_name);
  std::deque<PPTok> in;
  for (auto& t : *resolved) in.push_back(PPTok{std::move(t), nullptr});
  TokenList expanded;
  for (auto& p : expander.Expand(std::move(in))) {
    if (!p.tok.IsTrivia()) expanded.push_back(std::move(p.tok));
  }
  return PpExprParser(expanded, diags, where).Run();
}

bool IsBuiltinHeader(std::string_view name) {
  static constexpr std::array<std::string_view, 6> kHeaders = {
      "stdio.h", "stdlib.h", "string.h", "stddef.h", "stdint.h", "limits.h"};
  return std::find(kHeaders.begin(), kHeaders.end(), name) != kHeaders.end();
}

// ---------------------------------------------------------------------------

class Preprocessor {
 public:
  Preprocessor(SourceManager& sm, const CodeFacts* facts, const PpConfig& config)
      : sm_(sm), facts_(facts), config_(config) {}

  void RunFile(FileId file, int depth) {
    LexResult lr = Lex(sm_.Bytes(file), LexConfig{file, config_.ambiguous_severity});
    for (auto& d : lr.diagnostics) result_.diagnostics.push_back(std::move(d));
    RunTokens(lr.tokens, file, depth);
  }

  void RunTokens(const TokenList& tokens, FileId file, int depth) {
    ProcessRange(tokens, 0, tokens.size(), file, depth);
  }

  PpResult Finish(Token eof) {
    result_.tokens = std::move(out_);
    result_.tokens.push_back(std::move(eof));
    result_.macros = std::move(macros_);
    return std::move(result_);
  }

 private:
  struct Cond {
    bool taking;
    bool any_taken;
    bool seen_else;
    Span span;
  };

  static std::size_t LineEnd(const TokenList& t, std::size_t i, std::size_t end) {
    while (i < end && !t[i].EndsLine() && t[i].kind != TokenKind::kEof) ++i;
    return i;
  }

  static bool AllTaking(const std::vector<Cond>& conds, std::size_t upto) {
    for (std::size_t i = 0; i < upto; ++i) {
      if (!conds[i].taking) return false;
    }
    return true;
  }

  void Report(std::string_view code, const Span& span, std::string msg,
              Severity sev = Severity::kError) {
    result_.diagnostics.push_back(Diagnostic{std::string(code), sev, span, std::move(msg)});
  }

  std::string FileName(FileId f) const { return sm_.Name(f); }

  std::optional<std::int64_t> Condition(const TokenList& line, FileId file, const Span& where) {
    return EvalCondition(line, macros_, facts_, result_.diagnostics, &result_.trace, FileName(file),
                         where);
  }

  void ProcessRange(const TokenList& toks, std::size_t begin, std::size_t end, FileId file,
                    int depth) {
    std::vector<Cond> conds;
    std::size_t i = begin;
    while (i < end && toks[i].kind != TokenKind::kEof) {
      const Token& t = toks[i];
      if (t.kind != TokenKind::kHashDirective) {
        std::size_t j = i;
        while (j < end && toks[j].kind != TokenKind::kHashDirective && toks[j].kind != TokenKind::kEof)
          ++j;
        if (AllTaking(conds, conds.size())) EmitText(toks, i, j, file);
        i = j;
        continue;
      }

      std::size_t le = LineEnd(toks, i + 1, end);
      TokenList line(toks.begin() + static_cast<std::ptrdiff_t>(i + 1),
                     toks.begin() + static_cast<std::ptrdiff_t>(le));
      const std::string& name = t.text;
      bool active = AllTaking(conds, conds.size());

      if (name == "if" || name == "ifdef" || name == "ifndef") {
        bool v = false;
        if (active) {
          if (name == "if") {
            v = Condition(line, file, t.span).value_or(0) != 0;
          } else {
            TokenList sig = Significant(line, 0, line.size());
            if (sig.empty() || (sig[0].kind != TokenKind::kIdentifier && sig[0].kind != TokenKind::kKeyword)) {
              Report(diag::kPpBadExpr, t.span, "#" + name + " expects a macro name");
            } else {
              bool defined = macros_.count(sig[0].text) != 0;
              v = name == "ifdef" ? defined : !defined;
            }
          }
        }
        // An inactive parent marks the group as already taken so no branch fires.
        conds.push_back(Cond{v, v || !active, false, t.span});
      } else if (name == "elif" || name == "else") {
        if (conds.empty() || conds.back().seen_else) {
          Report(diag::kPpStrayElseEndif, t.span, "#" + name + " without matching #if");
        } else {
          Cond& c = conds.back();
          bool parent = AllTaking(conds, conds.size() - 1);
          bool v = false;
          if (parent && !c.any_taken) {
            v = name == "else" || Condition(line, file, t.span).value_or(0) != 0;
          }
          c.taking = v;
          c.any_taken = c.any_taken || v;
          c.seen_else = name == "else";
        }
      } else if (name == "endif") {
        if (conds.empty()) {
          Report(diag::kPpStrayElseEndif, t.span, "#endif without matching #if");
        } else {
          conds.pop_back();
        }
      } else if (!active) {
        // Other directives in skipped groups are not interpreted.
      } else if (name == "while") {
        i = RunWhile(toks, i, le, end, line, file, depth);
        continue;
      } else if (name == "endwhile") {
        Report(diag::kPpStrayElseEndif, t.span, "#endwhile without matching #while");
      } else {
        Directive(t, line, file, depth);
      }
      i = le;
    }
    if (!conds.empty()) {
      Report(diag::kPpUnterminatedCond, conds.back().span, "conditional group is not terminated");
    }
  }

  // Returns the index just past the matching #endwhile line.
  std::size_t RunWhile(const TokenList& toks, std::size_t at, std::size_t line_end, std::size_t end,
                       const TokenList& cond, FileId file, int depth) {
    int nesting = 1;
    std::size_t k = line_end;
    for (; k < end; ++k) {
      if (toks[k].kind != TokenKind::kHashDirective) continue;
      if (toks[k].text == "while") ++nesting;
      if (toks[k].text == "endwhile" && --nesting == 0) break;
    }
    if (k >= end || toks[k].kind != TokenKind::kHashDirective) {
      Report(diag::kPpUnterminatedCond, toks[at].span, "#while without matching #endwhile");
      return end;
    }
    std::size_t after = LineEnd(toks, k + 1, end);
    for (int iter = 0;; ++iter) {
      auto v = Condition(cond, file, toks[at].span);
      if (!v || *v == 0) break;
      if (iter >= config_.max_while_iters) {
        Report(diag::kPpWhileLimit, toks[at].span,
               "#while exceeded " + std::to_string(config_.max_while_iters) + " iterations");
        break;
      }
      std::size_t errors_before = result_.diagnostics.size();
      ProcessRange(toks, line_end, k, file, depth);
      if (HasErrors(Diagnostics(result_.diagnostics.begin() + static_cast<std::ptrdiff_t>(errors_before),
                                result_.diagnostics.end())))
        break;
    }
    return after;
  }

  void Directive(const Token& t, const TokenList& line, FileId file, int depth) {
    const std::string& name = t.text;
    if (name.empty()) return;  // null directive
    if (name == "define") {
      Define(t, line, false);
    } else if (name == "defeval") {
      Define(t, line, true);
    } else if (name == "undef") {
      TokenList sig = Significant(line, 0, line.size());
      if (sig.empty()) {
        Report(diag::kPpBadDirective, t.span, "#undef expects a macro name");
        return;
      }
      macros_.erase(sig[0].text);
    } else if (name == "include") {
      Include(t, line, file, depth);
    } else if (name == "pragma") {
      Report(diag::kPpPragmaIgnored, t.span, "#pragma is ignored", Severity::kNote);
    } else if (name == "error") {
      Report(diag::kPpError, t.span, "#error" + RenderSource(line));
    } else {
      Report(diag::kPpBadDirective, t.span, "unknown directive #" + name);
    }
  }

  void Define(const Token& t, const TokenList& line, bool evaluated) {
    std::size_t p = 0;
    while (p < line.size() && line[p].IsTrivia()) ++p;
    if (p >= line.size() || (line[p].kind != TokenKind::kIdentifier && line[p].kind != TokenKind::kKeyword)) {
      Report(diag::kPpBadDirective, t.span, "#" + t.text + " expects a macro name");
      return;
    }
    MacroDef m;
    m.name = line[p].text;
    m.span = line[p].span;
    ++p;
    if (evaluated) {
      TokenList rest(line.begin() + static_cast<std::ptrdiff_t>(p), line.end());
      auto v = Condition(rest, t.span.file_id, t.span);
      if (!v) return;
      m.kind = MacroDef::Kind::kEvaluated;
      Span s = t.span;
      if (*v < 0) {
        m.body.push_back(MakePunct("(", s));
        m.body.push_back(MakePunct("-", s));
        m.body.push_back(MakeIntToken(0 - static_cast<std::uint64_t>(*v), s));
        m.body.push_back(MakePunct(")", s));
      } else {
        m.body.push_back(MakeIntToken(static_cast<std::uint64_t>(*v), s));
      }
      macros_[m.name] = std::move(m);
      return;
    }
    if (p < line.size() && line[p].IsPunct("(")) {
      m.kind = MacroDef::Kind::kFunction;
      TokenList sig = Significant(line, p + 1, line.size());
      std::size_t q = 0;
      bool ok = false;
      while (q < sig.size()) {
        if (sig[q].IsPunct(")") && m.params.empty() && !m.variadic) {
          ok = true;
          ++q;
          break;
        }
        if (sig[q].IsPunct("...")) {
          m.variadic = true;
          m.params.push_back("__VA_ARGS__");
          ++q;
          ok = q < sig.size() && sig[q].IsPunct(")");
          ++q;
          break;
        }
        if (sig[q].kind != TokenKind::kIdentifier) break;
        m.params.push_back(sig[q].text);
        ++q;
        if (q < sig.size() && sig[q].IsPunct(",")) {
          ++q;
          continue;
        }
        ok = q < sig.size() && sig[q].IsPunct(")");
        ++q;
        break;
      }
      if (!ok) {
        Report(diag::kPpBadDirective, t.span, "malformed parameter list for macro '" + m.name + "'");
        return;
      }
      m.body.assign(sig.begin() + static_cast<std::ptrdiff_t>(std::min(q, sig.size())), sig.end());
    } else {
      m.body = Significant(line, p, line.size());
    }
    if (!m.body.empty() && (m.body.front().IsPunct("##") || m.body.back().IsPunct("##"))) {
      Report(diag::kPpBadPaste, t.span, "'##' cannot appear at either end of a macro body");
      return;
    }
    if (auto it = macros_.find(m.name); it != macros_.end()) {
      if (it->second.kind != MacroDef::Kind::kEvaluated && !it->second.SameDefinition(m)) {
        Report(diag::kPpRedefined, m.span, "macro '" + m.name + "' redefined with a different body");
        return;
      }
    }
    macros_[m.name] = std::move(m);
  }

  void Include(const Token& t, const TokenList& line, FileId file, int depth) {
    TokenList sig = Significant(line, 0, line.size());
    std::string target;
    bool angled = false;
    auto parse_target = [&](const TokenList& s) {
      if (!s.empty() && s[0].kind == TokenKind::kStringLiteral) {
        target = s[0].text;
        return true;
      }
      if (!s.empty() && s[0].IsPunct("<")) {
        std::string name;
        for (std::size_t k = 1; k < s.size(); ++k) {
          if (s[k].IsPunct(">")) {
            target = name;
            angled = true;
            return true;
          }
          name += s[k].bytes;
        }
      }
      return false;
    };
    if (!parse_target(sig)) {
      MacroExpander ex(macros_, result_.diagnostics, FileName(file));
      std::deque<PPTok> in;
      for (auto& tok : sig) in.push_back(PPTok{tok, nullptr});
      TokenList expanded;
      for (auto& p : ex.Expand(std::move(in))) expanded.push_back(std::move(p.tok));
      if (!parse_target(expanded)) {
        Report(diag::kPpInclude, t.span, "#include expects \"file\" or <file>");
        return;
      }
    }
    if (depth + 1 > config_.max_include_depth) {
      Report(diag::kPpInclude, t.span, "#include nested too deeply");
      return;
    }
    std::vector<std::filesystem::path> candidates;
    if (!angled) candidates.push_back(std::filesystem::path(FileName(file)).parent_path() / target);
    for (const auto& dir : config_.include_dirs) candidates.push_back(dir / target);
    for (const auto& c : candidates) {
      std::error_code ec;
      if (!std::filesystem::is_regular_file(c, ec)) continue;
      if (auto id = sm_.AddFile(c)) {
        RunFile(*id, depth + 1);
        return;
      }
    }
    if (IsBuiltinHeader(target)) return;  // the runtime library is built in
    Report(diag::kPpInclude, t.span, "cannot find include file '" + target + "'");
  }

  void EmitText(const TokenList& toks, std::size_t begin, std::size_t end, FileId file) {
    std::deque<PPTok> in;
    for (std::size_t k = begin; k < end; ++k) in.push_back(PPTok{toks[k], nullptr});
    MacroExpander ex(macros_, result_.diagnostics, FileName(file));
    for (auto& p : ex.Expand(std::move(in))) out_.push_back(std::move(p.tok));
  }

  SourceManager& sm_;
  const CodeFacts* facts_;
  const PpConfig& config_;
  MacroTable macros_;
  TokenList out_;
  PpResult result_;
};

}  // namespace

std::string_view PredicateName(Predicate p) {
  switch (p) {
    case Predicate::kDeclared:
      return "declared";
    case Predicate::kCoded:
      return "coded";
    case Predicate::kUsed:
      return "used";
  }
  return "used";
}

bool CodeFacts::Query(Predicate p, const std::string& name) const {
  switch (p) {
    case Predicate::kDeclared:
      return declared.count(name) != 0;
    case Predicate::kCoded:
      return coded.count(name) != 0;
    case Predicate::kUsed:
      return used.count(name) != 0;
  }
  return false;
}

bool MacroDef::SameDefinition(const MacroDef& other) const {
  if (kind != other.kind || params != other.params || variadic != other.variadic ||
      body.size() != other.body.size())
    return false;
  for (std::size_t i = 0; i < body.size(); ++i) {
    if (body[i].bytes != other.body[i].bytes) return false;
  }
  return true;
}

PpResult Preprocess(SourceManager& sm, FileId file, const CodeFacts* facts,
                    const PpConfig& config) {
  LexResult lr = Lex(sm.Bytes(file), LexConfig{file, config.ambiguous_severity});
  Preprocessor pp(sm, facts, config);
  Token eof = lr.tokens.back();
  pp.RunTokens(lr.tokens, file, 0);
  PpResult out = pp.Finish(std::move(eof));
  out.diagnostics.insert(out.diagnostics.begin(), lr.diagnostics.begin(), lr.diagnostics.end());
  return out;
}

PpResult PreprocessTokens(SourceManager& sm, const TokenList& tokens, const CodeFacts* facts,
                          const PpConfig& config) {
  Preprocessor pp(sm, facts, config);
  pp.RunTokens(tokens, tokens.empty() ? 0 : tokens.front().span.file_id, 0);
  Token eof;
  if (!tokens.empty() && tokens.back().kind == TokenKind::kEof) eof = tokens.back();
  return pp.Finish(std::move(eof));
}

std::optional<std::int64_t> EvalPpExpr(const TokenList& tokens, const MacroTable& macros,
                                       const CodeFacts* facts, Diagnostics& diags,
                                       std::vector<PredicateConsult>* trace) {
  Span where = tokens.empty() ? Span{} : tokens.front().span;
  return EvalCondition(tokens, macros, facts, diags, trace, "<expr>", where);
}

std::string RenderSource(const TokenList& tokens) {
  std::string out;
  const Token* prev = nullptr;  // previous significant token with no trivia since
  for (const Token& t : tokens) {
    if (t.kind == TokenKind::kEof) break;
    if (t.IsTrivia()) {
      out += t.bytes;
      prev = nullptr;
      continue;
    }
    if (prev) {
      bool adjacent = !prev->from_macro && !t.from_macro && prev->span.file_id == t.span.file_id &&
                      prev->span.byte_end == t.span.byte_start;
      if (!adjacent) out += ' ';
    }
    out += t.bytes;
    prev = &t;
  }
  return out;
}

}  // namespace atc
