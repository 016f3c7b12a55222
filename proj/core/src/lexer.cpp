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

#include "atc/lexer.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <sstream>

#include "atc/unicode.hpp"

namespace atc {
namespace {

constexpr std::array<std::string_view, 44> kKeywords = {
    "auto",     "break",    "case",     "char",          "const",     "continue",
    "default",  "do",       "double",   "else",          "enum",      "extern",
    "float",    "for",      "goto",     "if",            "inline",    "int",
    "long",     "register", "restrict", "return",        "short",     "signed",
    "sizeof",   "static",   "struct",   "switch",        "typedef",   "union",
    "unsigned", "void",     "volatile", "while",         "_Alignas",  "_Alignof",
    "_Atomic",  "_Bool",    "_Complex", "_Generic",      "_Imaginary", "_Noreturn",
    "_Static_assert", "_Thread_local"};

// Longest first within each leading character is not required; the scanner
// tries lengths 3, 2, 1 in turn.
constexpr std::array<std::string_view, 48> kPunctuators = {
    "...", "<<=", ">>=", "->", "++", "--", "<<", ">>", "<=", ">=", "==", "!=",
    "&&",  "||",  "*=",  "/=", "%=", "+=", "-=", "&=", "^=", "|=", "##", "[",
    "]",   "(",   ")",   "{",  "}",  ".",  "&",  "*",  "+",  "-",  "~",  "!",
    "/",   "%",   "<",   ">",  "^",  "|",  "?",  ":",  ";",  "=",  ",",  "#"};

bool IsPunctuator(std::string_view cand) {
  for (auto p : kPunctuators) {
    if (p.size() == cand.size() && p[0] == cand[0] && p == cand) return true;
  }
  return false;
}

bool IsDigit(char c) { return c >= '0' && c <= '9'; }
bool IsHexDigit(char c) {
  return IsDigit(c) || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F');
}
bool IsAsciiAlnum(char c) {
  return IsDigit(c) || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}
bool IsHorizontalSpace(char c) { return c == ' ' || c == '\t' || c == '\v' || c == '\f'; }
bool IsSpace(char c) { return IsHorizontalSpace(c) || c == '\n' || c == '\r'; }

int DigitValue(char c) {
  if (IsDigit(c)) return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return 99;
}

// Strips a C integer suffix (u, l, ll and combinations) from the end.
std::string_view StripIntSuffix(std::string_view s) {
  static constexpr std::array<std::string_view, 12> kSuffixes = {
      "ull", "ULL", "llu", "LLU", "ul", "UL", "lu", "LU", "ll", "LL", "u", "U"};
  for (auto suf : kSuffixes) {
    if (s.size() > suf.size() && s.substr(s.size() - suf.size()) == suf)
      return s.substr(0, s.size() - suf.size());
  }
  if (s.size() > 1 && (s.back() == 'l' || s.back() == 'L')) return s.substr(0, s.size() - 1);
  return s;
}

}  // namespace

std::string_view TokenKindName(TokenKind kind) {
  switch (kind) {
    case TokenKind::kIdentifier:
      return "Identifier";
    case TokenKind::kIntLiteral:
      return "IntLiteral";
    case TokenKind::kCharLiteral:
      return "CharLiteral";
    case TokenKind::kStringLiteral:
      return "StringLiteral";
    case TokenKind::kPunctuator:
      return "Punctuator";
    case TokenKind::kKeyword:
      return "Keyword";
    case TokenKind::kHashDirective:
      return "HashDirective";
    case TokenKind::kComment:
      return "CommentTrivia";
    case TokenKind::kWhitespace:
      return "WhitespaceTrivia";
    case TokenKind::kUnknown:
      return "Unknown";
    case TokenKind::kEof:
      return "Eof";
  }
  return "Unknown";
}

bool Token::EndsLine() const {
  return kind == TokenKind::kWhitespace && !splice && bytes.find('\n') != std::string::npos;
}

bool IsKeyword(std::string_view word) {
  return std::find(kKeywords.begin(), kKeywords.end(), word) != kKeywords.end();
}

std::optional<Diagnostic> CheckPunctAmbiguity(std::string_view run, const Span& span,
                                              Severity severity) {
  if (run.size() < 3) return std::nullopt;
  std::string spelled(run);
  return Diagnostic{std::string(diag::kAmbiguousPunct), severity, span,
                    "ambiguous operator sequence '" + spelled +
                        "'; separate the operators with a space"};
}

Lexer::Lexer(std::string_view source, LexConfig config) : src_(source), config_(config) {}

std::size_t Lexer::SpliceLength(std::size_t at) const {
  if (at < src_.size() && src_[at] == '\\') {
    if (at + 1 < src_.size() && src_[at + 1] == '\n') return 2;
    if (at + 2 < src_.size() && src_[at + 1] == '\r' && src_[at + 2] == '\n') return 3;
  }
  return 0;
}

void Lexer::Advance(std::size_t n) {
  for (std::size_t end = std::min(pos_ + n, src_.size()); pos_ < end; ++pos_) {
    auto b = static_cast<unsigned char>(src_[pos_]);
    if (b == '\n') {
      ++line_;
      column_ = 1;
    } else if ((b & 0xC0) != 0x80) {
      ++column_;
    }
  }
}

Span Lexer::SpanFrom(const Mark& m) const {
  return Span{config_.file_id, static_cast<std::uint32_t>(m.pos), static_cast<std::uint32_t>(pos_),
              m.line, m.column};
}

Token Lexer::Make(TokenKind kind, const Mark& m) const {
  Token t;
  t.kind = kind;
  t.span = SpanFrom(m);
  t.bytes = std::string(src_.substr(m.pos, pos_ - m.pos));
  return t;
}

void Lexer::Report(std::string_view code, const Span& span, std::string message,
                   Severity severity) {
  diags_.push_back(Diagnostic{std::string(code), severity, span, std::move(message)});
}

Token Lexer::Next() {
  if (AtEnd()) {
    Token eof = Make(TokenKind::kEof, Here());
    return eof;
  }
  char c = Peek();
  Token tok;
  if (IsSpace(c) || SpliceLength(pos_) != 0) {
    tok = ScanWhitespace();
    if (tok.EndsLine()) at_line_start_ = true;
    return tok;
  }
  if (c == '/' && Peek(1) == '*') return ScanBlockComment();
  if (c == '/' && Peek(1) == '/') return ScanLineComment();

  bool line_start = at_line_start_;
  at_line_start_ = false;
  if (c == '#' && line_start) return ScanDirective();
  if (IsDigit(c)) return ScanNumber();
  if (c == '"') return ScanString();
  if (c == '\'') return ScanChar();
  if (c == '_' || static_cast<unsigned char>(c) >= 0x80 || IsAsciiAlnum(c)) {
    auto d = unicode::DecodeUtf8(src_.substr(pos_));
    if (d && (d->code_point == '_' || unicode::IsXidStart(d->code_point)))
      return ScanIdentifierOrKeyword();
    return ScanUnknown();
  }
  return ScanPunctuator();
}

Token Lexer::ScanWhitespace() {
  Mark m = Here();
  if (std::size_t n = SpliceLength(pos_)) {
    Advance(n);
    Token t = Make(TokenKind::kWhitespace, m);
    t.splice = true;
    return t;
  }
  while (!AtEnd() && IsSpace(Peek())) Advance(1);
  return Make(TokenKind::kWhitespace, m);
}

Token Lexer::ScanBlockComment() {
  Mark m = Here();
  Advance(2);
  std::size_t close = src_.find("*/", pos_);
  if (close == std::string_view::npos) {
    Advance(src_.size() - pos_);
    Token t = Make(TokenKind::kComment, m);
    Report(diag::kUnterminatedBlockComment, t.span, "unterminated block comment");
    return t;
  }
  Advance(close + 2 - pos_);
  Token t = Make(TokenKind::kComment, m);
  t.comment = CommentStyle::kBlock;
  return t;
}

Token Lexer::ScanLineComment() {
  Mark m = Here();
  std::size_t nl = src_.find('\n', pos_);
  std::size_t end = nl == std::string_view::npos ? src_.size() : nl;
  // A CR belonging to a CRLF line ending stays with the whitespace.
  if (end > pos_ && end < src_.size() && src_[end - 1] == '\r') --end;
  Advance(end - pos_);
  Token t = Make(TokenKind::kComment, m);
  t.comment = CommentStyle::kLine;
  return t;
}

Token Lexer::ScanDirective() {
  Mark m = Here();
  Advance(1);
  std::size_t look = pos_;
  while (look < src_.size() && IsHorizontalSpace(src_[look])) ++look;
  std::string name;
  std::size_t p = look;
  while (p < src_.size()) {
    auto d = unicode::DecodeUtf8(src_.substr(p));
    if (!d) break;
    bool ok = name.empty() ? (d->code_point == '_' || unicode::IsXidStart(d->code_point))
                           : unicode::IsXidContinue(d->code_point);
    if (!ok) break;
    name.append(src_.substr(p, d->length));
    p += d->length;
  }
  if (!name.empty()) Advance(p - pos_);
  Token t = Make(TokenKind::kHashDirective, m);
  t.text = std::move(name);
  return t;
}

Token Lexer::ScanIdentifierOrKeyword() {
  Mark m = Here();
  bool first = true;
  while (!AtEnd()) {
    char c = Peek();
    if (static_cast<unsigned char>(c) < 0x80) {
      if (!(c == '_' || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (!first && IsDigit(c)))) break;
      Advance(1);
      first = false;
      continue;
    }
    auto d = unicode::DecodeUtf8(src_.substr(pos_));
    if (!d) break;
    bool ok = first ? (d->code_point == '_' || unicode::IsXidStart(d->code_point))
                    : unicode::IsXidContinue(d->code_point);
    if (!ok) break;
    Advance(d->length);
    first = false;
  }
  Token t = Make(TokenKind::kIdentifier, m);
  t.text = t.bytes;
  if (IsKeyword(t.text)) t.kind = TokenKind::kKeyword;
  return t;
}

Token Lexer::ScanNumber() {
  Mark m = Here();
  // pp-number style: take the whole alphanumeric run, then validate it.
  while (!AtEnd() && (IsAsciiAlnum(Peek()) || Peek() == '_' || Peek() == '.')) Advance(1);
  Token t = Make(TokenKind::kIntLiteral, m);
  t.text = t.bytes;

  auto bad = [&](const std::string& why) {
    Report(diag::kBadLiteral, t.span, "invalid integer literal '" + t.bytes + "': " + why);
    return t;
  };
  if (t.bytes.find('.') != std::string::npos) return bad("floating-point literals are not supported");

  std::string_view body = StripIntSuffix(t.bytes);
  std::size_t prefix = 0;
  int base = 10;
  if (body.size() >= 2 && body[0] == '0' && (body[1] == 'x' || body[1] == 'X')) {
    base = 16, prefix = 2;
  } else if (body.size() >= 2 && body[0] == '0' && (body[1] == 'b' || body[1] == 'B')) {
    base = 2, prefix = 2;
  } else if (body.size() >= 2 && body[0] == '0') {
    base = 8, prefix = 1;
  }
  t.base = static_cast<std::uint8_t>(base);
  std::string_view digits = body.substr(prefix);
  if (digits.empty()) return bad("missing digits");
  if (digits.front() == '_') return bad(prefix ? "separator next to the base prefix" : "leading separator");
  if (digits.back() == '_') return bad("trailing separator");
  if (digits.find("__") != std::string_view::npos) return bad("doubled separator");

  std::uint64_t value = 0;
  for (char c : digits) {
    if (c == '_') continue;
    int dv = DigitValue(c);
    if (dv >= base) return bad(std::string("digit '") + c + "' out of range for base " + std::to_string(base));
    if (value > (UINT64_MAX - static_cast<std::uint64_t>(dv)) / static_cast<std::uint64_t>(base))
      return bad("value does not fit in 64 bits");
    value = value * static_cast<std::uint64_t>(base) + static_cast<std::uint64_t>(dv);
  }
  t.value = value;
  return t;
}

bool Lexer::DecodeEscape(std::string& out) {
  // Cursor is just past the backslash.
  char c = Peek();
  switch (c) {
    case 'n': out += '\n'; Advance(1); return true;
    case 't': out += '\t'; Advance(1); return true;
    case 'r': out += '\r'; Advance(1); return true;
    case 'a': out += '\a'; Advance(1); return true;
    case 'b': out += '\b'; Advance(1); return true;
    case 'f': out += '\f'; Advance(1); return true;
    case 'v': out += '\v'; Advance(1); return true;
    case '\\': out += '\\'; Advance(1); return true;
    case '"': out += '"'; Advance(1); return true;
    case '\'': out += '\''; Advance(1); return true;
    case '?': out += '?'; Advance(1); return true;
    case 'x': {
      Advance(1);
      if (!IsHexDigit(Peek())) return false;
      unsigned v = 0;
      bool overflow = false;
      while (IsHexDigit(Peek())) {
        v = v * 16 + static_cast<unsigned>(DigitValue(Peek()));
        if (v > 0xFF) overflow = true;
        Advance(1);
      }
      if (overflow) return false;
      out += static_cast<char>(v);
      return true;
    }
    default:
      break;
  }
  if (c >= '0' && c <= '7') {
    unsigned v = 0;
    for (int i = 0; i < 3 && Peek() >= '0' && Peek() <= '7'; ++i) {
      v = v * 8 + static_cast<unsigned>(Peek() - '0');
      Advance(1);
    }
    if (v > 0xFF) return false;
    out += static_cast<char>(v);
    return true;
  }
  if (!AtEnd() && c != '\n') {
    auto d = unicode::DecodeUtf8(src_.substr(pos_));
    Advance(d ? d->length : 1);
  }
  return false;
}

Token Lexer::ScanString() {
  Mark m = Here();
  Advance(1);
  std::string decoded;
  bool terminated = false;
  std::vector<Span> bad_escapes;
  while (!AtEnd()) {
    if (std::size_t n = SpliceLength(pos_)) {
      Advance(n);
      continue;
    }
    char c = Peek();
    if (c == '"') {
      Advance(1);
      terminated = true;
      break;
    }
    if (c == '\n') break;
    if (c == '\\') {
      Mark esc = Here();
      Advance(1);
      if (!DecodeEscape(decoded)) bad_escapes.push_back(SpanFrom(esc));
      continue;
    }
    decoded += c;
    Advance(1);
  }
  Token t = Make(TokenKind::kStringLiteral, m);
  t.text = std::move(decoded);
  for (const Span& s : bad_escapes) Report(diag::kBadEscape, s, "invalid escape sequence");
  if (!terminated) Report(diag::kUnterminatedString, t.span, "unterminated string literal");
  return t;
}

Token Lexer::ScanChar() {
  Mark m = Here();
  Advance(1);
  std::string decoded;
  bool terminated = false;
  bool escape_ok = true;
  while (!AtEnd()) {
    if (std::size_t n = SpliceLength(pos_)) {
      Advance(n);
      continue;
    }
    char c = Peek();
    if (c == '\'') {
      Advance(1);
      terminated = true;
      break;
    }
    if (c == '\n') break;
    if (c == '\\') {
      Advance(1);
      escape_ok = DecodeEscape(decoded) && escape_ok;
      continue;
    }
    decoded += c;
    Advance(1);
  }
  Token t = Make(TokenKind::kCharLiteral, m);
  if (!terminated) {
    Report(diag::kBadLiteral, t.span, "unterminated character literal");
  } else if (!escape_ok) {
    Report(diag::kBadEscape, t.span, "invalid escape sequence");
  } else if (decoded.size() != 1) {
    Report(diag::kBadLiteral, t.span, "character literal must contain exactly one byte");
  } else {
    t.value = static_cast<unsigned char>(decoded[0]);
  }
  t.text = std::move(decoded);
  return t;
}

Token Lexer::ScanPunctuator() {
  Mark m = Here();
  char c = Peek();
  if ((c == '+' || c == '-') && (pos_ == 0 || src_[pos_ - 1] != c)) {
    std::size_t run = 0;
    while (pos_ + run < src_.size() && src_[pos_ + run] == c) ++run;
    Span run_span{config_.file_id, static_cast<std::uint32_t>(pos_),
                  static_cast<std::uint32_t>(pos_ + run), line_, column_};
    if (auto d = CheckPunctAmbiguity(src_.substr(pos_, run), run_span, config_.ambiguous_severity))
      diags_.push_back(*d);
  }
  for (std::size_t len = 3; len >= 1; --len) {
    if (pos_ + len > src_.size()) continue;
    std::string_view cand = src_.substr(pos_, len);
    if (IsPunctuator(cand)) {
      Advance(len);
      Token t = Make(TokenKind::kPunctuator, m);
      t.text = t.bytes;
      return t;
    }
  }
  return ScanUnknown();
}

Token Lexer::ScanUnknown() {
  Mark m = Here();
  auto d = unicode::DecodeUtf8(src_.substr(pos_));
  if (!d) {
    Advance(1);
    Token t = Make(TokenKind::kUnknown, m);
    Report(diag::kBadEncoding, t.span, "invalid UTF-8 byte outside a literal");
    return t;
  }
  Advance(d->length);
  Token t = Make(TokenKind::kUnknown, m);
  Report(diag::kUnexpectedChar, t.span, "unexpected character '" + EscapeBytes(t.bytes) + "'");
  return t;
}

LexResult Lex(std::string_view source, const LexConfig& config) {
  Lexer lexer(source, config);
  LexResult out;
  out.tokens.reserve(source.size() / 3 + 1);
  while (true) {
    Token t = lexer.Next();
    bool eof = t.kind == TokenKind::kEof;
    out.tokens.push_back(std::move(t));
    if (eof) break;
  }
  out.diagnostics = lexer.TakeDiagnostics();
  return out;
}

std::string EscapeBytes(std::string_view bytes) {
  std::string out;
  for (std::size_t i = 0; i < bytes.size();) {
    auto b = static_cast<unsigned char>(bytes[i]);
    if (b >= 0x80) {
      auto d = unicode::DecodeUtf8(bytes.substr(i));
      if (d) {
        out.append(bytes.substr(i, d->length));
        i += d->length;
        continue;
      }
    }
    switch (b) {
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      case '\\': out += "\\\\"; break;
      default:
        if (b < 0x20 || b >= 0x7F) {
          char buf[5];
          std::snprintf(buf, sizeof buf, "\\x%02X", b);
          out += buf;
        } else {
          out += static_cast<char>(b);
        }
    }
    ++i;
  }
  return out;
}

std::string DumpTokens(const TokenList& tokens) {
  std::ostringstream out;
  for (const Token& t : tokens) {
    out << TokenKindName(t.kind) << '\t' << t.span.line << ':' << t.span.column << ':'
        << t.span.byte_start << '-' << t.span.byte_end << '\t' << EscapeBytes(t.bytes) << '\n';
  }
  return out.str();
}

}  // namespace atc
