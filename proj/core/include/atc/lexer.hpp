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
// Lexer for the @C dialect.
//
// Every byte of the input ends up in exactly one token: comments and
// whitespace are kept in the stream as trivia, so concatenating the `bytes`
// of all tokens reproduces the source. Rules that differ from ISO C:
//
//   * A block comment ends at the first `*/`, even one that sits inside
//     quotes. Block comments do not nest.
//   * A `//` comment always ends at the end of its physical line; a trailing
//     backslash does not continue it.
//   * Identifiers follow Unicode XID_Start/XID_Continue, compared by exact
//     code-point sequence.
//   * Integer literals accept `0b` binary and `_` digit separators.
//   * A run of three or more `+` (or `-`) is reported as ambiguous.

#ifndef ATC_LEXER_HPP_
#define ATC_LEXER_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "atc/diagnostic.hpp"

namespace atc {

enum class TokenKind : std::uint8_t {
  kIdentifier,
  kIntLiteral,
  kCharLiteral,
  kStringLiteral,
  kPunctuator,
  kKeyword,
  kHashDirective,
  kComment,
  kWhitespace,
  kUnknown,  // bytes that form no token; always accompanied by a diagnostic
  kEof,
};

std::string_view TokenKindName(TokenKind kind);

enum class CommentStyle : std::uint8_t { kBlock, kLine };

struct Token {
  TokenKind kind = TokenKind::kEof;
  // Raw lexeme, exactly the source slice covered by `span` for lexed tokens.
  std::string bytes;
  Span span;
  // Identifier name, keyword, punctuator spelling, directive name, or the
  // decoded bytes of a string literal (may contain NUL).
  std::string text;
  std::uint64_t value = 0;  // IntLiteral value, CharLiteral byte
  std::uint8_t base = 10;
  CommentStyle comment = CommentStyle::kBlock;
  bool splice = false;      // whitespace that is a backslash-newline
  bool from_macro = false;  // produced by macro expansion

  bool IsTrivia() const { return kind == TokenKind::kComment || kind == TokenKind::kWhitespace; }
  bool Is(TokenKind k, std::string_view t) const { return kind == k && text == t; }
  bool IsPunct(std::string_view p) const { return Is(TokenKind::kPunctuator, p); }
  bool IsKeyword(std::string_view k) const { return Is(TokenKind::kKeyword, k); }
  // Whitespace that ends a logical line (directive terminator).
  bool EndsLine() const;
};

using TokenList = std::vector<Token>;

struct LexConfig {
  FileId file_id = 0;
  Severity ambiguous_severity = Severity::kError;
};

struct LexResult {
  TokenList tokens;  // ends with Eof
  Diagnostics diagnostics;
};

bool IsKeyword(std::string_view word);

// Diagnoses a maximal run of one repeated `+` or `-` character. Runs of three
// or more are ambiguous; shorter runs lex by maximal munch.
std::optional<Diagnostic> CheckPunctAmbiguity(std::string_view run, const Span& span,
                                              Severity severity);

class Lexer {
 public:
  Lexer(std::string_view source, LexConfig config = {});

  // Next token including trivia. Returns Eof forever once exhausted.
  Token Next();

  // Individual scanners. Each expects the cursor at the opening characters
  // named in its precondition and leaves it just past the token.
  Token ScanBlockComment();  // at `/*`
  Token ScanLineComment();   // at `//`
  Token ScanNumber();        // at a decimal digit
  Token ScanString();        // at `"`
  Token ScanChar();          // at `'`

  std::size_t position() const { return pos_; }
  const Diagnostics& diagnostics() const { return diags_; }
  Diagnostics TakeDiagnostics() { return std::move(diags_); }

 private:
  struct Mark {
    std::size_t pos;
    std::uint32_t line;
    std::uint32_t column;
  };

  bool AtEnd() const { return pos_ >= src_.size(); }
  char Peek(std::size_t ahead = 0) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }
  std::size_t SpliceLength(std::size_t at) const;
  void Advance(std::size_t n);
  Mark Here() const { return {pos_, line_, column_}; }
  Span SpanFrom(const Mark& m) const;
  Token Make(TokenKind kind, const Mark& m) const;
  void Report(std::string_view code, const Span& span, std::string message,
              Severity severity = Severity::kError);

  Token ScanWhitespace();
  Token ScanIdentifierOrKeyword();
  Token ScanPunctuator();
  Token ScanDirective();
  Token ScanUnknown();
  // Decodes one escape sequence after the backslash; returns false on error.
  bool DecodeEscape(std::string& out);

  std::string_view src_;
  LexConfig config_;
  std::size_t pos_ = 0;
  std::uint32_t line_ = 1;
  std::uint32_t column_ = 1;
  bool at_line_start_ = true;
  Diagnostics diags_;
};

LexResult Lex(std::string_view source, const LexConfig& config = {});

// Printable rendering of raw bytes for dumps: C escapes for control bytes
// and backslash, UTF-8 sequences left intact, other high bytes as \xHH.
std::string EscapeBytes(std::string_view bytes);

// One token per line: KIND<TAB>line:col:start-end<TAB>escaped-lexeme.
std::string DumpTokens(const TokenList& tokens);

}  // namespace atc

#endif  // ATC_LEXER_HPP_
