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

#ifndef ATC_DIAGNOSTIC_HPP_
#define ATC_DIAGNOSTIC_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace atc {

using FileId = std::uint32_t;

// Half-open byte range [byte_start, byte_end) in one source file. Line and
// column are 1-based; the column counts code points, not bytes.
struct Span {
  FileId file_id = 0;
  std::uint32_t byte_start = 0;
  std::uint32_t byte_end = 0;
  std::uint32_t line = 1;
  std::uint32_t column = 1;

  bool Contains(const Span& inner) const {
    return file_id == inner.file_id && byte_start <= inner.byte_start &&
           inner.byte_end <= byte_end;
  }

  friend bool operator==(const Span&, const Span&) = default;
};

// Smallest span covering both; `a` wins when the files differ.
Span Cover(const Span& a, const Span& b);

enum class Severity { kNote, kWarning, kError };

std::string_view SeverityName(Severity s);

// Stable diagnostic codes. Tests assert on these, never on message text.
namespace diag {
// lexer
inline constexpr std::string_view kUnterminatedBlockComment = "E_UNTERMINATED_BLOCK_COMMENT";
inline constexpr std::string_view kUnterminatedString = "E_UNTERMINATED_STRING";
inline constexpr std::string_view kAmbiguousPunct = "E_AMBIGUOUS_PUNCT";
inline constexpr std::string_view kBadLiteral = "E_BAD_LITERAL";
inline constexpr std::string_view kBadEscape = "E_BAD_ESCAPE";
inline constexpr std::string_view kBadEncoding = "E_BAD_ENCODING";
inline constexpr std::string_view kUnexpectedChar = "E_UNEXPECTED_CHAR";
// preprocessor
inline constexpr std::string_view kPpUnterminatedCond = "E_PP_UNTERMINATED_COND";
inline constexpr std::string_view kPpStrayElseEndif = "E_PP_STRAY_ELSE_ENDIF";
inline constexpr std::string_view kPpRedefined = "E_PP_REDEFINED";
inline constexpr std::string_view kPpWhileLimit = "E_PP_WHILE_LIMIT";
inline constexpr std::string_view kPpBadExpr = "E_PP_BAD_EXPR";
inline constexpr std::string_view kPpFixpointDiverge = "E_PP_FIXPOINT_DIVERGE";
inline constexpr std::string_view kPpBadDirective = "E_PP_BAD_DIRECTIVE";
inline constexpr std::string_view kPpInclude = "E_PP_INCLUDE";
inline constexpr std::string_view kPpMacroArgs = "E_PP_MACRO_ARGS";
inline constexpr std::string_view kPpBadPaste = "E_PP_BAD_PASTE";
inline constexpr std::string_view kPpError = "E_PP_ERROR";
inline constexpr std::string_view kPpPragmaIgnored = "N_PRAGMA_IGNORED";
// parser and binder
inline constexpr std::string_view kParse = "E_PARSE";
inline constexpr std::string_view kFlexNotLast = "E_FLEX_NOT_LAST";
inline constexpr std::string_view kUndeclared = "E_UNDECLARED";
inline constexpr std::string_view kRedefinition = "E_REDEFINITION";
inline constexpr std::string_view kUnresolvedLabel = "E_UNRESOLVED_LABEL";
inline constexpr std::string_view kGotoIntoScope = "E_GOTO_INTO_SCOPE";
inline constexpr std::string_view kVolatileIgnored = "N_VOLATILE_IGNORED";
// evaluator
inline constexpr std::string_view kEscapedNested = "E_ESCAPED_NESTED";
inline constexpr std::string_view kOobIndex = "E_OOB_INDEX";
inline constexpr std::string_view kDivZero = "E_DIV_ZERO";
inline constexpr std::string_view kSizeofUnsized = "E_SIZEOF_UNSIZED";
inline constexpr std::string_view kStepLimit = "E_STEP_LIMIT";
inline constexpr std::string_view kNoMain = "E_NO_MAIN";
inline constexpr std::string_view kBadFormat = "E_BAD_FORMAT";
inline constexpr std::string_view kType = "E_TYPE";
}  // namespace diag

// Uniform error currency of every stage.
struct Diagnostic {
  std::string code;
  Severity severity = Severity::kError;
  Span span;
  std::string message;
};

using Diagnostics = std::vector<Diagnostic>;

bool HasErrors(const Diagnostics& diags);

}  // namespace atc

#endif  // ATC_DIAGNOSTIC_HPP_
