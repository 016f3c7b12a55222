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

#ifndef ATC_UNICODE_HPP_
#define ATC_UNICODE_HPP_

#include <cstddef>
#include <optional>
#include <string_view>

namespace atc::unicode {

bool IsXidStart(char32_t cp);
bool IsXidContinue(char32_t cp);

struct Decoded {
  char32_t code_point;
  std::size_t length;  // bytes consumed, 1..4
};

// Strict UTF-8 decode of the sequence at the front of `bytes`. Rejects
// overlong forms, surrogates and values above U+10FFFF.
std::optional<Decoded> DecodeUtf8(std::string_view bytes);

}  // namespace atc::unicode

#endif  // ATC_UNICODE_HPP_
