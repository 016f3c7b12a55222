#!/usr/bin/env python3
# Copyright 2026 The atc Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Emits core/src/unicode_tables.cpp with XID_Start / XID_Continue ranges.

Python's str.isidentifier() is defined in terms of XID_Start (plus '_') and
XID_Continue, so it is used as the property source.
"""
import sys
import unicodedata


def ranges(pred):
    out, start = [], None
    for cp in range(0x110000):
        if 0xD800 <= cp <= 0xDFFF:
            ok = False
        else:
            ok = pred(cp)
        if ok and start is None:
            start = cp
        elif not ok and start is not None:
            out.append((start, cp - 1))
            start = None
    if start is not None:
        out.append((start, 0x10FFFF))
    return out


def is_start(cp):
    c = chr(cp)
    return c != "_" and c.isidentifier()


def is_continue(cp):
    return ("a" + chr(cp)).isidentifier()


def emit(name, rs):
    lines = [f"const CodePointRange {name}[] = {{"]
    for a, b in rs:
        lines.append(f"    {{0x{a:X}, 0x{b:X}}},")
    lines.append("};")
    return "\n".join(lines)


def main():
    header = f"""// Copyright 2026 The atc Authors
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

// Generated by scripts/gen_unicode_tables.py from Unicode {unicodedata.unidata_version}.
// Do not edit.

#include "atc/unicode.hpp"

#include <algorithm>
#include <iterator>

namespace atc::unicode {{
namespace {{

struct CodePointRange {{
  char32_t first;
  char32_t last;
}};
"""
    body = emit("kXidStart", ranges(is_start)) + "\n\n" + emit("kXidContinue", ranges(is_continue))
    footer = """

template <std::size_t N>
bool InTable(const CodePointRange (&table)[N], char32_t cp) {
  auto it = std::upper_bound(std::begin(table), std::end(table), cp,
                             [](char32_t c, const CodePointRange& r) { return c < r.first; });
  if (it == std::begin(table)) return false;
  --it;
  return cp <= it->last;
}

}  // namespace

bool IsXidStart(char32_t cp) { return InTable(kXidStart, cp); }

bool IsXidContinue(char32_t cp) { return InTable(kXidContinue, cp); }

}  // namespace atc::unicode
"""
    sys.stdout.write(header + "\n" + body + footer)


if __name__ == "__main__":
    main()
