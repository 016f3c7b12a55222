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

#ifndef ATC_SOURCE_HPP_
#define ATC_SOURCE_HPP_

#include <deque>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "atc/diagnostic.hpp"

namespace atc {

// Owns the bytes of every file that takes part in a compilation. Buffers
// never move once added, so string_views into them stay valid.
class SourceManager {
 public:
  FileId AddBuffer(std::string name, std::string bytes);

  // Reads `path` from disk; nullopt if it cannot be opened. A path that was
  // already loaded returns its existing id.
  std::optional<FileId> AddFile(const std::filesystem::path& path);

  std::string_view Bytes(FileId id) const { return files_.at(id).bytes; }
  const std::string& Name(FileId id) const { return files_.at(id).name; }
  std::size_t FileCount() const { return files_.size(); }

  // "name:line:col" for diagnostics.
  std::string Location(const Span& span) const;

 private:
  struct File {
    std::string name;
    std::string bytes;
  };
  std::deque<File> files_;
  std::map<std::string, FileId> by_path_;
};

// "file:line:col: severity: CODE: message".
std::string FormatDiagnostic(const SourceManager& sm, const Diagnostic& d, bool color = false);

}  // namespace atc

#endif  // ATC_SOURCE_HPP_
