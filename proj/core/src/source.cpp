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

#include "atc/source.hpp"

#include <fstream>
#include <iterator>
#include <sstream>

namespace atc {

FileId SourceManager::AddBuffer(std::string name, std::string bytes) {
  files_.push_back(File{std::move(name), std::move(bytes)});
  return static_cast<FileId>(files_.size() - 1);
}

std::optional<FileId> SourceManager::AddFile(const std::filesystem::path& path) {
  std::error_code ec;
  auto key = std::filesystem::weakly_canonical(path, ec);
  std::string key_str = ec ? path.string() : key.string();
  if (auto it = by_path_.find(key_str); it != by_path_.end()) return it->second;
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  FileId id = AddBuffer(path.string(), std::move(bytes));
  by_path_.emplace(std::move(key_str), id);
  return id;
}

std::string SourceManager::Location(const Span& span) const {
  std::ostringstream out;
  out << (span.file_id < files_.size() ? files_[span.file_id].name : std::string("<unknown>"))
      << ':' << span.line << ':' << span.column;
  return out.str();
}

std::string FormatDiagnostic(const SourceManager& sm, const Diagnostic& d, bool color) {
  std::string sev(SeverityName(d.severity));
  if (color) {
    const char* c = d.severity == Severity::kError     ? "\033[1;31m"
                    : d.severity == Severity::kWarning ? "\033[1;35m"
                                                       : "\033[1;36m";
    sev = c + sev + "\033[0m";
  }
  return sm.Location(d.span) + ": " + sev + ": " + d.code + ": " + d.message;
}

}  // namespace atc
