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


#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <iterator>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "driver.hpp"

namespace {

using namespace atc::driver;

void WriteTo(std::FILE* f, std::string_view s) {
  std::fwrite(s.data(), 1, s.size(), f);
  std::fflush(f);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app("atc: lexer, preprocessor, parser and evaluator for the @C dialect", "atc");
  app.require_subcommand(1);
  app.fallthrough();
  Options options;
  AddOptions(app, options);

  std::vector<std::string> inputs;
  std::string corpus;
  struct Entry {
    const char* name;
    const char* help;
    bool needs_input;
  };
  const Entry entries[] = {
      {"run", "Compile and evaluate a program", true},
      {"pp", "Print the preprocessed source after the fixpoint", true},
      {"lex", "Print the token stream, one token per line", true},
      {"ast", "Print the syntax tree as S-expressions", true},
      {"check", "Report diagnostics only", true},
  };
  for (const auto& e : entries) {
    auto* sub = app.add_subcommand(e.name, e.help);
    sub->add_option("inputs", inputs, "Source files, or - for standard input")->required(e.needs_input);
  }
  auto* test = app.add_subcommand("test", "Run a golden corpus directory");
  test->add_option("dir", corpus, "Corpus directory")->required()->check(CLI::ExistingDirectory);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (const char* color = std::getenv("ATC_COLOR")) options.color = std::string(color) == "1";

  if (test->parsed()) {
    CorpusSummary summary = RunCorpus(corpus, options);
    WriteTo(stdout, summary.Render());
    return summary.failed == 0 ? kExitOk : kExitCompileError;
  }

  Streams streams;
  streams.out = [](std::string_view s) { WriteTo(stdout, s); };
  streams.err = [](std::string_view s) { WriteTo(stderr, s); };
  streams.read_stdin = []() -> std::optional<std::string> {
    std::string text(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
    if (std::cin.bad()) return std::nullopt;
    return text;
  };
  auto* sub = app.get_subcommands().front();
  auto command = ParseCommand(sub->get_name());
  return Execute(*command, inputs, options, streams);
}
