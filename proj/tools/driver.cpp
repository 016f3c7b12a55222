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


#include "driver.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <map>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "atc/fixpoint.hpp"
#include "atc/lexer.hpp"
#include "atc/preprocessor.hpp"
#include "atc/printer.hpp"
#include "atc/source.hpp"

namespace atc::driver {
namespace {

namespace fs = std::filesystem;

std::optional<std::string> ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

PpConfig MakePpConfig(const Options& o) {
  PpConfig c;
  c.max_fixpoint_iters = o.max_pp_iters;
  c.max_while_iters = o.max_while_iters;
  c.ambiguous_severity = o.ambiguous;
  for (const auto& d : o.include_dirs) c.include_dirs.emplace_back(d);
  return c;
}

class Session {
 public:
  Session(const Options& options, const Streams& streams, std::vector<std::string>* codes)
      : options_(options), streams_(streams), codes_(codes) {}

  std::optional<FileId> Load(const std::string& input) {
    if (input == "-") {
      auto text = streams_.read_stdin ? streams_.read_stdin() : std::nullopt;
      if (!text) {
        Err("atc: cannot read standard input\n");
        return std::nullopt;
      }
      return sm_.AddBuffer("<stdin>", std::move(*text));
    }
    auto id = sm_.AddFile(input);
    if (!id) Err("atc: cannot open '" + input + "'\n");
    return id;
  }

  void Report(const Diagnostics& diags) {
    for (const auto& d : diags) {
      Err(FormatDiagnostic(sm_, d, options_.color) + "\n");
      if (codes_) codes_->push_back(d.code);
    }
  }

  void Trace(const CompileResult& r) {
    if (!options_.pp_trace) return;
    for (const auto& t : r.trace) {
      Err(std::to_string(t.iteration) + "\t" + std::string(PredicateName(t.consult.predicate)) + "\t" +
          t.consult.identifier + "\t" + (t.consult.value ? "true" : "false") + "\n");
    }
  }

  int Lex(FileId file) {
    LexConfig config;
    config.file_id = file;
    config.ambiguous_severity = options_.ambiguous;
    LexResult r = atc::Lex(sm_.Bytes(file), config);
    Out(DumpTokens(r.tokens));
    Report(r.diagnostics);
    return HasErrors(r.diagnostics) ? kExitCompileError : kExitOk;
  }

  CompileResult Compile(FileId file) {
    CompileResult r = FixpointCompile(sm_, file, MakePpConfig(options_));
    Trace(r);
    Report(r.diagnostics);
    return r;
  }

  int Run(FileId file) {
    CompileResult r = Compile(file);
    if (HasErrors(r.diagnostics)) return kExitCompileError;
    EvalConfig config;
    config.arg_order = options_.arg_order;
    config.step_limit = options_.step_limit;
    config.output = streams_.out;
    RunResult run = atc::Run(*r.program, config);
    if (run.error) {
      Err(FormatRuntimeError(sm_, *run.error) + "\n");
      if (codes_) codes_->push_back(run.error->code);
    }
    return run.exit_status;
  }

  void Out(std::string_view s) {
    if (streams_.out) streams_.out(s);
  }
  void Err(std::string_view s) {
    if (streams_.err) streams_.err(s);
  }

 private:
  const Options& options_;
  const Streams& streams_;
  std::vector<std::string>* codes_;
  SourceManager sm_;
};

std::string Hex(unsigned char c) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "0x%02X", c);
  return buf;
}

std::vector<std::string> SplitLines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    lines.push_back(line.substr(first, line.find_last_not_of(" \t") - first + 1));
  }
  return lines;
}

std::string Join(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : ",") + x;
  return "[" + s + "]";
}

CaseResult RunCase(const fs::path& source, const Options& base) {
  CaseResult result;
  result.name = source.filename().string();
  fs::path stem = source;
  stem.replace_extension();
  auto expect = ReadFile(fs::path(stem.string() + ".expect"));
  if (!expect) {
    result.verdict = Verdict::kError;
    result.detail = "missing .expect";
    return result;
  }
  Options options = base;
  if (auto flags = ReadFile(fs::path(stem.string() + ".flags"))) {
    if (auto error = ParseFlags(*flags, options)) {
      result.verdict = Verdict::kError;
      result.detail = "bad .flags: " + *error;
      return result;
    }
  }
  int want_status = 0;
  if (auto status = ReadFile(fs::path(stem.string() + ".status"))) {
    try {
      want_status = std::stoi(*status);
    } catch (const std::exception&) {
      result.verdict = Verdict::kError;
      result.detail = "bad .status";
      return result;
    }
  }
  std::optional<std::vector<std::string>> want_codes;
  if (auto diag = ReadFile(fs::path(stem.string() + ".diag"))) want_codes = SplitLines(*diag);

  std::string out, err;
  Streams streams;
  streams.out = [&out](std::string_view s) { out.append(s); };
  streams.err = [&err](std::string_view s) { err.append(s); };
  std::vector<std::string> codes;
  int status = Execute(Command::kRun, {source.string()}, options, streams, &codes);

  if (auto at = FirstDifference(*expect, out)) {
    result.verdict = Verdict::kFail;
    result.detail = "stdout differs at byte " + std::to_string(*at) + " (expected " +
                    (*at < expect->size() ? Hex(static_cast<unsigned char>((*expect)[*at])) : "EOF") + ", got " +
                    (*at < out.size() ? Hex(static_cast<unsigned char>(out[*at])) : "EOF") + ")";
    return result;
  }
  if (status != want_status) {
    result.verdict = Verdict::kFail;
    result.detail = "exit status " + std::to_string(status) + ", expected " + std::to_string(want_status);
    return result;
  }
  if (want_codes && *want_codes != codes) {
    result.verdict = Verdict::kFail;
    result.detail = "diagnostics " + Join(codes) + ", expected " + Join(*want_codes);
    return result;
  }
  result.detail = std::to_string(out.size()) + " bytes, status " + std::to_string(status);
  return result;
}

}  // namespace

void AddOptions(CLI::App& app, Options& o) {
  static const std::map<std::string, ArgOrder> kOrders = {{"left", ArgOrder::kLeftToRight},
                                                          {"right", ArgOrder::kRightToLeft}};
  static const std::map<std::string, Severity> kSeverities = {{"error", Severity::kError},
                                                              {"warn", Severity::kWarning}};
  app.add_option("--argeval", o.arg_order, "Argument evaluation order")
      ->transform(CLI::CheckedTransformer(kOrders, CLI::ignore_case));
  app.add_option("--ambiguous", o.ambiguous, "Severity of ambiguous +/- runs")
      ->transform(CLI::CheckedTransformer(kSeverities, CLI::ignore_case));
  app.add_option("--max-pp-iters", o.max_pp_iters, "Fixpoint iteration limit")->check(CLI::PositiveNumber);
  app.add_option("--max-while-iters", o.max_while_iters, "#while iteration limit")->check(CLI::PositiveNumber);
  app.add_flag("--pp-trace", o.pp_trace, "Print predicate consultations to stderr");
  app.add_option("-I", o.include_dirs, "Include search directory")->allow_extra_args(false);
  app.add_option("--step-limit", o.step_limit, "Evaluation step limit")->check(CLI::PositiveNumber);
}

std::optional<std::string> ParseFlags(const std::string& text, Options& options) {
  CLI::App app("flags");
  AddOptions(app, options);
  std::string line = text;
  std::replace(line.begin(), line.end(), '\n', ' ');
  std::replace(line.begin(), line.end(), '\r', ' ');
  try {
    app.parse(line, false);
  } catch (const CLI::ParseError& e) {
    return std::string(e.what());
  }
  return std::nullopt;
}

std::optional<Command> ParseCommand(std::string_view name) {
  if (name == "run") return Command::kRun;
  if (name == "pp") return Command::kPp;
  if (name == "lex") return Command::kLex;
  if (name == "ast") return Command::kAst;
  if (name == "check") return Command::kCheck;
  return std::nullopt;
}

int Execute(Command command, const std::vector<std::string>& inputs, const Options& options,
            const Streams& streams, std::vector<std::string>* codes) {
  Session session(options, streams, codes);
  int status = kExitOk;
  for (const auto& input : inputs) {
    auto file = session.Load(input);
    if (!file) return kExitUsage;
    switch (command) {
      case Command::kLex:
        status = std::max(status, session.Lex(*file));
        break;
      case Command::kPp: {
        CompileResult r = session.Compile(*file);
        session.Out(RenderSource(r.tokens));
        if (HasErrors(r.diagnostics)) status = kExitCompileError;
        break;
      }
      case Command::kAst: {
        CompileResult r = session.Compile(*file);
        session.Out(DumpAst(*r.program->unit));
        if (HasErrors(r.diagnostics)) status = kExitCompileError;
        break;
      }
      case Command::kCheck: {
        CompileResult r = session.Compile(*file);
        if (HasErrors(r.diagnostics)) status = kExitCompileError;
        break;
      }
      case Command::kRun:
        status = session.Run(*file);
        if (status != kExitOk) return status;
        break;
    }
  }
  return status;
}

std::string_view VerdictName(Verdict v) {
  switch (v) {
    case Verdict::kPass: return "PASS";
    case Verdict::kFail: return "FAIL";
    case Verdict::kError: return "ERROR";
  }
  return "?";
}

std::string CorpusSummary::Render() const {
  std::string s;
  for (const auto& c : cases) {
    s += std::string(VerdictName(c.verdict)) + "\t" + c.name + "\t" + c.detail + "\n";
  }
  s += std::to_string(passed) + " passed, " + std::to_string(failed) + " failed\n";
  return s;
}

CorpusSummary RunCorpus(const fs::path& dir, const Options& base, int jobs) {
  std::vector<fs::path> sources;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(dir, ec)) {
    if (!entry.is_regular_file()) continue;
    auto ext = entry.path().extension();
    if (ext == ".atc" || ext == ".c") sources.push_back(entry.path());
  }
  std::sort(sources.begin(), sources.end(),
            [](const fs::path& a, const fs::path& b) { return a.filename() < b.filename(); });

  CorpusSummary summary;
  summary.cases.resize(sources.size());
  if (jobs <= 0) jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  jobs = std::min<int>(jobs, static_cast<int>(std::max<std::size_t>(sources.size(), 1)));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < sources.size(); i = next++) summary.cases[i] = RunCase(sources[i], base);
  };
  std::vector<std::thread> pool;
  for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  for (const auto& c : summary.cases) {
    if (c.verdict == Verdict::kPass) {
      ++summary.passed;
    } else {
      ++summary.failed;
    }
  }
  return summary;
}

std::optional<std::size_t> FirstDifference(std::string_view a, std::string_view b) {
  std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] != b[i]) return i;
  }
  if (a.size() != b.size()) return n;
  return std::nullopt;
}

}  // namespace atc::driver
