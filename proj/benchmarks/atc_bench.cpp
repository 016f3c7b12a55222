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


#include <benchmark/benchmark.h>

#include <string>

#include "atc/evaluator.hpp"
#include "atc/fixpoint.hpp"
#include "atc/lexer.hpp"
#include "atc/parser.hpp"
#include "atc/preprocessor.hpp"

namespace {

std::string SyntheticSource(int procs) {
  std::string s = "/* synthetic */\n#define TWICE(x) ((x) * 2)\n";
  for (int i = 0; i < procs; ++i) {
    std::string n = std::to_string(i);
    s += "#if used F" + n + "\n";
    s += "int F" + n + "(int a, char s[]) { // body " + n + "\n";
    s += "    int Număr = 0x1_F + 0b1_0 + TWICE(a); s[0] = 'x';\n";
    s += "    for (int i = 0; i < length(s); i++) Număr += s[i] ? i++ : --i;\n";
    s += "    return Număr;\n}\n#endif\n";
  }
  s += "int main() { char s[] = \"abc\\0def\"; return F0(1, s); }\n";
  return s;
}

void BM_Lex(benchmark::State& state) {
  const std::string src = SyntheticSource(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto r = atc::Lex(src);
    benchmark::DoNotOptimize(r.tokens.data());
  }
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * src.size()));
}
BENCHMARK(BM_Lex)->Arg(10)->Arg(100)->Arg(1000);

void BM_Parse(benchmark::State& state) {
  const auto tokens = atc::Lex(SyntheticSource(static_cast<int>(state.range(0)))).tokens;
  for (auto _ : state) {
    auto r = atc::Parse(tokens);
    benchmark::DoNotOptimize(r.unit.get());
  }
}
BENCHMARK(BM_Parse)->Arg(10)->Arg(100);

void BM_PreprocessWhile(benchmark::State& state) {
  const std::string src = "#define CAT2(a, b) a##b\n#define CAT(a, b) CAT2(a, b)\n#defeval I 0\n#while I < " +
                          std::to_string(state.range(0)) + "\nint CAT(x, I) = I;\n#defeval I I + 1\n#endwhile\n";
  for (auto _ : state) {
    atc::SourceManager sm;
    auto r = atc::Preprocess(sm, sm.AddBuffer("b.atc", src), nullptr, {});
    benchmark::DoNotOptimize(r.tokens.data());
  }
}
BENCHMARK(BM_PreprocessWhile)->Arg(100)->Arg(1000);

void BM_FixpointCompile(benchmark::State& state) {
  const std::string src = SyntheticSource(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    atc::SourceManager sm;
    auto r = atc::FixpointCompile(sm, sm.AddBuffer("b.atc", src), {});
    benchmark::DoNotOptimize(r.program.get());
  }
}
BENCHMARK(BM_FixpointCompile)->Arg(10)->Arg(100);

void RunProgram(benchmark::State& state, const std::string& src) {
  atc::SourceManager sm;
  auto compiled = atc::FixpointCompile(sm, sm.AddBuffer("b.atc", src), {});
  if (atc::HasErrors(compiled.diagnostics)) {
    state.SkipWithError("compile failed");
    return;
  }
  atc::EvalConfig config;
  config.output = [](std::string_view) {};
  for (auto _ : state) {
    auto r = atc::Run(*compiled.program, config);
    benchmark::DoNotOptimize(r.exit_status);
  }
}

void BM_EvalFib(benchmark::State& state) {
  RunProgram(state, "int fib(int n) { return n < 2 ? n : fib(n - 1) + fib(n - 2); }\nint main() { return fib(" +
                        std::to_string(state.range(0)) + "); }\n");
}
BENCHMARK(BM_EvalFib)->Arg(15)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_EvalLoop(benchmark::State& state) {
  RunProgram(state, "int main() { int I = 0; int s = 0; while (I < " + std::to_string(state.range(0)) +
                        ") { s += ++I + I++ * 3; } return s; }\n");
}
BENCHMARK(BM_EvalLoop)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_EvalClosures(benchmark::State& state) {
  RunProgram(state,
             "int() Counter(int start) { int v = start; int C() { v++; return v; } return C; }\n"
             "int main() { int t = 0; for (int i = 0; i < " +
                 std::to_string(state.range(0)) + "; i++) { int() c = Counter(i); t += c(); } return t; }\n");
}
BENCHMARK(BM_EvalClosures)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_EvalStrings(benchmark::State& state) {
  RunProgram(state,
             "int main() { char S[] = \"Binary-safe\\0 @C String!\"; int n = 0; for (int i = 0; i < " +
                 std::to_string(state.range(0)) + "; i++) { char V[] = S; n += printf(\"%.*s\", length(V), V); } return n; }\n");
}
BENCHMARK(BM_EvalStrings)->Arg(10000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
