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


// Acceptance gate. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "atc/ast.hpp"
#include "atc/lexer.hpp"
#include "atc/parser.hpp"
#include "support/oracle.hpp"
#include "support/scenarios.hpp"
#include "support/support.hpp"

namespace {

using namespace atc;
using testing::RunSource;
using Clock = std::chrono::steady_clock;

struct Check {
  bool ok = true;
  std::string detail;

  void Expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

double Seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Runs `body` and enforces a wall-clock limit on it.
Check Timed(double limit, const std::function<void(Check&)>& body) {
  Check c;
  auto start = Clock::now();
  body(c);
  double took = Seconds(start);
  c.Expect(took < limit, "took " + std::to_string(took) + " s, limit " + std::to_string(limit) + " s");
  return c;
}

std::string ReadFile(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

std::string Printable(const std::string& s) { return EscapeBytes(s); }

Check SequencingPair() {
  return Timed(1.0, [](Check& c) {
    auto o = RunSource("int main() { int I = 0; printf(\"%d, %d\\n\", ++I + ++I, I++ + I++); return 0; }");
    c.Expect(o.out == "3, 5\n", "output '" + Printable(o.out) + "'");
  });
}

Check SequencePointExpression() {
  Check c;
  auto o = RunSource("int main() { int I = 0; int E = ++I + I++ + ++I + I++; printf(\"%d\", E); return 0; }");
  c.Expect(o.out == "8", "E = " + o.out);
  return c;
}

Check ArgumentOrder() {
  Check c;
  const char* src = "int main() { int I = 0; printf(\"%d, %d\\n\", I++, I++); return 0; }";
  auto left = RunSource(src);
  auto right = RunSource(src, ArgOrder::kRightToLeft);
  c.Expect(left.out == "0, 1\n", "ccall printed '" + Printable(left.out) + "'");
  c.Expect(right.out == "1, 0\n", "right-to-left printed '" + Printable(right.out) + "'");
  return c;
}

Check CallContrast() {
  Check c;
  const char* src =
      "void P(int A, int B)\n{\n    printf(\"%c-%c\\n\", A + 'A', B + 'A');\n}\n"
      "int main() { int I = 0; P(I++, I++); return 0; }\n";
  auto left = RunSource(src);
  auto right = RunSource(src, ArgOrder::kRightToLeft);
  c.Expect(left.out == "A-B\n", "ccall printed '" + Printable(left.out) + "'");
  c.Expect(right.out == "B-A\n", "right-to-left printed '" + Printable(right.out) + "'");
  return c;
}

Check BinarySafeString() {
  Check c;
  auto o = RunSource(
      "int main()\n{\n    char S[] = \"Binary-safe\\0 @C String!\";\n    printf(\"%.*s\", length(S), S);\n"
      "    return length(S) == sizeof(S) - 1 ? 0 : 1;\n}\n");
  c.Expect(o.error.empty(), "error " + o.error);
  c.Expect(o.out.size() == 23, "wrote " + std::to_string(o.out.size()) + " bytes");
  c.Expect(o.out.size() > 11 && o.out[11] == '\0', "byte 11 is not 0x00");
  c.Expect(o.out == std::string("Binary-safe\0 @C String!", 23), "content differs");
  c.Expect(o.status == 0, "length(S) != sizeof(S) - 1");
  return c;
}

bool MentionsIdentifier(const TokenList& tokens, const std::string& name) {
  for (const auto& t : tokens) {
    if (t.kind == TokenKind::kIdentifier && t.text == name) return true;
  }
  return false;
}

Check DeadProcedureStripping() {
  Check c;
  const std::string stub = "#if used P\nvoid P() { /* ... */ }\n#endif\n";
  auto dropped = testing::CompileSource(stub + "int main() { return 0; }\n");
  c.Expect(dropped->result.converged, "uncalled case did not converge");
  c.Expect(dropped->result.iterations <= 2,
           "uncalled case took " + std::to_string(dropped->result.iterations) + " iterations");
  c.Expect(!MentionsIdentifier(dropped->result.tokens, "P"), "P survived in the final tokens");
  c.Expect(!HasErrors(dropped->result.diagnostics), "uncalled case has errors");
  auto kept = testing::CompileSource(stub + "int main() { P(); return 0; }\n");
  c.Expect(kept->result.converged && kept->result.iterations == 1,
           "called case took " + std::to_string(kept->result.iterations) + " iterations");
  c.Expect(kept->result.facts.coded.count("P") == 1, "P definition missing when called");
  c.Expect(!HasErrors(kept->result.diagnostics), "called case has errors");
  return c;
}

Check LexerRules() {
  Check c;
  auto limit = [&c](const char* what, const std::function<void(Check&)>& body) {
    Check part = Timed(1.0, body);
    c.Expect(part.ok, std::string(what) + ": " + part.detail);
  };
  limit("ambiguity", [](Check& p) {
    p.Expect(testing::HasCode(Lex("i+++j").diagnostics, diag::kAmbiguousPunct), "i+++j not diagnosed");
  });
  limit("unicode", [](Check& p) {
    int idents = 0;
    for (const auto& t : Lex("int Number, Număr, 数字, संख्या, Число;").tokens) idents += t.kind == TokenKind::kIdentifier;
    p.Expect(idents == 5, std::to_string(idents) + " identifiers");
  });
  limit("literals", [](Check& p) {
    p.Expect(Lex("0b1_0000_0000").tokens[0].value == 256, "0b1_0000_0000");
    p.Expect(Lex("0xFF_FF").tokens[0].value == 65535, "0xFF_FF");
  });
  limit("line comment", [](Check& p) {
    auto o = RunSource("int main()\n{\n    //Single-line comment ended with \\\n    printf(\"Line also commented?\");\n"
                       "    return 0;\n}\n");
    p.Expect(o.out == "Line also commented?", "printf did not run");
  });
  limit("block comment", [](Check& p) {
    LexResult r = Lex("/* \"*/\" */");
    p.Expect(r.tokens[0].kind == TokenKind::kComment && r.tokens[0].bytes == "/* \"*/", "comment did not stop at */");
  });
  return c;
}

Check StructMembers() {
  Check c;
  auto o = RunSource(
      "struct S\n{\n    int n;\n    char c;\n    int m;\n    int L[0];\n};\n"
      "int main() { return sizeof(struct S) == sizeof(int) + sizeof(char) + sizeof(int); }\n");
  c.Expect(o.status == 1, "sizeof(struct S) includes the [0] member");
  ParseResult p = Parse(Lex("struct S\n{\n    int n;\n    int A[];\n};\nstruct T { int L[0]; };").tokens);
  c.Expect(p.diagnostics.empty(), "struct parse failed");
  if (p.diagnostics.empty()) {
    const auto& s = p.unit->decls.at(0)->As<ast::DeclStmt>().defines;
    const auto& t = p.unit->decls.at(1)->As<ast::DeclStmt>().defines;
    c.Expect(s->fields.at(1).type->array_kind == ast::ArrayKind::kDynamic, "A[] is not Dynamic");
    c.Expect(t->fields.at(0).type->array_kind == ast::ArrayKind::kFlexZero, "L[0] is not FlexZero");
  }
  return c;
}

Check Liveness() {
  Check c;
  int passed = 0;
  const auto& scenarios = testing::LivenessScenarios();
  for (const auto& s : scenarios) {
    auto o = RunSource(s.source);
    if (o.out == s.expected_out && o.error == s.expected_error) {
      ++passed;
    } else {
      c.Expect(false, s.name);
    }
  }
  c.Expect(scenarios.size() >= 10, "fewer than 10 scenarios");
  c.detail = std::to_string(passed) + "/" + std::to_string(scenarios.size()) + " scenarios" +
             (c.detail.empty() ? "" : "; failed: " + c.detail);
  return c;
}

Check OracleEquivalence() {
  int mismatches = 0;
  constexpr int kCases = 10000;
  Check c = Timed(60.0, [&](Check& t) {
    std::mt19937_64 rng(20261015);
    for (int i = 0; i < kCases; ++i) {
      auto kase = testing::oracle::Generate(rng);
      auto o = RunSource(testing::oracle::RenderProgram(kase));
      if (!o.error.empty() || o.out != testing::oracle::ExpectedOutput(testing::oracle::Reference(kase))) ++mismatches;
    }
    t.Expect(mismatches == 0, std::to_string(mismatches) + " mismatches");
  });
  if (c.ok) c.detail = std::to_string(kCases) + " cases, 0 mismatches";
  return c;
}

std::string Capture(const std::string& command, int& status) {
  std::string out;
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) {
    status = -1;
    return out;
  }
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  status = pclose(pipe);
  return out;
}

Check LosslessAndDeterministic(const std::string& atc) {
  Check c;
  int files = 0;
  for (const auto& entry : std::filesystem::directory_iterator(testing::CorpusDir())) {
    auto ext = entry.path().extension();
    if (ext != ".atc" && ext != ".c") continue;
    ++files;
    std::string bytes = ReadFile(entry.path());
    std::string rebuilt;
    for (const auto& t : Lex(bytes).tokens) rebuilt += t.bytes;
    c.Expect(rebuilt == bytes, "lexer lost bytes in " + entry.path().filename().string());
  }
  c.Expect(files > 0, "empty corpus");
  int s1 = 0, s2 = 0;
  std::string cmd = "'" + atc + "' test '" + testing::CorpusDir() + "' 2>&1";
  std::string first = Capture(cmd, s1);
  std::string second = Capture(cmd, s2);
  c.Expect(s1 == 0, "atc test failed:\n" + first);
  c.Expect(first == second && s1 == s2, "summaries differ");
  if (c.ok) c.detail = std::to_string(files) + " files round-trip; summaries identical";
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: atc_acceptance <path-to-atc>\n";
    return 2;
  }
  const std::string atc = argv[1];
  struct Criterion {
    int id;
    const char* name;
    std::function<Check()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "sequencing pair prints 3, 5", SequencingPair},
      {2, "sequence-point expression yields E = 8", SequencePointExpression},
      {3, "argument order 0, 1 vs 1, 0", ArgumentOrder},
      {4, "call contrast A-B vs B-A", CallContrast},
      {5, "binary-safe string", BinarySafeString},
      {6, "dead-procedure stripping", DeadProcedureStripping},
      {7, "lexer rules", LexerRules},
      {8, "struct member semantics", StructMembers},
      {9, "closure and nested liveness", Liveness},
      {10, "oracle equivalence", OracleEquivalence},
      {11, "losslessness and determinism", [&atc] { return LosslessAndDeterministic(atc); }},
  };
  int failed = 0;
  for (const auto& crit : criteria) {
    auto start = Clock::now();
    Check c = crit.run();
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.3fs", Seconds(start));
    std::cout << (c.ok ? "PASS" : "FAIL") << "\t" << crit.id << "\t" << crit.name << "\t" << timing
              << (c.detail.empty() ? "" : "\t" + c.detail) << "\n";
    failed += !c.ok;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
