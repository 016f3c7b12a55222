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


#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "atc/fixpoint.hpp"
#include "atc/preprocessor.hpp"
#include "support/support.hpp"

namespace atc {
namespace {

using testing::Codes;
using testing::CompileSource;
using testing::HasCode;
using testing::Significant;

struct Pp {
  SourceManager sm;
  PpResult result;
};

std::unique_ptr<Pp> RunPp(std::string_view src, const CodeFacts* facts = nullptr, PpConfig config = {}) {
  auto p = std::make_unique<Pp>();
  FileId id = p->sm.AddBuffer("pp.atc", std::string(src));
  p->result = Preprocess(p->sm, id, facts, config);
  return p;
}

// Significant token spellings joined by single spaces.
std::string Spell(const TokenList& tokens) {
  std::string s;
  for (const auto& t : Significant(tokens)) {
    if (!s.empty()) s += ' ';
    s += t.kind == TokenKind::kStringLiteral ? t.bytes : t.kind == TokenKind::kIntLiteral ? t.bytes : t.text;
  }
  return s;
}

std::optional<std::int64_t> Eval(std::string_view expr, const CodeFacts* facts = nullptr,
                                 const MacroTable& macros = {}) {
  Diagnostics diags;
  TokenList tokens = Significant(Lex(expr).tokens);
  return EvalPpExpr(tokens, macros, facts, diags);
}

TEST(Preprocessor, ConditionalOnMacro) {
  auto p = RunPp("#define X 2\n#if X == 2\nint a;\n#endif\n");
  EXPECT_TRUE(p->result.diagnostics.empty());
  EXPECT_EQ(Spell(p->result.tokens), "int a ;");
}

TEST(Preprocessor, IfdefUndefinedDropsRegion) {
  auto p = RunPp("#ifdef Y\nint a;\n#else\nint b;\n#endif\n#ifndef Y\nint c;\n#endif\n");
  EXPECT_EQ(Spell(p->result.tokens), "int b ; int c ;");
}

TEST(Preprocessor, Elif) {
  auto p = RunPp("#define V 3\n#if V == 1\none\n#elif V == 3\nthree\n#elif V == 3\nagain\n#else\nother\n#endif\n");
  EXPECT_EQ(Spell(p->result.tokens), "three");
}

TEST(Preprocessor, UsedPredicateFalseDropsBody) {
  CodeFacts facts;
  facts.declared = {"main"};
  auto p = RunPp("#if used P\nvoid P() { }\n#endif\n", &facts);
  EXPECT_EQ(Spell(p->result.tokens), "");
  ASSERT_EQ(p->result.trace.size(), 1u);
  EXPECT_EQ(p->result.trace[0].predicate, Predicate::kUsed);
  EXPECT_EQ(p->result.trace[0].identifier, "P");
  EXPECT_FALSE(p->result.trace[0].value);
}

TEST(Preprocessor, NullFactsAssumeTrue) {
  auto p = RunPp("#if used P && coded(P) && declared P\nkept\n#endif\n");
  EXPECT_EQ(Spell(p->result.tokens), "kept");
  EXPECT_EQ(p->result.trace.size(), 3u);
}

TEST(Preprocessor, EvalArithmetic) {
  EXPECT_EQ(Eval("1 + 2 * 3"), 7);
  EXPECT_EQ(Eval("(1 + 2) * 3"), 9);
  EXPECT_EQ(Eval("-7 / 2"), -3);
  EXPECT_EQ(Eval("1 ? 2 : 3"), 2);
  EXPECT_EQ(Eval("0 || 0 || 5 > 4"), 1);
  EXPECT_EQ(Eval("1 << 40"), std::int64_t{1} << 40);
  EXPECT_EQ(Eval("~0"), -1);
  EXPECT_EQ(Eval("UNKNOWN + 1"), 1);
  EXPECT_EQ(Eval("'A'"), 65);
  EXPECT_EQ(Eval("0b1_0000_0000"), 256);
}

TEST(Preprocessor, EvalErrors) {
  Diagnostics diags;
  TokenList tokens = Significant(Lex("1 / 0").tokens);
  EXPECT_FALSE(EvalPpExpr(tokens, {}, nullptr, diags));
  EXPECT_EQ(Codes(diags), (std::vector<std::string>{"E_PP_BAD_EXPR"}));
  EXPECT_FALSE(Eval("1 +"));
  EXPECT_FALSE(Eval("(1"));
}

TEST(Preprocessor, DefinedPredicate) {
  MacroTable macros;
  macros["X"] = MacroDef{"X"};
  EXPECT_EQ(Eval("defined X", nullptr, macros), 1);
  EXPECT_EQ(Eval("defined(X) && !defined Z", nullptr, macros), 1);
}

TEST(Preprocessor, CodePredicatesConsultFacts) {
  CodeFacts facts;
  facts.declared = {"P", "Q"};
  facts.coded = {"P"};
  facts.used = {"Q"};
  EXPECT_EQ(Eval("coded P", &facts), 1);
  EXPECT_EQ(Eval("coded Q", &facts), 0);
  EXPECT_EQ(Eval("used Q && !defined Q", &facts), 1);
  EXPECT_EQ(Eval("used(P)", &facts), 0);
  EXPECT_EQ(Eval("declared(Q) + declared R", &facts), 1);
}

TEST(Preprocessor, PredicateTruthTable) {
  // used Q && !defined Q over every combination of the two inputs.
  for (bool used : {false, true}) {
    for (bool defined : {false, true}) {
      CodeFacts facts;
      if (used) facts.used.insert("Q");
      MacroTable macros;
      if (defined) macros["Q"] = MacroDef{"Q"};
      EXPECT_EQ(Eval("used Q && !defined Q", &facts, macros), used && !defined ? 1 : 0);
    }
  }
}

TEST(Preprocessor, FunctionMacrosAndPaste) {
  auto p = RunPp(
      "#define ADD(a, b) ((a) + (b))\n#define STR(x) #x\n#define CAT(a, b) a##b\n"
      "ADD(1, 2) STR(hi there) CAT(x, 1)\n");
  EXPECT_TRUE(p->result.diagnostics.empty()) << Codes(p->result.diagnostics).at(0);
  EXPECT_EQ(Spell(p->result.tokens), "( ( 1 ) + ( 2 ) ) \"hi there\" x1");
}

TEST(Preprocessor, NoRecursiveExpansion) {
  auto p = RunPp("#define X X + 1\n#define A B\n#define B A\nX A\n");
  EXPECT_EQ(Spell(p->result.tokens), "X + 1 A");
}

TEST(Preprocessor, Variadic) {
  auto p = RunPp("#define F(fmt, ...) printf(fmt, __VA_ARGS__)\nF(\"%d\", 1, 2)\n");
  EXPECT_EQ(Spell(p->result.tokens), "printf ( \"%d\" , 1 , 2 )");
}

TEST(Preprocessor, LineMacro) {
  auto p = RunPp("\n\n__LINE__\n");
  EXPECT_EQ(Spell(p->result.tokens), "3");
}

TEST(Preprocessor, RedefinitionRules) {
  EXPECT_TRUE(RunPp("#define X 1\n#define X 1\n")->result.diagnostics.empty());
  EXPECT_EQ(Codes(RunPp("#define X 1\n#define X 2\n")->result.diagnostics),
            (std::vector<std::string>{"E_PP_REDEFINED"}));
  EXPECT_TRUE(RunPp("#define X 1\n#undef X\n#define X 2\n")->result.diagnostics.empty());
}

TEST(Preprocessor, ConditionalStructureErrors) {
  EXPECT_TRUE(HasCode(RunPp("#if 1\nint a;\n")->result.diagnostics, diag::kPpUnterminatedCond));
  EXPECT_TRUE(HasCode(RunPp("#endif\n")->result.diagnostics, diag::kPpStrayElseEndif));
  EXPECT_TRUE(HasCode(RunPp("#else\n")->result.diagnostics, diag::kPpStrayElseEndif));
  EXPECT_TRUE(HasCode(RunPp("#if 1 +\n#endif\n")->result.diagnostics, diag::kPpBadExpr));
}

TEST(Preprocessor, ErrorDirectiveAndPragma) {
  EXPECT_TRUE(HasCode(RunPp("#error stop\n")->result.diagnostics, diag::kPpError));
  auto p = RunPp("#pragma once\nint a;\n");
  EXPECT_FALSE(HasErrors(p->result.diagnostics));
  EXPECT_TRUE(HasCode(p->result.diagnostics, diag::kPpPragmaIgnored));
}

TEST(Preprocessor, WhileLoopWithDefeval) {
  auto p = RunPp(
      "#define CAT2(a, b) a##b\n#define CAT(a, b) CAT2(a, b)\n"
      "#defeval I 0\n#while I < 3\nint CAT(x_, I);\n#defeval I I + 1\n#endwhile\n");
  EXPECT_TRUE(p->result.diagnostics.empty());
  EXPECT_EQ(Spell(p->result.tokens), "int x_0 ; int x_1 ; int x_2 ;");
}

TEST(Preprocessor, WhileFalseEmitsNothing) {
  auto p = RunPp("#while 0\nanything here\n#endwhile\n");
  EXPECT_TRUE(p->result.diagnostics.empty());
  EXPECT_EQ(Spell(p->result.tokens), "");
}

TEST(Preprocessor, WhileCapEngages) {
  PpConfig config;
  config.max_while_iters = 50;
  auto p = RunPp("#defeval I 0\n#while 1\n#endwhile\n", nullptr, config);
  EXPECT_EQ(Codes(p->result.diagnostics), (std::vector<std::string>{"E_PP_WHILE_LIMIT"}));
}

TEST(Preprocessor, WhileMissingEnd) {
  EXPECT_TRUE(HasCode(RunPp("#while 0\nx\n")->result.diagnostics, diag::kPpUnterminatedCond));
}

TEST(Preprocessor, NestedWhile) {
  auto p = RunPp(
      "#defeval I 0\n#while I < 2\n#defeval J 0\n#while J < 2\nI J\n#defeval J J + 1\n#endwhile\n"
      "#defeval I I + 1\n#endwhile\n");
  EXPECT_EQ(Spell(p->result.tokens), "0 0 0 1 1 0 1 1");
}

TEST(Preprocessor, Include) {
  auto dir = std::filesystem::temp_directory_path() / "atc_pp_include_test";
  std::filesystem::create_directories(dir / "inc");
  std::ofstream(dir / "local.h") << "int local;\n";
  std::ofstream(dir / "inc" / "sys.h") << "#include \"local.h\"\nint sys;\n";
  std::ofstream(dir / "inc" / "local.h") << "int wrong;\n";
  std::ofstream(dir / "self.h") << "#include \"self.h\"\n";
  std::ofstream(dir / "main.atc") << "#include \"local.h\"\n#include <sys.h>\n";
  {
    SourceManager sm;
    PpConfig config;
    config.include_dirs = {dir / "inc"};
    FileId id = *sm.AddFile(dir / "main.atc");
    PpResult r = Preprocess(sm, id, nullptr, config);
    EXPECT_TRUE(r.diagnostics.empty());
    EXPECT_EQ(Spell(r.tokens), "int local ; int wrong ; int sys ;");
  }
  {
    SourceManager sm;
    PpResult r = Preprocess(sm, *sm.AddFile(dir / "self.h"), nullptr, {});
    EXPECT_TRUE(HasCode(r.diagnostics, diag::kPpInclude));
  }
  {
    SourceManager sm;
    FileId id = sm.AddBuffer(dir.string() + "/x.atc", "#include \"missing.h\"\n");
    EXPECT_TRUE(HasCode(Preprocess(sm, id, nullptr, {}).diagnostics, diag::kPpInclude));
  }
  std::filesystem::remove_all(dir);
}

TEST(Preprocessor, RenderSourceRelexes) {
  auto p = RunPp("#define F(x) x+ +x\nint a = F(1);\n");
  std::string text = RenderSource(p->result.tokens);
  LexResult again = Lex(text);
  EXPECT_TRUE(again.diagnostics.empty()) << text;
  EXPECT_EQ(Spell(again.tokens), Spell(p->result.tokens));
}

TEST(Fixpoint, UnusedProcedureStripped) {
  auto c = CompileSource("#if used P\nvoid P() { }\n#endif\nint main() { return 0; }\n");
  const CompileResult& r = c->result;
  EXPECT_TRUE(r.converged);
  EXPECT_EQ(r.iterations, 2);
  EXPECT_TRUE(r.diagnostics.empty());
  for (const auto& t : r.tokens) EXPECT_NE(t.text, "P");
  EXPECT_FALSE(r.facts.declared.count("P"));
  ASSERT_EQ(r.trace.size(), 2u);
  EXPECT_EQ(r.trace[0].iteration, 0);
  EXPECT_TRUE(r.trace[0].consult.value);
  EXPECT_EQ(r.trace[1].iteration, 1);
  EXPECT_FALSE(r.trace[1].consult.value);
}

TEST(Fixpoint, CalledProcedureRetained) {
  auto c = CompileSource("#if used P\nvoid P() { }\n#endif\nint main() { P(); return 0; }\n");
  const CompileResult& r = c->result;
  EXPECT_TRUE(r.converged);
  EXPECT_EQ(r.iterations, 1);
  EXPECT_TRUE(r.facts.coded.count("P"));
  EXPECT_TRUE(r.facts.used.count("P"));
}

TEST(Fixpoint, NoPredicatesIsPlainPreprocessing) {
  const char* src = "#define N 3\n#ifdef N\nint g = N;\n#endif\nint main() { return g; }\n";
  auto c = CompileSource(src);
  EXPECT_EQ(c->result.iterations, 1);
  EXPECT_TRUE(c->result.trace.empty());
  auto p = RunPp(src);
  EXPECT_EQ(Spell(c->result.tokens), Spell(p->result.tokens));
}

TEST(Fixpoint, ChainOfDependentProcedures) {
  // Q is only called from P, which is only kept when used.
  auto c = CompileSource(
      "#if used Q\nvoid Q() { }\n#endif\n#if used P\nvoid P() { Q(); }\n#endif\nint main() { return 0; }\n");
  EXPECT_TRUE(c->result.converged);
  EXPECT_TRUE(c->result.facts.declared.count("main"));
  EXPECT_FALSE(c->result.facts.declared.count("P"));
  EXPECT_FALSE(c->result.facts.declared.count("Q"));
}

TEST(Fixpoint, Diverges) {
  // The body exists exactly when it is not declared.
  PpConfig config;
  config.max_fixpoint_iters = 4;
  auto c = CompileSource("#if !declared X\nint X;\n#endif\nint main() { return 0; }\n", config);
  EXPECT_FALSE(c->result.converged);
  EXPECT_EQ(c->result.iterations, 4);
  EXPECT_TRUE(HasCode(c->result.diagnostics, diag::kPpFixpointDiverge));
}

TEST(Fixpoint, TraceSoundness) {
  auto c = CompileSource(
      "#if declared A\nint B;\n#endif\n#if coded C\nint D = 1;\n#endif\nint A; int C = 2;\n"
      "#if used D\nint E;\n#endif\nint main() { return 0; }\n");
  ASSERT_TRUE(c->result.converged);
  int last = c->result.trace.empty() ? 0 : c->result.trace.back().iteration;
  for (const auto& t : c->result.trace) {
    if (t.iteration != last) continue;
    EXPECT_EQ(c->result.facts.Query(t.consult.predicate, t.consult.identifier), t.consult.value)
        << t.consult.identifier;
  }
}

}  // namespace
}  // namespace atc
