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

#include "driver.hpp"
#include "support/support.hpp"

namespace atc::driver {
namespace {

namespace fs = std::filesystem;

struct Captured {
  std::string out;
  std::string err;
  std::vector<std::string> codes;
  int status = 0;
};

Captured Exec(Command command, const std::vector<std::string>& inputs, const Options& options = {},
              std::optional<std::string> stdin_text = std::nullopt) {
  Captured c;
  Streams s;
  s.out = [&c](std::string_view v) { c.out.append(v); };
  s.err = [&c](std::string_view v) { c.err.append(v); };
  s.read_stdin = [stdin_text] { return stdin_text; };
  c.status = Execute(command, inputs, options, s, &c.codes);
  return c;
}

class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = fs::temp_directory_path() / ("atc_driver_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }
  std::string Write(const std::string& name, const std::string& bytes) const {
    std::ofstream(path_ / name, std::ios::binary) << bytes;
    return (path_ / name).string();
  }

 private:
  fs::path path_;
};

TEST(Driver, RunPrintsAndReturnsStatus) {
  TempDir d;
  auto f = d.Write("seq.atc", "int main() { int I = 0; printf(\"%d, %d\\n\", ++I + ++I, I++ + I++); return 4; }");
  Captured c = Exec(Command::kRun, {f});
  EXPECT_EQ(c.out, "3, 5\n");
  EXPECT_EQ(c.status, 4);
  EXPECT_EQ(c.err, "");
}

TEST(Driver, ArgevalFlag) {
  TempDir d;
  auto f = d.Write("p.atc",
                   "void P(int A, int B) { printf(\"%c-%c\\n\", A + 'A', B + 'A'); }\n"
                   "int main() { int I = 0; P(I++, I++); return 0; }");
  Options o;
  ASSERT_FALSE(ParseFlags("--argeval=right", o));
  EXPECT_EQ(Exec(Command::kRun, {f}, o).out, "B-A\n");
  EXPECT_EQ(Exec(Command::kRun, {f}).out, "A-B\n");
}

TEST(Driver, CheckReportsAmbiguity) {
  TempDir d;
  auto f = d.Write("ambig.atc", "int main() { int i = 0, j = 0; return i+++j; }");
  Captured c = Exec(Command::kCheck, {f});
  EXPECT_EQ(c.status, kExitCompileError);
  EXPECT_EQ(c.codes, (std::vector<std::string>{"E_AMBIGUOUS_PUNCT"}));
  EXPECT_NE(c.err.find("ambig.atc:1:"), std::string::npos);
  Options warn;
  ASSERT_FALSE(ParseFlags("--ambiguous=warn", warn));
  EXPECT_EQ(Exec(Command::kCheck, {f}, warn).status, kExitOk);
}

TEST(Driver, RuntimeErrorStatusAndMessage) {
  TempDir d;
  auto f = d.Write("z.atc", "int main()\n{\n    int z = 0;\n    return 1 / z;\n}\n");
  Captured c = Exec(Command::kRun, {f});
  EXPECT_EQ(c.status, kRuntimeErrorStatus);
  EXPECT_EQ(c.err.rfind("E_DIV_ZERO: ", 0), 0u) << c.err;
  EXPECT_NE(c.err.find(" @ " + f + ":4:"), std::string::npos) << c.err;
}

TEST(Driver, MissingFileIsUsageError) {
  EXPECT_EQ(Exec(Command::kRun, {"/nonexistent/x.atc"}).status, kExitUsage);
}

TEST(Driver, StdinInput) {
  Captured c = Exec(Command::kRun, {"-"}, {}, std::string("int main() { printf(\"in\"); return 0; }"));
  EXPECT_EQ(c.out, "in");
  EXPECT_EQ(Exec(Command::kRun, {"-"}, {}, std::nullopt).status, kExitUsage);
}

TEST(Driver, PpOutputFeedsRun) {
  TempDir d;
  auto f = d.Write("m.atc",
                   "#define TWICE(x) ((x) * 2)\n#if used P\nint P() { return 1; }\n#endif\n"
                   "int main() { printf(\"%d\\n\", TWICE(21)); return 0; }\n");
  Captured pp = Exec(Command::kPp, {f});
  ASSERT_EQ(pp.status, kExitOk);
  EXPECT_EQ(pp.out.find("P()"), std::string::npos);
  Captured direct = Exec(Command::kRun, {f});
  Captured piped = Exec(Command::kRun, {"-"}, {}, pp.out);
  EXPECT_EQ(piped.out, direct.out);
  EXPECT_EQ(piped.status, direct.status);
}

TEST(Driver, PpTrace) {
  TempDir d;
  auto f = d.Write("t.atc", "#if used P\nvoid P() { }\n#endif\nint main() { return 0; }\n");
  Options o;
  o.pp_trace = true;
  Captured c = Exec(Command::kPp, {f}, o);
  EXPECT_EQ(c.err, "0\tused\tP\ttrue\n1\tused\tP\tfalse\n");
}

TEST(Driver, LexAndAstDumps) {
  TempDir d;
  auto f = d.Write("x.atc", "int x;");
  EXPECT_EQ(Exec(Command::kLex, {f}).out,
            "Keyword\t1:1:0-3\tint\nWhitespaceTrivia\t1:4:3-4\t \nIdentifier\t1:5:4-5\tx\n"
            "Punctuator\t1:6:5-6\t;\nEof\t1:7:6-6\t\n");
  EXPECT_EQ(Exec(Command::kAst, {f}).out, "(TranslationUnit\n  (DeclStmt\n    (Var x int)))\n");
}

TEST(Driver, ParseFlagsRejectsBadValues) {
  Options o;
  EXPECT_TRUE(ParseFlags("--argeval=middle", o));
  EXPECT_TRUE(ParseFlags("--max-pp-iters=0", o));
  EXPECT_TRUE(ParseFlags("--bogus", o));
  EXPECT_FALSE(ParseFlags("--max-pp-iters=3 --max-while-iters 7 -I a -I b --pp-trace\n--step-limit=99", o));
  EXPECT_EQ(o.max_pp_iters, 3);
  EXPECT_EQ(o.max_while_iters, 7);
  EXPECT_EQ(o.include_dirs, (std::vector<std::string>{"a", "b"}));
  EXPECT_TRUE(o.pp_trace);
  EXPECT_EQ(o.step_limit, 99u);
}

TEST(Driver, FirstDifference) {
  EXPECT_EQ(FirstDifference("abc", "abc"), std::nullopt);
  EXPECT_EQ(FirstDifference("abc", "abd"), 2u);
  EXPECT_EQ(FirstDifference("ab", "abc"), 2u);
  EXPECT_EQ(FirstDifference(std::string_view("a\0b", 3), std::string_view("a\0c", 3)), 2u);
}

TEST(Corpus, EmptyDirectory) {
  TempDir d;
  CorpusSummary s = RunCorpus(d.path(), {});
  EXPECT_EQ(s.Render(), "0 passed, 0 failed\n");
}

TEST(Corpus, VerdictsAndOrdering) {
  TempDir d;
  d.Write("b_pass.atc", "int main() { printf(\"ok\\n\"); return 0; }");
  d.Write("b_pass.expect", "ok\n");
  d.Write("a_wrong.atc", "int main() { printf(\"abcX\"); return 0; }");
  d.Write("a_wrong.expect", "abcY");
  d.Write("c_missing.atc", "int main() { return 0; }");
  d.Write("d_status.c", "int main() { return 3; }");
  d.Write("d_status.expect", "");
  d.Write("d_status.status", "3\n");
  d.Write("e_diag.atc", "int main() { int z = 0; return 1 / z; }");
  d.Write("e_diag.expect", "");
  d.Write("e_diag.status", "101");
  d.Write("e_diag.diag", "E_DIV_ZERO\n");
  d.Write("f_flags.atc", "int main() { int I = 0; printf(\"%d%d\", I++, I++); return 0; }");
  d.Write("f_flags.expect", "10");
  d.Write("f_flags.flags", "--argeval=right\n");
  d.Write("g_noleak.atc", "int main() { int I = 0; printf(\"%d%d\", I++, I++); return 0; }");
  d.Write("g_noleak.expect", "01");
  d.Write("notes.txt", "ignored");

  CorpusSummary s = RunCorpus(d.path(), {}, 4);
  ASSERT_EQ(s.cases.size(), 7u);
  std::vector<std::string> names;
  for (const auto& c : s.cases) names.push_back(c.name);
  EXPECT_EQ(names, (std::vector<std::string>{"a_wrong.atc", "b_pass.atc", "c_missing.atc", "d_status.c",
                                             "e_diag.atc", "f_flags.atc", "g_noleak.atc"}));
  EXPECT_EQ(s.cases[0].verdict, Verdict::kFail);
  EXPECT_NE(s.cases[0].detail.find("byte 3"), std::string::npos) << s.cases[0].detail;
  EXPECT_EQ(s.cases[1].verdict, Verdict::kPass);
  EXPECT_EQ(s.cases[2].verdict, Verdict::kError);
  for (std::size_t i = 3; i < 7; ++i) EXPECT_EQ(s.cases[i].verdict, Verdict::kPass) << s.cases[i].detail;
  EXPECT_EQ(s.passed, 5);
  EXPECT_EQ(s.failed, 2);
  EXPECT_EQ(s.Render().substr(0, 5), "FAIL\t");
}

TEST(Corpus, DiagnosticMismatchFails) {
  TempDir d;
  d.Write("x.atc", "int main() { return 0; }");
  d.Write("x.expect", "");
  d.Write("x.diag", "E_PARSE\n");
  CorpusSummary s = RunCorpus(d.path(), {});
  EXPECT_EQ(s.cases.at(0).verdict, Verdict::kFail);
}

TEST(Corpus, GoldenCorpusPassesDeterministically) {
  CorpusSummary first = RunCorpus(testing::CorpusDir(), {});
  CorpusSummary second = RunCorpus(testing::CorpusDir(), {}, 1);
  EXPECT_EQ(first.failed, 0) << first.Render();
  EXPECT_GE(first.passed, 6);
  EXPECT_EQ(first.Render(), second.Render());
}

}  // namespace
}  // namespace atc::driver
