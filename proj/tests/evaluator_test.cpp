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

#include "support/scenarios.hpp"
#include "support/support.hpp"

namespace atc {
namespace {

using testing::Outcome;
using testing::RunSource;

std::string Main(std::string_view body) { return "int main()\n{\n" + std::string(body) + "\n}\n"; }

TEST(Evaluator, ExitStatus) {
  EXPECT_EQ(RunSource("int main() { return 0; }").status, 0);
  EXPECT_EQ(RunSource("int main() { return 7; }").status, 7);
  EXPECT_EQ(RunSource("int g = 2; int main(){ return g; }").status, 2);
  EXPECT_EQ(RunSource("int main() { }").status, 0);
}

TEST(Evaluator, GlobalsInitializedInOrder) {
  EXPECT_EQ(RunSource("int a = 3; int b = a * 2; int main() { return a + b; }").status, 9);
}

TEST(Evaluator, NoMain) {
  Outcome o = RunSource("int f() { return 0; }");
  EXPECT_EQ(o.error, "E_NO_MAIN");
  EXPECT_EQ(o.status, kRuntimeErrorStatus);
}

TEST(Evaluator, SequencedPair) {
  EXPECT_EQ(RunSource(Main("int I = 0; printf(\"%d, %d\\n\", ++I + ++I, I++ + I++); return 0;")).out, "3, 5\n");
}

TEST(Evaluator, SequencePointExpression) {
  EXPECT_EQ(RunSource(Main("int I = 0; int E = ++I + I++ + ++I + I++; return E;")).status, 8);
}

TEST(Evaluator, PostIncrementDifference) {
  Outcome o = RunSource(Main("int I = 0; printf(\"%d %d\", I++ - I++, I); return 0;"));
  EXPECT_EQ(o.out, "-1 2");
}

TEST(Evaluator, ShortCircuit) {
  EXPECT_EQ(RunSource(Main("return 1 ? 2 : (1/0);")).status, 2);
  EXPECT_EQ(RunSource(Main("int x = 0; int r = 0 && (x = 1); r = 1 || (x = 2); return x * 10 + r;")).status, 1);
}

TEST(Evaluator, ArgumentOrder) {
  const std::string src = Main("int I = 0; printf(\"%d, %d\\n\", I++, I++); return 0;");
  EXPECT_EQ(RunSource(src).out, "0, 1\n");
  EXPECT_EQ(RunSource(src, ArgOrder::kRightToLeft).out, "1, 0\n");
}

TEST(Evaluator, CallContrast) {
  const std::string src =
      "void P(int A, int B)\n{\n    printf(\"%c-%c\\n\", A + 'A', B + 'A');\n}\n" + Main("int I = 0; P(I++, I++); return 0;");
  EXPECT_EQ(RunSource(src).out, "A-B\n");
  EXPECT_EQ(RunSource(src, ArgOrder::kRightToLeft).out, "B-A\n");
}

TEST(Evaluator, AssignmentTargetBeforeSource) {
  EXPECT_EQ(RunSource(Main("int a[3] = {0, 0, 0}; int i = 0; a[i++] = i; return a[0] * 10 + i;")).status, 11);
  EXPECT_EQ(RunSource(Main("int x = 5; x += x++; return x;")).status, 10);
}

TEST(Evaluator, Wraparound) {
  Outcome o = RunSource(Main(
      "int m = 2147483647; char c = 255; c++; int s = 1 << 33;"
      " printf(\"%d %d %d %d\", m + 1, c, s, -2147483647 - 1); return 0;"));
  EXPECT_EQ(o.out, "-2147483648 0 2 -2147483648");
}

TEST(Evaluator, DivisionErrors) {
  EXPECT_EQ(RunSource(Main("int z = 0; return 1 / z;")).error, "E_DIV_ZERO");
  EXPECT_EQ(RunSource(Main("int z = 0; return 1 % z;")).error, "E_DIV_ZERO");
  EXPECT_EQ(RunSource(Main("int m = -2147483647 - 1; return m / -1;")).error, "E_DIV_ZERO");
  EXPECT_EQ(RunSource(Main("return -7 / 2 * 10 + -7 % 2;")).status, -31);
}

TEST(Evaluator, Bounds) {
  EXPECT_EQ(RunSource(Main("int a[3]; return a[3];")).error, "E_OOB_INDEX");
  EXPECT_EQ(RunSource(Main("int a[] = {1}; a[-1] = 0; return 0;")).error, "E_OOB_INDEX");
  EXPECT_EQ(RunSource(Main("int a[]; return a[0];")).error, "E_OOB_INDEX");
  EXPECT_EQ(RunSource("struct F { int n; int L[0]; };\n" + Main("struct F f; return f.L[0];")).error, "E_OOB_INDEX");
}

TEST(Evaluator, UninitializedLocalsAreZero) {
  EXPECT_EQ(RunSource(Main("int x; int a[4]; char s[2]; return x + a[3] + s[1];")).status, 0);
}

TEST(Evaluator, BinarySafeString) {
  Outcome o = RunSource(Main(
      "char S[] = \"Binary-safe\\0 @C String!\"; int n = printf(\"%.*s\", length(S), S);"
      " return n == 23 && length(S) == sizeof(S) - 1 ? 0 : 1;"));
  ASSERT_EQ(o.status, 0) << o.error;
  ASSERT_EQ(o.out.size(), 23u);
  EXPECT_EQ(o.out[11], '\0');
  EXPECT_EQ(o.out, std::string("Binary-safe\0 @C String!", 23));
}

TEST(Evaluator, LengthForms) {
  EXPECT_EQ(RunSource(Main("int A[] = {1,2,3}; return length(A);")).status, 3);
  EXPECT_EQ(RunSource(Main("char S[] = \"Binary-safe\\0 @C String!\"; char V[] = S; return length(V);")).status, 23);
  EXPECT_EQ(RunSource(Main("int F[5]; return length(F);")).status, 5);
}

TEST(Evaluator, SizeofForms) {
  EXPECT_EQ(RunSource(Main("char S[] = \"Binary-safe\\0 @C String!\"; return sizeof(S);")).status, 24);
  EXPECT_EQ(RunSource(Main("return sizeof(int) * 10 + sizeof(char);")).status, 41);
  EXPECT_EQ(RunSource("struct T { int n; int L[0]; };\n" + Main("return sizeof(struct T);")).status, 4);
  EXPECT_EQ(RunSource(Main("char S[] = \"ab\"; char V[] = S; return sizeof(V);")).error, "E_SIZEOF_UNSIZED");
  EXPECT_EQ(RunSource("void f(char p[]) { sizeof(p); }\n" + Main("f(\"x\"); return 0;")).error, "E_SIZEOF_UNSIZED");
}

TEST(Evaluator, ArrayCopyAndViewSemantics) {
  Outcome o = RunSource(
      "void Set(int v[]) { v[0] = 9; }\n" +
      Main("int a[] = {1, 2}; int b[] = a; b[0] = 5; Set(a); printf(\"%d %d\", a[0], b[0]); return 0;"));
  EXPECT_EQ(o.out, "9 5");
}

TEST(Evaluator, StructValueSemantics) {
  Outcome o = RunSource("struct P { int x; int y; };\n" +
                        Main("struct P a; a.x = 1; a.y = 2; struct P b = a; b.x = 7;"
                             " printf(\"%d %d %d\", a.x, b.x, b.y); return 0;"));
  EXPECT_EQ(o.out, "1 7 2");
}

TEST(Evaluator, ControlFlow) {
  Outcome o = RunSource(Main(
      "int s = 0; for (int i = 0; i < 10; i++) { if (i % 2) continue; if (i > 6) break; s += i; }"
      " int k = 3; while (k) k--; do s++; while (0);"
      " switch (s) { case 13: s = 100; case 14: s++; break; default: s = -1; }"
      " printf(\"%d\", s); return 0;"));
  EXPECT_EQ(o.out, "101");
}

TEST(Evaluator, GotoBackwardAndIntoLoop) {
  Outcome o = RunSource(Main(
      "int n = 0; int i = 0; goto inside;"
      " while (i < 3) { n += 10; inside: n++; i++; }"
      " again: if (n < 100) { n *= 2; goto again; }"
      " printf(\"%d\", n); return 0;"));
  EXPECT_EQ(o.out, "184");
}

TEST(Evaluator, Recursion) {
  EXPECT_EQ(RunSource("int fib(int n) { return n < 2 ? n : fib(n - 1) + fib(n - 2); }\n" + Main("return fib(15);")).status,
            610);
}

TEST(Evaluator, DeepRecursionWithinCap) {
  Outcome o = RunSource("int D(int n) { if (n == 0) return 0; return 1 + D(n - 1); }\n" +
                        Main("printf(\"%d\", D(99000)); return 0;"));
  EXPECT_EQ(o.error, "");
  EXPECT_EQ(o.out, "99000");
}

TEST(Evaluator, RecursionCap) {
  EXPECT_EQ(RunSource("int D(int n) { return D(n + 1); }\n" + Main("return D(0);")).error, "E_STEP_LIMIT");
}

TEST(Evaluator, StepLimit) {
  Outcome o = RunSource(Main("while (1) { } return 0;"), ArgOrder::kLeftToRight, 10000);
  EXPECT_EQ(o.error, "E_STEP_LIMIT");
  EXPECT_EQ(o.status, kRuntimeErrorStatus);
}

TEST(Evaluator, PrintfConversions) {
  Outcome o = RunSource(Main(
      "int n = printf(\"[%d|%i|%u|%x|%X|%c|%s|%%|%5d|%-4d|%05d|%+d|%.3s|%*d]\", -5, 6, -1, 255, 255, 65, \"str\","
      " 42, 7, 9, 3, \"abcdef\", 3, 1); printf(\"%d\", n); return 0;"));
  EXPECT_EQ(o.out, "[-5|6|4294967295|ff|FF|A|str|%|   42|7   |00009|+3|abc|  1]59");
}

TEST(Evaluator, PrintfReturnsBytesWritten) {
  EXPECT_EQ(RunSource(Main("return printf(\"%d, %d\\n\", 3, 5);")).status, 5);
  EXPECT_EQ(RunSource(Main("return printf(\"%%\");")).status, 1);
}

TEST(Evaluator, PrintfPercentSStopsAtNul) {
  EXPECT_EQ(RunSource(Main("char s[] = \"ab\\0cd\"; printf(\"%s\", s); return 0;")).out, "ab");
}

TEST(Evaluator, PrintfErrors) {
  EXPECT_EQ(RunSource(Main("printf(\"%q\", 1); return 0;")).error, "E_BAD_FORMAT");
  EXPECT_EQ(RunSource(Main("printf(\"%d\"); return 0;")).error, "E_BAD_FORMAT");
  EXPECT_EQ(RunSource(Main("printf(\"%s\", 1); return 0;")).error, "E_BAD_FORMAT");
  EXPECT_EQ(RunSource(Main("printf(\"%.*s\", -1, \"x\"); return 0;")).error, "E_BAD_FORMAT");
  EXPECT_EQ(RunSource(Main("printf(\"%.*s\", 5, \"x\"); return 0;")).error, "E_OOB_INDEX");
}

TEST(Evaluator, NestedAndClosureBasics) {
  for (const auto& s : testing::LivenessScenarios()) {
    Outcome o = RunSource(s.source);
    EXPECT_EQ(o.out, s.expected_out) << s.name;
    EXPECT_EQ(o.error, s.expected_error) << s.name;
    if (!s.expected_error.empty()) EXPECT_EQ(o.status, kRuntimeErrorStatus) << s.name;
  }
}

TEST(Evaluator, UnsetProcedureVariable) {
  EXPECT_EQ(RunSource(Main("int() f; return f();")).error, "E_TYPE");
}

TEST(Evaluator, CharSemantics) {
  Outcome o = RunSource(Main("char c = 'a'; c = c + 1; char d = 300; printf(\"%c%d\", c, d); return 0;"));
  EXPECT_EQ(o.out, "b44");
}

TEST(Evaluator, RuntimeErrorFormat) {
  auto c = testing::CompileSource("int main()\n{\n  int z = 0;\n  return 1 / z;\n}\n");
  RunResult r = atc::Run(*c->result.program, EvalConfig{ArgOrder::kLeftToRight, 1000, 100, [](std::string_view) {}});
  ASSERT_TRUE(r.error);
  EXPECT_EQ(FormatRuntimeError(c->sm, *r.error).rfind("E_DIV_ZERO: ", 0), 0u);
  EXPECT_NE(FormatRuntimeError(c->sm, *r.error).find("@ test.atc:4:"), std::string::npos);
}

TEST(Evaluator, Deterministic) {
  const std::string src = Main("int I = 3; printf(\"%d %d %d\", I++ * ++I, I--, --I); return I;");
  Outcome a = RunSource(src);
  Outcome b = RunSource(src);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.status, b.status);
}

}  // namespace
}  // namespace atc
