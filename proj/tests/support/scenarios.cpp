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


#include "scenarios.hpp"

namespace atc::testing {

const std::vector<LivenessScenario>& LivenessScenarios() {
  static const std::vector<LivenessScenario> kScenarios = {
      {"closure_returned_keeps_local", R"(
int() Make()
{
    int v = 41;
    int C() { v = v + 1; return v; }
    return C;
}
int main() { int() c = Make(); printf("%d ", c()); printf("%d\n", c()); return 0; }
)",
       "42 43\n", ""},

      {"closure_instances_are_independent", R"(
int() Counter(int start)
{
    int v = start;
    int C() { v++; return v; }
    return C;
}
int main()
{
    int() a = Counter(0);
    int() b = Counter(100);
    a(); a(); b();
    printf("%d %d\n", a(), b());
    return 0;
}
)",
       "3 102\n", ""},

      {"closure_writes_visible_to_live_parent", R"(
int main()
{
    int v = 1;
    void Bump() { v = v * 10; }
    Bump(); Bump();
    printf("%d\n", v);
    return 0;
}
)",
       "100\n", ""},

      {"closure_captures_parameter", R"(
int(int) Adder(int k)
{
    int Add(int x) { return x + k; }
    return Add;
}
int main() { int(int) add5 = Adder(5); printf("%d\n", add5(37)); return 0; }
)",
       "42\n", ""},

      {"closure_stored_in_global", R"(
void() Saved;
void Install(int tag)
{
    int seen = tag;
    void Show() { printf("tag %d\n", seen); }
    Saved = Show;
}
int main() { Install(9); Install(11); Saved(); return 0; }
)",
       "tag 11\n", ""},

      {"closure_reaches_grandparent_frame", R"(
int() Outer(int base)
{
    int total = base;
    int() Middle()
    {
        int step = 2;
        int Inner() { total = total + step; return total; }
        return Inner;
    }
    return Middle();
}
int main() { int() f = Outer(10); f(); printf("%d\n", f()); return 0; }
)",
       "14\n", ""},

      {"nested_called_while_parent_live", R"(
int Parent(int A)
{
    int v = A;
    volatile int N() { return v * 2; }
    return N() + 1;
}
int main() { printf("%d\n", Parent(20)); return 0; }
)",
       "41\n", ""},

      {"nested_passed_down_while_parent_live", R"(
int Apply(int(int) f, int x) { return f(x); }
int Parent()
{
    int bias = 3;
    volatile int N(int x) { return x + bias; }
    return Apply(N, 4);
}
int main() { printf("%d\n", Parent()); return 0; }
)",
       "7\n", ""},

      {"nested_escapes_through_global", R"(
void() Escaped;
void Parent()
{
    int v = 5;
    volatile void N() { printf("v=%d\n", v); }
    N();
    Escaped = N;
}
int main() { Parent(); Escaped(); printf("unreachable\n"); return 0; }
)",
       "v=5\n", "E_ESCAPED_NESTED"},

      {"nested_escapes_through_return", R"(
int() Parent()
{
    int v = 8;
    volatile int N() { return v; }
    return N;
}
int main() { int() n = Parent(); printf("before\n"); return n(); }
)",
       "before\n", "E_ESCAPED_NESTED"},

      {"closure_calls_dead_nested_sibling", R"(
void() Make()
{
    volatile void N() { printf("nested\n"); }
    void C() { printf("closure\n"); N(); }
    C();
    return C;
}
int main() { void() c = Make(); c(); return 0; }
)",
       "closure\nnested\nclosure\n", "E_ESCAPED_NESTED"},

      {"nested_from_outer_recursion_level", R"(
int() Keep;
int Walk(int depth)
{
    volatile int N() { return depth; }
    if (depth == 0) { Keep = N; return Walk(1); }
    return Keep() * 10 + N();
}
int main() { printf("%d\n", Walk(0)); Keep(); return 0; }
)",
       "1\n", "E_ESCAPED_NESTED"},

      {"closure_outlives_many_activations", R"(
int() Last;
void Make(int i)
{
    int sq = i * i;
    int C() { return sq; }
    Last = C;
}
int main()
{
    int sum = 0;
    for (int i = 1; i <= 5; i++) { Make(i); sum = sum + Last(); }
    printf("%d %d\n", sum, Last());
    return 0;
}
)",
       "55 25\n", ""},

      {"closure_never_marked_escaped", R"(
int() Escaped;
void Parent()
{
    int hits = 0;
    int C() { hits++; return hits; }
    C();
    Escaped = C;
}
int main() { Parent(); Escaped(); printf("%d\n", Escaped()); return 0; }
)",
       "3\n", ""},
  };
  return kScenarios;
}

}  // namespace atc::testing
