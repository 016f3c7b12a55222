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


// Constructed closure and nested-procedure lifetime programs.

#ifndef ATC_TESTS_SCENARIOS_HPP_
#define ATC_TESTS_SCENARIOS_HPP_

#include <string>
#include <vector>

namespace atc::testing {

struct LivenessScenario {
  std::string name;
  std::string source;
  std::string expected_out;
  std::string expected_error;  // empty when the program must finish normally
};

const std::vector<LivenessScenario>& LivenessScenarios();

}  // namespace atc::testing

#endif  // ATC_TESTS_SCENARIOS_HPP_
