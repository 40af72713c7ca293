// Copyright 2026 The vocalaffect Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Writes the twelve-file synthetic demo corpus used by the examples and tests.

#include <exception>
#include <iostream>

#include "vocalaffect/demo_corpus.hpp"

int main(int argc, char **argv) {
  if (argc != 2) {
    std::cerr << "usage: make_demo_corpus <output-dir>\n";
    return 1;
  }
  try {
    for (const auto &p : vocalaffect::synth::WriteDemoCorpus(argv[1])) std::cout << p << "\n";
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
