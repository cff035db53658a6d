// Copyright 2026 The lindblad-lab Authors
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

#pragma once

#include <functional>
#include <string>
#include <vector>

namespace lindblad::cli {

struct RunResult {
  int exit_code = 0;
  std::string out;  // stdout payload (empty when --out was given)
  std::string err;  // diagnostics; structured error JSON on failure
};

// args excludes the program name; read_stdin supplies `--input -`.
RunResult run(const std::vector<std::string>& args, const std::function<std::string()>& read_stdin = {});

}  // namespace lindblad::cli
