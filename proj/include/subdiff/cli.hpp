// Copyright 2026-present the subdiff project
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

#include <string>
#include <vector>

namespace subdiff {

// Whole CLI as a library call so tests can drive it in-process.  `args` is
// argv without the program name.  Returns the process exit code:
//   0  success
//   1  validation suite reported failures
//   2  usage / configuration error
//   3  numerical failure (quadrature, contour, or grid diagnostics)
int cli_main(const std::vector<std::string>& args);

}  // namespace subdiff
