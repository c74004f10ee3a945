// Copyright 2026 The qwalk Authors
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

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qwalk::cli {

enum ExitCode : int {
  kOk = 0,
  kInternalError = 1,
  kInvalidArguments = 2,
  kBoundaryOverflow = 3,
};

/// Runs one command. `args` excludes the program name, e.g.
/// {"walk", "--steps", "20", "--out", "walk.csv"}.
///
/// Commands: walk, widthscan, electric, lg, hom, collide. Every command takes
/// --out and --seed, and --config FILE.json whose keys are long flag names
/// without the leading dashes; flags given explicitly on the command line
/// take precedence over the file. Unknown keys are rejected.
///
/// Outputs are computed in full before anything is written. Each file
/// carries the version, the command, the resolved config and the seed: CSV
/// files on a leading "# " comment line, JSON files as fields.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qwalk::cli
