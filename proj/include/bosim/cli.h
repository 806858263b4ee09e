// Copyright 2026 The bosim Authors
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

#ifndef BOSIM_CLI_H
#define BOSIM_CLI_H

#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace bosim::cli {

inline constexpr const char *kToolName = "bosim";
inline constexpr const char *kToolVersion = "0.1.0";

enum ExitCode : int {
    kExitOk = 0,
    kExitFailure = 1,  ///< I/O errors and replay mismatches
    kExitSchema = 2,
    kExitDimension = 3,
    kExitDomain = 4,
};

class IoError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Runs one command line (without the program name). Diagnostics go to
/// `err` as a single line; outputs are written only if the command succeeds.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace bosim::cli

#endif
