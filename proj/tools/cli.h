// Copyright 2026 The ptk Authors
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

#ifndef PTK_TOOLS_CLI_H
#define PTK_TOOLS_CLI_H

#include <iosfwd>

namespace ptk {

/// Exit codes of the command line tool.
enum ExitCode : int {
    kExitYes = 0,
    kExitNo = 1,
    kExitInputError = 2,
    kExitInvariant = 3,
};

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

}  // namespace ptk

#endif
