// Copyright 2026 The homsim Authors
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

#ifndef HOMSIM_COMMANDS_H
#define HOMSIM_COMMANDS_H

#include <iosfwd>
#include <string>
#include <vector>

namespace homsim {

enum ExitCode : int {
    kExitOk = 0,
    kExitValidation = 1,
    kExitFitFailed = 2,
};

/// Runs one CLI invocation. args excludes the program name. Results go to
/// --out (or `out`); diagnostics go to `err` as lines of the form
/// "homsim: error[E_CODE]: message".
///
/// Subcommands: delay-scan, phase-scan, multimode, fit, retrieve.
int run_command(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace homsim

#endif
