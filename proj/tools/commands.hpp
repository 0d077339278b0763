// SPDX-License-Identifier: Apache-2.0
//
// holoris - holographic self-controlled RIS simulation library
// Copyright (C) 2026 The holoris authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <iosfwd>

namespace holoris::cli
{
    // Exit codes of the holoris executable.
    enum ExitCode : int
    {
        exit_ok = 0,
        exit_failure = 1,      // any other error
        exit_usage = 2,        // invalid command line or configuration
        exit_io = 3,           // unreadable or malformed file, unwritable output
        exit_no_estimate = 4,  // NoPeak or AllCandidatesInfeasible
        exit_sector = 5        // SectorAmbiguous or SectorEmpty
    };

    // Entry point of the command-line interface; argv[0] is the program name.
    int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);
}
