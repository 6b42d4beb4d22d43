// SPDX-License-Identifier: Apache-2.0
//
// beamforge - beam pattern synthesis for analog/hybrid beamforming arrays
// Copyright (C) 2026 The beamforge authors
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
#ifndef BEAMFORGE_CLI_HPP
#define BEAMFORGE_CLI_HPP

#include <iosfwd>

namespace beamforge
{
    // Runs one subcommand. Returns 0 on success, 1 on validation errors and
    // usage errors, 2 on runtime failures.
    int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);
}

#endif
