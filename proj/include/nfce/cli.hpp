// SPDX-License-Identifier: Apache-2.0
//
// nfce: near-field line-of-sight channel synthesis and wavefront estimation
// Copyright (C) 2026 The nfce authors
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

#ifndef NFCE_CLI_HPP
#define NFCE_CLI_HPP

#include <iosfwd>

namespace nfce
{
    inline constexpr int kExitOk = 0;
    inline constexpr int kExitConfig = 2;
    inline constexpr int kExitIo = 3;

    // Version of the CSV and sidecar layouts written by the command-line tool
    inline constexpr int kOutputSchemaVersion = 1;

    // Entry point of the `nfce` tool. Subcommands: synth, estimate, mse, mle, landscape.
    int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace nfce

#endif
