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

#ifndef NFCE_IO_HPP
#define NFCE_IO_HPP

#include "nfce/lattice.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>

namespace nfce
{
    struct IoError : std::runtime_error
    {
        using std::runtime_error::runtime_error;
    };

    // Binary channel file: five little-endian int64 extents (rx_x, rx_y, tx_x, tx_y, f),
    // then the entries row-major as little-endian float64 pairs (re, im).
    void write_channel(const std::filesystem::path &path, const ChannelTensor &h);
    ChannelTensor read_channel(const std::filesystem::path &path);

    // Writes the whole string or throws IoError
    void write_text(const std::filesystem::path &path, const std::string &text);
    std::string read_text(const std::filesystem::path &path);

} // namespace nfce

#endif
