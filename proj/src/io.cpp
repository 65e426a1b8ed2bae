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

#include "nfce/io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

namespace nfce
{
    namespace
    {
        template <typename T>
        T to_little(T v)
        {
            if constexpr (std::endian::native == std::endian::little)
                return v;
            unsigned char b[sizeof(T)];
            std::memcpy(b, &v, sizeof(T));
            for (std::size_t i = 0; i < sizeof(T) / 2; ++i)
                std::swap(b[i], b[sizeof(T) - 1 - i]);
            std::memcpy(&v, b, sizeof(T));
            return v;
        }

        template <typename T>
        void put(std::ostream &os, T v)
        {
            v = to_little(v);
            os.write(reinterpret_cast<const char *>(&v), sizeof(T));
        }

        template <typename T>
        T get(std::istream &is, const std::filesystem::path &path)
        {
            T v;
            if (!is.read(reinterpret_cast<char *>(&v), sizeof(T)))
                throw IoError("truncated channel file: " + path.string());
            return to_little(v);
        }
    } // namespace

    void write_channel(const std::filesystem::path &path, const ChannelTensor &h)
    {
        std::ofstream os(path, std::ios::binary | std::ios::trunc);
        if (!os)
            throw IoError("cannot open for writing: " + path.string());
        for (int d = 0; d < kDims; ++d)
            put<std::int64_t>(os, h.shape()[d]);
        for (const auto &v : h.values())
        {
            put<double>(os, v.real());
            put<double>(os, v.imag());
        }
        os.flush();
        if (!os)
            throw IoError("write failed: " + path.string());
    }

    ChannelTensor read_channel(const std::filesystem::path &path)
    {
        std::ifstream is(path, std::ios::binary);
        if (!is)
            throw IoError("cannot open for reading: " + path.string());
        Shape shape{};
        for (int d = 0; d < kDims; ++d)
        {
            const auto n = get<std::int64_t>(is, path);
            if (n < 1 || n > (1 << 24))
                throw IoError("invalid extent in channel file header: " + path.string());
            shape[d] = static_cast<int>(n);
        }
        ChannelTensor h(shape);
        for (std::size_t i = 0; i < h.size(); ++i)
        {
            const double re = get<double>(is, path);
            const double im = get<double>(is, path);
            h[i] = cdouble(re, im);
        }
        if (is.peek() != std::char_traits<char>::eof())
            throw IoError("trailing bytes in channel file: " + path.string());
        return h;
    }

    void write_text(const std::filesystem::path &path, const std::string &text)
    {
        std::ofstream os(path, std::ios::binary | std::ios::trunc);
        if (!os)
            throw IoError("cannot open for writing: " + path.string());
        os << text;
        os.flush();
        if (!os)
            throw IoError("write failed: " + path.string());
    }

    std::string read_text(const std::filesystem::path &path)
    {
        std::ifstream is(path, std::ios::binary);
        if (!is)
            throw IoError("cannot open for reading: " + path.string());
        std::ostringstream ss;
        ss << is.rdbuf();
        return ss.str();
    }

} // namespace nfce
