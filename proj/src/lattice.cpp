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

#include "nfce/lattice.hpp"

#include <numeric>
#include <stdexcept>

namespace nfce
{
    std::size_t element_count(const Shape &shape)
    {
        std::size_t count = 1;
        for (int extent : shape)
        {
            if (extent < 1)
                throw std::invalid_argument("lattice extents must be >= 1");
            count *= static_cast<std::size_t>(extent);
        }
        return count;
    }

    std::size_t flat_index(const Shape &shape, const MultiIndex &n)
    {
        std::size_t offset = 0;
        for (int d = 0; d < kDims; ++d)
            offset = offset * static_cast<std::size_t>(shape[d]) + static_cast<std::size_t>(n[d]);
        return offset;
    }

    MultiIndex unflatten(const Shape &shape, std::size_t offset)
    {
        MultiIndex n{};
        for (int d = kDims - 1; d >= 0; --d)
        {
            n[d] = static_cast<int>(offset % static_cast<std::size_t>(shape[d]));
            offset /= static_cast<std::size_t>(shape[d]);
        }
        return n;
    }

    bool next_index(const Shape &shape, MultiIndex &n)
    {
        for (int d = kDims - 1; d >= 0; --d)
        {
            if (++n[d] < shape[d])
                return true;
            n[d] = 0;
        }
        return false;
    }

    int total_degree(const MultiIndex &m)
    {
        return std::accumulate(m.begin(), m.end(), 0);
    }

    bool fits_within(const MultiIndex &m, const Shape &shape)
    {
        for (int d = 0; d < kDims; ++d)
            if (m[d] < 0 || m[d] >= shape[d])
                return false;
        return true;
    }

    std::string to_string(const MultiIndex &m)
    {
        std::string s = "(";
        for (int d = 0; d < kDims; ++d)
        {
            if (d > 0)
                s += ',';
            s += std::to_string(m[d]);
        }
        return s + ')';
    }

    ComplexLattice::ComplexLattice(const Shape &shape, cdouble fill)
        : shape_(shape), values_(element_count(shape), fill)
    {
    }

    ComplexLattice::ComplexLattice(const Shape &shape, std::vector<cdouble> values)
        : shape_(shape), values_(std::move(values))
    {
        if (values_.size() != element_count(shape_))
            throw std::invalid_argument("value count does not match lattice shape");
    }

} // namespace nfce
