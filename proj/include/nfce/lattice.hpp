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

#ifndef NFCE_LATTICE_HPP
#define NFCE_LATTICE_HPP

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace nfce
{
    using cdouble = std::complex<double>;

    // Number of lattice dimensions: (n_rx, n_ry, n_tx, n_ty, n_f)
    inline constexpr int kDims = 5;

    // Dimension slots in the canonical layout
    enum Dim : int
    {
        kRxX = 0,
        kRxY = 1,
        kTxX = 2,
        kTxY = 3,
        kFreq = 4
    };

    // Extent of each lattice dimension
    using Shape = std::array<int, kDims>;

    // A point of the lattice, or a polynomial degree multi-index
    using MultiIndex = std::array<int, kDims>;

    std::size_t element_count(const Shape &shape);

    // Row-major flat offset of n in shape (last dimension fastest)
    std::size_t flat_index(const Shape &shape, const MultiIndex &n);

    // Inverse of flat_index
    MultiIndex unflatten(const Shape &shape, std::size_t offset);

    // Advances n to the next lattice point in row-major order; false after the last one
    bool next_index(const Shape &shape, MultiIndex &n);

    int total_degree(const MultiIndex &m);

    // m ⊂ [N]: every component of m is strictly smaller than the matching extent
    bool fits_within(const MultiIndex &m, const Shape &shape);

    std::string to_string(const MultiIndex &m);

    // Complex samples on a 5-D rectangular lattice, stored row-major.
    // Serves both as channel tensor h(n) / observation y(n) and as working
    // signal of the phase estimator.
    class ComplexLattice
    {
    public:
        ComplexLattice() = default;
        explicit ComplexLattice(const Shape &shape, cdouble fill = cdouble(0.0, 0.0));
        ComplexLattice(const Shape &shape, std::vector<cdouble> values);

        const Shape &shape() const { return shape_; }
        std::size_t size() const { return values_.size(); }

        cdouble &operator[](std::size_t i) { return values_[i]; }
        const cdouble &operator[](std::size_t i) const { return values_[i]; }

        cdouble &at(const MultiIndex &n) { return values_[flat_index(shape_, n)]; }
        const cdouble &at(const MultiIndex &n) const { return values_[flat_index(shape_, n)]; }

        std::span<cdouble> values() & { return values_; }
        std::span<const cdouble> values() const & { return values_; }
        // Temporaries hand over their storage so range-for over f().values() stays valid
        std::vector<cdouble> values() && { return std::move(values_); }

        bool operator==(const ComplexLattice &other) const = default;

    private:
        Shape shape_{1, 1, 1, 1, 1};
        std::vector<cdouble> values_ = std::vector<cdouble>(1);
    };

    using ChannelTensor = ComplexLattice;
    using LatticeSignal = ComplexLattice;

} // namespace nfce

#endif
