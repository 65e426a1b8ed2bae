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

#ifndef NFCE_PPE_HPP
#define NFCE_PPE_HPP

#include "nfce/binomial.hpp"
#include "nfce/lattice.hpp"
#include "nfce/wavefront.hpp"

#include <vector>

namespace nfce
{
    // (D_d s)(n) = s(n + e_d) conj(s(n)); the extent along d shrinks by one.
    // Throws std::invalid_argument when the dimension has a single sample left.
    LatticeSignal diff(const LatticeSignal &signal, int d);

    // m_d applications of diff along every dimension d
    LatticeSignal diff_multi(const LatticeSignal &signal, const MultiIndex &m);

    // Averaging weights u_m(n) on [N - m] for the m-th difference of an N-shaped signal.
    // Separable: u_m(n) = prod_d C(n_d + m_d, m_d) C(N_d - n_d - 1, m_d) / C(N_d + m_d, 2 m_d + 1)
    struct WeightTable
    {
        MultiIndex m{};
        Shape signal_shape{1, 1, 1, 1, 1}; // N
        Shape domain{1, 1, 1, 1, 1};       // N - m
        std::array<std::vector<double>, kDims> factors;

        double at(const MultiIndex &n) const;

        // All weights, row-major over the domain
        std::vector<double> values() const;
    };

    WeightTable weights(const MultiIndex &m, const Shape &N);

    // Weighted circular mean mu_m(s) of an m-th difference signal. The plain sum of the
    // unit-modulus projections sets a pilot direction; the u_m-weighted wrapped
    // residuals around it refine the phase. Throws std::domain_error when the
    // projected sum vanishes.
    cdouble circ_avg(const LatticeSignal &signal, const MultiIndex &m);

    // One peeling step: (1/2pi) arg(mu_m(D^m y)) in (-1/2, 1/2]
    double estimate_coefficient(const LatticeSignal &work, const MultiIndex &m);

    // y(n) <- y(n) exp(-j 2 pi a p_m(n))
    void remove_term(LatticeSignal &work, const MultiIndex &m, double a);

    // Sequential estimation of all coefficients in the degree set, highest degree first.
    // The lattice of `y` must match the degree set's shape.
    PolyPhaseModel estimate(const LatticeSignal &y, const DegreeSet &degrees);

    // exp(j 2 pi sum_m a_m p_m(n)) over the model's lattice
    ChannelTensor reconstruct(const PolyPhaseModel &model);

    // Evenly strided sublattice of a full lattice: full index = offset + stride * sub index
    struct SublatticeMap
    {
        Shape full_shape{1, 1, 1, 1, 1};
        MultiIndex offset{};
        MultiIndex stride{1, 1, 1, 1, 1};
    };

    // Re-expands a model fitted in sublattice coordinates into the basis of the full
    // lattice. Exact: the polynomial is unchanged, only its coordinates move.
    PolyPhaseModel rebase(const PolyPhaseModel &sub_model, const SublatticeMap &map);

} // namespace nfce

#endif
