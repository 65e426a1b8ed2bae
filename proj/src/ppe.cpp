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

#include "nfce/ppe.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace nfce
{
    LatticeSignal diff(const LatticeSignal &signal, int d)
    {
        if (d < 0 || d >= kDims)
            throw std::invalid_argument("dimension index out of range");
        const Shape &in = signal.shape();
        if (in[d] < 2)
            throw std::invalid_argument("cannot difference dimension " + std::to_string(d) + ": extent exhausted");

        Shape out_shape = in;
        out_shape[d] -= 1;

        std::size_t outer = 1, inner = 1;
        for (int k = 0; k < d; ++k)
            outer *= static_cast<std::size_t>(in[k]);
        for (int k = d + 1; k < kDims; ++k)
            inner *= static_cast<std::size_t>(in[k]);
        const std::size_t len = static_cast<std::size_t>(in[d]);

        LatticeSignal out(out_shape);
        std::size_t w = 0;
        for (std::size_t o = 0; o < outer; ++o)
        {
            const std::size_t base = o * len * inner;
            for (std::size_t i = 0; i + 1 < len; ++i)
            {
                const std::size_t lo = base + i * inner;
                const std::size_t hi = lo + inner;
                for (std::size_t j = 0; j < inner; ++j)
                    out[w++] = signal[hi + j] * std::conj(signal[lo + j]);
            }
        }
        return out;
    }

    LatticeSignal diff_multi(const LatticeSignal &signal, const MultiIndex &m)
    {
        LatticeSignal s = signal;
        for (int d = 0; d < kDims; ++d)
        {
            if (m[d] < 0)
                throw std::invalid_argument("negative difference order");
            for (int k = 0; k < m[d]; ++k)
                s = diff(s, d);
        }
        return s;
    }

    double WeightTable::at(const MultiIndex &n) const
    {
        double u = 1.0;
        for (int d = 0; d < kDims; ++d)
            u *= factors[d][static_cast<std::size_t>(n[d])];
        return u;
    }

    std::vector<double> WeightTable::values() const
    {
        std::vector<double> out;
        out.reserve(element_count(domain));
        MultiIndex n{};
        do
            out.push_back(at(n));
        while (next_index(domain, n));
        return out;
    }

    WeightTable weights(const MultiIndex &m, const Shape &N)
    {
        if (!fits_within(m, N))
            throw std::invalid_argument("degree " + to_string(m) + " does not fit the lattice");
        WeightTable table;
        table.m = m;
        table.signal_shape = N;
        for (int d = 0; d < kDims; ++d)
        {
            const int md = m[d];
            const int extent = N[d] - md;
            table.domain[d] = extent;
            const double denom = binom_general(N[d] + md, 2 * md + 1);
            auto &f = table.factors[d];
            f.resize(static_cast<std::size_t>(extent));
            for (int n = 0; n < extent; ++n)
                f[static_cast<std::size_t>(n)] = binom_general(n + md, md) * binom_general(N[d] - n - 1, md) / denom;
        }
        return table;
    }

    cdouble circ_avg(const LatticeSignal &signal, const MultiIndex &m)
    {
        Shape N = signal.shape();
        for (int d = 0; d < kDims; ++d)
            N[d] += m[d];
        const WeightTable u = weights(m, N);

        cdouble pilot(0.0, 0.0);
        for (const auto &v : signal.values())
        {
            const double mag = std::abs(v);
            if (mag > 0.0)
                pilot += v / mag;
        }
        const double pilot_mag = std::abs(pilot);
        if (!(pilot_mag > 0.0) || !std::isfinite(pilot_mag))
            throw std::domain_error("circular average undefined: projected samples sum to zero");
        const cdouble pilot_conj = std::conj(pilot);

        double residual = 0.0;
        MultiIndex n{};
        std::size_t i = 0;
        do
            residual += u.at(n) * std::arg(signal[i++] * pilot_conj);
        while (next_index(signal.shape(), n));

        return pilot / pilot_mag * std::polar(1.0, residual);
    }

    double estimate_coefficient(const LatticeSignal &work, const MultiIndex &m)
    {
        const cdouble mu = circ_avg(diff_multi(work, m), m);
        return std::arg(mu) / (2.0 * kPi);
    }

    void remove_term(LatticeSignal &work, const MultiIndex &m, double a)
    {
        const Shape &N = work.shape();
        std::array<std::vector<double>, kDims> table;
        for (int d = 0; d < kDims; ++d)
        {
            table[d].resize(static_cast<std::size_t>(N[d]));
            for (int n = 0; n < N[d]; ++n)
                table[d][static_cast<std::size_t>(n)] = binom_general(n, m[d]);
        }

        MultiIndex n{};
        std::size_t i = 0;
        do
        {
            double p = 1.0;
            for (int d = 0; d < kDims; ++d)
                p *= table[d][static_cast<std::size_t>(n[d])];
            double cycles = a * p;
            cycles -= std::round(cycles);
            work[i++] *= std::polar(1.0, -2.0 * kPi * cycles);
        } while (next_index(N, n));
    }

    PolyPhaseModel estimate(const LatticeSignal &y, const DegreeSet &degrees)
    {
        if (y.shape() != degrees.shape)
            throw std::invalid_argument("observation lattice does not match the degree set");
        for (const auto &m : degrees.degrees)
            if (!fits_within(m, y.shape()))
                throw std::invalid_argument("degree " + to_string(m) + " does not fit the observation lattice");

        PolyPhaseModel model;
        model.degrees = degrees;
        model.coefficients.resize(degrees.size());

        LatticeSignal work = y;
        for (std::size_t i = 0; i < degrees.size(); ++i)
        {
            const MultiIndex &m = degrees.degrees[i];
            const double a = estimate_coefficient(work, m);
            model.coefficients[i] = a;
            if (i + 1 < degrees.size())
                remove_term(work, m, a);
        }
        return model;
    }

    ChannelTensor reconstruct(const PolyPhaseModel &model)
    {
        return approx_channel(model);
    }

    PolyPhaseModel rebase(const PolyPhaseModel &sub_model, const SublatticeMap &map)
    {
        sub_model.validate();
        const Shape &sub = sub_model.shape();
        for (int d = 0; d < kDims; ++d)
        {
            if (map.stride[d] < 1 || map.offset[d] < 0)
                throw std::invalid_argument("sublattice stride must be >= 1 and offset >= 0");
            if (map.offset[d] + map.stride[d] * (sub[d] - 1) >= map.full_shape[d])
                throw std::invalid_argument("sublattice does not fit inside the full lattice");
        }

        const MultiIndex mx = sub_model.degrees.max_degree();

        // change[d][m][k]: C((n - o)/s, m) = sum_k change[d][m][k] C(n, k), by Newton forward differences at n = 0
        std::array<std::vector<std::vector<double>>, kDims> change;
        for (int d = 0; d < kDims; ++d)
        {
            const double o = map.offset[d], s = map.stride[d];
            const auto top = static_cast<std::size_t>(mx[d]);
            change[d].assign(top + 1, std::vector<double>(top + 1, 0.0));
            for (std::size_t m = 0; m <= top; ++m)
                for (std::size_t k = 0; k <= m; ++k)
                {
                    double acc = 0.0;
                    for (std::size_t i = 0; i <= k; ++i)
                    {
                        const double sign = ((k - i) % 2 == 0) ? 1.0 : -1.0;
                        acc += sign * binom_general(static_cast<long long>(k), static_cast<int>(i)) *
                               binom_real((static_cast<double>(i) - o) / s, static_cast<int>(m));
                    }
                    change[d][m][k] = acc;
                }
        }

        PolyPhaseModel full;
        full.degrees = sub_model.degrees;
        full.degrees.shape = map.full_shape;
        full.coefficients.assign(full.degrees.size(), 0.0);

        for (std::size_t kk = 0; kk < full.degrees.size(); ++kk)
        {
            const MultiIndex &k = full.degrees.degrees[kk];
            double acc = 0.0;
            for (std::size_t mm = 0; mm < sub_model.degrees.size(); ++mm)
            {
                const MultiIndex &m = sub_model.degrees.degrees[mm];
                double w = sub_model.coefficients[mm];
                for (int d = 0; d < kDims && w != 0.0; ++d)
                    w = (k[d] > m[d]) ? 0.0 : w * change[d][static_cast<std::size_t>(m[d])][static_cast<std::size_t>(k[d])];
                acc += w;
            }
            full.coefficients[kk] = acc;
        }
        full.validate();
        return full;
    }

} // namespace nfce
