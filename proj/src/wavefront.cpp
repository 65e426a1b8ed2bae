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

#include "nfce/wavefront.hpp"
#include "nfce/binomial.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

namespace nfce
{
    double legendre(int ell, double x)
    {
        if (ell < 0)
            throw std::invalid_argument("Legendre degree must be >= 0");
        if (ell == 0)
            return 1.0;
        double p_prev = 1.0, p = x;
        for (int n = 1; n < ell; ++n)
        {
            // (n+1) P_{n+1} = (2n+1) x P_n - n P_{n-1}
            const double p_next = ((2.0 * n + 1.0) * x * p - n * p_prev) / (n + 1.0);
            p_prev = p;
            p = p_next;
        }
        return p;
    }

    double sqrt_series_coeff(int ell, double x)
    {
        if (ell < 2)
            throw std::invalid_argument("sqrt_series_coeff needs ell >= 2");
        return (legendre(ell - 2, x) - legendre(ell, x)) / (2.0 * ell - 1.0);
    }

    double g_taylor(int L, const Vec3 &r_hat, const Vec3 &delta)
    {
        if (L < 0)
            throw std::invalid_argument("expansion degree must be >= 0");
        const double t = delta.norm();
        if (L == 0 || t == 0.0)
            return 1.0;
        const double proj = r_hat.dot(delta);
        double g = 1.0 + proj;
        const double x = proj / t;
        double minus_t_pow = t * t; // (-t)^ell
        for (int ell = 2; ell <= L; ++ell)
        {
            if (ell > 2)
                minus_t_pow *= -t;
            g += sqrt_series_coeff(ell, x) * minus_t_pow;
        }
        return g;
    }

    Vec3 delta(const ArraySpec &spec, const GeometryPose &pose, const AntennaIndex &n_t, const AntennaIndex &n_r)
    {
        const Vec3 t(spec.dtx * (n_t[0] - 0.5 * (spec.ntx - 1)), spec.dty * (n_t[1] - 0.5 * (spec.nty - 1)), 0.0);
        const Vec3 local(spec.drx * (n_r[0] - 0.5 * (spec.nrx - 1)), spec.dry * (n_r[1] - 0.5 * (spec.nry - 1)), 0.0);
        return (pose.R * local - t) / pose.distance();
    }

    std::optional<std::size_t> DegreeSet::position(const MultiIndex &m) const
    {
        for (std::size_t i = 0; i < degrees.size(); ++i)
            if (degrees[i] == m)
                return i;
        return std::nullopt;
    }

    MultiIndex DegreeSet::max_degree() const
    {
        MultiIndex mx{};
        for (const auto &m : degrees)
            for (int d = 0; d < kDims; ++d)
                mx[d] = std::max(mx[d], m[d]);
        return mx;
    }

    DegreeSet build_degree_set(int L, const Shape &shape)
    {
        if (L < 0)
            throw std::invalid_argument("degree L must be >= 0");
        element_count(shape); // validates extents
        for (int d = 0; d < kFreq; ++d)
            if (shape[d] > 1 && L >= shape[d])
                throw std::invalid_argument("degree L=" + std::to_string(L) + " needs at least " +
                                            std::to_string(L + 1) + " samples along dimension " + std::to_string(d) +
                                            ", got " + std::to_string(shape[d]));

        DegreeSet set;
        set.L = L;
        set.shape = shape;

        std::vector<MultiIndex> spatial;
        MultiIndex m{};
        std::function<void(int, int)> recurse = [&](int d, int budget)
        {
            if (d == kFreq)
            {
                spatial.push_back(m);
                return;
            }
            const int top = shape[d] > 1 ? budget : 0;
            for (int k = 0; k <= top; ++k)
            {
                m[d] = k;
                recurse(d + 1, budget - k);
            }
            m[d] = 0;
        };
        recurse(0, L);
        set.spatial_cardinality = spatial.size();

        const int freq_top = shape[kFreq] > 1 ? 1 : 0;
        for (const auto &s : spatial)
            for (int f = 0; f <= freq_top; ++f)
            {
                MultiIndex full = s;
                full[kFreq] = f;
                set.degrees.push_back(full);
            }

        std::sort(set.degrees.begin(), set.degrees.end(), [](const MultiIndex &a, const MultiIndex &b)
                  {
                      const int da = total_degree(a), db = total_degree(b);
                      if (da != db)
                          return da > db;
                      return a > b; });
        return set;
    }

    DegreeSet build_degree_set(int L, const ArraySpec &spec)
    {
        return build_degree_set(L, spec.shape());
    }

    std::size_t spatial_cardinality(int L, int k)
    {
        return static_cast<std::size_t>(std::llround(binom_general(L + k, k)));
    }

    double PolyPhaseModel::coefficient(const MultiIndex &m) const
    {
        const auto pos = degrees.position(m);
        return pos ? coefficients[*pos] : 0.0;
    }

    double PolyPhaseModel::phase_cycles(const MultiIndex &n) const
    {
        double x = 0.0;
        for (std::size_t i = 0; i < degrees.size(); ++i)
            x += coefficients[i] * basis_value(degrees.degrees[i], n);
        return x;
    }

    std::vector<double> PolyPhaseModel::phase_cycles_lattice() const
    {
        const Shape &N = shape();
        const MultiIndex mx = degrees.max_degree();

        // table[d][k][n] = C(n, k)
        std::array<std::vector<std::vector<double>>, kDims> table;
        for (int d = 0; d < kDims; ++d)
        {
            table[d].resize(static_cast<std::size_t>(mx[d]) + 1);
            for (int k = 0; k <= mx[d]; ++k)
            {
                auto &row = table[d][static_cast<std::size_t>(k)];
                row.resize(static_cast<std::size_t>(N[d]));
                for (int n = 0; n < N[d]; ++n)
                    row[static_cast<std::size_t>(n)] = binom_general(n, k);
            }
        }

        std::vector<double> x(element_count(N), 0.0);
        MultiIndex n{};
        std::size_t i = 0;
        do
        {
            double acc = 0.0;
            for (std::size_t j = 0; j < degrees.size(); ++j)
            {
                const MultiIndex &m = degrees.degrees[j];
                double p = coefficients[j];
                for (int d = 0; d < kDims; ++d)
                    p *= table[d][static_cast<std::size_t>(m[d])][static_cast<std::size_t>(n[d])];
                acc += p;
            }
            x[i++] = acc;
        } while (next_index(N, n));
        return x;
    }

    void PolyPhaseModel::validate() const
    {
        if (coefficients.size() != degrees.size())
            throw std::invalid_argument("coefficient count does not match the degree set");
        for (const auto &m : degrees.degrees)
            if (!fits_within(m, shape()))
                throw std::invalid_argument("degree " + to_string(m) + " does not fit the lattice");
        for (double a : coefficients)
            if (!std::isfinite(a))
                throw std::invalid_argument("non-finite polynomial coefficient");
    }

    PolyPhaseModel coefficients_from_geometry(const ArraySpec &spec, const GeometryPose &pose, int L)
    {
        spec.validate();
        pose.validate();
        PolyPhaseModel model;
        model.degrees = build_degree_set(L, spec);

        const MultiIndex mx = model.degrees.max_degree();
        Shape grid{};
        for (int d = 0; d < kDims; ++d)
            grid[d] = mx[d] + 1;

        const double D = pose.distance();
        const Vec3 r_hat = pose.direction();
        const double scale = D / spec.wavelength();

        auto phase_at = [&](const MultiIndex &n)
        {
            const Vec3 dl = delta(spec, pose, {n[kTxX], n[kTxY]}, {n[kRxX], n[kRxY]});
            return -scale * g_taylor(L, r_hat, dl) * frequency_factor(spec, n[kFreq]);
        };

        // p_m(0) = 0 for m != 0, so the constant coefficient is the phase at the
        // origin; solving for the remainder keeps the right-hand side small.
        const MultiIndex origin{};
        const double base = phase_at(origin);

        const std::size_t rows = element_count(grid);
        const std::size_t cols = model.degrees.size();
        Eigen::MatrixXd B(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
        Eigen::VectorXd rhs(static_cast<Eigen::Index>(rows));
        MultiIndex n{};
        Eigen::Index row = 0;
        do
        {
            for (std::size_t j = 0; j < cols; ++j)
                B(row, static_cast<Eigen::Index>(j)) = basis_value(model.degrees.degrees[j], n);
            rhs(row) = phase_at(n) - base;
            ++row;
        } while (next_index(grid, n));

        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(B);
        if (qr.rank() < static_cast<Eigen::Index>(cols))
            throw std::runtime_error("singular polynomial basis on the index subgrid");
        const Eigen::VectorXd a = qr.solve(rhs);

        model.coefficients.assign(a.data(), a.data() + a.size());
        const auto zero = model.degrees.position(origin);
        model.coefficients[*zero] += base;
        return model;
    }

    ChannelTensor approx_channel(const PolyPhaseModel &model)
    {
        model.validate();
        const auto x = model.phase_cycles_lattice();
        ChannelTensor h(model.shape());
        for (std::size_t i = 0; i < x.size(); ++i)
        {
            const double frac = x[i] - std::round(x[i]);
            h[i] = std::polar(1.0, 2.0 * kPi * frac);
        }
        return h;
    }

    double truncation_bound(int L, double D, double lambda, double delta_norm)
    {
        const double ratio = D / lambda;
        switch (L)
        {
        case 1:
            return kPi * ratio * delta_norm * delta_norm;
        case 2:
            return 2.0 * kPi / (3.0 * std::sqrt(3.0)) * ratio * std::pow(delta_norm, 3);
        case 3:
            return kPi / 4.0 * ratio * std::pow(delta_norm, 4);
        default:
            throw std::invalid_argument("truncation bound is available for L in {1, 2, 3}");
        }
    }

    double dominant_truncation_error(int L, double D, double lambda, const Vec3 &r_hat, const Vec3 &delta)
    {
        if (L < 1)
            throw std::invalid_argument("L must be >= 1");
        const double t = delta.norm();
        if (t == 0.0)
            return 0.0;
        const double x = r_hat.dot(delta) / t;
        return 2.0 * kPi * D / lambda * std::abs(sqrt_series_coeff(L + 1, x)) * std::pow(t, L + 1);
    }

    double fraunhofer_distance(double L_t, double L_r, double lambda)
    {
        if (!(L_t >= 0.0) || !(L_r >= 0.0) || !(lambda > 0.0))
            throw std::invalid_argument("apertures must be >= 0 and lambda > 0");
        const double sum = L_t + L_r;
        return 2.0 * sum * sum / lambda;
    }

} // namespace nfce
