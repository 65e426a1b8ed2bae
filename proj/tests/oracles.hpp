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

#ifndef NFCE_TESTS_ORACLES_HPP
#define NFCE_TESTS_ORACLES_HPP

// Independent reference computations used only by the tests. Nothing here calls into the
// library routines they are compared against.

#include "nfce/geometry.hpp"
#include "nfce/wavefront.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace oracle
{
    using nfce::Mat3;
    using nfce::Vec3;

    inline constexpr double pi = 3.14159265358979323846;

    // exp(A) by its power series, 30 terms
    inline Mat3 expm_series(const Mat3 &A)
    {
        Mat3 sum = Mat3::Identity();
        Mat3 term = Mat3::Identity();
        for (int k = 1; k < 30; ++k)
        {
            term = term * A / static_cast<double>(k);
            sum += term;
        }
        return sum;
    }

    inline Mat3 skew(const Vec3 &w)
    {
        Mat3 m;
        m << 0.0, -w(2), w(1), w(2), 0.0, -w(0), -w(1), w(0), 0.0;
        return m;
    }

    // Closed-form Legendre polynomials up to degree 5
    inline double legendre_closed(int ell, double x)
    {
        const double x2 = x * x;
        switch (ell)
        {
        case 0:
            return 1.0;
        case 1:
            return x;
        case 2:
            return 0.5 * (3.0 * x2 - 1.0);
        case 3:
            return 0.5 * (5.0 * x2 * x - 3.0 * x);
        case 4:
            return (35.0 * x2 * x2 - 30.0 * x2 + 3.0) / 8.0;
        case 5:
            return (63.0 * x2 * x2 * x - 70.0 * x2 * x + 15.0 * x) / 8.0;
        default:
            throw std::invalid_argument("closed form available up to degree 5");
        }
    }

    // First omitted term of the distance expansion, written out per degree
    inline double dominant_phase_error(int L, double D, double lambda, double x, double t)
    {
        const double k = 2.0 * pi * D / lambda;
        switch (L)
        {
        case 1:
            return k * 0.5 * std::abs(1.0 - x * x) * t * t;
        case 2:
            return k * 0.5 * std::abs(x - x * x * x) * t * t * t;
        case 3:
            return k * 0.125 * std::abs(1.0 - 6.0 * x * x + 5.0 * x * x * x * x) * t * t * t * t;
        default:
            throw std::invalid_argument("L in {1, 2, 3}");
        }
    }

    // Binomial coefficient by direct product, nonnegative integer arguments
    inline double choose(long long n, int k)
    {
        if (k < 0 || n < 0 || k > n)
            return 0.0;
        double r = 1.0;
        for (int i = 1; i <= k; ++i)
            r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
        return r;
    }

    // Transmit and receive antenna coordinates straight from the array definition
    inline Vec3 tx_position(const nfce::ArraySpec &s, int ix, int iy)
    {
        return Vec3(s.dtx * (ix - (s.ntx - 1) / 2.0), s.dty * (iy - (s.nty - 1) / 2.0), 0.0);
    }

    inline Vec3 rx_position(const nfce::ArraySpec &s, const nfce::GeometryPose &p, int ix, int iy)
    {
        const Vec3 local(s.drx * (ix - (s.nrx - 1) / 2.0), s.dry * (iy - (s.nry - 1) / 2.0), 0.0);
        return p.r + p.R * local;
    }

    inline double distance(const nfce::ArraySpec &s, const nfce::GeometryPose &p, int tx, int ty, int rx, int ry)
    {
        const Vec3 d = rx_position(s, p, rx, ry) - tx_position(s, tx, ty);
        return std::sqrt(d(0) * d(0) + d(1) * d(1) + d(2) * d(2));
    }

    // Phase in cycles of a polynomial model at one lattice point, by direct summation
    inline double phase_cycles(const nfce::PolyPhaseModel &model, const nfce::MultiIndex &n)
    {
        double x = 0.0;
        for (std::size_t i = 0; i < model.degrees.size(); ++i)
        {
            double p = model.coefficients[i];
            for (int d = 0; d < nfce::kDims; ++d)
                p *= choose(n[d], model.degrees.degrees[i][d]);
            x += p;
        }
        return x;
    }

    // Model with coefficients drawn uniformly from [-bound, bound]
    inline nfce::PolyPhaseModel random_model(int L, const nfce::Shape &shape, double bound, std::mt19937_64 &rng)
    {
        nfce::PolyPhaseModel m;
        m.degrees = nfce::build_degree_set(L, shape);
        std::uniform_real_distribution<double> u(-bound, bound);
        for (std::size_t i = 0; i < m.degrees.size(); ++i)
            m.coefficients.push_back(u(rng));
        return m;
    }

} // namespace oracle

#endif
