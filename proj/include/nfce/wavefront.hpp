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

#ifndef NFCE_WAVEFRONT_HPP
#define NFCE_WAVEFRONT_HPP

#include "nfce/geometry.hpp"
#include "nfce/lattice.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace nfce
{
    // Legendre polynomial P_ell(x), three-term recurrence
    double legendre(int ell, double x);

    // Coefficient of (-t)^ell in sqrt(1 + 2 x t + t^2), ell >= 2:
    // (P_{ell-2}(x) - P_ell(x)) / (2 ell - 1)
    double sqrt_series_coeff(int ell, double x);

    // Degree-L Taylor truncation of g(delta) = |r_hat + delta| around delta = 0
    double g_taylor(int L, const Vec3 &r_hat, const Vec3 &delta);

    // Normalized antenna-pair offset ((r_nr - r) - t_nt) / D
    Vec3 delta(const ArraySpec &spec, const GeometryPose &pose, const AntennaIndex &n_t, const AntennaIndex &n_r);

    // Set of polynomial degrees kept in the phase model.
    //
    // Spatial multi-indices (first four components) have total degree <= L with
    // zeros on singleton dimensions; the frequency component ranges over {0, 1}
    // when the lattice has more than one frequency. Sorted by total degree
    // descending, ties broken lexicographically descending, which is the
    // processing order of the peeling estimator.
    struct DegreeSet
    {
        int L = 0;
        Shape shape{1, 1, 1, 1, 1};
        std::vector<MultiIndex> degrees;
        std::size_t spatial_cardinality = 0;

        std::size_t size() const { return degrees.size(); }
        std::optional<std::size_t> position(const MultiIndex &m) const;
        bool contains(const MultiIndex &m) const { return position(m).has_value(); }

        // Largest degree used along each dimension
        MultiIndex max_degree() const;
    };

    // Throws std::invalid_argument when a non-singleton dimension has fewer than L + 1 samples
    DegreeSet build_degree_set(int L, const Shape &shape);
    DegreeSet build_degree_set(int L, const ArraySpec &spec);

    // |L| = C(L + k, k) with k the number of non-singleton spatial dimensions
    std::size_t spatial_cardinality(int L, int nonsingleton_spatial_dims);

    // Multidimensional polynomial phase x(n) = sum_m a_m p_m(n), coefficients in cycles.
    struct PolyPhaseModel
    {
        DegreeSet degrees;
        std::vector<double> coefficients; // aligned with degrees.degrees

        const Shape &shape() const { return degrees.shape; }

        // a_m, zero outside the degree set
        double coefficient(const MultiIndex &m) const;

        double phase_cycles(const MultiIndex &n) const;

        // x(n) for every lattice point, row-major
        std::vector<double> phase_cycles_lattice() const;

        void validate() const;
    };

    // Exact expansion of the truncated wavefront phase -(D/lambda) g_L(delta(n)) (1 + df (n_f - c))
    // into the polynomial basis, via a dense solve on the minimal index subgrid.
    PolyPhaseModel coefficients_from_geometry(const ArraySpec &spec, const GeometryPose &pose, int L);

    // exp(j 2 pi x(n)) over the full lattice
    ChannelTensor approx_channel(const PolyPhaseModel &model);

    // Worst-case phase error [rad] of the degree-(L+1) term dropped by a degree-L expansion, L in {1,2,3}
    double truncation_bound(int L, double D, double lambda, double delta_norm);

    // Magnitude [rad] of the exact degree-(L+1) term for a given direction and offset
    double dominant_truncation_error(int L, double D, double lambda, const Vec3 &r_hat, const Vec3 &delta);

    // 2 (L_t + L_r)^2 / lambda
    double fraunhofer_distance(double L_t, double L_r, double lambda);

} // namespace nfce

#endif
