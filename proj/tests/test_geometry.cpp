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

#include "catch_amalgamated.hpp"

#include "nfce/geometry.hpp"
#include "nfce/wavefront.hpp"

#include "oracles.hpp"

#include <algorithm>
#include <cmath>

using namespace nfce;

namespace
{
    double orthonormality_error(const Mat3 &R)
    {
        return (R.transpose() * R - Mat3::Identity()).cwiseAbs().maxCoeff();
    }

    ArraySpec spec_of(int ntx, int nty, int nrx, int nry, int nf = 1)
    {
        return ArraySpec::half_wavelength(ntx, nty, nrx, nry, nf, 30e9, nf > 1 ? 5e-4 : 0.0);
    }
} // namespace

TEST_CASE("array spec validation", "[geometry]")
{
    ArraySpec s = spec_of(4, 1, 2, 2);
    CHECK_NOTHROW(s.validate());
    CHECK(s.total_size() == 16);
    CHECK(s.shape() == Shape{2, 2, 4, 1, 1});
    CHECK(s.wavelength() == Catch::Approx(299792458.0 / 30e9));

    s.dtx = 0.0;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
    s = spec_of(1, 1, 1, 1);
    s.dtx = 0.0; // unused dimension
    CHECK_NOTHROW(s.validate());
    s.nf = 0;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
    s = spec_of(1, 1, 1, 1);
    s.df = -1e-3;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
    s = spec_of(1, 1, 1, 1);
    s.fc = 0.0;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
}

TEST_CASE("Euler rotations", "[geometry]")
{
    CHECK((rotation_from_euler(0, 0, 0) - Mat3::Identity()).cwiseAbs().maxCoeff() == 0.0);
    const Vec3 v = rotation_from_euler(oracle::pi / 2, 0, 0) * Vec3(0, 1, 0);
    CHECK((v - Vec3(0, 0, 1)).norm() < 1e-15);

    Rng rng = make_rng(11);
    std::uniform_real_distribution<double> ang(-oracle::pi, oracle::pi);
    for (int i = 0; i < 200; ++i)
    {
        const Mat3 R = rotation_from_euler(ang(rng), ang(rng), ang(rng));
        CHECK(orthonormality_error(R) < 1e-12);
        CHECK(std::abs(R.determinant() - 1.0) < 1e-12);
    }
    // Composition order z * y * x
    const double a = 0.3, b = -0.7, c = 1.1;
    CHECK((rotation_from_euler(a, b, c) - rotation_z(c) * rotation_y(b) * rotation_x(a)).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("tangent-space rotations agree with the exponential series", "[geometry]")
{
    CHECK((rotation_from_tangent(Vec3::Zero()) - Mat3::Identity()).cwiseAbs().maxCoeff() == 0.0);
    const Vec3 w(0, 0, oracle::pi / 2);
    CHECK((rotation_from_tangent(w) - rotation_from_euler(0, 0, oracle::pi / 2)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((rotation_from_tangent(w) - oracle::expm_series(oracle::skew(w))).cwiseAbs().maxCoeff() < 1e-12);

    Rng rng = make_rng(5);
    std::normal_distribution<double> g(0.0, 1.0);
    for (int i = 0; i < 200; ++i)
    {
        const Vec3 omega(g(rng), g(rng), g(rng));
        const Mat3 R = rotation_from_tangent(omega);
        CHECK((R - oracle::expm_series(oracle::skew(omega))).cwiseAbs().maxCoeff() < 1e-10);
        CHECK(std::abs(R.determinant() - 1.0) < 1e-12);
        CHECK((R * rotation_from_tangent(-omega) - Mat3::Identity()).cwiseAbs().maxCoeff() < 1e-10);
        const Vec3 tiny = 1e-8 * omega;
        CHECK((rotation_from_tangent(tiny) - oracle::expm_series(oracle::skew(tiny))).cwiseAbs().maxCoeff() < 1e-15);
    }
    const Mat3 R0 = rotation_from_euler(0.2, 0.4, -0.1);
    CHECK((rotation_from_tangent(w, R0) - R0 * oracle::expm_series(oracle::skew(w))).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("log map inverts the exponential on SO(3)", "[geometry][property]")
{
    Rng rng = make_rng(17);
    for (int i = 0; i < 1000; ++i)
    {
        const Mat3 R = sample_rotation(rng);
        const Vec3 w = rotation_log(R);
        CHECK(w.norm() <= oracle::pi + 1e-12);
        CHECK((rotation_from_tangent(w) - R).cwiseAbs().maxCoeff() < 1e-8);
    }
    // Angles near 0 and near pi
    for (double theta : {0.0, 1e-9, 1e-5, oracle::pi - 1e-3, oracle::pi - 1e-7, oracle::pi})
    {
        const Vec3 axis = Vec3(1, -2, 0.5).normalized();
        const Mat3 R = rotation_from_tangent(theta * axis);
        CHECK((rotation_from_tangent(rotation_log(R)) - R).cwiseAbs().maxCoeff() < 1e-8);
    }
}

TEST_CASE("right Jacobian maps tangent perturbations", "[geometry]")
{
    // exp(w + e) ~ exp(w) exp(J_r(w) e)
    const Vec3 w(0.4, -0.9, 0.3);
    const Mat3 J = right_jacobian(w);
    const double h = 1e-6;
    for (int k = 0; k < 3; ++k)
    {
        Vec3 e = Vec3::Zero();
        e(k) = h;
        const Mat3 lhs = rotation_from_tangent(w + e);
        const Mat3 rhs = rotation_from_tangent(w) * rotation_from_tangent(J * e);
        CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("antenna positions are centered grids", "[geometry]")
{
    ArraySpec s = spec_of(1, 1, 1, 1);
    GeometryPose p;
    auto pos = antenna_positions(s, p);
    REQUIRE(pos.tx.size() == 1);
    CHECK(pos.tx[0].norm() == 0.0);

    s = spec_of(2, 1, 3, 2);
    s.dtx = 0.005;
    pos = antenna_positions(s, p);
    CHECK(pos.tx[0](0) == Catch::Approx(-0.0025));
    CHECK(pos.tx[1](0) == Catch::Approx(0.0025));

    Rng rng = make_rng(3);
    for (int i = 0; i < 50; ++i)
    {
        const GeometryPose q = sample_pose(rng, 5, 15);
        pos = antenna_positions(s, q);
        Vec3 mean = Vec3::Zero();
        for (const auto &r : pos.rx)
            mean += r;
        mean /= static_cast<double>(pos.rx.size());
        CHECK((mean - q.r).norm() < 1e-12);
    }
}

TEST_CASE("pairwise distances", "[geometry]")
{
    ArraySpec s = spec_of(1, 1, 1, 1);
    GeometryPose p;
    CHECK(pairwise_distance(s, p, {0, 0}, {0, 0}) == 10.0);
    CHECK_THROWS_AS(pairwise_distance(s, p, {1, 0}, {0, 0}), std::out_of_range);

    s = spec_of(3, 3, 5, 1);
    Rng rng = make_rng(9);
    const GeometryPose q = sample_pose(rng, 5, 15);
    CHECK(pairwise_distance(s, q, {1, 1}, {2, 0}) == Catch::Approx(q.distance()).epsilon(1e-14));

    const double bound = (tx_aperture(s) + rx_aperture(s)) / (2.0 * q.distance());
    for (int tx = 0; tx < 3; ++tx)
        for (int ty = 0; ty < 3; ++ty)
            for (int rx = 0; rx < 5; ++rx)
            {
                const double d = pairwise_distance(s, q, {tx, ty}, {rx, 0});
                CHECK(d == Catch::Approx(oracle::distance(s, q, tx, ty, rx, 0)).epsilon(1e-14));
                const Vec3 dl = delta(s, q, {tx, ty}, {rx, 0});
                CHECK(d == Catch::Approx(q.distance() * (q.direction() + dl).norm()).epsilon(1e-12));
                CHECK(dl.norm() <= bound + 1e-15);
            }
}

TEST_CASE("parameter counts per topology pair", "[geometry]")
{
    using T = Topology;
    CHECK(geometric_parameter_count(T::linear, T::single) == 2);
    CHECK(geometric_parameter_count(T::planar, T::single) == 3);
    CHECK(geometric_parameter_count(T::linear, T::linear) == 4);
    CHECK(geometric_parameter_count(T::planar, T::linear) == 5);
    CHECK(geometric_parameter_count(T::planar, T::planar) == 6);
    CHECK(geometric_parameter_count(T::single, T::planar) == 3);
    CHECK(geometric_parameter_count(T::single, T::single) == 1);
    CHECK(topology_of(1, 1) == T::single);
    CHECK(topology_of(1, 4) == T::linear);
    CHECK(topology_of(4, 4) == T::planar);
}

TEST_CASE("alternate parameterization", "[geometry]")
{
    ArraySpec s = spec_of(4, 3, 3, 1);
    auto pos = antenna_positions_alt(s, 10.0, {}, {});
    Vec3 mean = Vec3::Zero();
    for (const auto &r : pos.rx)
        mean += r;
    CHECK((mean / pos.rx.size() - Vec3(0, 0, 10)).norm() < 1e-12);
    CHECK_THROWS_AS(antenna_positions_alt(s, 0.0, {}, {}), std::invalid_argument);

    auto distances = [&](const AntennaPositions &a)
    {
        std::vector<double> d;
        for (const auto &r : a.rx)
            for (const auto &t : a.tx)
                d.push_back((r - t).norm());
        std::sort(d.begin(), d.end());
        return d;
    };

    const EulerAngles tx{0.3, -0.2, 0.9}, rx{0.0, 0.4, 0.5};
    SECTION("z-rotation redundancy")
    {
        // (phi_tz, phi_rz) and (phi_tz - phi_rz, 0) give the same geometry for planar + linear
        ArraySpec lin = spec_of(4, 3, 1, 1);
        lin.nrx = 5; // linear receive array along its x axis
        lin.drx = s.drx;
        const auto a = distances(antenna_positions_alt(lin, 7.0, EulerAngles{0, 0, 0.9}, EulerAngles{0, 0, 0.5}));
        const auto b = distances(antenna_positions_alt(lin, 7.0, EulerAngles{0, 0, 0.4}, EulerAngles{0, 0, 0.0}));
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i)
            CHECK(a[i] == Catch::Approx(b[i]).epsilon(1e-13));
    }
    SECTION("rigid motion to the main frame preserves distances")
    {
        const GeometryPose p = pose_from_alt(7.0, tx, rx);
        const auto a = distances(antenna_positions_alt(s, 7.0, tx, rx));
        const auto b = distances(antenna_positions(s, p));
        for (std::size_t i = 0; i < a.size(); ++i)
            CHECK(a[i] == Catch::Approx(b[i]).epsilon(1e-13));
    }
    SECTION("linear to single needs only the tilt angle")
    {
        ArraySpec ls = spec_of(6, 1, 1, 1);
        const auto a = distances(antenna_positions_alt(ls, 5.0, EulerAngles{0.7, 0.4, 0.0}, EulerAngles{0.2, 0.1, 1.0}));
        const auto b = distances(antenna_positions_alt(ls, 5.0, EulerAngles{0.0, 0.4, 0.0}, EulerAngles{}));
        for (std::size_t i = 0; i < a.size(); ++i)
            CHECK(a[i] == Catch::Approx(b[i]).epsilon(1e-13));
    }
}

TEST_CASE("channel synthesis", "[geometry]")
{
    const ArraySpec s = spec_of(4, 2, 3, 1, 5);
    Rng rng = make_rng(21);
    const GeometryPose p = sample_pose(rng, 5, 15);
    CHECK(frequency_factor(s, 2) == 1.0);

    const ChannelTensor h = synth(s, p);
    const ChannelTensor hu = synth(s, p, Amplitude::unit);
    const double k = 2.0 * oracle::pi / s.wavelength();
    MultiIndex n{};
    do
    {
        const double d = oracle::distance(s, p, n[kTxX], n[kTxY], n[kRxX], n[kRxY]);
        CHECK(std::abs(h.at(n)) == Catch::Approx(p.distance() / d).epsilon(1e-13));
        CHECK(std::abs(hu.at(n)) == Catch::Approx(1.0).epsilon(1e-14));
        const double ff = 1.0 + s.df * (n[kFreq] - 2.0);
        const cdouble expected = std::polar(1.0, -k * d * ff);
        CHECK(std::abs(hu.at(n) - expected) < 1e-9);
    } while (next_index(s.shape(), n));
}

TEST_CASE("pose sampling", "[geometry][property]")
{
    Rng rng = make_rng(2024);
    const int count = 10000;
    std::vector<double> cubes;
    for (int i = 0; i < count; ++i)
    {
        const GeometryPose p = sample_pose(rng, 5, 15);
        const double r = p.distance();
        REQUIRE(r >= 5.0);
        REQUIRE(r <= 15.0);
        CHECK(orthonormality_error(p.R) < 1e-12);
        CHECK(std::abs(p.R.determinant() - 1.0) < 1e-12);
        cubes.push_back(r * r * r);
    }
    // Kolmogorov-Smirnov distance of r^3 against U[125, 3375]
    std::sort(cubes.begin(), cubes.end());
    double ks = 0.0;
    for (int i = 0; i < count; ++i)
    {
        const double F = (cubes[static_cast<std::size_t>(i)] - 125.0) / (3375.0 - 125.0);
        ks = std::max({ks, std::abs(F - static_cast<double>(i) / count), std::abs(F - static_cast<double>(i + 1) / count)});
    }
    CHECK(ks < 0.05);

    CHECK_THROWS_AS(sample_pose(rng, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(sample_pose(rng, 2.0, 1.0), std::invalid_argument);

    // Radius-uniform variant: mean radius near the midpoint
    double mean = 0.0;
    for (int i = 0; i < count; ++i)
        mean += sample_pose(rng, 5, 15, ShellMeasure::radius).distance();
    CHECK(mean / count == Catch::Approx(10.0).margin(0.15));
}

TEST_CASE("rng streams are reproducible and distinct", "[geometry]")
{
    Rng a = make_rng(42, 3), b = make_rng(42, 3), c = make_rng(42, 4);
    const auto x = a(), y = b(), z = c();
    CHECK(x == y);
    CHECK(x != z);
}

TEST_CASE("pose validation", "[geometry]")
{
    GeometryPose p;
    CHECK_NOTHROW(p.validate());
    p.R(0, 0) = -1.0; // reflection
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = GeometryPose{};
    p.r = Vec3::Zero();
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}
