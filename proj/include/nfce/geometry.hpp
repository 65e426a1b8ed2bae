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

#ifndef NFCE_GEOMETRY_HPP
#define NFCE_GEOMETRY_HPP

#include "nfce/lattice.hpp"

#include <Eigen/Dense>

#include <array>
#include <cstdint>
#include <random>
#include <vector>

namespace nfce
{
    using Vec3 = Eigen::Vector3d;
    using Mat3 = Eigen::Matrix3d;

    inline constexpr double kSpeedOfLight = 299792458.0; // m/s, exact
    inline constexpr double kPi = 3.14159265358979323846;

    // Uniform planar arrays at both link ends plus the frequency grid.
    // Linear arrays and single antennas are the cases with singleton extents.
    struct ArraySpec
    {
        int ntx = 1, nty = 1; // transmit antennas along x, y
        int nrx = 1, nry = 1; // receive antennas along x, y
        double dtx = 0.0, dty = 0.0, drx = 0.0, dry = 0.0; // spacings [m]
        int nf = 1;       // number of frequencies
        double df = 0.0;  // fractional frequency step
        double fc = 30e9; // carrier [Hz]

        double wavelength() const { return kSpeedOfLight / fc; }

        // (n_rx, n_ry, n_tx, n_ty, n_f)
        Shape shape() const { return {nrx, nry, ntx, nty, nf}; }

        std::size_t total_size() const { return element_count(shape()); }

        // Throws std::invalid_argument on any violated invariant
        void validate() const;

        // All spacings set to half the carrier wavelength
        static ArraySpec half_wavelength(int ntx, int nty, int nrx, int nry, int nf = 1,
                                         double fc = 30e9, double df = 0.0);
    };

    enum class Topology
    {
        single,
        linear,
        planar
    };

    Topology topology_of(int nx, int ny);
    Topology tx_topology(const ArraySpec &spec);
    Topology rx_topology(const ArraySpec &spec);
    const char *to_string(Topology t);

    // Minimal number of geometric parameters (translation + rotation) for a
    // pair of array topologies. The pair is unordered (reciprocity).
    int geometric_parameter_count(Topology tx, Topology rx);

    // Largest dimension of each array (diagonal for planar arrays) [m]
    double tx_aperture(const ArraySpec &spec);
    double rx_aperture(const ArraySpec &spec);

    // Pose of the receive array relative to the transmit array frame
    struct GeometryPose
    {
        Vec3 r = Vec3(0.0, 0.0, 10.0);
        Mat3 R = Mat3::Identity();

        double distance() const { return r.norm(); }
        Vec3 direction() const { return r / r.norm(); }

        // Throws std::invalid_argument unless R is special orthogonal and D > 0
        void validate() const;
    };

    Mat3 rotation_x(double phi);
    Mat3 rotation_y(double phi);
    Mat3 rotation_z(double phi);

    // R_z(phi_z) R_y(phi_y) R_x(phi_x)
    Mat3 rotation_from_euler(double phi_x, double phi_y, double phi_z);

    Mat3 skew(const Vec3 &omega);

    // R0 * exp(skew(omega)), Rodrigues closed form
    Mat3 rotation_from_tangent(const Vec3 &omega, const Mat3 &R0 = Mat3::Identity());

    // Principal logarithm: omega with |omega| <= pi and exp(skew(omega)) = R
    Vec3 rotation_log(const Mat3 &R);

    // Right Jacobian of the exponential map: d/dw [exp(skew(w)) p] = -exp(skew(w)) skew(p) J_r(w)
    Mat3 right_jacobian(const Vec3 &omega);

    struct EulerAngles
    {
        double x = 0.0, y = 0.0, z = 0.0;
    };

    struct AntennaPositions
    {
        std::vector<Vec3> tx; // ordered (n_tx outer, n_ty inner)
        std::vector<Vec3> rx; // ordered (n_rx outer, n_ry inner)
    };

    // Centered local grid of an Nx x Ny array with the given spacings, in its own xy-plane
    std::vector<Vec3> local_grid(int nx, int ny, double dx, double dy);

    // Transmit array centered at the origin in the xy-plane; receive array at r + R * grid
    AntennaPositions antenna_positions(const ArraySpec &spec, const GeometryPose &pose);

    // Alternate parameterization: transmit array rotated by R_t about the origin,
    // receive array rotated by R_r and centered at (0, 0, D)
    AntennaPositions antenna_positions_alt(const ArraySpec &spec, double D, const EulerAngles &tx,
                                           const EulerAngles &rx);

    // Rigid motion taking the alternate frame to the canonical one (R_t^T applied to everything)
    GeometryPose pose_from_alt(double D, const EulerAngles &tx, const EulerAngles &rx);

    // (n_x, n_y) index of one antenna
    using AntennaIndex = std::array<int, 2>;

    double pairwise_distance(const ArraySpec &spec, const GeometryPose &pose, const AntennaIndex &n_t,
                             const AntennaIndex &n_r);

    enum class Amplitude
    {
        unit,  // |h| = 1
        exact  // |h| = D / D_{nr,nt}
    };

    // Frequency factor 1 + df * (n_f - (N_f - 1) / 2)
    double frequency_factor(const ArraySpec &spec, int n_f);

    // Exact near-field LOS channel tensor
    ChannelTensor synth(const ArraySpec &spec, const GeometryPose &pose, Amplitude amplitude = Amplitude::exact);

    using Rng = std::mt19937_64;

    // Independent generator for stream `stream` of a run seeded with `seed`
    Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0);

    enum class ShellMeasure
    {
        volume, // density proportional to r^2
        radius  // |r| uniform
    };

    Mat3 sample_rotation(Rng &rng);

    // Translation uniform on the shell rmin <= |r| <= rmax, rotation Haar-uniform on SO(3)
    GeometryPose sample_pose(Rng &rng, double rmin, double rmax, ShellMeasure measure = ShellMeasure::volume);

} // namespace nfce

#endif
