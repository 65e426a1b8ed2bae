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

#include "nfce/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace nfce
{
    void ArraySpec::validate() const
    {
        if (ntx < 1 || nty < 1 || nrx < 1 || nry < 1 || nf < 1)
            throw std::invalid_argument("array and frequency counts must be >= 1");
        auto check_spacing = [](int n, double d, const char *name)
        {
            if (n > 1 && !(d > 0.0))
                throw std::invalid_argument(std::string("spacing ") + name + " must be > 0 for a multi-antenna dimension");
        };
        check_spacing(ntx, dtx, "dtx");
        check_spacing(nty, dty, "dty");
        check_spacing(nrx, drx, "drx");
        check_spacing(nry, dry, "dry");
        if (!(df >= 0.0))
            throw std::invalid_argument("df must be >= 0");
        if (!(fc > 0.0))
            throw std::invalid_argument("fc must be > 0");
    }

    ArraySpec ArraySpec::half_wavelength(int ntx, int nty, int nrx, int nry, int nf, double fc, double df)
    {
        ArraySpec s;
        s.ntx = ntx;
        s.nty = nty;
        s.nrx = nrx;
        s.nry = nry;
        s.nf = nf;
        s.fc = fc;
        s.df = df;
        const double half = 0.5 * s.wavelength();
        s.dtx = s.dty = s.drx = s.dry = half;
        return s;
    }

    Topology topology_of(int nx, int ny)
    {
        const int multi = (nx > 1 ? 1 : 0) + (ny > 1 ? 1 : 0);
        return multi == 0 ? Topology::single : (multi == 1 ? Topology::linear : Topology::planar);
    }

    Topology tx_topology(const ArraySpec &spec) { return topology_of(spec.ntx, spec.nty); }
    Topology rx_topology(const ArraySpec &spec) { return topology_of(spec.nrx, spec.nry); }

    const char *to_string(Topology t)
    {
        switch (t)
        {
        case Topology::single:
            return "single";
        case Topology::linear:
            return "linear";
        case Topology::planar:
            return "planar";
        }
        return "?";
    }

    int geometric_parameter_count(Topology tx, Topology rx)
    {
        // Translation: 2 when one side is linear and the other a point (only the
        // distance and the angle to the array axis matter), else 3.
        // Rotation: one angle per extra array axis beyond the first, 3 for planar-planar.
        if (static_cast<int>(tx) < static_cast<int>(rx))
            std::swap(tx, rx);
        if (tx == Topology::single)
            return 1; // both single: distance only
        if (tx == Topology::linear)
            return rx == Topology::single ? 2 : 4;
        switch (rx)
        {
        case Topology::single:
            return 3;
        case Topology::linear:
            return 5;
        case Topology::planar:
            return 6;
        }
        return 0;
    }

    static double diagonal(int nx, int ny, double dx, double dy)
    {
        const double lx = (nx - 1) * dx;
        const double ly = (ny - 1) * dy;
        return std::sqrt(lx * lx + ly * ly);
    }

    double tx_aperture(const ArraySpec &spec) { return diagonal(spec.ntx, spec.nty, spec.dtx, spec.dty); }
    double rx_aperture(const ArraySpec &spec) { return diagonal(spec.nrx, spec.nry, spec.drx, spec.dry); }

    void GeometryPose::validate() const
    {
        const Mat3 gram = R.transpose() * R - Mat3::Identity();
        if (gram.cwiseAbs().maxCoeff() > 1e-12)
            throw std::invalid_argument("pose rotation is not orthonormal");
        const double det = R.determinant();
        if (std::abs(det - 1.0) > 1e-12)
            throw std::invalid_argument("pose rotation must have determinant +1");
        if (!(r.norm() > 0.0) || !r.allFinite())
            throw std::invalid_argument("pose translation must be finite and nonzero");
    }

    Mat3 rotation_x(double phi)
    {
        const double c = std::cos(phi), s = std::sin(phi);
        Mat3 m;
        m << 1.0, 0.0, 0.0,
            0.0, c, -s,
            0.0, s, c;
        return m;
    }

    Mat3 rotation_y(double phi)
    {
        const double c = std::cos(phi), s = std::sin(phi);
        Mat3 m;
        m << c, 0.0, s,
            0.0, 1.0, 0.0,
            -s, 0.0, c;
        return m;
    }

    Mat3 rotation_z(double phi)
    {
        const double c = std::cos(phi), s = std::sin(phi);
        Mat3 m;
        m << c, -s, 0.0,
            s, c, 0.0,
            0.0, 0.0, 1.0;
        return m;
    }

    Mat3 rotation_from_euler(double phi_x, double phi_y, double phi_z)
    {
        return rotation_z(phi_z) * rotation_y(phi_y) * rotation_x(phi_x);
    }

    Mat3 skew(const Vec3 &w)
    {
        Mat3 m;
        m << 0.0, -w(2), w(1),
            w(2), 0.0, -w(0),
            -w(1), w(0), 0.0;
        return m;
    }

    Mat3 rotation_from_tangent(const Vec3 &omega, const Mat3 &R0)
    {
        const double theta = omega.norm();
        const Mat3 W = skew(omega);
        double a, b; // sin(t)/t, (1-cos(t))/t^2
        if (theta < 1e-6)
        {
            const double t2 = theta * theta;
            a = 1.0 - t2 / 6.0;
            b = 0.5 - t2 / 24.0;
        }
        else
        {
            a = std::sin(theta) / theta;
            b = (1.0 - std::cos(theta)) / (theta * theta);
        }
        return R0 * (Mat3::Identity() + a * W + b * W * W);
    }

    Vec3 rotation_log(const Mat3 &R)
    {
        const Vec3 v(R(2, 1) - R(1, 2), R(0, 2) - R(2, 0), R(1, 0) - R(0, 1));
        const double cos_theta = 0.5 * (R.trace() - 1.0);
        const double theta = std::atan2(0.5 * v.norm(), cos_theta);
        if (theta < 1e-6)
            return 0.5 * v;
        if (kPi - theta > 1e-4)
            return theta / (2.0 * std::sin(theta)) * v;

        // Near pi: the axis comes from the symmetric part, sym(R) - cos(t) I = (1 - cos(t)) u u^T
        const Mat3 S = (0.5 * (R + R.transpose()) - cos_theta * Mat3::Identity()) / (1.0 - cos_theta);
        int k = 0;
        S.diagonal().maxCoeff(&k);
        Vec3 u = S.col(k) / std::sqrt(std::max(S(k, k), 1e-300));
        u.normalize();
        if (u.dot(v) < 0.0)
            u = -u;
        return theta * u;
    }

    Mat3 right_jacobian(const Vec3 &omega)
    {
        const double theta = omega.norm();
        const Mat3 W = skew(omega);
        double b, c; // (1-cos t)/t^2, (t - sin t)/t^3
        if (theta < 1e-4)
        {
            const double t2 = theta * theta;
            b = 0.5 - t2 / 24.0;
            c = 1.0 / 6.0 - t2 / 120.0;
        }
        else
        {
            b = (1.0 - std::cos(theta)) / (theta * theta);
            c = (theta - std::sin(theta)) / (theta * theta * theta);
        }
        return Mat3::Identity() - b * W + c * W * W;
    }

    std::vector<Vec3> local_grid(int nx, int ny, double dx, double dy)
    {
        std::vector<Vec3> grid;
        grid.reserve(static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny));
        for (int ix = 0; ix < nx; ++ix)
            for (int iy = 0; iy < ny; ++iy)
                grid.emplace_back(dx * (ix - 0.5 * (nx - 1)), dy * (iy - 0.5 * (ny - 1)), 0.0);
        return grid;
    }

    AntennaPositions antenna_positions(const ArraySpec &spec, const GeometryPose &pose)
    {
        AntennaPositions out;
        out.tx = local_grid(spec.ntx, spec.nty, spec.dtx, spec.dty);
        out.rx = local_grid(spec.nrx, spec.nry, spec.drx, spec.dry);
        for (auto &p : out.rx)
            p = pose.r + pose.R * p;
        return out;
    }

    AntennaPositions antenna_positions_alt(const ArraySpec &spec, double D, const EulerAngles &tx,
                                           const EulerAngles &rx)
    {
        if (!(D > 0.0))
            throw std::invalid_argument("D must be > 0");
        const Mat3 Rt = rotation_from_euler(tx.x, tx.y, tx.z);
        const Mat3 Rr = rotation_from_euler(rx.x, rx.y, rx.z);
        AntennaPositions out;
        out.tx = local_grid(spec.ntx, spec.nty, spec.dtx, spec.dty);
        out.rx = local_grid(spec.nrx, spec.nry, spec.drx, spec.dry);
        for (auto &p : out.tx)
            p = Rt * p;
        const Vec3 center(0.0, 0.0, D);
        for (auto &p : out.rx)
            p = Rr * p + center;
        return out;
    }

    GeometryPose pose_from_alt(double D, const EulerAngles &tx, const EulerAngles &rx)
    {
        const Mat3 Rt = rotation_from_euler(tx.x, tx.y, tx.z);
        const Mat3 Rr = rotation_from_euler(rx.x, rx.y, rx.z);
        GeometryPose pose;
        pose.r = Rt.transpose() * Vec3(0.0, 0.0, D);
        pose.R = Rt.transpose() * Rr;
        return pose;
    }

    double pairwise_distance(const ArraySpec &spec, const GeometryPose &pose, const AntennaIndex &n_t,
                             const AntennaIndex &n_r)
    {
        if (n_t[0] < 0 || n_t[0] >= spec.ntx || n_t[1] < 0 || n_t[1] >= spec.nty || n_r[0] < 0 ||
            n_r[0] >= spec.nrx || n_r[1] < 0 || n_r[1] >= spec.nry)
            throw std::out_of_range("antenna index out of range");
        const Vec3 t(spec.dtx * (n_t[0] - 0.5 * (spec.ntx - 1)), spec.dty * (n_t[1] - 0.5 * (spec.nty - 1)), 0.0);
        const Vec3 local(spec.drx * (n_r[0] - 0.5 * (spec.nrx - 1)), spec.dry * (n_r[1] - 0.5 * (spec.nry - 1)), 0.0);
        return (pose.r + pose.R * local - t).norm();
    }

    double frequency_factor(const ArraySpec &spec, int n_f)
    {
        return 1.0 + spec.df * (n_f - 0.5 * (spec.nf - 1));
    }

    ChannelTensor synth(const ArraySpec &spec, const GeometryPose &pose, Amplitude amplitude)
    {
        const auto pos = antenna_positions(spec, pose);
        const double D = pose.distance();
        const double k = 2.0 * kPi / spec.wavelength();

        std::vector<double> kf(static_cast<std::size_t>(spec.nf));
        for (int f = 0; f < spec.nf; ++f)
            kf[static_cast<std::size_t>(f)] = k * frequency_factor(spec, f);

        ChannelTensor h(spec.shape());
        std::size_t i = 0;
        for (const auto &rp : pos.rx)
            for (const auto &tp : pos.tx)
            {
                const double dist = (rp - tp).norm();
                const double amp = amplitude == Amplitude::unit ? 1.0 : D / dist;
                for (double kk : kf)
                    h[i++] = std::polar(amp, -kk * dist);
            }
        return h;
    }

    Rng make_rng(std::uint64_t seed, std::uint64_t stream)
    {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32), 0x6e666365u};
        return Rng(seq);
    }

    Mat3 sample_rotation(Rng &rng)
    {
        std::normal_distribution<double> gauss(0.0, 1.0);
        Eigen::Quaterniond q;
        do
        {
            q = Eigen::Quaterniond(gauss(rng), gauss(rng), gauss(rng), gauss(rng));
        } while (q.norm() < 1e-12);
        q.normalize();
        return q.toRotationMatrix();
    }

    GeometryPose sample_pose(Rng &rng, double rmin, double rmax, ShellMeasure measure)
    {
        if (!(rmin > 0.0) || !(rmax > rmin))
            throw std::invalid_argument("shell bounds must satisfy 0 < rmin < rmax");
        std::uniform_real_distribution<double> uniform(0.0, 1.0);
        std::normal_distribution<double> gauss(0.0, 1.0);

        const double u = uniform(rng);
        double radius;
        if (measure == ShellMeasure::volume)
        {
            const double lo = rmin * rmin * rmin, hi = rmax * rmax * rmax;
            radius = std::cbrt(lo + u * (hi - lo));
        }
        else
            radius = rmin + u * (rmax - rmin);
        radius = std::clamp(radius, rmin, rmax);

        Vec3 dir;
        do
        {
            dir = Vec3(gauss(rng), gauss(rng), gauss(rng));
        } while (dir.norm() < 1e-12);

        GeometryPose pose;
        pose.r = radius * dir.normalized();
        pose.R = sample_rotation(rng);
        return pose;
    }

} // namespace nfce
