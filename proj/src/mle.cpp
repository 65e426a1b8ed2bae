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

#include "nfce/mle.hpp"
#include "nfce/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace nfce
{
    const char *to_string(CostVariant v)
    {
        switch (v)
        {
        case CostVariant::plain:
            return "plain";
        case CostVariant::complex_beta:
            return "complex_beta";
        case CostVariant::unit_beta:
            return "unit_beta";
        }
        return "?";
    }

    namespace
    {
        void require_same_shape(const ChannelTensor &y, const ChannelTensor &h)
        {
            if (y.shape() != h.shape())
                throw std::invalid_argument("observation and channel shapes differ");
        }

        struct Moments
        {
            double yy = 0.0;         // sum |y|^2
            double hh = 0.0;         // sum |h|^2
            cdouble yh{0.0, 0.0};    // sum y conj(h)
        };

        Moments moments(const ChannelTensor &y, const ChannelTensor &h)
        {
            require_same_shape(y, h);
            Moments m;
            for (std::size_t i = 0; i < y.size(); ++i)
            {
                m.yy += std::norm(y[i]);
                m.hh += std::norm(h[i]);
                m.yh += y[i] * std::conj(h[i]);
            }
            return m;
        }
    } // namespace

    double cost_plain(const ChannelTensor &y, const ChannelTensor &h)
    {
        require_same_shape(y, h);
        double acc = 0.0;
        for (std::size_t i = 0; i < y.size(); ++i)
            acc += std::norm(y[i] - h[i]);
        return acc / static_cast<double>(y.size());
    }

    double cost_beta(const ChannelTensor &y, const ChannelTensor &h)
    {
        const Moments m = moments(y, h);
        if (!(m.hh > 0.0))
            throw std::domain_error("channel is identically zero");
        return std::max(0.0, m.yy - std::norm(m.yh) / m.hh) / static_cast<double>(y.size());
    }

    double cost_unit_beta(const ChannelTensor &y, const ChannelTensor &h)
    {
        const Moments m = moments(y, h);
        return std::max(0.0, m.yy + m.hh - 2.0 * std::abs(m.yh)) / static_cast<double>(y.size());
    }

    double cost(CostVariant variant, const ChannelTensor &y, const ChannelTensor &h)
    {
        switch (variant)
        {
        case CostVariant::plain:
            return cost_plain(y, h);
        case CostVariant::complex_beta:
            return cost_beta(y, h);
        case CostVariant::unit_beta:
            return cost_unit_beta(y, h);
        }
        throw std::invalid_argument("unknown cost variant");
    }

    double cost_plain(const ChannelTensor &y, const ChannelModel &model, const GeometryPose &pose)
    {
        return cost_plain(y, model.channel(pose));
    }

    double cost_beta(const ChannelTensor &y, const ChannelModel &model, const GeometryPose &pose)
    {
        return cost_beta(y, model.channel(pose));
    }

    double cost_unit_beta(const ChannelTensor &y, const ChannelModel &model, const GeometryPose &pose)
    {
        return cost_unit_beta(y, model.channel(pose));
    }

    cdouble beta_hat(const ChannelTensor &y, const ChannelTensor &h, CostVariant variant)
    {
        if (variant == CostVariant::plain)
            return {1.0, 0.0};
        const Moments m = moments(y, h);
        if (variant == CostVariant::complex_beta)
        {
            if (!(m.hh > 0.0))
                throw std::domain_error("channel is identically zero");
            return m.yh / m.hh;
        }
        const double mag = std::abs(m.yh);
        if (!(mag > 0.0))
            throw std::domain_error("zero correlation: unit-modulus attenuation undefined");
        return m.yh / mag;
    }

    void MleConfig::validate() const
    {
        if (!(learning_rate > 0.0))
            throw std::invalid_argument("learning_rate must be > 0");
        if (iterations < 1)
            throw std::invalid_argument("iterations must be >= 1");
        if (num_starts < 1)
            throw std::invalid_argument("num_starts must be >= 1");
        if (!(shell_min > 0.0) || !(shell_max > shell_min))
            throw std::invalid_argument("initialization shell must satisfy 0 < rmin < rmax");
        if (genie_init && !genie_pose)
            throw std::invalid_argument("genie initialization needs a genie pose");
        if (!(fd_step > 0.0))
            throw std::invalid_argument("fd_step must be > 0");
    }

    GeometryPose PoseParameters::pose() const
    {
        GeometryPose p;
        p.r = r;
        p.R = rotation_from_tangent(omega, R0);
        return p;
    }

    double cost_to_db(double c)
    {
        return 10.0 * std::log10(std::max(c, 1e-30));
    }

    namespace
    {
        double evaluate(const ChannelTensor &y, const ChannelModel &model, CostVariant variant,
                        const PoseParameters &params)
        {
            return cost(variant, y, model.channel(params.pose()));
        }

        std::array<double, 6> analytic_gradient(const ChannelTensor &y, const ChannelModel &model,
                                                CostVariant variant, const PoseParameters &params)
        {
            const ArraySpec &spec = model.spec;
            const GeometryPose pose = params.pose();
            const Mat3 J = right_jacobian(params.omega);
            const auto tx = local_grid(spec.ntx, spec.nty, spec.dtx, spec.dty);
            const auto rx_local = local_grid(spec.nrx, spec.nry, spec.drx, spec.dry);
            const double D = pose.distance();
            const Vec3 dD_dr = pose.r / D;
            const double k = 2.0 * kPi / spec.wavelength();
            const bool exact = model.amplitude == Amplitude::exact;

            // Per-parameter accumulators: plain uses sum conj(y - h) dh, the beta costs
            // need ds = sum y conj(dh) and dP = 2 Re sum conj(h) dh.
            std::array<double, 6> plain_acc{};
            std::array<cdouble, 6> ds{};
            std::array<double, 6> dP{};
            double yy = 0.0, hh = 0.0;
            cdouble s(0.0, 0.0);

            std::size_t i = 0;
            for (const auto &q : rx_local)
            {
                const Vec3 p = pose.r + pose.R * q;
                for (const auto &t : tx)
                {
                    const Vec3 diff = p - t;
                    const double dist = diff.norm();
                    const Vec3 u = diff / dist;
                    const Vec3 v = pose.R.transpose() * u;
                    const Vec3 dd_dw = J.transpose() * q.cross(v);
                    std::array<double, 6> dd{u(0), u(1), u(2), dd_dw(0), dd_dw(1), dd_dw(2)};
                    std::array<double, 6> dlogA{};
                    if (exact)
                        for (int j = 0; j < 6; ++j)
                            dlogA[static_cast<std::size_t>(j)] =
                                (j < 3 ? dD_dr(j) / D : 0.0) - dd[static_cast<std::size_t>(j)] / dist;
                    const double amp = exact ? D / dist : 1.0;

                    for (int f = 0; f < spec.nf; ++f)
                    {
                        const double kf = k * frequency_factor(spec, f);
                        const cdouble h = std::polar(amp, -kf * dist);
                        const cdouble yv = y[i++];
                        yy += std::norm(yv);
                        hh += std::norm(h);
                        s += yv * std::conj(h);
                        for (std::size_t j = 0; j < 6; ++j)
                        {
                            const cdouble dh = h * cdouble(dlogA[j], -kf * dd[j]);
                            plain_acc[j] += std::real(std::conj(yv - h) * dh);
                            ds[j] += yv * std::conj(dh);
                            dP[j] += 2.0 * std::real(std::conj(h) * dh);
                        }
                    }
                }
            }

            const double n = static_cast<double>(y.size());
            std::array<double, 6> g{};
            for (std::size_t j = 0; j < 6; ++j)
            {
                switch (variant)
                {
                case CostVariant::plain:
                    g[j] = -2.0 * plain_acc[j] / n;
                    break;
                case CostVariant::complex_beta:
                    g[j] = -(2.0 * std::real(std::conj(s) * ds[j]) / hh - std::norm(s) * dP[j] / (hh * hh)) / n;
                    break;
                case CostVariant::unit_beta:
                {
                    const double mag = std::abs(s);
                    g[j] = (dP[j] - (mag > 0.0 ? 2.0 * std::real(std::conj(s) * ds[j]) / mag : 0.0)) / n;
                    break;
                }
                }
            }
            return g;
        }
    } // namespace

    std::array<double, 6> cost_gradient(const ChannelTensor &y, const ChannelModel &model, CostVariant variant,
                                        const PoseParameters &params, GradientMode mode, double fd_step)
    {
        if (mode == GradientMode::analytic)
            return analytic_gradient(y, model, variant, params);

        std::array<double, 6> g{};
        for (int j = 0; j < 6; ++j)
        {
            PoseParameters lo = params, hi = params;
            double step;
            if (j < 3)
            {
                step = fd_step * std::max(1.0, std::abs(params.r(j)));
                lo.r(j) -= step;
                hi.r(j) += step;
            }
            else
            {
                step = fd_step * std::max(1.0, std::abs(params.omega(j - 3)));
                lo.omega(j - 3) -= step;
                hi.omega(j - 3) += step;
            }
            g[static_cast<std::size_t>(j)] =
                (evaluate(y, model, variant, hi) - evaluate(y, model, variant, lo)) / (2.0 * step);
        }
        return g;
    }

    Trajectory descend(const ChannelTensor &y, const ChannelModel &model, const MleConfig &config,
                       const GeometryPose &initial, int start_index)
    {
        constexpr double beta1 = 0.9, beta2 = 0.999, eps = 1e-8;

        PoseParameters params;
        params.r = initial.r;
        params.R0 = initial.R;

        Trajectory traj;
        traj.start_index = start_index;
        traj.cost_db.reserve(static_cast<std::size_t>(config.iterations) + 1);

        std::array<double, 6> m{}, v{};
        double c = evaluate(y, model, config.cost_variant, params);
        for (int it = 0; it <= config.iterations; ++it)
        {
            if (!std::isfinite(c))
            {
                traj.diverged = true;
                traj.cost_db.resize(static_cast<std::size_t>(config.iterations) + 1,
                                    std::numeric_limits<double>::quiet_NaN());
                break;
            }
            traj.cost_db.push_back(cost_to_db(c));
            traj.final_cost = c;
            if (it == config.iterations)
                break;

            const auto g = cost_gradient(y, model, config.cost_variant, params, config.gradient, config.fd_step);
            const double bc1 = 1.0 - std::pow(beta1, it + 1);
            const double bc2 = 1.0 - std::pow(beta2, it + 1);
            for (std::size_t j = 0; j < 6; ++j)
            {
                m[j] = beta1 * m[j] + (1.0 - beta1) * g[j];
                v[j] = beta2 * v[j] + (1.0 - beta2) * g[j] * g[j];
                const double step = config.learning_rate * (m[j] / bc1) / (std::sqrt(v[j] / bc2) + eps);
                if (j < 3)
                    params.r(static_cast<Eigen::Index>(j)) -= step;
                else
                    params.omega(static_cast<Eigen::Index>(j - 3)) -= step;
            }
            c = params.r.norm() > 0.0 ? evaluate(y, model, config.cost_variant, params)
                                      : std::numeric_limits<double>::quiet_NaN();
        }
        traj.final_pose = params.pose();
        if (traj.diverged)
            traj.final_cost = std::numeric_limits<double>::quiet_NaN();
        return traj;
    }

    MleResult optimize(const ChannelTensor &y, const ChannelModel &model, const MleConfig &config, std::uint64_t seed)
    {
        config.validate();
        model.spec.validate();
        if (y.shape() != model.spec.shape())
            throw std::invalid_argument("observation shape does not match the array spec");

        MleResult result;
        const int starts = config.genie_init ? 1 : config.num_starts;
        result.trajectories.resize(static_cast<std::size_t>(starts));

        parallel_for(static_cast<std::size_t>(starts), config.threads, [&](std::size_t i)
                     {
                         GeometryPose init;
                         if (config.genie_init)
                             init = *config.genie_pose;
                         else
                         {
                             Rng rng = make_rng(seed, i);
                             init = sample_pose(rng, config.shell_min, config.shell_max, config.shell_measure);
                         }
                         result.trajectories[i] = descend(y, model, config, init, static_cast<int>(i)); });

        double best = std::numeric_limits<double>::infinity();
        for (const auto &t : result.trajectories)
            if (!t.diverged && t.final_cost < best)
            {
                best = t.final_cost;
                result.best_index = t.start_index;
                result.best_pose = t.final_pose;
            }
        return result;
    }

    void mark_convergence(std::vector<Trajectory> &trajectories, double genie_final_db, double tol_db)
    {
        for (auto &t : trajectories)
            t.converged = !t.diverged && cost_to_db(t.final_cost) <= genie_final_db + tol_db;
    }

    std::vector<LandscapeRow> landscape_scan(double D_true, double lo, double hi, double step,
                                             const LandscapeSetup &setup)
    {
        if (!(step > 0.0) || !(hi >= lo) || !(lo > 0.0) || !(D_true > 0.0))
            throw std::invalid_argument("landscape scan needs 0 < lo <= hi, step > 0 and D > 0");
        ChannelModel model;
        model.spec = ArraySpec::half_wavelength(setup.antennas, 1, 1, 1, 1, setup.fc);
        model.amplitude = setup.amplitude;

        GeometryPose truth;
        truth.r = Vec3(0.0, 0.0, D_true);
        const ChannelTensor y = model.channel(truth);
        const double n = static_cast<double>(y.size());

        const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 0.5)) + 1;
        std::vector<LandscapeRow> rows(count);
        for (std::size_t i = 0; i < count; ++i)
        {
            GeometryPose trial;
            trial.r = Vec3(0.0, 0.0, lo + static_cast<double>(i) * step);
            const ChannelTensor h = model.channel(trial);
            rows[i].z = trial.r(2);
            rows[i].point = std::sqrt(n * cost_plain(y, h));
            rows[i].plane = std::sqrt(n * cost_beta(y, h));
        }
        return rows;
    }

    int count_local_minima(std::span<const double> curve)
    {
        int count = 0;
        for (std::size_t i = 1; i + 1 < curve.size(); ++i)
            if (curve[i] < curve[i - 1] && curve[i] < curve[i + 1])
                ++count;
        return count;
    }

    int count_slope_sign_changes(std::span<const double> curve)
    {
        int changes = 0, last = 0;
        for (std::size_t i = 1; i < curve.size(); ++i)
        {
            const double slope = curve[i] - curve[i - 1];
            const int sign = slope > 0.0 ? 1 : (slope < 0.0 ? -1 : 0);
            if (sign == 0)
                continue;
            if (last != 0 && sign != last)
                ++changes;
            last = sign;
        }
        return changes;
    }

} // namespace nfce
