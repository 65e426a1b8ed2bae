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

#ifndef NFCE_MLE_HPP
#define NFCE_MLE_HPP

#include "nfce/geometry.hpp"
#include "nfce/lattice.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace nfce
{
    enum class CostVariant
    {
        plain,        // sum |y - h|^2
        complex_beta, // min over complex beta of sum |y - beta h|^2
        unit_beta     // min over unit-modulus beta
    };

    const char *to_string(CostVariant v);

    // Parametric channel family h(n; pose) used by the geometric estimator
    struct ChannelModel
    {
        ArraySpec spec;
        Amplitude amplitude = Amplitude::exact;

        ChannelTensor channel(const GeometryPose &pose) const { return synth(spec, pose, amplitude); }
    };

    // All costs are normalized by the lattice size |[N]|.
    double cost_plain(const ChannelTensor &y, const ChannelTensor &h);
    double cost_beta(const ChannelTensor &y, const ChannelTensor &h);
    double cost_unit_beta(const ChannelTensor &y, const ChannelTensor &h);
    double cost(CostVariant variant, const ChannelTensor &y, const ChannelTensor &h);

    double cost_plain(const ChannelTensor &y, const ChannelModel &model, const GeometryPose &pose);
    double cost_beta(const ChannelTensor &y, const ChannelModel &model, const GeometryPose &pose);
    double cost_unit_beta(const ChannelTensor &y, const ChannelModel &model, const GeometryPose &pose);

    // Closed-form attenuation: 1 (plain), sum y conj(h) / sum |h|^2 (complex), its unit projection (unit).
    // Throws std::domain_error when the required denominator vanishes.
    cdouble beta_hat(const ChannelTensor &y, const ChannelTensor &h, CostVariant variant);

    enum class GradientMode
    {
        finite_difference,
        analytic
    };

    struct MleConfig
    {
        CostVariant cost_variant = CostVariant::complex_beta;
        double learning_rate = 0.01;
        int iterations = 500;
        int num_starts = 128;
        double shell_min = 5.0;
        double shell_max = 15.0;
        ShellMeasure shell_measure = ShellMeasure::volume;
        bool genie_init = false;
        std::optional<GeometryPose> genie_pose; // required when genie_init is set
        GradientMode gradient = GradientMode::finite_difference;
        double fd_step = 1e-6; // relative central-difference step
        int threads = 0;

        void validate() const;
    };

    struct Trajectory
    {
        int start_index = 0;
        std::vector<double> cost_db; // iterations + 1 entries, initial cost first
        GeometryPose final_pose;
        double final_cost = 0.0; // linear
        bool diverged = false;
        bool converged = false; // set by mark_convergence
    };

    struct MleResult
    {
        std::optional<GeometryPose> best_pose;
        int best_index = -1;
        std::vector<Trajectory> trajectories; // in start order
    };

    // Free parameters of one start: translation r and tangent vector omega around R0
    struct PoseParameters
    {
        Vec3 r = Vec3::Zero();
        Vec3 omega = Vec3::Zero();
        Mat3 R0 = Mat3::Identity();

        GeometryPose pose() const;
    };

    // Gradient of the chosen cost w.r.t. (r, omega)
    std::array<double, 6> cost_gradient(const ChannelTensor &y, const ChannelModel &model, CostVariant variant,
                                        const PoseParameters &params, GradientMode mode, double fd_step = 1e-6);

    // Adaptive-moment descent over (r, omega) from one initial pose
    Trajectory descend(const ChannelTensor &y, const ChannelModel &model, const MleConfig &config,
                       const GeometryPose &initial, int start_index = 0);

    // Multi-start optimization. Random starts are sampled from the shell and SO(3) with one
    // RNG stream per start index derived from `seed`; with genie_init a single start at the
    // genie pose is run instead. The best start minimizes the final cost among non-diverged runs.
    MleResult optimize(const ChannelTensor &y, const ChannelModel &model, const MleConfig &config, std::uint64_t seed);

    // converged = final cost within tol_db above the genie final cost
    void mark_convergence(std::vector<Trajectory> &trajectories, double genie_final_db, double tol_db = 1.0);

    // 10 log10 of a cost, floored at -300 dB so that exact fits stay finite
    double cost_to_db(double cost);

    // Distance scan: ULA at the origin along x, single receive antenna on the z-axis
    struct LandscapeSetup
    {
        int antennas = 256;
        double fc = 30e9;
        Amplitude amplitude = Amplitude::exact;
    };

    struct LandscapeRow
    {
        double z = 0.0;     // trial distance D'
        double point = 0.0; // sqrt of sum |y - h(D')|^2
        double plane = 0.0; // sqrt of the complex-attenuation objective
    };

    std::vector<LandscapeRow> landscape_scan(double D_true, double lo, double hi, double step,
                                             const LandscapeSetup &setup = {});

    // Interior samples strictly below both neighbours
    int count_local_minima(std::span<const double> curve);

    // Sign changes of the discrete derivative, zero slopes skipped
    int count_slope_sign_changes(std::span<const double> curve);

} // namespace nfce

#endif
