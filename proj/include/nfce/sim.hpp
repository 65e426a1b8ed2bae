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

#ifndef NFCE_SIM_HPP
#define NFCE_SIM_HPP

#include "nfce/geometry.hpp"
#include "nfce/mle.hpp"
#include "nfce/ppe.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace nfce
{
    double to_db(double linear);
    double from_db(double db);

    // y = h + w, w circularly-symmetric complex Gaussian with per-entry variance 10^(-snr_db/10)
    ChannelTensor add_noise(const ChannelTensor &h, double snr_db, Rng &rng);

    // (1/|[N]|) sum |h_hat - h|^2; throws std::invalid_argument on shape mismatch
    double per_entry_mse(const ChannelTensor &h_hat, const ChannelTensor &h);

    // 10 log10(M / (2 N SNR))
    double crb_asymptote(double M, double n_total, double snr_db);

    struct ExperimentConfig
    {
        ArraySpec spec;
        std::vector<double> snr_grid; // dB
        std::vector<int> L_list{1, 2, 3};
        int trials = 100;
        Amplitude amplitude = Amplitude::unit;
        double shell_min = 5.0;
        double shell_max = 15.0;
        ShellMeasure shell_measure = ShellMeasure::volume;
        std::uint64_t seed = 1;
        int threads = 0;

        void validate() const; // also checks every L against the array
        std::uint64_t hash() const;
    };

    struct ExperimentReport
    {
        std::vector<double> snr_db;
        std::vector<int> L_list;
        std::vector<std::size_t> parameter_count;  // |M| per L
        std::vector<std::vector<double>> mse_db;   // [snr][L]
        std::vector<std::vector<double>> crb_db;   // [snr][L]
        std::vector<double> ls_db;                 // [snr]
        std::uint64_t seed = 0;
        std::uint64_t config_hash = 0;
        int trials = 0;

        // Cells at SNR >= 20 dB whose MSE exceeds the CRB by more than 10 dB
        std::vector<std::string> warnings;
    };

    ExperimentReport run_mse_sweep(const ExperimentConfig &config);

    void write_mse_csv(std::ostream &os, const ExperimentReport &report);
    void write_crb_csv(std::ostream &os, const ExperimentReport &report);

    // Evenly spaced sublattice of L+1 samples along every non-singleton transmit dimension,
    // endpoints included when L divides N-1 and centered otherwise. All receive and
    // frequency indices are kept.
    struct PilotObservation
    {
        LatticeSignal signal;
        SublatticeMap map;
    };

    PilotObservation pilot_subsample(const ChannelTensor &y, int L);

    // Estimates on the pilot sublattice and re-expands the model on the full lattice
    PolyPhaseModel estimate_from_pilots(const PilotObservation &pilots, int L);

    struct TrajectoryExperiment
    {
        ArraySpec spec;
        GeometryPose truth;          // r = (0, 0, 10), R = I
        double snr_db = 10.0;
        Amplitude amplitude = Amplitude::exact;
        MleConfig mle;
        std::uint64_t seed = 1;
    };

    struct TrajectoryReport
    {
        std::vector<Trajectory> random; // sorted by final cost, best first; diverged last
        Trajectory genie;
        double converged_fraction = 0.0;
    };

    TrajectoryReport run_trajectory_experiment(const TrajectoryExperiment &experiment);

    // Iteration,Best_1_Cost_dB,...,Best_S_Cost_dB,Proxy_Cost_dB
    void write_trajectory_csv(std::ostream &os, const TrajectoryReport &report);

    void write_landscape_csv(std::ostream &os, const std::vector<LandscapeRow> &rows);

} // namespace nfce

#endif
