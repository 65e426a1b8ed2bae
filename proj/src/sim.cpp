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

#include "nfce/sim.hpp"
#include "nfce/parallel.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace nfce
{
    double to_db(double linear)
    {
        return 10.0 * std::log10(linear);
    }

    double from_db(double db)
    {
        return std::pow(10.0, db / 10.0);
    }

    ChannelTensor add_noise(const ChannelTensor &h, double snr_db, Rng &rng)
    {
        if (!std::isfinite(snr_db))
            throw std::invalid_argument("SNR must be finite");
        const double sigma = std::sqrt(0.5 / from_db(snr_db));
        std::normal_distribution<double> gauss(0.0, sigma);
        ChannelTensor y = h;
        for (std::size_t i = 0; i < y.size(); ++i)
        {
            const double re = gauss(rng);
            const double im = gauss(rng);
            y[i] += cdouble(re, im);
        }
        return y;
    }

    double per_entry_mse(const ChannelTensor &h_hat, const ChannelTensor &h)
    {
        if (h_hat.shape() != h.shape())
            throw std::invalid_argument("per_entry_mse: shape mismatch");
        double acc = 0.0;
        for (std::size_t i = 0; i < h.size(); ++i)
            acc += std::norm(h_hat[i] - h[i]);
        return acc / static_cast<double>(h.size());
    }

    double crb_asymptote(double M, double n_total, double snr_db)
    {
        if (!(M >= 1.0) || !(n_total >= 1.0))
            throw std::invalid_argument("crb_asymptote needs M >= 1 and N >= 1");
        return to_db(M / (2.0 * n_total * from_db(snr_db)));
    }

    void ExperimentConfig::validate() const
    {
        spec.validate();
        if (trials < 1)
            throw std::invalid_argument("trials must be >= 1");
        if (snr_grid.empty())
            throw std::invalid_argument("SNR grid is empty");
        for (double s : snr_grid)
            if (!std::isfinite(s))
                throw std::invalid_argument("SNR values must be finite");
        if (!(shell_min > 0.0) || !(shell_max > shell_min))
            throw std::invalid_argument("shell must satisfy 0 < rmin < rmax");
        for (int L : L_list)
            build_degree_set(L, spec);
    }

    std::uint64_t ExperimentConfig::hash() const
    {
        std::ostringstream os;
        os.precision(17);
        os << spec.ntx << ' ' << spec.nty << ' ' << spec.nrx << ' ' << spec.nry << ' ' << spec.dtx << ' '
           << spec.dty << ' ' << spec.drx << ' ' << spec.dry << ' ' << spec.nf << ' ' << spec.df << ' ' << spec.fc
           << " |";
        for (double s : snr_grid)
            os << ' ' << s;
        os << " |";
        for (int L : L_list)
            os << ' ' << L;
        os << " | " << trials << ' ' << static_cast<int>(amplitude) << ' ' << shell_min << ' ' << shell_max << ' '
           << static_cast<int>(shell_measure) << ' ' << seed;

        std::uint64_t h = 1469598103934665603ull;
        for (unsigned char c : os.str())
        {
            h ^= c;
            h *= 1099511628211ull;
        }
        return h;
    }

    namespace
    {
        double pairwise_sum(const double *v, std::size_t n)
        {
            if (n <= 8)
            {
                double acc = 0.0;
                for (std::size_t i = 0; i < n; ++i)
                    acc += v[i];
                return acc;
            }
            const std::size_t half = n / 2;
            return pairwise_sum(v, half) + pairwise_sum(v + half, n - half);
        }

        double mean(const std::vector<double> &v)
        {
            return pairwise_sum(v.data(), v.size()) / static_cast<double>(v.size());
        }

        std::string format_number(double v)
        {
            if (std::isnan(v))
                return "nan";
            char buf[64];
            const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 10);
            return std::string(buf, res.ptr);
        }
    } // namespace

    ExperimentReport run_mse_sweep(const ExperimentConfig &config)
    {
        config.validate();
        const std::size_t n_snr = config.snr_grid.size();
        const std::size_t n_L = config.L_list.size();
        const std::size_t trials = static_cast<std::size_t>(config.trials);

        std::vector<DegreeSet> sets;
        for (int L : config.L_list)
            sets.push_back(build_degree_set(L, config.spec));

        // Per-trial slots: mse[snr][L][trial], ls[snr][trial]
        std::vector<std::vector<std::vector<double>>> mse(
            n_snr, std::vector<std::vector<double>>(n_L, std::vector<double>(trials)));
        std::vector<std::vector<double>> ls(n_snr, std::vector<double>(trials));

        parallel_for(trials, config.threads, [&](std::size_t t)
                     {
                         Rng rng = make_rng(config.seed, t);
                         const GeometryPose pose =
                             sample_pose(rng, config.shell_min, config.shell_max, config.shell_measure);
                         const ChannelTensor h = synth(config.spec, pose, config.amplitude);
                         for (std::size_t s = 0; s < n_snr; ++s)
                         {
                             const ChannelTensor y = add_noise(h, config.snr_grid[s], rng);
                             ls[s][t] = per_entry_mse(y, h);
                             for (std::size_t l = 0; l < n_L; ++l)
                                 mse[s][l][t] = per_entry_mse(reconstruct(estimate(y, sets[l])), h);
                         } });

        ExperimentReport report;
        report.snr_db = config.snr_grid;
        report.L_list = config.L_list;
        report.seed = config.seed;
        report.config_hash = config.hash();
        report.trials = config.trials;
        for (const auto &set : sets)
            report.parameter_count.push_back(set.size());

        const double n_total = static_cast<double>(config.spec.total_size());
        report.mse_db.assign(n_snr, std::vector<double>(n_L));
        report.crb_db.assign(n_snr, std::vector<double>(n_L));
        report.ls_db.resize(n_snr);
        for (std::size_t s = 0; s < n_snr; ++s)
        {
            report.ls_db[s] = to_db(mean(ls[s]));
            for (std::size_t l = 0; l < n_L; ++l)
            {
                report.mse_db[s][l] = to_db(mean(mse[s][l]));
                report.crb_db[s][l] =
                    crb_asymptote(static_cast<double>(report.parameter_count[l]), n_total, config.snr_grid[s]);
                if (config.snr_grid[s] >= 20.0 && report.mse_db[s][l] > report.crb_db[s][l] + 10.0)
                    report.warnings.push_back("L=" + std::to_string(config.L_list[l]) + " at " +
                                              format_number(config.snr_grid[s]) + " dB: MSE " +
                                              format_number(report.mse_db[s][l]) + " dB is more than 10 dB above the bound");
            }
        }
        return report;
    }

    void write_mse_csv(std::ostream &os, const ExperimentReport &report)
    {
        os << "snr_db";
        for (int L : report.L_list)
            os << ",mse_db_" << L;
        os << '\n';
        for (std::size_t s = 0; s < report.snr_db.size(); ++s)
        {
            os << format_number(report.snr_db[s]);
            for (double v : report.mse_db[s])
                os << ',' << format_number(v);
            os << '\n';
        }
    }

    void write_crb_csv(std::ostream &os, const ExperimentReport &report)
    {
        os << "snr_db";
        for (int L : report.L_list)
            os << ",crb_db_" << L;
        os << ",ls_db\n";
        for (std::size_t s = 0; s < report.snr_db.size(); ++s)
        {
            os << format_number(report.snr_db[s]);
            for (double v : report.crb_db[s])
                os << ',' << format_number(v);
            os << ',' << format_number(report.ls_db[s]) << '\n';
        }
    }

    PilotObservation pilot_subsample(const ChannelTensor &y, int L)
    {
        if (L < 1)
            throw std::invalid_argument("pilot subsampling needs L >= 1");
        const Shape &full = y.shape();
        PilotObservation out;
        out.map.full_shape = full;
        Shape sub = full;
        bool any = false;
        for (int d : {kTxX, kTxY})
        {
            const int N = full[d];
            if (N == 1)
                continue;
            if (N < L + 1)
                throw std::invalid_argument("L=" + std::to_string(L) + " needs " + std::to_string(L + 1) +
                                            " transmit samples along a dimension with only " + std::to_string(N));
            any = true;
            const int stride = (N - 1) / L;
            out.map.stride[d] = stride;
            out.map.offset[d] = ((N - 1) - L * stride) / 2;
            sub[d] = L + 1;
        }
        if (!any)
            throw std::invalid_argument("pilot subsampling needs a transmit array with more than one antenna");

        out.signal = LatticeSignal(sub);
        MultiIndex n{};
        std::size_t i = 0;
        do
        {
            MultiIndex m = n;
            for (int d = 0; d < kDims; ++d)
                m[d] = out.map.offset[d] + out.map.stride[d] * n[d];
            out.signal[i++] = y.at(m);
        } while (next_index(sub, n));
        return out;
    }

    PolyPhaseModel estimate_from_pilots(const PilotObservation &pilots, int L)
    {
        const DegreeSet set = build_degree_set(L, pilots.signal.shape());
        return rebase(estimate(pilots.signal, set), pilots.map);
    }

    TrajectoryReport run_trajectory_experiment(const TrajectoryExperiment &experiment)
    {
        ChannelModel model{experiment.spec, experiment.amplitude};
        // Noise uses a stream far from the per-start streams
        Rng noise_rng = make_rng(experiment.seed, 0xffffffffull);
        const ChannelTensor y = add_noise(model.channel(experiment.truth), experiment.snr_db, noise_rng);

        MleConfig random_cfg = experiment.mle;
        random_cfg.genie_init = false;
        MleResult result = optimize(y, model, random_cfg, experiment.seed);

        MleConfig genie_cfg = experiment.mle;
        genie_cfg.genie_init = true;
        genie_cfg.genie_pose = experiment.truth;
        MleResult genie = optimize(y, model, genie_cfg, experiment.seed);

        TrajectoryReport report;
        report.genie = genie.trajectories.front();
        report.random = std::move(result.trajectories);
        mark_convergence(report.random, cost_to_db(report.genie.final_cost));
        report.genie.converged = true;

        std::stable_sort(report.random.begin(), report.random.end(), [](const Trajectory &a, const Trajectory &b)
                         {
                             if (a.diverged != b.diverged)
                                 return !a.diverged;
                             return a.final_cost < b.final_cost; });
        std::size_t hits = 0;
        for (const auto &t : report.random)
            hits += t.converged ? 1 : 0;
        report.converged_fraction = static_cast<double>(hits) / static_cast<double>(report.random.size());
        return report;
    }

    void write_trajectory_csv(std::ostream &os, const TrajectoryReport &report)
    {
        os << "Iteration";
        for (std::size_t k = 0; k < report.random.size(); ++k)
            os << ",Best_" << (k + 1) << "_Cost_dB";
        os << ",Proxy_Cost_dB\n";
        const std::size_t rows = report.genie.cost_db.size();
        for (std::size_t it = 0; it < rows; ++it)
        {
            os << it;
            for (const auto &t : report.random)
                os << ',' << format_number(it < t.cost_db.size() ? t.cost_db[it] : std::numeric_limits<double>::quiet_NaN());
            os << ',' << format_number(report.genie.cost_db[it]) << '\n';
        }
    }

    void write_landscape_csv(std::ostream &os, const std::vector<LandscapeRow> &rows)
    {
        os << "z,point,plane\n";
        for (const auto &r : rows)
            os << format_number(r.z) << ',' << format_number(r.point) << ',' << format_number(r.plane) << '\n';
    }

} // namespace nfce
