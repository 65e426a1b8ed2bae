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

#include "nfce/cli.hpp"
#include "nfce/config.hpp"
#include "nfce/io.hpp"
#include "nfce/sim.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <optional>
#include <ostream>
#include <sstream>

namespace nfce
{
    namespace
    {
        namespace fs = std::filesystem;

        struct RunManifest
        {
            std::string subcommand;
            std::string config_path;
            std::string out_dir;
            std::optional<std::uint64_t> seed;
            std::optional<int> trials;
            std::optional<int> starts;
            std::string preset;
            bool full_size = false;
            std::string input;
        };

        std::string manifest_text(const RunManifest &m, const KeyValueConfig &cfg)
        {
            std::ostringstream os;
            os << "# nfce run manifest\n";
            os << "schema_version = " << kOutputSchemaVersion << "\n";
            os << "subcommand = " << m.subcommand << "\n";
            os << "config = " << (m.config_path.empty() ? "-" : m.config_path) << "\n";
            os << "out = " << m.out_dir << "\n";
            os << "preset = " << (m.preset.empty() ? "-" : m.preset) << "\n";
            os << "full_size = " << (m.full_size ? "true" : "false") << "\n";
            os << "seed_override = " << (m.seed ? std::to_string(*m.seed) : "-") << "\n";
            os << "trials_override = " << (m.trials ? std::to_string(*m.trials) : "-") << "\n";
            os << "starts_override = " << (m.starts ? std::to_string(*m.starts) : "-") << "\n";
            if (!m.input.empty())
                os << "input = " << m.input << "\n";
            os << "# resolved configuration\n" << cfg.dump();
            return os.str();
        }

        KeyValueConfig resolve(const RunManifest &m)
        {
            KeyValueConfig cfg;
            if (!m.preset.empty())
            {
                const Preset *p = find_preset(m.preset);
                if (!p)
                {
                    std::string names;
                    for (const auto &q : preset_registry())
                        names += " " + q.name;
                    throw ConfigError("unknown preset '" + m.preset + "'; available:" + names);
                }
                if (p->subcommand != m.subcommand)
                    throw ConfigError("preset '" + p->name + "' belongs to the '" + p->subcommand + "' subcommand");
                cfg = KeyValueConfig::parse(p->text, "preset " + p->name);
                if (m.full_size && !p->full_text.empty())
                    cfg.merge(KeyValueConfig::parse(p->full_text, "preset " + p->name + " (full size)"));
            }
            if (!m.config_path.empty())
                cfg.merge(KeyValueConfig::from_file(m.config_path));
            if (m.seed)
                cfg.set("seed", std::to_string(*m.seed));
            if (m.trials)
                cfg.set("trials", std::to_string(*m.trials));
            if (m.starts)
                cfg.set("starts", std::to_string(*m.starts));
            return cfg;
        }

        void cmd_synth(const RunManifest &m, const KeyValueConfig &cfg, std::ostream &out)
        {
            const ArraySpec spec = array_from_config(cfg);
            const GeometryPose pose = pose_from_config(cfg);
            ChannelTensor h = synth(spec, pose, amplitude_from_config(cfg, Amplitude::exact));
            if (cfg.has("snr_db"))
            {
                Rng rng = make_rng(seed_from_config(cfg), 0);
                h = add_noise(h, cfg.get_double("snr_db", 0.0), rng);
            }
            const fs::path file = fs::path(m.out_dir) / "channel.bin";
            write_channel(file, h);

            std::ostringstream meta;
            meta << manifest_text(m, cfg) << "# channel file\nshape = " << h.shape()[0] << "," << h.shape()[1] << ","
                 << h.shape()[2] << "," << h.shape()[3] << "," << h.shape()[4] << "\n"
                 << "layout = rx_x,rx_y,tx_x,tx_y,f row-major; header 5 x int64 LE; entries float64 LE re,im\n"
                 << "wavelength_m = " << spec.wavelength() << "\n";
            write_text(file.string() + ".meta", meta.str());
            out << "wrote " << file.string() << "\n";
        }

        void cmd_estimate(const RunManifest &m, const KeyValueConfig &cfg, std::ostream &out)
        {
            if (m.input.empty())
                throw ConfigError("estimate needs --input <channel file>");
            const ChannelTensor y = read_channel(m.input);
            const int L = cfg.get_int("L", 2);
            PolyPhaseModel model;
            if (cfg.get_bool("pilots", false))
                model = estimate_from_pilots(pilot_subsample(y, L), L);
            else
                model = estimate(y, build_degree_set(L, y.shape()));

            std::ostringstream csv;
            csv << "m_rx_x,m_rx_y,m_tx_x,m_tx_y,m_f,a_cycles\n";
            csv.precision(17);
            for (std::size_t i = 0; i < model.coefficients.size(); ++i)
            {
                const auto &d = model.degrees.degrees[i];
                csv << d[0] << ',' << d[1] << ',' << d[2] << ',' << d[3] << ',' << d[4] << ',' << model.coefficients[i]
                    << '\n';
            }
            const fs::path dir(m.out_dir);
            write_text(dir / "coefficients.csv", csv.str());
            write_channel(dir / "channel_hat.bin", reconstruct(model));
            write_text(dir / "estimate.meta", manifest_text(m, cfg) + "# outputs\ncoefficients = coefficients.csv\n"
                                                                      "reconstruction = channel_hat.bin\n");
            out << "estimated " << model.coefficients.size() << " coefficients into " << dir.string() << "\n";
        }

        void cmd_mse(const RunManifest &m, const KeyValueConfig &cfg, std::ostream &out, std::ostream &err)
        {
            const ExperimentConfig e = experiment_from_config(cfg);
            if (e.trials == 1)
                err << "warning: trials = 1; the reported MSE is a single realization and has high variance\n";
            const ExperimentReport report = run_mse_sweep(e);
            for (const auto &w : report.warnings)
                err << "warning: " << w << "\n";

            const fs::path dir(m.out_dir);
            std::ostringstream mse, crb;
            write_mse_csv(mse, report);
            write_crb_csv(crb, report);
            write_text(dir / "mse.csv", mse.str());
            write_text(dir / "crb.csv", crb.str());

            std::ostringstream meta;
            meta << manifest_text(m, cfg) << "# report\nconfig_hash = " << std::hex << report.config_hash << std::dec
                 << "\nparameter_counts =";
            for (std::size_t l = 0; l < report.L_list.size(); ++l)
                meta << (l ? "," : " ") << "L" << report.L_list[l] << ":" << report.parameter_count[l];
            meta << "\nsamples = " << e.spec.total_size() << "\n";
            write_text(dir / "mse.meta", meta.str());
            out << "wrote " << (dir / "mse.csv").string() << " and " << (dir / "crb.csv").string() << "\n";
        }

        void cmd_mle(const RunManifest &m, const KeyValueConfig &cfg, std::ostream &out)
        {
            TrajectoryExperiment t;
            t.spec = array_from_config(cfg);
            t.truth = pose_from_config(cfg);
            t.snr_db = cfg.get_double("snr_db", 10.0);
            t.amplitude = amplitude_from_config(cfg, Amplitude::exact);
            t.mle = mle_from_config(cfg);
            t.seed = seed_from_config(cfg);
            const TrajectoryReport report = run_trajectory_experiment(t);

            const fs::path dir(m.out_dir);
            std::ostringstream csv;
            write_trajectory_csv(csv, report);
            write_text(dir / "trajectory.csv", csv.str());

            std::ostringstream meta;
            meta << manifest_text(m, cfg) << "# report\n"
                 << "columns = Best_k is the k-th lowest final cost among all starts; Proxy is the start at the true pose\n"
                 << "genie_final_cost_db = " << cost_to_db(report.genie.final_cost) << "\n"
                 << "converged_fraction = " << report.converged_fraction << "\n";
            write_text(dir / "trajectory.meta", meta.str());
            out << "wrote " << (dir / "trajectory.csv").string() << " (" << report.random.size()
                << " starts, converged fraction " << report.converged_fraction << ")\n";
        }

        void cmd_landscape(const RunManifest &m, const KeyValueConfig &cfg, std::ostream &out)
        {
            const LandscapeSetup setup = landscape_from_config(cfg);
            const double D = cfg.get_double("distance", 5.0);
            const auto rows = landscape_scan(D, cfg.get_double("lo", D - 0.4), cfg.get_double("hi", D + 0.4),
                                             cfg.get_double("step", 1e-4), setup);
            const fs::path dir(m.out_dir);
            std::ostringstream csv;
            write_landscape_csv(csv, rows);
            write_text(dir / "landscape.csv", csv.str());
            write_text(dir / "landscape.meta", manifest_text(m, cfg));
            out << "wrote " << (dir / "landscape.csv").string() << " (" << rows.size() << " rows)\n";
        }
    } // namespace

    int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
    {
        CLI::App app{"nfce: near-field line-of-sight channel synthesis and wavefront estimation", "nfce"};
        app.require_subcommand(0, 1);

        RunManifest m;
        bool list_presets = false;
        app.add_flag("--list-presets", list_presets, "Print the preset registry and exit");

        auto add_common = [&m](CLI::App *sub)
        {
            sub->add_option("--config", m.config_path, "Flat key = value configuration file");
            sub->add_option("--out", m.out_dir, "Existing output directory")->required();
            sub->add_option("--seed", m.seed, "Seed override");
            sub->add_option("--preset", m.preset, "Named preset (see --list-presets)");
            sub->add_flag("--full-size", m.full_size, "Use the full-size variant of the preset");
        };

        CLI::App *synth_cmd = app.add_subcommand("synth", "Write a synthetic channel tensor");
        add_common(synth_cmd);
        CLI::App *estimate_cmd = app.add_subcommand("estimate", "Fit a polynomial wavefront to a channel file");
        add_common(estimate_cmd);
        estimate_cmd->add_option("--input", m.input, "Channel file to estimate from")->required();
        CLI::App *mse_cmd = app.add_subcommand("mse", "Monte Carlo MSE sweep with bound and LS references");
        add_common(mse_cmd);
        mse_cmd->add_option("--trials", m.trials, "Trial count override")->check(CLI::PositiveNumber);
        CLI::App *mle_cmd = app.add_subcommand("mle", "Multistart geometric MLE trajectories");
        add_common(mle_cmd);
        mle_cmd->add_option("--starts", m.starts, "Random start count override")->check(CLI::PositiveNumber);
        CLI::App *landscape_cmd = app.add_subcommand("landscape", "Noiseless cost scan over the distance");
        add_common(landscape_cmd);

        try
        {
            app.parse(argc, argv);
        }
        catch (const CLI::CallForHelp &e)
        {
            return app.exit(e, out, err);
        }
        catch (const CLI::ParseError &e)
        {
            app.exit(e, out, err);
            return kExitConfig;
        }

        if (list_presets)
        {
            for (const auto &p : preset_registry())
                out << p.name << "\t" << p.subcommand << "\t" << p.description << (p.full_text.empty() ? "" : " [--full-size]")
                    << "\n";
            return kExitOk;
        }
        if (app.get_subcommands().empty())
        {
            err << app.help();
            return kExitConfig;
        }
        m.subcommand = app.get_subcommands().front()->get_name();

        try
        {
            const KeyValueConfig cfg = resolve(m);
            std::error_code ec;
            if (!fs::is_directory(m.out_dir, ec))
                throw IoError("output directory does not exist: " + m.out_dir);

            if (m.subcommand == "synth")
                cmd_synth(m, cfg, out);
            else if (m.subcommand == "estimate")
                cmd_estimate(m, cfg, out);
            else if (m.subcommand == "mse")
                cmd_mse(m, cfg, out, err);
            else if (m.subcommand == "mle")
                cmd_mle(m, cfg, out);
            else
                cmd_landscape(m, cfg, out);
        }
        catch (const IoError &e)
        {
            err << "error: " << e.what() << "\n";
            return kExitIo;
        }
        catch (const std::invalid_argument &e)
        {
            err << "error: " << e.what() << "\n";
            return kExitConfig;
        }
        catch (const std::domain_error &e)
        {
            err << "error: " << e.what() << "\n";
            return kExitConfig;
        }
        return kExitOk;
    }

} // namespace nfce
