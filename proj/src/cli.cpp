// SPDX-License-Identifier: Apache-2.0
//
// beamforge - beam pattern synthesis for analog/hybrid beamforming arrays
// Copyright (C) 2026 The beamforge authors
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
#include "beamforge/cli.hpp"

#include "beamforge/baseline.hpp"
#include "beamforge/io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <iostream>
#include <sstream>

namespace beamforge
{
    namespace
    {
        using json = nlohmann::json;

        struct synth_output
        {
            codebook book;
            std::vector<synthesis_result> results;
        };

        synth_output synthesize(const synthesis_config &cfg, bool baseline)
        {
            synth_output out{codebook{
                                 .method = baseline ? "baseline-approx" : "optimizer",
                                 .seed = cfg.solver.seed,
                                 .geometry = cfg.geometry,
                                 .architecture = cfg.architecture,
                                 .power = cfg.power,
                                 .p = cfg.p,
                                 .grid_size = cfg.grid.size(),
                                 .entries = {},
                             },
                             {}};
            for (const auto &problem : cfg.problems())
            {
                synthesis_result r = baseline ? synthesize_baseline(problem, cfg.solver) : solve(problem, cfg.solver);
                out.book.entries.push_back({r.params, r.objective});
                out.results.push_back(std::move(r));
            }
            return out;
        }

        std::vector<beam_entry> beam_entries(const std::vector<cvec> &beams, const array_geometry &geom,
                                             const synthesis_config &cfg, const std::string &prefix)
        {
            if (beams.size() != cfg.targets.size())
                throw invalid_argument("metrics: " + std::to_string(beams.size()) + " beams given but the spec has " +
                                       std::to_string(cfg.targets.size()) + " targets");
            if (geom.size() != cfg.geometry.size())
                throw invalid_argument("metrics: codebook has " + std::to_string(geom.size()) +
                                       " antennas but the spec has " + std::to_string(cfg.geometry.size()));
            pattern_evaluator eval(geom, cfg.grid);
            std::vector<beam_entry> entries;
            for (std::size_t b = 0; b < beams.size(); ++b)
                entries.push_back({prefix + std::to_string(b), gains_db(eval.evaluate(beams[b])), cfg.targets[b]});
            return entries;
        }

        std::vector<metrics_row> codebook_metrics(const std::vector<codebook> &books, const synthesis_config &cfg,
                                                  gain_mean mean, const std::string &prefix = "beam")
        {
            if (books.empty())
                throw invalid_argument("metrics: no codebooks given");
            std::vector<cvec> beams;
            for (const auto &b : books)
                for (auto &a : b.beams())
                    beams.push_back(std::move(a));
            return report(beam_entries(beams, books.front().geometry, cfg, prefix), cfg.pairs, mean);
        }

        std::vector<codebook> read_codebooks(const std::vector<std::string> &paths)
        {
            std::vector<codebook> books;
            for (const auto &p : paths)
                books.push_back(read_codebook(p));
            return books;
        }

        std::string exact(double v)
        {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.17g", v);
            return buf;
        }

        void apply_overrides(synthesis_config &cfg, std::optional<std::uint64_t> seed, std::optional<std::size_t> threads,
                             bool quiet, std::ostream &err)
        {
            if (seed)
                cfg.solver.seed = *seed;
            if (threads)
                cfg.solver.threads = *threads;
            if (!quiet)
            {
                cfg.solver.progress = &err;
                cfg.solver.progress_every = 100;
            }
        }

        void write_synthesis(const synth_output &s, const std::string &out, const std::string &result)
        {
            write_codebook(out, s.book);
            if (!result.empty())
                write_text(result, result_to_json(s.results));
        }

        struct comparison_metric
        {
            const char *name;
            bool higher_is_better;
        };

        std::string compare_csv(const std::vector<metrics_row> &a, const std::vector<metrics_row> &b)
        {
            if (a.size() != b.size())
                throw invalid_argument("compare: the two sets have different beam counts");
            std::ostringstream os;
            os << "beam_id,metric,a,b,better\n";
            const auto line = [&](const std::string &id, const char *metric, double va, double vb, bool higher)
            {
                const char *better = va == vb ? "tie" : ((va > vb) == higher ? "a" : "b");
                os << id << ',' << metric << ',' << exact(va) << ',' << exact(vb) << ',' << better << '\n';
            };
            for (std::size_t i = 0; i < a.size(); ++i)
            {
                const auto &ma = a[i].metrics, &mb = b[i].metrics;
                const std::string id = a[i].id;
                line(id, "avg_gain_db", ma.avg_gain_db, mb.avg_gain_db, true);
                line(id, "max_ripple_db", ma.max_ripple_db, mb.max_ripple_db, false);
                if (ma.overlap_pct && mb.overlap_pct)
                    line(id, "overlap_pct", *ma.overlap_pct, *mb.overlap_pct, false);
                line(id, "max_sidelobe_db", ma.max_sidelobe_db, mb.max_sidelobe_db, false);
            }
            return os.str();
        }

        std::string csv_cell(const json &v)
        {
            std::string s = v.is_string() ? v.get<std::string>() : v.dump();
            if (s.find_first_of(",\"\n") != std::string::npos)
            {
                std::string q = "\"";
                for (char c : s)
                    q += c == '"' ? std::string("\"\"") : std::string(1, c);
                return q + "\"";
            }
            return s;
        }

        int run_sweep(const std::string &config_path, const std::string &grid_path, const std::string &out_dir,
                      std::optional<std::uint64_t> seed, std::optional<std::size_t> threads, bool quiet, std::ostream &out,
                      std::ostream &err)
        {
            json base, grid;
            try
            {
                base = json::parse(read_text(config_path));
                grid = json::parse(read_text(grid_path));
            }
            catch (const json::parse_error &e)
            {
                throw invalid_argument(std::string("sweep: malformed JSON: ") + e.what());
            }
            if (!grid.is_object() || grid.empty())
                throw invalid_argument("sweep: the parameter grid must map JSON pointers to value arrays");
            std::vector<std::string> keys;
            std::vector<json> values;
            std::size_t jobs = 1;
            for (const auto &[k, v] : grid.items())
            {
                if (!v.is_array() || v.empty())
                    throw invalid_argument("sweep.grid." + k + ": expected a non-empty array");
                keys.push_back(k);
                values.push_back(v);
                jobs *= v.size();
            }

            std::error_code ec;
            std::filesystem::create_directories(out_dir, ec);
            if (ec)
                throw io_error("cannot create '" + out_dir + "': " + ec.message());

            std::ostringstream summary;
            summary << "job";
            for (const auto &k : keys)
                summary << ',' << csv_cell(json(k));
            summary << ",beam_id,avg_gain_db,max_ripple_db,overlap_pct,max_sidelobe_db\n";

            for (std::size_t job = 0; job < jobs; ++job)
            {
                json cfg_json = base;
                std::vector<json> chosen;
                std::size_t rest = job;
                for (std::size_t k = keys.size(); k-- > 0;)
                {
                    chosen.insert(chosen.begin(), values[k][rest % values[k].size()]);
                    rest /= values[k].size();
                }
                for (std::size_t k = 0; k < keys.size(); ++k)
                {
                    try
                    {
                        cfg_json[json::json_pointer(keys[k])] = chosen[k];
                    }
                    catch (const json::exception &e)
                    {
                        throw invalid_argument("sweep.grid." + keys[k] + ": " + e.what());
                    }
                }
                synthesis_config cfg = parse_config(cfg_json.dump());
                apply_overrides(cfg, seed, threads, quiet, err);

                char name[32];
                std::snprintf(name, sizeof name, "job_%04zu", job);
                const std::filesystem::path dir = std::filesystem::path(out_dir) / name;
                std::filesystem::create_directories(dir, ec);
                if (ec)
                    throw io_error("cannot create '" + dir.string() + "': " + ec.message());

                const synth_output s = synthesize(cfg, false);
                write_text(dir / "config.json", cfg_json.dump(1) + "\n");
                write_synthesis(s, (dir / "codebook.json").string(), (dir / "result.json").string());
                const auto rows = codebook_metrics({s.book}, cfg, gain_mean::db);
                write_text(dir / "metrics.csv", render_csv(rows));

                for (const auto &row : rows)
                {
                    summary << name;
                    for (const auto &c : chosen)
                        summary << ',' << csv_cell(c);
                    const auto &m = row.metrics;
                    summary << ',' << row.id << ',' << exact(m.avg_gain_db) << ',' << exact(m.max_ripple_db) << ','
                            << (m.overlap_pct ? exact(*m.overlap_pct) : std::string()) << ',' << exact(m.max_sidelobe_db)
                            << '\n';
                }
                if (!quiet)
                    err << "sweep: " << name << " done\n";
            }
            write_text(std::filesystem::path(out_dir) / "summary.csv", summary.str());
            out << "sweep: " << jobs << " jobs written to " << out_dir << "\n";
            return 0;
        }
    }

    int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
    {
        CLI::App app{"beamforge: beam pattern synthesis for analog and hybrid beamforming arrays", "beamforge"};
        app.require_subcommand(1, 1);

        std::string config, out_path, result_path, beam_path, spec_path, grid_path, out_dir;
        std::optional<std::uint64_t> seed;
        std::optional<std::size_t> threads, grid_size;
        std::size_t beam_index = 0;
        bool quiet = false, dbr = false;
        std::vector<std::string> beams, set_a, set_b;
        std::string mean_name = "db";

        auto *synth = app.add_subcommand("synth", "Synthesize a codebook from a configuration");
        synth->add_option("--config", config, "Configuration JSON")->required();
        synth->add_option("--seed", seed, "Override the solver seed");
        synth->add_option("--out", out_path, "Codebook JSON to write")->required();
        synth->add_option("--result", result_path, "Solver report JSON to write");
        synth->add_option("--threads", threads, "Worker threads (0: all cores)");
        synth->add_flag("--quiet", quiet, "No progress lines");

        auto *eval = app.add_subcommand("eval", "Sample the pattern of a codebook beam");
        eval->add_option("--beam", beam_path, "Codebook JSON")->required();
        eval->add_option("--grid", grid_size, "Number of samples (default: the codebook grid)");
        eval->add_option("--beam-index", beam_index, "Beam to evaluate, codebook order");
        eval->add_option("--out", out_path, "Pattern CSV to write")->required();
        eval->add_flag("--dbr", dbr, "Normalize the peak to 0 dB");

        auto *metrics = app.add_subcommand("metrics", "Quality metrics of codebook beams");
        metrics->add_option("--beams", beams, "Codebook JSON files, beams in order")->required();
        metrics->add_option("--spec", spec_path, "Configuration JSON with the targets")->required();
        metrics->add_option("--out", out_path, "Report CSV to write");
        metrics->add_option("--gain-mean", mean_name, "db or linear")->check(CLI::IsMember({"db", "linear"}));

        auto *baseline = app.add_subcommand("baseline", "Digital design approximated by the hybrid network");
        baseline->add_option("--config", config, "Configuration JSON")->required();
        baseline->add_option("--seed", seed, "Override the solver seed");
        baseline->add_option("--out", out_path, "Codebook JSON to write")->required();
        baseline->add_option("--result", result_path, "Solver report JSON to write");
        baseline->add_option("--threads", threads, "Worker threads (0: all cores)");
        baseline->add_flag("--quiet", quiet, "No progress lines");

        auto *compare = app.add_subcommand("compare", "Metric-by-metric comparison of two codebook sets");
        compare->add_option("--a", set_a, "First set of codebook JSON files")->required();
        compare->add_option("--b", set_b, "Second set of codebook JSON files")->required();
        compare->add_option("--spec", spec_path, "Configuration JSON with the targets")->required();
        compare->add_option("--out", out_path, "Comparison CSV to write");
        compare->add_option("--gain-mean", mean_name, "db or linear")->check(CLI::IsMember({"db", "linear"}));

        auto *sweep = app.add_subcommand("sweep", "Synthesize a configuration over a parameter grid");
        sweep->add_option("--config", config, "Configuration template JSON")->required();
        sweep->add_option("--grid", grid_path, "JSON object mapping JSON pointers to value arrays")->required();
        sweep->add_option("--out-dir", out_dir, "Output directory")->required();
        sweep->add_option("--seed", seed, "Override the solver seed");
        sweep->add_option("--threads", threads, "Worker threads (0: all cores)");
        sweep->add_flag("--quiet", quiet, "No progress lines");

        try
        {
            app.parse(argc, argv);
        }
        catch (const CLI::CallForHelp &e)
        {
            return app.exit(e, out, err);
        }
        catch (const CLI::CallForAllHelp &e)
        {
            return app.exit(e, out, err);
        }
        catch (const CLI::ParseError &e)
        {
            err << "error: " << e.what() << "\n\n" << app.help();
            return 1;
        }

        try
        {
            if (synth->parsed() || baseline->parsed())
            {
                synthesis_config cfg = load_config(config);
                apply_overrides(cfg, seed, threads, quiet, err);
                const synth_output s = synthesize(cfg, baseline->parsed());
                write_synthesis(s, out_path, result_path);
                for (const auto &r : s.results)
                    for (const auto &w : r.warnings)
                        err << "warning: " << w << "\n";
                if (!quiet)
                    out << "wrote " << s.book.num_beams() << " beam(s) to " << out_path << "\n";
            }
            else if (eval->parsed())
            {
                const codebook book = read_codebook(beam_path);
                const auto all = book.beams();
                if (beam_index >= all.size())
                    throw invalid_argument("eval: --beam-index " + std::to_string(beam_index) + " out of range (" +
                                           std::to_string(all.size()) + " beams)");
                const spatial_grid grid(grid_size.value_or(book.grid_size));
                pattern_evaluator ev(book.geometry, grid);
                const cvec pattern = ev.evaluate(all[beam_index]);
                export_plot_data(make_pattern_samples(book.geometry, grid, pattern, dbr), out_path);
            }
            else if (metrics->parsed())
            {
                const synthesis_config cfg = load_config(spec_path);
                const auto rows = codebook_metrics(read_codebooks(beams), cfg, parse_gain_mean(mean_name));
                out << render_text(rows);
                if (!out_path.empty())
                    write_text(out_path, render_csv(rows));
            }
            else if (compare->parsed())
            {
                const synthesis_config cfg = load_config(spec_path);
                const gain_mean mean = parse_gain_mean(mean_name);
                const std::string csv = compare_csv(codebook_metrics(read_codebooks(set_a), cfg, mean),
                                                    codebook_metrics(read_codebooks(set_b), cfg, mean));
                if (out_path.empty())
                    out << csv;
                else
                    write_text(out_path, csv);
            }
            else if (sweep->parsed())
                return run_sweep(config, grid_path, out_dir, seed, threads, quiet, out, err);
            return 0;
        }
        catch (const invalid_argument &e)
        {
            err << "error: " << e.what() << "\n";
            return 1;
        }
        catch (const io_error &e)
        {
            err << "error: " << e.what() << "\n";
            return 2;
        }
        catch (const std::exception &e)
        {
            err << "error: " << e.what() << "\n";
            return 2;
        }
    }
}
