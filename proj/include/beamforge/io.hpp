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
#ifndef BEAMFORGE_IO_HPP
#define BEAMFORGE_IO_HPP

#include "beamforge/metrics.hpp"
#include "beamforge/solver.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <utility>

namespace beamforge
{
    // File-system failures. The CLI maps them to exit code 2.
    class io_error : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // A validated configuration file.
    struct synthesis_config
    {
        array_geometry geometry;
        spatial_grid grid;
        hybrid_architecture architecture;
        power_constraint power;
        int p = 4;
        std::vector<beam_spec> specs;
        std::vector<target_pattern> targets;
        bool simultaneous = false; // one joint problem instead of one per target
        std::vector<std::pair<std::size_t, std::size_t>> pairs;
        solver_config solver;

        // One joint problem when simultaneous, otherwise one per target.
        std::vector<synthesis_problem> problems() const;
    };

    // Parses a configuration document; errors name the offending field.
    synthesis_config parse_config(const std::string &json_text);
    synthesis_config load_config(const std::filesystem::path &path);

    struct codebook_entry
    {
        beamformer_params params;
        double objective = 0.0;
    };

    struct codebook
    {
        std::string method = "optimizer";
        std::uint64_t seed = 0;
        array_geometry geometry;
        hybrid_architecture architecture;
        power_constraint power;
        int p = 4;
        std::size_t grid_size = 512;
        std::vector<codebook_entry> entries;

        std::size_t num_beams() const;

        // Composed a of every beam, entries in order.
        std::vector<cvec> beams() const;
    };

    std::string codebook_to_json(const codebook &book);
    codebook codebook_from_json(const std::string &json_text);
    void write_codebook(const std::filesystem::path &path, const codebook &book);
    codebook read_codebook(const std::filesystem::path &path);

    // Machine-readable solver report: objective, per-start traces, feasibility.
    std::string result_to_json(const std::vector<synthesis_result> &results);

    struct pattern_samples
    {
        std::vector<double> angle_deg;
        std::vector<double> psi_rad;
        std::vector<double> gain_db;
    };

    // Header angle_deg,psi_rad,gain_db; gain 20 log10 |A| clamped at -120 dB.
    // With dbr the gains are shifted so the peak is 0 dB.
    pattern_samples make_pattern_samples(const array_geometry &geom, const spatial_grid &grid, std::span<const cd> pattern,
                                         bool dbr = false);
    void export_plot_data(const pattern_samples &samples, const std::filesystem::path &path);
    pattern_samples import_pattern(const std::filesystem::path &path);

    void write_text(const std::filesystem::path &path, const std::string &text);
    std::string read_text(const std::filesystem::path &path);
}

#endif
