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
#ifndef BEAMFORGE_METRICS_HPP
#define BEAMFORGE_METRICS_HPP

#include "beamforge/pattern.hpp"

#include <optional>
#include <string>
#include <utility>

namespace beamforge
{
    inline constexpr double gain_floor_db = -120.0;

    enum class gain_mean
    {
        db,    // mean of 20 log10 |A| over the passband
        linear // 10 log10 of the mean of |A|^2
    };

    gain_mean parse_gain_mean(std::string_view name);

    // 20 log10 |A_g|, clamped at gain_floor_db.
    std::vector<double> gains_db(std::span<const cd> pattern);

    double average_gain(std::span<const double> gain_db, const target_pattern &target, gain_mean mean = gain_mean::db);

    // max - min gain over passband samples; transition samples are excluded.
    double max_ripple(std::span<const double> gain_db, const target_pattern &target);

    // Highest stopband gain relative to the average passband gain.
    double max_sidelobe(std::span<const double> gain_db, const target_pattern &target, gain_mean mean = gain_mean::db);

    // Percentage of beam A's passband measure covered by samples where the two
    // beams are within threshold_db of each other. Only samples inside the
    // passband of A or of B count, and only where at least one beam is within
    // floor_dbr of its own peak.
    double overlap(std::span<const double> gain_a, std::span<const double> gain_b, const target_pattern &target_a,
                   const target_pattern &target_b, double threshold_db = 5.0, double floor_dbr = 40.0);

    struct beam_metrics
    {
        double avg_gain_db = 0.0;
        double max_ripple_db = 0.0;
        std::optional<double> overlap_pct;
        double max_sidelobe_db = 0.0;
    };

    struct beam_entry
    {
        std::string id;
        std::vector<double> gain_db;
        target_pattern target;
    };

    struct metrics_row
    {
        std::string id;
        beam_metrics metrics;
    };

    // One row per beam. The overlap column of a beam is the largest overlap with
    // any partner it is paired with (the beam's own passband as denominator), so
    // each direction of a pair is reported on its own row.
    std::vector<metrics_row> report(const std::vector<beam_entry> &beams,
                                    const std::vector<std::pair<std::size_t, std::size_t>> &pairs,
                                    gain_mean mean = gain_mean::db);

    std::string render_text(const std::vector<metrics_row> &rows);
    std::string render_csv(const std::vector<metrics_row> &rows);
}

#endif
