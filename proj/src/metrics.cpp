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
#include "beamforge/metrics.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <sstream>

namespace beamforge
{
    gain_mean parse_gain_mean(std::string_view name)
    {
        if (name == "db")
            return gain_mean::db;
        if (name == "linear")
            return gain_mean::linear;
        throw invalid_argument("unknown gain mean '" + std::string(name) + "' (expected db or linear)");
    }

    std::vector<double> gains_db(std::span<const cd> pattern)
    {
        std::vector<double> out(pattern.size());
        for (std::size_t g = 0; g < pattern.size(); ++g)
            out[g] = to_db(std::abs(pattern[g]), gain_floor_db);
        return out;
    }

    namespace
    {
        void check_grid(std::span<const double> gain, const target_pattern &target)
        {
            if (gain.size() != target.labels.size())
                throw invalid_argument("metrics: pattern and target grids differ");
        }
    }

    double average_gain(std::span<const double> gain_db, const target_pattern &target, gain_mean mean)
    {
        check_grid(gain_db, target);
        double acc = 0.0;
        std::size_t n = 0;
        for (std::size_t g = 0; g < gain_db.size(); ++g)
            if (target.labels[g] == region::pass)
            {
                acc += mean == gain_mean::db ? gain_db[g] : std::pow(10.0, gain_db[g] / 10.0);
                ++n;
            }
        if (n == 0)
            throw invalid_argument("average_gain: empty passband");
        return mean == gain_mean::db ? acc / double(n) : 10.0 * std::log10(acc / double(n));
    }

    double max_ripple(std::span<const double> gain_db, const target_pattern &target)
    {
        check_grid(gain_db, target);
        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        for (std::size_t g = 0; g < gain_db.size(); ++g)
            if (target.labels[g] == region::pass)
            {
                lo = std::min(lo, gain_db[g]);
                hi = std::max(hi, gain_db[g]);
            }
        if (hi < lo)
            throw invalid_argument("max_ripple: empty passband");
        return hi - lo;
    }

    double max_sidelobe(std::span<const double> gain_db, const target_pattern &target, gain_mean mean)
    {
        check_grid(gain_db, target);
        double hi = -std::numeric_limits<double>::infinity();
        for (std::size_t g = 0; g < gain_db.size(); ++g)
            if (target.labels[g] == region::stop)
                hi = std::max(hi, gain_db[g]);
        if (!std::isfinite(hi))
            throw invalid_argument("max_sidelobe: empty stopband");
        return hi - average_gain(gain_db, target, mean);
    }

    double overlap(std::span<const double> gain_a, std::span<const double> gain_b, const target_pattern &target_a,
                   const target_pattern &target_b, double threshold_db, double floor_dbr)
    {
        if (gain_a.size() != gain_b.size())
            throw invalid_argument("overlap: beams are sampled on different grids");
        check_grid(gain_a, target_a);
        check_grid(gain_b, target_b);
        const std::size_t pass = target_a.count(region::pass);
        if (pass == 0)
            throw invalid_argument("overlap: beam A has an empty passband");

        const double peak_a = *std::max_element(gain_a.begin(), gain_a.end());
        const double peak_b = *std::max_element(gain_b.begin(), gain_b.end());
        std::size_t hits = 0;
        for (std::size_t g = 0; g < gain_a.size(); ++g)
        {
            const bool covered = target_a.labels[g] == region::pass || target_b.labels[g] == region::pass;
            const bool visible = covered && (gain_a[g] > peak_a - floor_dbr || gain_b[g] > peak_b - floor_dbr);
            if (visible && std::abs(gain_a[g] - gain_b[g]) < threshold_db)
                ++hits;
        }
        return std::min(100.0, 100.0 * double(hits) / double(pass));
    }

    std::vector<metrics_row> report(const std::vector<beam_entry> &beams,
                                    const std::vector<std::pair<std::size_t, std::size_t>> &pairs, gain_mean mean)
    {
        std::vector<metrics_row> rows;
        rows.reserve(beams.size());
        for (const auto &b : beams)
        {
            metrics_row row;
            row.id = b.id;
            row.metrics.avg_gain_db = average_gain(b.gain_db, b.target, mean);
            row.metrics.max_ripple_db = max_ripple(b.gain_db, b.target);
            row.metrics.max_sidelobe_db = b.target.count(region::stop) > 0
                                              ? max_sidelobe(b.gain_db, b.target, mean)
                                              : std::numeric_limits<double>::quiet_NaN();
            rows.push_back(std::move(row));
        }

        for (const auto &[i, j] : pairs)
        {
            if (i >= beams.size() || j >= beams.size() || i == j)
                throw invalid_argument("report: invalid beam pair");
            for (auto [a, b] : {std::pair{i, j}, std::pair{j, i}})
            {
                const double o = overlap(beams[a].gain_db, beams[b].gain_db, beams[a].target, beams[b].target);
                auto &slot = rows[a].metrics.overlap_pct;
                slot = slot ? std::max(*slot, o) : o;
            }
        }
        return rows;
    }

    namespace
    {
        std::string fixed(double v, int prec)
        {
            if (std::isnan(v))
                return "";
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.*f", prec, v);
            return buf;
        }

        std::string exact(double v)
        {
            if (std::isnan(v))
                return "";
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.17g", v);
            return buf;
        }
    }

    std::string render_text(const std::vector<metrics_row> &rows)
    {
        std::size_t w = 4;
        for (const auto &r : rows)
            w = std::max(w, r.id.size());

        std::ostringstream os;
        char buf[256];
        std::snprintf(buf, sizeof buf, "%-*s  %12s  %14s  %12s  %16s\n", int(w), "beam", "avg gain dB", "max ripple dB",
                      "overlap %", "max sidelobe dB");
        os << buf;
        for (const auto &r : rows)
        {
            const auto &m = r.metrics;
            std::snprintf(buf, sizeof buf, "%-*s  %12s  %14s  %12s  %16s\n", int(w), r.id.c_str(),
                          fixed(m.avg_gain_db, 2).c_str(), fixed(m.max_ripple_db, 2).c_str(),
                          m.overlap_pct ? fixed(*m.overlap_pct, 2).c_str() : "",
                          fixed(m.max_sidelobe_db, 2).c_str());
            os << buf;
        }
        return os.str();
    }

    std::string render_csv(const std::vector<metrics_row> &rows)
    {
        std::ostringstream os;
        os << "beam_id,avg_gain_db,max_ripple_db,overlap_pct,max_sidelobe_db\n";
        for (const auto &r : rows)
        {
            const auto &m = r.metrics;
            os << r.id << ',' << exact(m.avg_gain_db) << ',' << exact(m.max_ripple_db) << ','
               << (m.overlap_pct ? exact(*m.overlap_pct) : "") << ',' << exact(m.max_sidelobe_db) << '\n';
        }
        return os.str();
    }
}
