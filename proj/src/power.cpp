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
#include "beamforge/power.hpp"

#include <algorithm>

namespace beamforge
{
    std::string_view to_string(power_kind kind)
    {
        return kind == power_kind::per_element ? "per_element" : "sum_power";
    }

    power_kind parse_power_kind(std::string_view name)
    {
        if (name == "per_element")
            return power_kind::per_element;
        if (name == "sum_power")
            return power_kind::sum_power;
        throw invalid_argument("unknown power constraint '" + std::string(name) + "'");
    }

    void power_constraint::validate() const
    {
        if (!(budget > 0.0) || !std::isfinite(budget))
            throw invalid_argument("power budget must be positive");
    }

    double max_element_power(std::span<const cvec> beams)
    {
        double m = 0.0;
        for (const auto &a : beams)
            for (const auto &v : a)
                m = std::max(m, std::norm(v));
        return m;
    }

    double total_power(std::span<const cvec> beams)
    {
        double s = 0.0;
        for (const auto &a : beams)
            s += squared_norm(a);
        return s;
    }

    double feasibility_scale(std::span<const cvec> beams, const power_constraint &c)
    {
        const double used = c.kind == power_kind::per_element ? max_element_power(beams) : total_power(beams);
        if (used <= c.budget)
            return 1.0;
        return std::sqrt(c.budget / used);
    }

    bool is_feasible(std::span<const cvec> beams, const power_constraint &c, double tol)
    {
        const double used = c.kind == power_kind::per_element ? max_element_power(beams) : total_power(beams);
        return used <= c.budget + tol;
    }
}
