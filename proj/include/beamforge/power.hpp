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
#ifndef BEAMFORGE_POWER_HPP
#define BEAMFORGE_POWER_HPP

#include "beamforge/types.hpp"

#include <span>
#include <string_view>

namespace beamforge
{
    enum class power_kind
    {
        per_element, // |a_m|^2 <= budget for every antenna
        sum_power    // ||a||^2 <= budget (summed over all beams of a joint problem)
    };

    std::string_view to_string(power_kind kind);
    power_kind parse_power_kind(std::string_view name);

    struct power_constraint
    {
        power_kind kind = power_kind::per_element;
        double budget = 1.0;

        void validate() const;
    };

    // Largest per-element power across all beams, and the total power.
    double max_element_power(std::span<const cvec> beams);
    double total_power(std::span<const cvec> beams);

    // Factor c <= 1 that moves the beams onto the constraint boundary when they
    // violate it; 1 when already feasible.
    double feasibility_scale(std::span<const cvec> beams, const power_constraint &c);

    bool is_feasible(std::span<const cvec> beams, const power_constraint &c, double tol = 1e-12);
}

#endif
