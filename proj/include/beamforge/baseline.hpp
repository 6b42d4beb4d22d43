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
#ifndef BEAMFORGE_BASELINE_HPP
#define BEAMFORGE_BASELINE_HPP

#include "beamforge/solver.hpp"

#include <optional>

namespace beamforge
{
    // Reference method: design a fully digital beamforming vector for each
    // target, then approximate it with the hybrid hardware ("baseline-approx").

    // Solves the problem with the digital variant and returns a_d per beam.
    std::vector<cvec> digital_target(const synthesis_problem &problem, const solver_config &config);

    struct approximation_options
    {
        std::size_t max_sweeps = 200;
        double tolerance = 1e-8; // relative residual change
    };

    struct approximation_result
    {
        beamformer_params params;
        std::vector<double> residual_trace; // sum_b ||compose_b - a_d,b||^2 after every sweep
        double residual = 0.0;              // before any feasibility rescale
        std::vector<std::string> warnings;
    };

    // Minimizes sum_b ||compose(params, b) - a_d,b||^2 over one shared analog
    // network by alternating closed-form phase updates (snapped to the K-level
    // grid when quantized) with least-squares fits of the per-beam digital
    // weights. When `power` is given the result is rescaled to be feasible.
    approximation_result hybrid_approximate(std::span<const cvec> digital, const hybrid_architecture &arch,
                                            const std::optional<power_constraint> &power = std::nullopt,
                                            const approximation_options &options = {});

    approximation_result hybrid_approximate(const cvec &digital, const hybrid_architecture &arch,
                                            const std::optional<power_constraint> &power = std::nullopt,
                                            const approximation_options &options = {});

    // digital_target followed by hybrid_approximate under the problem's power
    // constraint; objective and feasibility are filled in, starts stay empty.
    synthesis_result synthesize_baseline(const synthesis_problem &problem, const solver_config &config);
}

#endif
