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
#ifndef BEAMFORGE_SOLVER_HPP
#define BEAMFORGE_SOLVER_HPP

#include "beamforge/hybrid.hpp"
#include "beamforge/objective.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>

namespace beamforge
{
    // One or more targets synthesized jointly on a shared analog network.
    struct synthesis_problem
    {
        array_geometry geometry;
        spatial_grid grid;
        std::vector<target_pattern> targets;
        hybrid_architecture architecture;
        power_constraint power;
        int p = 4;

        std::size_t num_beams() const { return targets.size(); }
        void validate() const;
    };

    enum class descent_method
    {
        lbfgs,
        gradient_descent
    };

    struct solver_config
    {
        std::size_t n_starts = 8;
        std::size_t max_iters = 2000; // per start, split across penalty rounds
        descent_method method = descent_method::lbfgs;
        std::size_t lbfgs_memory = 10;
        double armijo = 1e-4;
        double backtrack = 0.5;
        std::size_t max_backtracks = 60;
        double mu0 = 1.0;
        double mu_growth = 10.0;
        std::size_t penalty_rounds = 4;
        double tolerance = 1e-8; // relative objective change
        std::uint64_t seed = 0;
        std::size_t refine_sweeps = 10;
        std::size_t snap_stages = 1; // 1: snap every analog phase at once
        std::size_t pull_rounds = 0; // grid-attraction rounds before snapping, 0 disables
        std::size_t perturb_rounds = 0; // random restarts of the coordinate descent per start
        std::size_t perturb_percent = 5; // share of analog phases re-drawn per restart
        std::size_t threads = 0; // 0: hardware concurrency, capped by BEAMFORGE_THREADS

        std::size_t progress_every = 0; // 0 disables progress lines
        std::ostream *progress = nullptr;

        void validate() const;
        double final_mu() const;
    };

    struct start_record
    {
        std::size_t index = 0;
        std::uint64_t seed = 0;
        beamformer_params params; // feasible, canonical
        double objective = 0.0;   // unpenalized, after the feasibility rescale
        std::vector<double> trace; // penalized objective after every accepted step
        std::vector<std::size_t> round_starts; // trace offsets where mu changed
        std::size_t iterations = 0;
    };

    struct feasibility_report
    {
        power_kind kind = power_kind::per_element;
        double budget = 1.0;
        double max_element_power = 0.0;
        double total_power = 0.0;
        bool feasible = true;
    };

    struct synthesis_result
    {
        beamformer_params params;
        std::vector<cvec> beams; // composed a per beam
        double objective = 0.0;
        std::size_t best_start = 0;
        std::vector<start_record> starts;
        feasibility_report feasibility;
        std::vector<std::string> warnings;
    };

    // Joint objective (sum_b f_b^p)^(1/p) of the composed beams.
    double evaluate_objective(const synthesis_problem &problem, const beamformer_params &params);
    double evaluate_objective(const synthesis_problem &problem, std::span<const cvec> beams);

    feasibility_report check_feasibility(std::span<const cvec> beams, const power_constraint &power);

    // Multi-start penalized descent over continuous phases. Phase quantization
    // is ignored at this stage.
    synthesis_result solve_continuous(const synthesis_problem &problem, const solver_config &config);

    // Snaps phases to the K-level grid and runs cyclic coordinate descent over
    // the analog phases, refitting the digital weights after each sweep. Every
    // start of the warm result is refined; the best one wins.
    synthesis_result refine_discrete(const synthesis_problem &problem, const synthesis_result &warm,
                                     const solver_config &config);

    // solve_continuous, followed by refine_discrete when phases are quantized.
    synthesis_result solve(const synthesis_problem &problem, const solver_config &config);

    // solve() for problems with two or more simultaneous beams.
    synthesis_result solve_multibeam(const synthesis_problem &problem, const solver_config &config);

    // Worker threads for `jobs` independent tasks.
    std::size_t worker_count(std::size_t requested, std::size_t jobs);

    // Seed of start `index` in the stream of `seed`.
    std::uint64_t start_seed(std::uint64_t seed, std::size_t index);
}

#endif
