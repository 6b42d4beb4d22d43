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
#ifndef BEAMFORGE_OBJECTIVE_HPP
#define BEAMFORGE_OBJECTIVE_HPP

#include "beamforge/pattern.hpp"

namespace beamforge
{
    // Throws unless p is an even integer >= 2.
    void validate_exponent(int p);

    // sum_g W_g^p | |A_g| - D_g |^p cell, the p-th power of the objective.
    double objective_sum(std::span<const cd> pattern, const target_pattern &target, int p, double cell);

    // f = (sum_g W_g^p | |A_g| - D_g |^p cell)^(1/p)
    double objective_value(std::span<const cd> pattern, const target_pattern &target, int p, double cell);

    // Writes c_g = d(objective_sum)/d(conj A_g) * 2, i.e. the per-sample factor
    // W^p p |r|^(p-2) r A/|A| cell, and returns objective_sum. Samples with
    // |A_g| = 0 or r_g = 0 contribute zero.
    double objective_sum_sensitivity(std::span<const cd> pattern, const target_pattern &target, int p, double cell,
                                     std::span<cd> sensitivity);

    struct value_and_gradient
    {
        double value = 0.0;
        cvec gradient; // df/dRe(a) + j df/dIm(a)
    };

    // Objective and its gradient with respect to the beamforming vector, using
    // the evaluator's FFT path when it has one.
    value_and_gradient objective_gradient_a(std::span<const cd> a, pattern_evaluator &eval,
                                            const target_pattern &target, int p);

    // Quadratic exterior penalty:
    //   per_element: mu sum_m max(0, |a_m|^2 - budget)^2
    //   sum_power:   mu max(0, ||a||^2 - budget)^2
    value_and_gradient power_penalty(std::span<const cd> a, const power_constraint &c, double mu);

    // Joint form for several beams. per_element applies to every beam on its
    // own; sum_power applies to the total power of all beams.
    double power_penalty(std::span<const cvec> beams, const power_constraint &c, double mu,
                         std::vector<cvec> *gradients = nullptr);
}

#endif
