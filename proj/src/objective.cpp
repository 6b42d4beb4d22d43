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
#include "beamforge/objective.hpp"

#include <algorithm>

namespace beamforge
{
    void validate_exponent(int p)
    {
        if (p < 2 || p % 2 != 0)
            throw invalid_argument("objective exponent p must be an even integer >= 2");
    }

    namespace
    {
        void check_sizes(std::size_t n, const target_pattern &target)
        {
            if (n != target.desired.size() || n != target.weight.size())
                throw invalid_argument("objective: pattern and target lengths differ");
        }

        // |x|^k for integer k >= 0
        double ipow(double x, int k)
        {
            double r = 1.0;
            for (int i = 0; i < k; ++i)
                r *= x;
            return r;
        }
    }

    double objective_sum(std::span<const cd> pattern, const target_pattern &target, int p, double cell)
    {
        validate_exponent(p);
        check_sizes(pattern.size(), target);
        double s = 0.0;
        for (std::size_t g = 0; g < pattern.size(); ++g)
        {
            const double w = target.weight[g];
            if (w == 0.0)
                continue;
            const double r = std::abs(pattern[g]) - target.desired[g];
            s += ipow(w * r, p);
        }
        return s * cell;
    }

    double objective_value(std::span<const cd> pattern, const target_pattern &target, int p, double cell)
    {
        return std::pow(objective_sum(pattern, target, p, cell), 1.0 / double(p));
    }

    double objective_sum_sensitivity(std::span<const cd> pattern, const target_pattern &target, int p, double cell,
                                     std::span<cd> sensitivity)
    {
        validate_exponent(p);
        check_sizes(pattern.size(), target);
        if (sensitivity.size() != pattern.size())
            throw invalid_argument("objective: sensitivity buffer length differs");

        double s = 0.0;
        for (std::size_t g = 0; g < pattern.size(); ++g)
        {
            const double w = target.weight[g];
            const double mag = std::abs(pattern[g]);
            const double r = mag - target.desired[g];
            if (w == 0.0)
            {
                sensitivity[g] = 0.0;
                continue;
            }
            const double wp = ipow(w, p);
            const double rp2 = ipow(r, p - 2); // p even, so |r|^(p-2) = r^(p-2)
            s += wp * rp2 * r * r;
            if (mag == 0.0 || r == 0.0)
                sensitivity[g] = 0.0;
            else
                sensitivity[g] = pattern[g] * (wp * double(p) * rp2 * r * cell / mag);
        }
        return s * cell;
    }

    value_and_gradient objective_gradient_a(std::span<const cd> a, pattern_evaluator &eval,
                                            const target_pattern &target, int p)
    {
        if (a.size() != eval.num_elements())
            throw invalid_argument("objective_gradient_a: weight vector length does not match the array");
        cvec pattern = eval.evaluate(a);
        cvec sens(pattern.size());
        const double s = objective_sum_sensitivity(pattern, target, p, eval.cell(), sens);

        value_and_gradient out;
        out.value = std::pow(s, 1.0 / double(p));
        out.gradient.assign(a.size(), cd{});
        if (s > 0.0)
        {
            eval.adjoint(sens, out.gradient);
            const double chain = std::pow(s, 1.0 / double(p) - 1.0) / double(p);
            for (auto &v : out.gradient)
                v *= chain;
        }
        return out;
    }

    value_and_gradient power_penalty(std::span<const cd> a, const power_constraint &c, double mu)
    {
        std::vector<cvec> beams{cvec(a.begin(), a.end())};
        std::vector<cvec> grads;
        value_and_gradient out;
        out.value = power_penalty(beams, c, mu, &grads);
        out.gradient = std::move(grads.front());
        return out;
    }

    double power_penalty(std::span<const cvec> beams, const power_constraint &c, double mu,
                         std::vector<cvec> *gradients)
    {
        c.validate();
        if (!(mu >= 0.0))
            throw invalid_argument("power_penalty: mu must be non-negative");

        if (gradients)
        {
            gradients->resize(beams.size());
            for (std::size_t b = 0; b < beams.size(); ++b)
                (*gradients)[b].assign(beams[b].size(), cd{});
        }

        double value = 0.0;
        if (c.kind == power_kind::per_element)
        {
            for (std::size_t b = 0; b < beams.size(); ++b)
                for (std::size_t m = 0; m < beams[b].size(); ++m)
                {
                    const double excess = std::norm(beams[b][m]) - c.budget;
                    if (excess <= 0.0)
                        continue;
                    value += mu * excess * excess;
                    if (gradients)
                        (*gradients)[b][m] = beams[b][m] * (4.0 * mu * excess);
                }
            return value;
        }

        const double excess = total_power(beams) - c.budget;
        if (excess <= 0.0)
            return 0.0;
        value = mu * excess * excess;
        if (gradients)
            for (std::size_t b = 0; b < beams.size(); ++b)
                for (std::size_t m = 0; m < beams[b].size(); ++m)
                    (*gradients)[b][m] = beams[b][m] * (4.0 * mu * excess);
        return value;
    }
}
