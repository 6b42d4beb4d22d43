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
#ifndef BEAMFORGE_TEST_SUPPORT_HPP
#define BEAMFORGE_TEST_SUPPORT_HPP

#include "beamforge/types.hpp"

#include <random>

namespace beamforge::test
{
    inline cvec random_cvec(std::mt19937_64 &rng, std::size_t n, double scale = 1.0)
    {
        std::normal_distribution<double> d(0.0, scale);
        cvec v(n);
        for (auto &x : v)
            x = cd(d(rng), d(rng));
        return v;
    }

    inline double uniform(std::mt19937_64 &rng, double lo, double hi)
    {
        return std::uniform_real_distribution<double>(lo, hi)(rng);
    }

    inline double max_abs_diff(const cvec &a, const cvec &b)
    {
        double m = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i)
            m = std::max(m, std::abs(a[i] - b[i]));
        return m;
    }

    // |a - b| / max(|a|, |b|, floor)
    inline double rel_err(double a, double b, double floor = 1e-8)
    {
        return std::abs(a - b) / std::max({std::abs(a), std::abs(b), floor});
    }

    // Central difference of f along one coordinate.
    template <typename F>
    double central_diff(F &&f, double x0, double h = 1e-6)
    {
        return (f(x0 + h) - f(x0 - h)) / (2.0 * h);
    }
}

#endif
