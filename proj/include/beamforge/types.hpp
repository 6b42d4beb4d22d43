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
#ifndef BEAMFORGE_TYPES_HPP
#define BEAMFORGE_TYPES_HPP

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace beamforge
{
    using cd = std::complex<double>;
    using cvec = std::vector<cd>;

    inline constexpr double pi = std::numbers::pi;
    inline constexpr double two_pi = 2.0 * std::numbers::pi;

    // Raised for malformed inputs. The CLI maps it to exit code 1.
    class invalid_argument : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    // Wraps an angle into [-pi, pi).
    inline double wrap_phase(double x)
    {
        double w = x - two_pi * std::floor((x + pi) / two_pi);
        if (w >= pi) // rounding can land exactly on +pi
            w -= two_pi;
        if (w < -pi)
            w = -pi;
        return w;
    }

    inline double to_db(double magnitude, double floor_db = -120.0)
    {
        if (!(magnitude > 0.0))
            return floor_db;
        double v = 20.0 * std::log10(magnitude);
        return v < floor_db ? floor_db : v;
    }

    inline double squared_norm(const cvec &a)
    {
        double s = 0.0;
        for (const auto &v : a)
            s += std::norm(v);
        return s;
    }
}

#endif
