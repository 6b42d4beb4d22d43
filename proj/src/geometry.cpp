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
#include "beamforge/geometry.hpp"

#include <limits>

namespace beamforge
{
    std::string_view to_string(array_kind kind)
    {
        switch (kind)
        {
        case array_kind::ula:
            return "ula";
        case array_kind::upa:
            return "upa";
        case array_kind::cylindrical:
            return "cylindrical";
        case array_kind::custom:
            return "custom";
        }
        return "custom";
    }

    array_kind parse_array_kind(std::string_view name)
    {
        if (name == "ula")
            return array_kind::ula;
        if (name == "upa")
            return array_kind::upa;
        if (name == "cylindrical")
            return array_kind::cylindrical;
        if (name == "custom")
            return array_kind::custom;
        throw invalid_argument("unknown geometry kind '" + std::string(name) + "'");
    }

    array_geometry::array_geometry(std::vector<vec3> positions, array_kind kind, double spacing_wl)
        : positions_(std::move(positions)), kind_(kind), spacing_wl_(spacing_wl)
    {
        if (positions_.empty())
            throw invalid_argument("array geometry needs at least one element");
        for (const auto &p : positions_)
            for (double c : p)
                if (!std::isfinite(c))
                    throw invalid_argument("array geometry has a non-finite coordinate");

        const vec3 ref = positions_.front();
        for (auto &p : positions_)
            for (int i = 0; i < 3; ++i)
                p[i] -= ref[i];
    }

    array_geometry make_ula(std::size_t num_elements, double spacing_wl)
    {
        if (num_elements < 1)
            throw invalid_argument("make_ula: number of elements must be positive");
        if (!(spacing_wl > 0.0) || !std::isfinite(spacing_wl))
            throw invalid_argument("make_ula: spacing must be positive");

        std::vector<vec3> pos(num_elements);
        for (std::size_t n = 0; n < num_elements; ++n)
            pos[n] = {double(n) * spacing_wl, 0.0, 0.0};
        return array_geometry(std::move(pos), array_kind::ula, spacing_wl);
    }

    array_geometry make_upa(std::size_t num_x, std::size_t num_y, double spacing_wl)
    {
        if (num_x < 1 || num_y < 1)
            throw invalid_argument("make_upa: grid dimensions must be positive");
        if (!(spacing_wl > 0.0) || !std::isfinite(spacing_wl))
            throw invalid_argument("make_upa: spacing must be positive");

        std::vector<vec3> pos;
        pos.reserve(num_x * num_y);
        for (std::size_t iy = 0; iy < num_y; ++iy)
            for (std::size_t ix = 0; ix < num_x; ++ix)
                pos.push_back({double(ix) * spacing_wl, double(iy) * spacing_wl, 0.0});
        return array_geometry(std::move(pos), array_kind::upa, 0.0);
    }

    array_geometry make_cylindrical(std::size_t num_rings, std::size_t per_ring, double radius_wl, double ring_spacing_wl)
    {
        if (num_rings < 1 || per_ring < 1)
            throw invalid_argument("make_cylindrical: ring and element counts must be positive");
        if (!(radius_wl > 0.0) || !std::isfinite(radius_wl))
            throw invalid_argument("make_cylindrical: radius must be positive");
        if (!(ring_spacing_wl >= 0.0) || !std::isfinite(ring_spacing_wl))
            throw invalid_argument("make_cylindrical: ring spacing must be non-negative");

        std::vector<vec3> pos;
        pos.reserve(num_rings * per_ring);
        for (std::size_t r = 0; r < num_rings; ++r)
            for (std::size_t k = 0; k < per_ring; ++k)
            {
                const double ang = two_pi * double(k) / double(per_ring);
                pos.push_back({radius_wl * std::cos(ang), radius_wl * std::sin(ang), double(r) * ring_spacing_wl});
            }
        return array_geometry(std::move(pos), array_kind::cylindrical, 0.0);
    }

    cvec steering_vector(const array_geometry &geom, const vec3 &u)
    {
        const double norm = std::sqrt(u[0] * u[0] + u[1] * u[1] + u[2] * u[2]);
        if (!(std::abs(norm - 1.0) <= 1e-12))
            throw invalid_argument("steering_vector: direction is not a unit vector");

        cvec p(geom.size());
        for (std::size_t n = 0; n < geom.size(); ++n)
        {
            const auto &x = geom.positions()[n];
            p[n] = std::polar(1.0, two_pi * (x[0] * u[0] + x[1] * u[1] + x[2] * u[2]));
        }
        return p;
    }

    cvec steering_vector(const array_geometry &geom, double psi)
    {
        if (!geom.is_ula())
            throw invalid_argument("steering_vector: the scalar spatial angle needs a ULA");
        cvec p(geom.size());
        for (std::size_t n = 0; n < geom.size(); ++n)
            p[n] = std::polar(1.0, double(n) * psi);
        return p;
    }

    double psi_to_angle(double psi, double spacing_wl)
    {
        const double s = psi / (two_pi * spacing_wl);
        if (s < -1.0 || s > 1.0)
            return std::numeric_limits<double>::quiet_NaN();
        return std::asin(s);
    }
}
