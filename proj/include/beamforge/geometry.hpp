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
#ifndef BEAMFORGE_GEOMETRY_HPP
#define BEAMFORGE_GEOMETRY_HPP

#include "beamforge/types.hpp"

#include <array>
#include <cstddef>
#include <string_view>

namespace beamforge
{
    using vec3 = std::array<double, 3>;

    enum class array_kind
    {
        ula,
        upa,
        cylindrical,
        custom
    };

    std::string_view to_string(array_kind kind);
    array_kind parse_array_kind(std::string_view name);

    // Element positions in units of the carrier wavelength. The first element is
    // always the phase reference and sits at the origin.
    class array_geometry
    {
    public:
        // Translates the positions so that positions[0] becomes the origin.
        array_geometry(std::vector<vec3> positions, array_kind kind = array_kind::custom, double spacing_wl = 0.0);

        std::size_t size() const { return positions_.size(); }
        const std::vector<vec3> &positions() const { return positions_; }
        array_kind kind() const { return kind_; }

        // Inter-element spacing of a ULA, 0 for other kinds.
        double spacing_wl() const { return spacing_wl_; }

        bool is_ula() const { return kind_ == array_kind::ula; }

    private:
        std::vector<vec3> positions_;
        array_kind kind_;
        double spacing_wl_;
    };

    array_geometry make_ula(std::size_t num_elements, double spacing_wl);
    array_geometry make_upa(std::size_t num_x, std::size_t num_y, double spacing_wl);
    array_geometry make_cylindrical(std::size_t num_rings, std::size_t per_ring, double radius_wl, double ring_spacing_wl);

    // [p(u)]_n = exp(j 2 pi <x_n, u>), u a unit vector.
    cvec steering_vector(const array_geometry &geom, const vec3 &u);

    // ULA form: [p(psi)]_n = exp(j n psi), psi = 2 pi d sin(phi).
    cvec steering_vector(const array_geometry &geom, double psi);

    // Direction of the azimuth cut used for non-ULA geometries, with the angle
    // measured from the +y axis so that a ULA along x sees sin(phi).
    inline vec3 azimuth_direction(double phi) { return {std::sin(phi), std::cos(phi), 0.0}; }

    // Geometric angle (radians) of a spatial angle psi, NaN in the invisible region.
    double psi_to_angle(double psi, double spacing_wl);
}

#endif
