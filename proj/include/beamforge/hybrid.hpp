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
#ifndef BEAMFORGE_HYBRID_HPP
#define BEAMFORGE_HYBRID_HPP

#include "beamforge/power.hpp"

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace beamforge
{
    enum class hybrid_variant
    {
        digital,
        sub_array,
        fully_connected
    };

    std::string_view to_string(hybrid_variant v);
    hybrid_variant parse_hybrid_variant(std::string_view name);

    class hybrid_architecture
    {
    public:
        // phase_levels = 0 means continuous phase shifters. For the digital
        // variant the RF-chain count is forced to the antenna count.
        hybrid_architecture(hybrid_variant variant, std::size_t num_antennas, std::size_t rf_chains,
                            std::size_t phase_levels = 0);

        hybrid_variant variant() const { return variant_; }
        std::size_t num_antennas() const { return num_antennas_; }
        std::size_t rf_chains() const { return rf_chains_; }
        std::size_t phase_levels() const { return phase_levels_; }
        bool quantized() const { return phase_levels_ >= 2; }

        // M_C for sub-array, M for fully-connected.
        std::size_t group_size() const;

        // Shape of the analog phase matrix (0 x 0 for digital).
        std::size_t theta_rows() const;
        std::size_t theta_cols() const;

        // Antenna driven by the phase shifter at (row, col).
        std::size_t antenna_of(std::size_t row, std::size_t col) const;

    private:
        hybrid_variant variant_;
        std::size_t num_antennas_;
        std::size_t rf_chains_;
        std::size_t phase_levels_;
    };

    struct phase_matrix
    {
        std::size_t rows = 0;
        std::size_t cols = 0;
        std::vector<double> values; // row-major, radians

        phase_matrix() = default;
        phase_matrix(std::size_t r, std::size_t c, double fill = 0.0) : rows(r), cols(c), values(r * c, fill) {}

        double &operator()(std::size_t r, std::size_t c) { return values[r * cols + c]; }
        double operator()(std::size_t r, std::size_t c) const { return values[r * cols + c]; }

        bool operator==(const phase_matrix &) const = default;
    };

    // Per-beam digital stage: gains alpha >= 0 and phases xi, one per RF chain.
    // xi is empty when the digital phase is redundant with the analog phases.
    struct baseband_weights
    {
        std::vector<double> alpha;
        std::vector<double> xi;

        bool operator==(const baseband_weights &) const = default;
    };

    // One analog network (theta) shared by all beams of the set; each beam owns
    // its digital weights. The digital variant stores free vectors instead.
    struct beamformer_params
    {
        phase_matrix theta;
        std::vector<baseband_weights> beams;
        std::vector<cvec> digital;

        std::size_t num_beams() const { return digital.empty() ? beams.size() : digital.size(); }

        bool operator==(const beamformer_params &) const = default;
    };

    // True when xi carries information: quantized phase shifters, or several
    // beams sharing one continuous analog network.
    bool digital_phases_active(const hybrid_architecture &arch, std::size_t num_beams);

    void validate_params(const hybrid_architecture &arch, const beamformer_params &params);

    // Composite beamforming vector a of one beam.
    cvec compose(const hybrid_architecture &arch, const beamformer_params &params, std::size_t beam = 0);
    std::vector<cvec> compose_all(const hybrid_architecture &arch, const beamformer_params &params);

    struct params_gradient
    {
        phase_matrix d_theta;
        std::vector<double> d_alpha;
        std::vector<double> d_xi; // empty when xi is inactive
        cvec d_digital;
    };

    // Chain rule through compose(). grad_a holds df/dRe(a) + j df/dIm(a).
    params_gradient param_gradient(const hybrid_architecture &arch, const beamformer_params &params,
                                   std::span<const cd> grad_a, std::size_t beam = 0);

    // Uniform random phases; gains scaled so that the composed beams sit on the
    // boundary of the power constraint. Deterministic per seed.
    beamformer_params random_init(const hybrid_architecture &arch, std::uint64_t seed, std::size_t num_beams = 1,
                                  const power_constraint &power = {});

    // Nearest grid level -pi + k 2pi/K on the circle, ties to the smaller k.
    std::size_t phase_index(double theta, std::size_t levels);
    double grid_phase(std::size_t k, std::size_t levels);

    beamformer_params quantize_phases(const beamformer_params &params, std::size_t levels);

    // Multiplies every gain (or digital vector) by c >= 0.
    void scale_gains(beamformer_params &params, double c);

    // Makes alpha non-negative by moving the sign into xi (or into the analog
    // phases of that RF chain when xi is inactive) and wraps all phases.
    void canonicalize(const hybrid_architecture &arch, beamformer_params &params);
}

#endif
