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
#ifndef BEAMFORGE_PATTERN_HPP
#define BEAMFORGE_PATTERN_HPP

#include "beamforge/fft.hpp"
#include "beamforge/geometry.hpp"
#include "beamforge/power.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <span>

namespace beamforge
{
    // Uniform samples of the angle coordinate on [-pi, pi).
    //
    // For a ULA the coordinate is the spatial angle psi (inter-element phase
    // progression). For every other geometry it is the azimuth angle of a cut in
    // the xy-plane, see azimuth_direction().
    class spatial_grid
    {
    public:
        explicit spatial_grid(std::size_t num_samples);

        std::size_t size() const { return samples_.size(); }
        double cell() const { return cell_; }
        double operator[](std::size_t g) const { return samples_[g]; }
        const std::vector<double> &samples() const { return samples_; }

    private:
        std::vector<double> samples_;
        double cell_;
    };

    spatial_grid uniform_psi_grid(std::size_t num_samples);

    // Direct summation A_g = a^T p(dir_g).
    cvec array_factor(const array_geometry &geom, std::span<const cd> a, const spatial_grid &grid);

    // Same samples for a ULA via one zero-padded length-G inverse DFT. Requires G >= M.
    cvec array_factor_ula_fft(std::span<const cd> a, const spatial_grid &grid);

    enum class evaluation_path
    {
        automatic,
        direct,
        fft
    };

    // Reusable array-factor evaluator. Holds the steering matrix and, on the
    // FFT path, its own FFT workspace, so an instance must not be shared
    // between threads.
    class pattern_evaluator
    {
    public:
        pattern_evaluator(const array_geometry &geom, const spatial_grid &grid, evaluation_path path = evaluation_path::automatic);

        std::size_t num_elements() const { return num_elements_; }
        std::size_t num_samples() const { return num_samples_; }
        double cell() const { return cell_; }
        bool uses_fft() const { return fft_.has_value(); }

        // A_g = sum_n a_n P_gn
        void evaluate(std::span<const cd> a, std::span<cd> pattern);
        cvec evaluate(std::span<const cd> a);

        // out_n = sum_g c_g conj(P_gn), the adjoint of evaluate().
        void adjoint(std::span<const cd> c, std::span<cd> out);

        // P_gn, the steering entry of element n at sample g.
        cd steering(std::size_t g, std::size_t n) const { return steering_[g * num_elements_ + n]; }

    private:
        std::size_t num_elements_;
        std::size_t num_samples_;
        double cell_;
        cvec steering_;
        std::optional<fft_engine> fft_;
        cvec scratch_in_;
        cvec scratch_out_;
    };

    enum class region : std::uint8_t
    {
        pass,
        transition,
        stop
    };

    struct beam_spec
    {
        double center = 0.0;                        // radians of the grid coordinate
        double width = pi;                          // b
        double beta_db = 0.0;                       // feasibility backoff
        std::optional<double> transition_halfwidth; // default 2 grid cells
    };

    // Desired magnitude D and weighting W on a grid.
    struct target_pattern
    {
        std::vector<double> desired;
        std::vector<double> weight;
        std::vector<region> labels;
        double d_max = 0.0;
        double beta = 1.0;
        double width = 0.0;
        double center = 0.0;
        double transition_halfwidth = 0.0;
        double cell = 0.0;

        std::size_t size() const { return desired.size(); }
        std::size_t count(region r) const;
    };

    using element_gain_fn = std::function<double(double)>;

    // Flat passband of width b around the center at beta * D_max, zero stopband,
    // W = 0 on a band of transition_halfwidth on both sides outside the passband.
    target_pattern build_target(const beam_spec &spec, std::size_t num_elements, const spatial_grid &grid,
                                const power_constraint &power = {}, const element_gain_fn &element_gain = {});
}

#endif
