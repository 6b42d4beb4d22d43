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
#include "beamforge/pattern.hpp"

#include <algorithm>

namespace beamforge
{
    spatial_grid::spatial_grid(std::size_t num_samples)
    {
        if (num_samples < 2)
            throw invalid_argument("spatial grid needs at least 2 samples");
        cell_ = two_pi / double(num_samples);
        samples_.resize(num_samples);
        for (std::size_t g = 0; g < num_samples; ++g)
            samples_[g] = -pi + double(g) * cell_;
    }

    spatial_grid uniform_psi_grid(std::size_t num_samples) { return spatial_grid(num_samples); }

    namespace
    {
        cvec grid_steering(const array_geometry &geom, double coord)
        {
            return geom.is_ula() ? steering_vector(geom, coord) : steering_vector(geom, azimuth_direction(coord));
        }
    }

    cvec array_factor(const array_geometry &geom, std::span<const cd> a, const spatial_grid &grid)
    {
        if (a.size() != geom.size())
            throw invalid_argument("array_factor: weight vector length does not match the array");
        cvec out(grid.size());
        for (std::size_t g = 0; g < grid.size(); ++g)
        {
            const cvec p = grid_steering(geom, grid[g]);
            cd acc{};
            for (std::size_t n = 0; n < a.size(); ++n)
                acc += a[n] * p[n];
            out[g] = acc;
        }
        return out;
    }

    cvec array_factor_ula_fft(std::span<const cd> a, const spatial_grid &grid)
    {
        // psi_g = -pi + 2 pi g / G, so exp(j n psi_g) = (-1)^n exp(j 2 pi n g / G);
        // elements beyond G alias onto bin n mod G.
        const std::size_t G = grid.size();
        cvec shifted(std::max(G, std::size_t(1)));
        for (std::size_t n = 0; n < a.size(); ++n)
            shifted[n % G] += n % 2 ? -a[n] : a[n];
        fft_engine fft(G);
        cvec out(grid.size());
        fft.backward(shifted, out);
        return out;
    }

    pattern_evaluator::pattern_evaluator(const array_geometry &geom, const spatial_grid &grid, evaluation_path path)
        : num_elements_(geom.size()), num_samples_(grid.size()), cell_(grid.cell())
    {
        steering_.resize(num_samples_ * num_elements_);
        for (std::size_t g = 0; g < num_samples_; ++g)
        {
            const cvec p = grid_steering(geom, grid[g]);
            std::copy(p.begin(), p.end(), steering_.begin() + std::ptrdiff_t(g * num_elements_));
        }

        bool use_fft = false;
        if (path == evaluation_path::fft)
        {
            if (!geom.is_ula())
                throw invalid_argument("pattern_evaluator: the FFT path needs a ULA");
            if (num_samples_ < num_elements_)
                throw invalid_argument("pattern_evaluator: the FFT path needs G >= M");
            use_fft = true;
        }
        else if (path == evaluation_path::automatic)
            use_fft = geom.is_ula() && num_samples_ >= num_elements_;

        if (use_fft)
        {
            fft_.emplace(num_samples_);
            scratch_in_.resize(num_samples_);
            scratch_out_.resize(num_samples_);
        }
    }

    void pattern_evaluator::evaluate(std::span<const cd> a, std::span<cd> pattern)
    {
        if (a.size() != num_elements_ || pattern.size() != num_samples_)
            throw invalid_argument("pattern_evaluator::evaluate: size mismatch");

        if (fft_)
        {
            for (std::size_t n = 0; n < num_elements_; ++n)
                scratch_in_[n] = (n & 1) ? -a[n] : a[n];
            fft_->backward(std::span<const cd>(scratch_in_.data(), num_elements_), pattern);
            return;
        }

        for (std::size_t g = 0; g < num_samples_; ++g)
        {
            const cd *row = &steering_[g * num_elements_];
            cd acc{};
            for (std::size_t n = 0; n < num_elements_; ++n)
                acc += a[n] * row[n];
            pattern[g] = acc;
        }
    }

    cvec pattern_evaluator::evaluate(std::span<const cd> a)
    {
        cvec out(num_samples_);
        evaluate(a, out);
        return out;
    }

    void pattern_evaluator::adjoint(std::span<const cd> c, std::span<cd> out)
    {
        if (c.size() != num_samples_ || out.size() != num_elements_)
            throw invalid_argument("pattern_evaluator::adjoint: size mismatch");

        if (fft_)
        {
            // sum_g c_g exp(-j n psi_g) = (-1)^n DFT(c)[n]
            fft_->forward(c, scratch_out_);
            for (std::size_t n = 0; n < num_elements_; ++n)
                out[n] = (n & 1) ? -scratch_out_[n] : scratch_out_[n];
            return;
        }

        std::fill(out.begin(), out.end(), cd{});
        for (std::size_t g = 0; g < num_samples_; ++g)
        {
            const cd *row = &steering_[g * num_elements_];
            for (std::size_t n = 0; n < num_elements_; ++n)
                out[n] += c[g] * std::conj(row[n]);
        }
    }

    std::size_t target_pattern::count(region r) const
    {
        return std::size_t(std::count(labels.begin(), labels.end(), r));
    }

    target_pattern build_target(const beam_spec &spec, std::size_t num_elements, const spatial_grid &grid,
                                const power_constraint &power, const element_gain_fn &element_gain)
    {
        power.validate();
        if (num_elements < 1)
            throw invalid_argument("build_target: number of elements must be positive");
        if (!(spec.width > 0.0) || spec.width > two_pi + 1e-12)
            throw invalid_argument("build_target: beam width must lie in (0, 2 pi]");
        if (!(spec.beta_db >= 0.0) || !std::isfinite(spec.beta_db))
            throw invalid_argument("build_target: beta_db must be non-negative");
        if (!std::isfinite(spec.center))
            throw invalid_argument("build_target: beam center must be finite");

        const double cell = grid.cell();
        const double halfwidth = spec.transition_halfwidth.value_or(2.0 * cell);
        if (!(halfwidth >= cell * (1.0 - 1e-9)))
            throw invalid_argument("build_target: transition region is thinner than one grid cell");

        target_pattern t;
        t.width = std::min(spec.width, two_pi);
        t.center = wrap_phase(spec.center);
        t.beta = std::pow(10.0, -spec.beta_db / 20.0);
        t.transition_halfwidth = halfwidth;
        t.cell = cell;
        const double scale = power.kind == power_kind::per_element ? power.budget * double(num_elements) : power.budget;
        t.d_max = std::sqrt(scale * two_pi / t.width);

        const std::size_t G = grid.size();
        t.desired.assign(G, 0.0);
        t.weight.assign(G, 1.0);
        t.labels.assign(G, region::stop);

        // Offsets are measured circularly from the lower passband edge, so beams
        // may straddle the +-pi seam.
        const double tol = 1e-9 * cell;
        const double lower = t.center - 0.5 * t.width;
        for (std::size_t g = 0; g < G; ++g)
        {
            double delta = std::fmod(grid[g] - lower, two_pi);
            if (delta < 0.0)
                delta += two_pi;
            if (delta > two_pi - tol)
                delta = 0.0;

            if (delta < t.width - tol)
            {
                t.labels[g] = region::pass;
                t.desired[g] = t.beta * t.d_max;
            }
            else if (delta < t.width + halfwidth - tol || delta >= two_pi - halfwidth - tol)
            {
                t.labels[g] = region::transition;
                t.weight[g] = 0.0;
            }
        }

        if (element_gain)
            for (std::size_t g = 0; g < G; ++g)
            {
                const double e = element_gain(grid[g]);
                if (!(e > 0.0) || !std::isfinite(e))
                    throw invalid_argument("build_target: element gain must be positive and finite");
                t.desired[g] /= e;
                t.weight[g] /= e;
            }
        return t;
    }
}
