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
#include "beamforge/hybrid.hpp"

#include <random>

namespace beamforge
{
    std::string_view to_string(hybrid_variant v)
    {
        switch (v)
        {
        case hybrid_variant::digital:
            return "digital";
        case hybrid_variant::sub_array:
            return "sub_array";
        case hybrid_variant::fully_connected:
            return "fully_connected";
        }
        return "digital";
    }

    hybrid_variant parse_hybrid_variant(std::string_view name)
    {
        if (name == "digital")
            return hybrid_variant::digital;
        if (name == "sub_array")
            return hybrid_variant::sub_array;
        if (name == "fully_connected")
            return hybrid_variant::fully_connected;
        throw invalid_argument("unknown architecture variant '" + std::string(name) + "'");
    }

    hybrid_architecture::hybrid_architecture(hybrid_variant variant, std::size_t num_antennas, std::size_t rf_chains,
                                             std::size_t phase_levels)
        : variant_(variant), num_antennas_(num_antennas), rf_chains_(rf_chains), phase_levels_(phase_levels)
    {
        if (num_antennas_ < 1)
            throw invalid_argument("architecture: number of antennas must be positive");
        if (phase_levels_ == 1)
            throw invalid_argument("architecture: phase_levels must be 0 (continuous) or >= 2");
        if (variant_ == hybrid_variant::digital)
        {
            if (phase_levels_ != 0)
                throw invalid_argument("architecture: the digital variant has no phase shifters to quantize");
            rf_chains_ = num_antennas_;
            return;
        }
        if (rf_chains_ < 1 || rf_chains_ > num_antennas_)
            throw invalid_argument("architecture: rf_chains must lie in [1, M]");
        if (variant_ == hybrid_variant::sub_array && num_antennas_ % rf_chains_ != 0)
            throw invalid_argument("architecture: sub_array needs rf_chains to divide the antenna count");
    }

    std::size_t hybrid_architecture::group_size() const
    {
        return variant_ == hybrid_variant::sub_array ? num_antennas_ / rf_chains_ : num_antennas_;
    }

    std::size_t hybrid_architecture::theta_rows() const
    {
        return variant_ == hybrid_variant::digital ? 0 : group_size();
    }

    std::size_t hybrid_architecture::theta_cols() const
    {
        return variant_ == hybrid_variant::digital ? 0 : rf_chains_;
    }

    std::size_t hybrid_architecture::antenna_of(std::size_t row, std::size_t col) const
    {
        return variant_ == hybrid_variant::sub_array ? col * group_size() + row : row;
    }

    bool digital_phases_active(const hybrid_architecture &arch, std::size_t num_beams)
    {
        return arch.variant() != hybrid_variant::digital && (arch.quantized() || num_beams > 1);
    }

    void validate_params(const hybrid_architecture &arch, const beamformer_params &params)
    {
        const std::size_t B = params.num_beams();
        if (B < 1)
            throw invalid_argument("beamformer params: no beams");

        if (arch.variant() == hybrid_variant::digital)
        {
            for (const auto &a : params.digital)
                if (a.size() != arch.num_antennas())
                    throw invalid_argument("beamformer params: digital vector length does not match M");
            return;
        }

        if (!params.digital.empty())
            throw invalid_argument("beamformer params: digital vectors given for a hybrid architecture");
        if (params.theta.rows != arch.theta_rows() || params.theta.cols != arch.theta_cols() ||
            params.theta.values.size() != arch.theta_rows() * arch.theta_cols())
            throw invalid_argument("beamformer params: theta shape does not match the architecture");

        const bool xi_active = digital_phases_active(arch, B);
        for (const auto &w : params.beams)
        {
            if (w.alpha.size() != arch.rf_chains())
                throw invalid_argument("beamformer params: alpha length does not match rf_chains");
            if (xi_active && w.xi.size() != arch.rf_chains())
                throw invalid_argument("beamformer params: xi length does not match rf_chains");
            if (!xi_active && !w.xi.empty() && w.xi.size() != arch.rf_chains())
                throw invalid_argument("beamformer params: xi length does not match rf_chains");
        }
    }

    namespace
    {
        // alpha_j exp(j xi_j) of one beam
        cvec chain_coefficients(const baseband_weights &w)
        {
            cvec c(w.alpha.size());
            for (std::size_t j = 0; j < c.size(); ++j)
                c[j] = w.xi.empty() ? cd(w.alpha[j], 0.0) : std::polar(1.0, w.xi[j]) * w.alpha[j];
            return c;
        }
    }

    cvec compose(const hybrid_architecture &arch, const beamformer_params &params, std::size_t beam)
    {
        validate_params(arch, params);
        if (beam >= params.num_beams())
            throw invalid_argument("compose: beam index out of range");
        if (arch.variant() == hybrid_variant::digital)
            return params.digital[beam];

        const cvec coef = chain_coefficients(params.beams[beam]);
        cvec a(arch.num_antennas());
        const auto &th = params.theta;
        for (std::size_t r = 0; r < th.rows; ++r)
            for (std::size_t c = 0; c < th.cols; ++c)
                a[arch.antenna_of(r, c)] += coef[c] * std::polar(1.0, th(r, c));
        return a;
    }

    std::vector<cvec> compose_all(const hybrid_architecture &arch, const beamformer_params &params)
    {
        std::vector<cvec> out;
        out.reserve(params.num_beams());
        for (std::size_t b = 0; b < params.num_beams(); ++b)
            out.push_back(compose(arch, params, b));
        return out;
    }

    params_gradient param_gradient(const hybrid_architecture &arch, const beamformer_params &params,
                                   std::span<const cd> grad_a, std::size_t beam)
    {
        validate_params(arch, params);
        if (grad_a.size() != arch.num_antennas())
            throw invalid_argument("param_gradient: gradient length does not match M");
        if (beam >= params.num_beams())
            throw invalid_argument("param_gradient: beam index out of range");

        params_gradient out;
        if (arch.variant() == hybrid_variant::digital)
        {
            out.d_digital.assign(grad_a.begin(), grad_a.end());
            return out;
        }

        // df/dx = Re(conj(g_m) da_m/dx) with da_m/dtheta = j alpha e, da_m/dalpha = e.
        const auto &w = params.beams[beam];
        const bool has_xi = !w.xi.empty();
        const auto &th = params.theta;
        out.d_theta = phase_matrix(th.rows, th.cols);
        out.d_alpha.assign(th.cols, 0.0);
        if (has_xi)
            out.d_xi.assign(th.cols, 0.0);

        for (std::size_t r = 0; r < th.rows; ++r)
            for (std::size_t c = 0; c < th.cols; ++c)
            {
                const double phase = th(r, c) + (has_xi ? w.xi[c] : 0.0);
                const cd e = std::polar(1.0, phase);
                const cd ge = std::conj(grad_a[arch.antenna_of(r, c)]) * e;
                const double d_phase = -w.alpha[c] * ge.imag();
                out.d_theta(r, c) = d_phase;
                out.d_alpha[c] += ge.real();
                if (has_xi)
                    out.d_xi[c] += d_phase;
            }
        return out;
    }

    beamformer_params random_init(const hybrid_architecture &arch, std::uint64_t seed, std::size_t num_beams,
                                  const power_constraint &power)
    {
        power.validate();
        if (num_beams < 1)
            throw invalid_argument("random_init: need at least one beam");

        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> phase(-pi, pi);
        std::uniform_real_distribution<double> gain(0.5, 1.0);

        beamformer_params p;
        if (arch.variant() == hybrid_variant::digital)
        {
            p.digital.assign(num_beams, cvec(arch.num_antennas()));
            for (auto &a : p.digital)
                for (auto &v : a)
                {
                    const double mag = gain(rng);
                    v = std::polar(mag, phase(rng));
                }
        }
        else
        {
            p.theta = phase_matrix(arch.theta_rows(), arch.theta_cols());
            for (auto &t : p.theta.values)
                t = phase(rng);
            const bool xi_active = digital_phases_active(arch, num_beams);
            p.beams.resize(num_beams);
            for (auto &w : p.beams)
            {
                w.alpha.resize(arch.rf_chains());
                for (auto &a : w.alpha)
                    a = gain(rng);
                if (xi_active)
                {
                    w.xi.resize(arch.rf_chains());
                    for (auto &x : w.xi)
                        x = phase(rng);
                }
            }
        }

        // Put the start on the constraint boundary.
        const auto beams = compose_all(arch, p);
        const double used = power.kind == power_kind::per_element ? max_element_power(beams) : total_power(beams);
        if (used > 0.0)
            scale_gains(p, std::sqrt(power.budget / used));
        return p;
    }

    std::size_t phase_index(double theta, std::size_t levels)
    {
        if (levels < 2)
            throw invalid_argument("phase quantization needs at least 2 levels");
        const double step = two_pi / double(levels);
        const double x = (wrap_phase(theta) + pi) / step;
        auto lo = std::size_t(std::floor(x));
        const double frac = x - double(lo);
        std::size_t k = frac > 0.5 ? lo + 1 : lo;
        if (k >= levels)
            k -= levels;
        if (frac == 0.5 && lo == levels - 1) // circular tie between K-1 and 0
            k = 0;
        return k;
    }

    double grid_phase(std::size_t k, std::size_t levels)
    {
        return -pi + double(k) * (two_pi / double(levels));
    }

    beamformer_params quantize_phases(const beamformer_params &params, std::size_t levels)
    {
        if (levels < 2)
            throw invalid_argument("quantize_phases: K must be >= 2");
        beamformer_params out = params;
        for (auto &t : out.theta.values)
            t = grid_phase(phase_index(t, levels), levels);
        return out;
    }

    void scale_gains(beamformer_params &params, double c)
    {
        for (auto &w : params.beams)
            for (auto &a : w.alpha)
                a *= c;
        for (auto &d : params.digital)
            for (auto &v : d)
                v *= c;
    }

    void canonicalize(const hybrid_architecture &arch, beamformer_params &params)
    {
        if (arch.variant() == hybrid_variant::digital)
            return;
        auto &th = params.theta;
        for (auto &w : params.beams)
            for (std::size_t c = 0; c < w.alpha.size(); ++c)
            {
                if (!(w.alpha[c] < 0.0))
                    continue;
                w.alpha[c] = -w.alpha[c];
                if (!w.xi.empty())
                    w.xi[c] += pi;
                else
                    for (std::size_t r = 0; r < th.rows; ++r)
                        th(r, c) += pi;
            }
        for (auto &t : th.values)
            t = wrap_phase(t);
        for (auto &w : params.beams)
            for (auto &x : w.xi)
                x = wrap_phase(x);
    }
}
