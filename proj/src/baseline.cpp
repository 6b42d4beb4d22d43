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
#include "beamforge/baseline.hpp"

#include <Eigen/Dense>

#include <algorithm>

namespace beamforge
{
    std::vector<cvec> digital_target(const synthesis_problem &problem, const solver_config &config)
    {
        synthesis_problem digital{
            .geometry = problem.geometry,
            .grid = problem.grid,
            .targets = problem.targets,
            .architecture = hybrid_architecture(hybrid_variant::digital, problem.geometry.size(), problem.geometry.size()),
            .power = problem.power,
            .p = problem.p,
        };
        return solve(digital, config).beams;
    }

    namespace
    {
        class approximator
        {
        public:
            approximator(std::span<const cvec> digital, const hybrid_architecture &arch)
                : digital_(digital), arch_(arch), B_(digital.size()), M_(arch.num_antennas()), R_(arch.rf_chains()),
                  K_(arch.phase_levels()), theta_(arch.theta_rows(), arch.theta_cols()),
                  coef_(B_, cvec(R_))
            {
            }

            double snap(double phase) const { return K_ >= 2 ? grid_phase(phase_index(phase, K_), K_) : wrap_phase(phase); }

            // composed a of one beam under the current theta and coefficients
            cvec compose_beam(std::size_t b) const
            {
                cvec a(M_);
                for (std::size_t r = 0; r < theta_.rows; ++r)
                    for (std::size_t c = 0; c < theta_.cols; ++c)
                        a[arch_.antenna_of(r, c)] += coef_[b][c] * std::polar(1.0, theta_(r, c));
                return a;
            }

            double residual() const
            {
                double s = 0.0;
                for (std::size_t b = 0; b < B_; ++b)
                {
                    const cvec a = compose_beam(b);
                    for (std::size_t m = 0; m < M_; ++m)
                        s += std::norm(digital_[b][m] - a[m]);
                }
                return s;
            }

            // Least-squares digital weights for the current theta, columns [0, cols).
            void fit_coefficients(std::size_t cols)
            {
                if (arch_.variant() == hybrid_variant::sub_array)
                {
                    const std::size_t Mc = arch_.group_size();
                    for (std::size_t b = 0; b < B_; ++b)
                        for (std::size_t c = 0; c < cols; ++c)
                        {
                            cd acc{};
                            for (std::size_t r = 0; r < Mc; ++r)
                                acc += std::polar(1.0, -theta_(r, c)) * digital_[b][arch_.antenna_of(r, c)];
                            coef_[b][c] = acc / double(Mc);
                        }
                    return;
                }

                Eigen::MatrixXcd W(M_, cols);
                for (std::size_t m = 0; m < M_; ++m)
                    for (std::size_t c = 0; c < cols; ++c)
                        W(Eigen::Index(m), Eigen::Index(c)) = std::polar(1.0, theta_(m, c));
                const auto qr = W.colPivHouseholderQr();
                for (std::size_t b = 0; b < B_; ++b)
                {
                    Eigen::VectorXcd target(M_);
                    for (std::size_t m = 0; m < M_; ++m)
                        target(Eigen::Index(m)) = digital_[b][m];
                    const Eigen::VectorXcd x = qr.solve(target);
                    for (std::size_t c = 0; c < cols; ++c)
                        coef_[b][c] = x(Eigen::Index(c));
                    for (std::size_t c = cols; c < R_; ++c)
                        coef_[b][c] = 0.0;
                }
            }

            // Column c of theta maximizing |sum_r conj(e^{j theta}) target| over
            // the rows of that chain. With K levels the best column is
            // snap(arg(target) - phi) for some common phase phi; the column only
            // changes where some entry crosses a decision boundary, so one phi
            // between every pair of consecutive boundaries covers all of them.
            void align_column(const cvec &target, std::size_t c)
            {
                const std::size_t rows = theta_.rows;
                if (K_ < 2)
                {
                    for (std::size_t r = 0; r < rows; ++r)
                        theta_(r, c) = wrap_phase(std::arg(target[arch_.antenna_of(r, c)]));
                    return;
                }
                const double step = two_pi / double(K_);
                std::vector<double> cuts;
                for (std::size_t r = 0; r < rows; ++r)
                {
                    const double x = std::arg(target[arch_.antenna_of(r, c)]) + 0.5 * step;
                    cuts.push_back(x - step * std::floor(x / step));
                }
                std::sort(cuts.begin(), cuts.end());
                double best = -1.0;
                std::vector<double> column(rows), trial(rows);
                for (std::size_t i = 0; i < cuts.size(); ++i)
                {
                    const double next = i + 1 < cuts.size() ? cuts[i + 1] : cuts[0] + step;
                    const double phi = 0.5 * (cuts[i] + next);
                    cd acc{};
                    for (std::size_t r = 0; r < rows; ++r)
                    {
                        const cd t = target[arch_.antenna_of(r, c)];
                        trial[r] = snap(std::arg(t) - phi);
                        acc += std::polar(1.0, -trial[r]) * t;
                    }
                    if (std::norm(acc) > best)
                    {
                        best = std::norm(acc);
                        column = trial;
                    }
                }
                for (std::size_t r = 0; r < rows; ++r)
                    theta_(r, c) = column[r];
            }

            void initialize()
            {
                if (arch_.variant() == hybrid_variant::sub_array)
                {
                    for (std::size_t c = 0; c < theta_.cols; ++c)
                        align_column(digital_[c % B_], c);
                    fit_coefficients(R_);
                    return;
                }

                // Greedy: each new RF chain points at the residual of one beam.
                std::vector<cvec> res(digital_.begin(), digital_.end());
                for (std::size_t c = 0; c < R_; ++c)
                {
                    align_column(res[c % B_], c);
                    fit_coefficients(c + 1);
                    for (std::size_t b = 0; b < B_; ++b)
                    {
                        const cvec a = compose_beam(b);
                        for (std::size_t m = 0; m < M_; ++m)
                            res[b][m] = digital_[b][m] - a[m];
                    }
                }
            }

            // Gauss-Seidel pass: each phase set to the exact minimizer given the rest.
            void update_phases()
            {
                std::vector<cvec> approx(B_);
                for (std::size_t b = 0; b < B_; ++b)
                    approx[b] = compose_beam(b);

                for (std::size_t r = 0; r < theta_.rows; ++r)
                    for (std::size_t c = 0; c < theta_.cols; ++c)
                    {
                        const std::size_t m = arch_.antenna_of(r, c);
                        const cd e_old = std::polar(1.0, theta_(r, c));
                        cd z{};
                        for (std::size_t b = 0; b < B_; ++b)
                        {
                            const cd others = approx[b][m] - coef_[b][c] * e_old;
                            z += (digital_[b][m] - others) * std::conj(coef_[b][c]);
                        }
                        if (std::abs(z) == 0.0)
                            continue;
                        theta_(r, c) = snap(std::arg(z));
                        const cd e_new = std::polar(1.0, theta_(r, c));
                        for (std::size_t b = 0; b < B_; ++b)
                            approx[b][m] += coef_[b][c] * (e_new - e_old);
                    }
            }

            approximation_result run(const approximation_options &options)
            {
                approximation_result out;
                initialize();
                double prev = residual();
                out.residual_trace.push_back(prev);
                for (std::size_t sweep = 0; sweep < options.max_sweeps; ++sweep)
                {
                    update_phases();
                    fit_coefficients(R_);
                    const double cur = residual();
                    out.residual_trace.push_back(cur);
                    const bool done = prev - cur <= options.tolerance * prev;
                    prev = cur;
                    if (done)
                        break;
                }
                out.residual = prev;
                out.params = to_params();
                return out;
            }

            beamformer_params to_params() const
            {
                beamformer_params p;
                p.theta = theta_;
                p.beams.resize(B_);
                const bool xi_active = digital_phases_active(arch_, B_);
                for (std::size_t b = 0; b < B_; ++b)
                {
                    auto &w = p.beams[b];
                    w.alpha.resize(R_);
                    if (xi_active)
                        w.xi.resize(R_);
                    for (std::size_t c = 0; c < R_; ++c)
                    {
                        w.alpha[c] = std::abs(coef_[b][c]);
                        const double phase = std::arg(coef_[b][c]);
                        if (xi_active)
                            w.xi[c] = wrap_phase(phase);
                        else
                            for (std::size_t r = 0; r < p.theta.rows; ++r)
                                p.theta(r, c) = wrap_phase(p.theta(r, c) + phase);
                    }
                }
                return p;
            }

        private:
            std::span<const cvec> digital_;
            const hybrid_architecture &arch_;
            std::size_t B_, M_, R_, K_;
            phase_matrix theta_;
            std::vector<cvec> coef_;
        };
    }

    approximation_result hybrid_approximate(std::span<const cvec> digital, const hybrid_architecture &arch,
                                            const std::optional<power_constraint> &power,
                                            const approximation_options &options)
    {
        if (digital.empty())
            throw invalid_argument("hybrid_approximate: no digital vectors given");
        for (const auto &a : digital)
            if (a.size() != arch.num_antennas())
                throw invalid_argument("hybrid_approximate: digital vector length does not match M");
        if (power)
            power->validate();

        approximation_result out;
        if (arch.variant() == hybrid_variant::digital)
        {
            out.params.digital.assign(digital.begin(), digital.end());
            out.residual_trace.push_back(0.0);
        }
        else if (total_power(digital) == 0.0)
        {
            out.params.theta = phase_matrix(arch.theta_rows(), arch.theta_cols(), arch.quantized() ? -pi : 0.0);
            out.params.beams.assign(digital.size(), baseband_weights{});
            for (auto &w : out.params.beams)
            {
                w.alpha.assign(arch.rf_chains(), 0.0);
                if (digital_phases_active(arch, digital.size()))
                    w.xi.assign(arch.rf_chains(), 0.0);
            }
            out.residual_trace.push_back(0.0);
            out.warnings.push_back("digital target is zero; returning zero weights");
        }
        else
            out = approximator(digital, arch).run(options);

        if (power)
        {
            const auto beams = compose_all(arch, out.params);
            const double c = feasibility_scale(beams, *power);
            if (c < 1.0)
                scale_gains(out.params, c);
        }
        return out;
    }

    approximation_result hybrid_approximate(const cvec &digital, const hybrid_architecture &arch,
                                            const std::optional<power_constraint> &power,
                                            const approximation_options &options)
    {
        return hybrid_approximate(std::span<const cvec>(&digital, 1), arch, power, options);
    }

    synthesis_result synthesize_baseline(const synthesis_problem &problem, const solver_config &config)
    {
        problem.validate();
        const auto digital = digital_target(problem, config);
        auto approx = hybrid_approximate(digital, problem.architecture, problem.power);

        synthesis_result res;
        res.params = std::move(approx.params);
        res.beams = compose_all(problem.architecture, res.params);
        res.objective = evaluate_objective(problem, res.beams);
        res.feasibility = check_feasibility(res.beams, problem.power);
        res.warnings = std::move(approx.warnings);
        return res;
    }
}
