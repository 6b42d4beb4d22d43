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
#include "beamforge/solver.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <deque>
#include <exception>
#include <mutex>
#include <numeric>
#include <random>
#include <ostream>
#include <sstream>
#include <thread>

namespace beamforge
{
    void synthesis_problem::validate() const
    {
        validate_exponent(p);
        power.validate();
        if (targets.empty())
            throw invalid_argument("synthesis problem: at least one target is required");
        if (architecture.num_antennas() != geometry.size())
            throw invalid_argument("synthesis problem: architecture and geometry disagree on the antenna count");
        for (const auto &t : targets)
            if (t.size() != grid.size())
                throw invalid_argument("synthesis problem: target length does not match the grid");
    }

    void solver_config::validate() const
    {
        if (n_starts < 1 || max_iters < 1 || penalty_rounds < 1 || refine_sweeps < 1 || snap_stages < 1 || lbfgs_memory < 1 ||
            max_backtracks < 1)
            throw invalid_argument("solver config: counts must be >= 1");
        if (!(tolerance > 0.0) || !(armijo > 0.0 && armijo < 1.0) || !(backtrack > 0.0 && backtrack < 1.0))
            throw invalid_argument("solver config: tolerances must be positive and line-search factors in (0, 1)");
        if (!(mu0 > 0.0) || !(mu_growth >= 1.0))
            throw invalid_argument("solver config: penalty schedule needs mu0 > 0 and growth >= 1");
    }

    double solver_config::final_mu() const
    {
        return mu0 * std::pow(mu_growth, double(penalty_rounds - 1));
    }

    std::uint64_t start_seed(std::uint64_t seed, std::size_t index)
    {
        // splitmix64 of the pair
        std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (std::uint64_t(index) + 1);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    std::size_t worker_count(std::size_t requested, std::size_t jobs)
    {
        std::size_t n = requested > 0 ? requested : std::max<std::size_t>(1, std::thread::hardware_concurrency());
        if (const char *env = std::getenv("BEAMFORGE_THREADS"))
        {
            char *end = nullptr;
            const long cap = std::strtol(env, &end, 10);
            if (end != env && cap > 0)
                n = std::min(n, std::size_t(cap));
        }
        return std::max<std::size_t>(1, std::min(n, jobs));
    }

    double evaluate_objective(const synthesis_problem &problem, std::span<const cvec> beams)
    {
        if (beams.size() != problem.targets.size())
            throw invalid_argument("evaluate_objective: beam count does not match the targets");
        double s = 0.0;
        for (std::size_t b = 0; b < beams.size(); ++b)
        {
            const cvec pattern = array_factor(problem.geometry, beams[b], problem.grid);
            s += objective_sum(pattern, problem.targets[b], problem.p, problem.grid.cell());
        }
        return std::pow(s, 1.0 / double(problem.p));
    }

    double evaluate_objective(const synthesis_problem &problem, const beamformer_params &params)
    {
        const auto beams = compose_all(problem.architecture, params);
        return evaluate_objective(problem, beams);
    }

    feasibility_report check_feasibility(std::span<const cvec> beams, const power_constraint &power)
    {
        feasibility_report r;
        r.kind = power.kind;
        r.budget = power.budget;
        r.max_element_power = max_element_power(beams);
        r.total_power = total_power(beams);
        r.feasible = is_feasible(beams, power);
        return r;
    }

    namespace
    {
        using rvec = std::vector<double>;

        double dot(const rvec &a, const rvec &b) { return std::inner_product(a.begin(), a.end(), b.begin(), 0.0); }

        // Maps beamformer parameters to a flat real vector and back.
        //   digital: [Re a_b, Im a_b] per beam
        //   hybrid:  [theta (row-major) if free] [alpha per beam] [xi per beam if active]
        class param_layout
        {
        public:
            param_layout(const hybrid_architecture &arch, std::size_t num_beams, bool theta_free)
                : param_layout(arch, num_beams, all_entries(arch, theta_free))
            {
            }

            // Only the theta entries listed in `free_theta` (row-major indices) are variables.
            param_layout(const hybrid_architecture &arch, std::size_t num_beams, std::vector<std::size_t> free_theta)
                : arch_(arch), beams_(num_beams), free_theta_(std::move(free_theta)),
                  xi_active_(digital_phases_active(arch, num_beams))
            {
            }

            bool xi_active() const { return xi_active_; }
            std::size_t num_free_theta() const { return free_theta_.size(); }

            std::size_t size() const
            {
                if (arch_.variant() == hybrid_variant::digital)
                    return 2 * arch_.num_antennas() * beams_;
                const std::size_t R = arch_.rf_chains();
                return free_theta_.size() + beams_ * R * (xi_active_ ? 2 : 1);
            }

            rvec pack(const beamformer_params &p) const
            {
                rvec x;
                x.reserve(size());
                if (arch_.variant() == hybrid_variant::digital)
                {
                    for (const auto &a : p.digital)
                    {
                        for (const auto &v : a)
                            x.push_back(v.real());
                        for (const auto &v : a)
                            x.push_back(v.imag());
                    }
                    return x;
                }
                for (std::size_t k : free_theta_)
                    x.push_back(p.theta.values[k]);
                for (const auto &w : p.beams)
                    x.insert(x.end(), w.alpha.begin(), w.alpha.end());
                if (xi_active_)
                    for (const auto &w : p.beams)
                        x.insert(x.end(), w.xi.begin(), w.xi.end());
                return x;
            }

            // Overwrites the free entries of `p`.
            void unpack(const rvec &x, beamformer_params &p) const
            {
                std::size_t i = 0;
                if (arch_.variant() == hybrid_variant::digital)
                {
                    const std::size_t M = arch_.num_antennas();
                    p.digital.resize(beams_);
                    for (auto &a : p.digital)
                    {
                        a.resize(M);
                        for (std::size_t m = 0; m < M; ++m)
                            a[m] = cd(x[i + m], x[i + M + m]);
                        i += 2 * M;
                    }
                    return;
                }
                for (std::size_t k : free_theta_)
                    p.theta.values[k] = x[i++];
                const std::size_t R = arch_.rf_chains();
                for (auto &w : p.beams)
                {
                    std::copy_n(x.begin() + std::ptrdiff_t(i), R, w.alpha.begin());
                    i += R;
                }
                if (xi_active_)
                    for (auto &w : p.beams)
                    {
                        w.xi.resize(R);
                        std::copy_n(x.begin() + std::ptrdiff_t(i), R, w.xi.begin());
                        i += R;
                    }
            }

            // Packs per-beam parameter gradients, summing theta over beams.
            rvec pack_gradient(const std::vector<params_gradient> &grads) const
            {
                rvec g;
                g.reserve(size());
                if (arch_.variant() == hybrid_variant::digital)
                {
                    for (const auto &pg : grads)
                    {
                        for (const auto &v : pg.d_digital)
                            g.push_back(v.real());
                        for (const auto &v : pg.d_digital)
                            g.push_back(v.imag());
                    }
                    return g;
                }
                g.assign(free_theta_.size(), 0.0);
                for (const auto &pg : grads)
                    for (std::size_t k = 0; k < g.size(); ++k)
                        g[k] += pg.d_theta.values[free_theta_[k]];
                for (const auto &pg : grads)
                    g.insert(g.end(), pg.d_alpha.begin(), pg.d_alpha.end());
                if (xi_active_)
                    for (const auto &pg : grads)
                        g.insert(g.end(), pg.d_xi.begin(), pg.d_xi.end());
                return g;
            }

        private:
            static std::vector<std::size_t> all_entries(const hybrid_architecture &arch, bool theta_free)
            {
                std::vector<std::size_t> k;
                if (theta_free && arch.variant() != hybrid_variant::digital)
                    for (std::size_t i = 0; i < arch.theta_rows() * arch.theta_cols(); ++i)
                        k.push_back(i);
                return k;
            }

            const hybrid_architecture &arch_;
            std::size_t beams_;
            std::vector<std::size_t> free_theta_;
            bool xi_active_;
        };

        // Penalized objective F = f + penalty as a function of the flat vector.
        class penalized_objective
        {
        public:
            template <typename ThetaFree>
            penalized_objective(const synthesis_problem &problem, beamformer_params templ, ThetaFree theta_free)
                : problem_(problem), layout_(problem.architecture, problem.num_beams(), std::move(theta_free)),
                  eval_(problem.geometry, problem.grid), params_(std::move(templ)), pattern_(problem.grid.size()),
                  sens_(problem.num_beams(), cvec(problem.grid.size()))
            {
            }

            const param_layout &layout() const { return layout_; }
            pattern_evaluator &evaluator() { return eval_; }

            // Adds weight * sum (1 - cos(K (theta + pi))) over the free analog
            // phases, which vanishes exactly on the K-level grid.
            void set_phase_pull(std::size_t levels, double weight)
            {
                pull_levels_ = levels;
                pull_weight_ = weight;
            }

            beamformer_params params_at(const rvec &x) const
            {
                beamformer_params p = params_;
                layout_.unpack(x, p);
                return p;
            }

            double operator()(const rvec &x, double mu, rvec *grad)
            {
                layout_.unpack(x, params_);
                const auto &arch = problem_.architecture;
                const std::size_t B = problem_.num_beams();
                const int p = problem_.p;

                beams_.resize(B);
                double s = 0.0;
                for (std::size_t b = 0; b < B; ++b)
                {
                    beams_[b] = compose(arch, params_, b);
                    eval_.evaluate(beams_[b], pattern_);
                    s += objective_sum_sensitivity(pattern_, problem_.targets[b], p, eval_.cell(), sens_[b]);
                }
                std::vector<cvec> pen_grad;
                const double pen = power_penalty(beams_, problem_.power, mu, grad ? &pen_grad : nullptr);
                const double f = std::pow(s, 1.0 / double(p));

                if (grad)
                {
                    const double chain = s > 0.0 ? std::pow(s, 1.0 / double(p) - 1.0) / double(p) : 0.0;
                    std::vector<params_gradient> pg(B);
                    cvec ga(arch.num_antennas());
                    for (std::size_t b = 0; b < B; ++b)
                    {
                        eval_.adjoint(sens_[b], ga);
                        for (std::size_t m = 0; m < ga.size(); ++m)
                            ga[m] = ga[m] * chain + pen_grad[b][m];
                        pg[b] = param_gradient(arch, params_, ga, b);
                    }
                    *grad = layout_.pack_gradient(pg);
                }
                double pull = 0.0;
                if (pull_weight_ > 0.0)
                {
                    const double K = double(pull_levels_);
                    for (std::size_t k = 0; k < layout_.num_free_theta(); ++k)
                    {
                        const double arg = K * (x[k] + pi);
                        pull += pull_weight_ * (1.0 - std::cos(arg));
                        if (grad)
                            (*grad)[k] += pull_weight_ * K * std::sin(arg);
                    }
                }
                return f + pen + pull;
            }

        private:
            const synthesis_problem &problem_;
            param_layout layout_;
            pattern_evaluator eval_;
            beamformer_params params_;
            cvec pattern_;
            std::vector<cvec> sens_;
            std::vector<cvec> beams_;
            std::size_t pull_levels_ = 0;
            double pull_weight_ = 0.0;
        };

        struct progress_sink
        {
            std::ostream *out = nullptr;
            std::size_t every = 0;
            std::mutex *mutex = nullptr;

            void report(std::size_t start, std::size_t iter, double f, double mu) const
            {
                if (!out || every == 0 || iter % every != 0)
                    return;
                std::ostringstream line;
                line.precision(10);
                line << "start=" << start << " iter=" << iter << " f=" << f << " mu=" << mu << '\n';
                std::lock_guard lock(*mutex);
                *out << line.str() << std::flush;
            }
        };

        struct descent_outcome
        {
            std::size_t iterations = 0;
            double value = 0.0;
        };

        // Line-search descent (L-BFGS or steepest descent) with Armijo
        // backtracking. Every accepted step lowers F.
        descent_outcome minimize(penalized_objective &fn, rvec &x, double mu, std::size_t max_iters,
                                 const solver_config &cfg, std::vector<double> &trace, std::size_t start,
                                 std::size_t iter_offset, const progress_sink &progress)
        {
            rvec g;
            double f = fn(x, mu, &g);
            if (!std::isfinite(f))
                throw std::runtime_error("start " + std::to_string(start) + ": non-finite objective");

            std::deque<std::pair<rvec, rvec>> memory; // (s, y)
            const std::size_t n = x.size();
            rvec d(n), x_new(n), g_new;
            double gd_step = 0.0;
            std::size_t small_steps = 0;
            descent_outcome out;

            for (std::size_t it = 0; it < max_iters; ++it)
            {
                const double gnorm = std::sqrt(dot(g, g));
                if (!(gnorm > 1e-14))
                    break;

                bool fresh = memory.empty();
                if (cfg.method == descent_method::lbfgs && !memory.empty())
                {
                    // two-loop recursion
                    rvec q = g;
                    std::vector<double> alphas(memory.size());
                    for (std::size_t k = memory.size(); k-- > 0;)
                    {
                        const auto &[s, y] = memory[k];
                        alphas[k] = dot(s, q) / dot(y, s);
                        for (std::size_t i = 0; i < n; ++i)
                            q[i] -= alphas[k] * y[i];
                    }
                    const auto &[s_last, y_last] = memory.back();
                    const double gamma = dot(s_last, y_last) / dot(y_last, y_last);
                    for (auto &v : q)
                        v *= gamma;
                    for (std::size_t k = 0; k < memory.size(); ++k)
                    {
                        const auto &[s, y] = memory[k];
                        const double beta = dot(y, q) / dot(y, s);
                        for (std::size_t i = 0; i < n; ++i)
                            q[i] += (alphas[k] - beta) * s[i];
                    }
                    for (std::size_t i = 0; i < n; ++i)
                        d[i] = -q[i];
                    if (!(dot(g, d) < 0.0))
                    {
                        memory.clear();
                        fresh = true;
                    }
                }
                if (cfg.method != descent_method::lbfgs || fresh)
                    for (std::size_t i = 0; i < n; ++i)
                        d[i] = -g[i];

                double t;
                if (cfg.method == descent_method::lbfgs)
                    t = fresh ? 1.0 / std::max(1.0, gnorm) : 1.0;
                else
                    t = gd_step > 0.0 ? 2.0 * gd_step : 1.0 / std::max(1.0, gnorm);

                const double slope = dot(g, d);
                double f_new = 0.0;
                bool accepted = false;
                for (std::size_t bt = 0; bt < cfg.max_backtracks; ++bt)
                {
                    for (std::size_t i = 0; i < n; ++i)
                        x_new[i] = x[i] + t * d[i];
                    f_new = fn(x_new, mu, &g_new);
                    if (std::isfinite(f_new) && f_new <= f + cfg.armijo * t * slope && f_new < f)
                    {
                        accepted = true;
                        break;
                    }
                    t *= cfg.backtrack;
                }
                if (!accepted)
                {
                    if (!std::isfinite(f_new) && !std::isfinite(f))
                        throw std::runtime_error("start " + std::to_string(start) + ": non-finite objective");
                    if (!memory.empty())
                    {
                        memory.clear(); // retry once along the gradient
                        continue;
                    }
                    break;
                }

                rvec s(n), y(n);
                for (std::size_t i = 0; i < n; ++i)
                {
                    s[i] = x_new[i] - x[i];
                    y[i] = g_new[i] - g[i];
                }
                const double sy = dot(s, y);
                if (cfg.method == descent_method::lbfgs && sy > 1e-12 * std::sqrt(dot(s, s) * dot(y, y)))
                {
                    memory.emplace_back(std::move(s), std::move(y));
                    if (memory.size() > cfg.lbfgs_memory)
                        memory.pop_front();
                }
                gd_step = t;

                const double rel = (f - f_new) / std::max(std::abs(f), 1e-300);
                x.swap(x_new);
                g.swap(g_new);
                f = f_new;
                trace.push_back(f);
                ++out.iterations;
                progress.report(start, iter_offset + out.iterations, f, mu);

                small_steps = rel < cfg.tolerance ? small_steps + 1 : 0;
                if (small_steps >= 3)
                    break;
            }
            out.value = f;
            return out;
        }

        bool all_targets_zero(const synthesis_problem &problem)
        {
            for (const auto &t : problem.targets)
                for (std::size_t g = 0; g < t.size(); ++g)
                    if (t.weight[g] > 0.0 && t.desired[g] != 0.0)
                        return false;
            return true;
        }

        // Brings a start onto the feasible set and scores it.
        void finalize_start(const synthesis_problem &problem, start_record &rec)
        {
            canonicalize(problem.architecture, rec.params);
            auto beams = compose_all(problem.architecture, rec.params);
            double c = feasibility_scale(beams, problem.power);
            // simultaneous beams share the sum budget in full
            if (problem.num_beams() >= 2 && problem.power.kind == power_kind::sum_power)
            {
                const double total = total_power(beams);
                c = total > 0.0 ? std::sqrt(problem.power.budget / total) : 1.0;
            }
            if (c != 1.0)
                scale_gains(rec.params, c);
            rec.objective = evaluate_objective(problem, rec.params);
            if (!std::isfinite(rec.objective))
                throw std::runtime_error("start " + std::to_string(rec.index) + ": non-finite objective");
        }

        synthesis_result assemble(const synthesis_problem &problem, std::vector<start_record> starts)
        {
            synthesis_result res;
            std::size_t best = 0;
            for (std::size_t i = 1; i < starts.size(); ++i)
                if (starts[i].objective < starts[best].objective)
                    best = i;
            res.best_start = best;
            res.params = starts[best].params;
            res.objective = starts[best].objective;
            res.beams = compose_all(problem.architecture, res.params);
            res.feasibility = check_feasibility(res.beams, problem.power);
            res.starts = std::move(starts);
            return res;
        }

        // Runs job(i) for i in [0, n) on the worker pool; rethrows the first
        // failure by index.
        template <typename Job>
        void run_parallel(std::size_t n, std::size_t threads, Job &&job)
        {
            std::vector<std::exception_ptr> errors(n);
            std::atomic<std::size_t> next{0};
            auto worker = [&]
            {
                for (std::size_t i = next++; i < n; i = next++)
                {
                    try
                    {
                        job(i);
                    }
                    catch (...)
                    {
                        errors[i] = std::current_exception();
                    }
                }
            };
            const std::size_t k = worker_count(threads, n);
            if (k <= 1)
                worker();
            else
            {
                std::vector<std::thread> pool;
                for (std::size_t t = 0; t < k; ++t)
                    pool.emplace_back(worker);
                for (auto &th : pool)
                    th.join();
            }
            for (auto &e : errors)
                if (e)
                    std::rethrow_exception(e);
        }

        synthesis_result zero_result(const synthesis_problem &problem)
        {
            start_record rec;
            rec.params = random_init(problem.architecture, 0, problem.num_beams(), problem.power);
            scale_gains(rec.params, 0.0);
            if (problem.architecture.quantized())
                rec.params = quantize_phases(rec.params, problem.architecture.phase_levels());
            rec.objective = evaluate_objective(problem, rec.params);
            std::vector<start_record> starts;
            starts.push_back(std::move(rec));
            auto res = assemble(problem, std::move(starts));
            res.warnings.push_back("all desired patterns are zero; returning the zero beamformer");
            return res;
        }
    }

    synthesis_result solve_continuous(const synthesis_problem &problem, const solver_config &config)
    {
        problem.validate();
        config.validate();
        if (all_targets_zero(problem))
            return zero_result(problem);

        std::mutex progress_mutex;
        const progress_sink progress{config.progress, config.progress_every, &progress_mutex};
        std::vector<start_record> starts(config.n_starts);

        run_parallel(config.n_starts, config.threads, [&](std::size_t i)
                     {
            start_record &rec = starts[i];
            rec.index = i;
            rec.seed = start_seed(config.seed, i);
            beamformer_params init = random_init(problem.architecture, rec.seed, problem.num_beams(), problem.power);
            penalized_objective fn(problem, init, true);
            rvec x = fn.layout().pack(init);

            const std::size_t rounds = config.penalty_rounds;
            double mu = config.mu0;
            for (std::size_t r = 0; r < rounds; ++r)
            {
                std::size_t budget = config.max_iters / rounds;
                if (r + 1 == rounds)
                    budget = config.max_iters - budget * (rounds - 1);
                rec.round_starts.push_back(rec.trace.size());
                const auto out = minimize(fn, x, mu, budget, config, rec.trace, i, rec.iterations, progress);
                rec.iterations += out.iterations;
                mu *= config.mu_growth;
            }
            rec.params = fn.params_at(x);
            finalize_start(problem, rec); });

        return assemble(problem, std::move(starts));
    }

    namespace
    {
        // Coordinate descent state of one start during discrete refinement.
        class discrete_refiner
        {
        public:
            discrete_refiner(const synthesis_problem &problem, const solver_config &config, beamformer_params params)
                : problem_(problem), config_(config), arch_(problem.architecture), mu_(config.final_mu()),
                  levels_(arch_.phase_levels()), params_(std::move(params)),
                  eval_(problem.geometry, problem.grid)
            {
            }

            start_record run(std::size_t index, std::uint64_t seed, const progress_sink &progress)
            {
                start_record rec;
                rec.index = index;
                rec.seed = seed;
                rec.round_starts.push_back(0);

                pull_to_grid(rec, index, progress);
                snap_progressively(rec, index, progress);
                rec.trace.push_back(current_);

                descend(rec, index, progress);

                std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
                for (std::size_t k = 0; k < config_.perturb_rounds; ++k)
                {
                    const beamformer_params saved = params_;
                    const double before = current_;
                    perturb(rng);
                    refit_digital(rec, index, progress);
                    descend(rec, index, progress);
                    if (current_ < before)
                        rec.trace.push_back(current_);
                    else
                    {
                        params_ = saved;
                        rebuild();
                    }
                }

                rec.params = params_;
                finalize_start(problem_, rec);
                return rec;
            }

        private:
            // Coordinate sweeps with a digital refit after each, until a sweep
            // changes nothing or the sweep budget is spent.
            void descend(start_record &rec, std::size_t index, const progress_sink &progress)
            {
                for (std::size_t sweep = 0; sweep < config_.refine_sweeps; ++sweep)
                {
                    if (!sweep_phases())
                        break;
                    refit_digital(rec, index, progress);
                    rec.trace.push_back(current_);
                }
            }

            // Re-draws a few random analog phases.
            void perturb(std::mt19937_64 &rng)
            {
                auto &th = params_.theta.values;
                const std::size_t count = std::max<std::size_t>(1, th.size() * config_.perturb_percent / 100);
                std::uniform_int_distribution<std::size_t> entry(0, th.size() - 1), level(0, levels_ - 1);
                for (std::size_t i = 0; i < count; ++i)
                    th[entry(rng)] = grid_phase(level(rng), levels_);
            }

            // Snaps the analog phases in snap_stages batches, those closest to the
            // grid first, re-optimizing the still continuous ones in between.
            void snap_progressively(start_record &rec, std::size_t index, const progress_sink &progress)
            {
                auto &th = params_.theta.values;
                const std::size_t n = th.size();
                const std::size_t stages = config_.snap_stages;
                const auto error = [&](std::size_t i)
                { return std::abs(wrap_phase(th[i] - grid_phase(phase_index(th[i], levels_), levels_))); };

                std::vector<std::size_t> free(n);
                std::iota(free.begin(), free.end(), 0);
                for (std::size_t s = 1; s <= stages; ++s)
                {
                    std::stable_sort(free.begin(), free.end(), [&](std::size_t a, std::size_t b)
                                     { return error(a) < error(b); });
                    const std::size_t snap = free.size() - (n - n * s / stages);
                    for (std::size_t k = 0; k < snap; ++k)
                        th[free[k]] = grid_phase(phase_index(th[free[k]], levels_), levels_);
                    free.erase(free.begin(), free.begin() + std::ptrdiff_t(snap));
                    std::sort(free.begin(), free.end());
                    refit(free, rec, index, progress);
                }
            }

            // Continuation that drags every analog phase towards the grid with a
            // growing weight while all parameters stay free.
            void pull_to_grid(start_record &rec, std::size_t index, const progress_sink &progress)
            {
                if (config_.pull_rounds == 0)
                    return;
                const std::size_t n = params_.theta.values.size();
                const double f0 = evaluate_objective(problem_, params_);
                penalized_objective fn(problem_, params_, true);
                rvec x = fn.layout().pack(params_);
                const std::size_t budget = std::max<std::size_t>(1, config_.max_iters / config_.penalty_rounds);
                double weight = 1e-3 * f0 / double(n);
                for (std::size_t r = 0; r < config_.pull_rounds; ++r, weight *= 10.0)
                {
                    fn.set_phase_pull(levels_, weight);
                    std::vector<double> trace;
                    const auto out = minimize(fn, x, mu_, budget, config_, trace, index, rec.iterations, progress);
                    rec.iterations += out.iterations;
                }
                params_ = fn.params_at(x);
            }

            void refit_digital(start_record &rec, std::size_t index, const progress_sink &progress)
            {
                refit({}, rec, index, progress);
            }

            // L-BFGS over (alpha, xi) and the listed theta entries, then rebuilds the cached state.
            void refit(std::vector<std::size_t> free_theta, start_record &rec, std::size_t index,
                       const progress_sink &progress)
            {
                penalized_objective fn(problem_, params_, std::move(free_theta));
                rvec x = fn.layout().pack(params_);
                std::vector<double> trace;
                const std::size_t budget = std::max<std::size_t>(1, config_.max_iters / config_.penalty_rounds);
                const auto out = minimize(fn, x, mu_, budget, config_, trace, index, rec.iterations, progress);
                rec.iterations += out.iterations;
                params_ = fn.params_at(x);
                rebuild();
            }

            void rebuild()
            {
                const std::size_t B = problem_.num_beams();
                beams_ = compose_all(arch_, params_);
                patterns_.assign(B, cvec());
                sums_.assign(B, 0.0);
                coef_.assign(B, cvec(arch_.rf_chains()));
                for (std::size_t b = 0; b < B; ++b)
                {
                    patterns_[b] = eval_.evaluate(beams_[b]);
                    sums_[b] = objective_sum(patterns_[b], problem_.targets[b], problem_.p, eval_.cell());
                    const auto &w = params_.beams[b];
                    for (std::size_t c = 0; c < arch_.rf_chains(); ++c)
                        coef_[b][c] = std::polar(w.alpha[c], w.xi.empty() ? 0.0 : w.xi[c]);
                }
                current_ = score(sums_, beams_);
            }

            double score(const std::vector<double> &sums, const std::vector<cvec> &beams) const
            {
                const double s = std::accumulate(sums.begin(), sums.end(), 0.0);
                return std::pow(s, 1.0 / double(problem_.p)) + power_penalty(beams, problem_.power, mu_);
            }

            // objective_sum of pattern + delta * column m of the steering matrix
            double shifted_sum(std::size_t b, std::size_t m, cd delta) const
            {
                const auto &t = problem_.targets[b];
                const auto &A = patterns_[b];
                const int p = problem_.p;
                double s = 0.0;
                for (std::size_t g = 0; g < A.size(); ++g)
                {
                    const double w = t.weight[g];
                    if (w == 0.0)
                        continue;
                    const double r = w * (std::abs(A[g] + delta * eval_.steering(g, m)) - t.desired[g]);
                    double rp = r * r;
                    for (int k = 2; k < p; k += 2)
                        rp *= r * r;
                    s += rp;
                }
                return s * eval_.cell();
            }

            // One cyclic pass over all analog phases. Returns true if any moved.
            bool sweep_phases()
            {
                const std::size_t B = problem_.num_beams();
                auto &th = params_.theta;
                bool changed = false;
                std::vector<double> trial_sums(B), best_sums(B);
                std::vector<cvec> trial_beams = beams_;

                for (std::size_t r = 0; r < th.rows; ++r)
                    for (std::size_t c = 0; c < th.cols; ++c)
                    {
                        const std::size_t m = arch_.antenna_of(r, c);
                        const std::size_t k_now = phase_index(th(r, c), levels_);
                        const cd e_now = std::polar(1.0, th(r, c));
                        std::size_t k_best = k_now;
                        double f_best = current_;

                        for (std::size_t k = 0; k < levels_; ++k)
                        {
                            if (k == k_now)
                                continue;
                            const cd de = std::polar(1.0, grid_phase(k, levels_)) - e_now;
                            for (std::size_t b = 0; b < B; ++b)
                            {
                                const cd delta = coef_[b][c] * de;
                                trial_beams[b][m] = beams_[b][m] + delta;
                                trial_sums[b] = shifted_sum(b, m, delta);
                            }
                            const double f = score(trial_sums, trial_beams);
                            if (f < f_best - 1e-12 * std::abs(f_best))
                            {
                                f_best = f;
                                k_best = k;
                                best_sums = trial_sums;
                            }
                        }
                        for (std::size_t b = 0; b < B; ++b)
                            trial_beams[b][m] = beams_[b][m];

                        if (k_best == k_now)
                            continue;
                        const double theta_new = grid_phase(k_best, levels_);
                        const cd de = std::polar(1.0, theta_new) - e_now;
                        for (std::size_t b = 0; b < B; ++b)
                        {
                            const cd delta = coef_[b][c] * de;
                            beams_[b][m] += delta;
                            trial_beams[b][m] = beams_[b][m];
                            auto &A = patterns_[b];
                            for (std::size_t g = 0; g < A.size(); ++g)
                                A[g] += delta * eval_.steering(g, m);
                        }
                        sums_ = best_sums;
                        current_ = f_best;
                        th(r, c) = theta_new;
                        changed = true;
                    }
                return changed;
            }

            const synthesis_problem &problem_;
            const solver_config &config_;
            const hybrid_architecture &arch_;
            double mu_;
            std::size_t levels_;
            beamformer_params params_;
            pattern_evaluator eval_;
            std::vector<cvec> beams_;
            std::vector<cvec> patterns_;
            std::vector<double> sums_;
            std::vector<cvec> coef_;
            double current_ = 0.0;
        };
    }

    synthesis_result refine_discrete(const synthesis_problem &problem, const synthesis_result &warm,
                                     const solver_config &config)
    {
        problem.validate();
        config.validate();
        const auto &arch = problem.architecture;
        if (!arch.quantized())
            throw invalid_argument("refine_discrete: architecture has continuous phases (K < 2)");
        if (all_targets_zero(problem))
            return zero_result(problem);

        // Warm params lacking xi (e.g. produced for continuous phases) get xi = 0.
        auto prepare = [&](beamformer_params p)
        {
            for (auto &w : p.beams)
                if (w.xi.empty())
                    w.xi.assign(arch.rf_chains(), 0.0);
            validate_params(arch, p);
            return p;
        };

        std::vector<beamformer_params> seeds;
        std::vector<std::uint64_t> seed_ids;
        if (warm.starts.empty())
        {
            seeds.push_back(prepare(warm.params));
            seed_ids.push_back(config.seed);
        }
        else
            for (const auto &s : warm.starts)
            {
                seeds.push_back(prepare(s.params));
                seed_ids.push_back(s.seed);
            }

        std::mutex progress_mutex;
        const progress_sink progress{config.progress, config.progress_every, &progress_mutex};
        std::vector<start_record> starts(seeds.size());
        run_parallel(seeds.size(), config.threads, [&](std::size_t i)
                     {
            discrete_refiner refiner(problem, config, seeds[i]);
            starts[i] = refiner.run(i, seed_ids[i], progress); });

        auto res = assemble(problem, std::move(starts));
        res.warnings = warm.warnings;
        return res;
    }

    synthesis_result solve(const synthesis_problem &problem, const solver_config &config)
    {
        auto cont = solve_continuous(problem, config);
        if (!problem.architecture.quantized())
            return cont;
        return refine_discrete(problem, cont, config);
    }

    synthesis_result solve_multibeam(const synthesis_problem &problem, const solver_config &config)
    {
        if (problem.num_beams() < 2)
            throw invalid_argument("solve_multibeam: needs at least two targets");
        return solve(problem, config);
    }
}
