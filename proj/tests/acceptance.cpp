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
#include "beamforge/cli.hpp"
#include "beamforge/io.hpp"
#include "beamforge/metrics.hpp"
#include "beamforge/solver.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>
#include <unistd.h>

using namespace beamforge;
namespace fs = std::filesystem;

namespace
{
    // Pinned tolerances.
    constexpr double exact_tol = 1e-12;
    constexpr double fft_tol = 1e-9;
    constexpr double fd_rel_tol = 1e-5;
    constexpr double feasibility_tol = 1e-12;
    constexpr double exhaustive_rel = 0.01;
    constexpr double gain_band_db = 1.5;
    constexpr double ripple_cap_db = 3.5;
    constexpr double sidelobe_cap_db = -18.0;
    constexpr double overlap_cap_pct = 10.0;
    constexpr double multibeam_sidelobe_cap_db = -9.0;
    constexpr double multibeam_gain_band_db = 2.0;
    constexpr double total_power_tol = 1e-12;

    // Published reference values per width b = pi, pi/2, pi/4.
    constexpr double ref_single_gain[3] = {18.2, 22.0, 24.8};
    constexpr double ref_single_beta[3] = {3.0, 2.0, 2.0};
    constexpr double ref_two_beam_gain[3] = {2.52, 5.50, 8.23};

    const fs::path config_dir = BEAMFORGE_CONFIG_DIR;

    std::mt19937_64 rng(20240611);

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

    cvec random_cvec(std::size_t n)
    {
        std::normal_distribution<double> d;
        cvec v(n);
        for (auto &x : v)
            x = cd(d(rng), d(rng));
        return v;
    }

    std::string fmt(const char *f, double v)
    {
        char buf[64];
        std::snprintf(buf, sizeof buf, f, v);
        return buf;
    }

    struct verdict
    {
        bool pass = true;
        std::string detail;

        void require(bool ok, const std::string &what)
        {
            if (!ok)
                pass = false;
            if (!detail.empty())
                detail += "; ";
            detail += (ok ? "" : "!") + what;
        }
    };

    double seconds_since(std::chrono::steady_clock::time_point t0)
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }

    const double widths[3] = {pi, pi / 2, pi / 4};

    synthesis_problem single_problem(hybrid_variant variant, std::size_t stage)
    {
        const spatial_grid grid(512);
        const power_constraint power{power_kind::per_element, 1.0};
        const beam_spec spec{0.0, widths[stage], ref_single_beta[stage], 8 * grid.cell()};
        return {make_ula(64, 0.5), grid, {build_target(spec, 64, grid, power)}, hybrid_architecture(variant, 64, 4),
                power, 4};
    }

    synthesis_problem two_beam_problem(std::size_t stage, const synthesis_config &base)
    {
        const double b = widths[stage];
        std::vector<target_pattern> targets;
        for (double center : {-b / 2, b / 2})
        {
            beam_spec spec = base.specs[0];
            spec.center = center;
            spec.width = b;
            targets.push_back(build_target(spec, 64, base.grid, base.power));
        }
        return {base.geometry, base.grid, targets, base.architecture, base.power, base.p};
    }

    struct table_row
    {
        std::string label;
        double gain = 0, ripple = 0, overlap = -1, sidelobe = 0;
    };

    std::vector<table_row> table;

    struct checked_result
    {
        const synthesis_problem *problem;
        synthesis_result result;
    };

    // Every synthesis result produced here, for the structural checks.
    std::vector<checked_result> all_results;

    std::vector<double> beam_gains(const synthesis_problem &problem, const cvec &a)
    {
        return gains_db(array_factor(problem.geometry, a, problem.grid));
    }

    // ---- 1 ----
    verdict analytic()
    {
        verdict v;
        const std::size_t M = 16;
        const auto geom = make_ula(M, 0.5);
        const spatial_grid grid(256);
        const auto A = array_factor(geom, cvec(M, 1.0), grid);
        double boresight = 0.0;
        for (std::size_t g = 0; g < grid.size(); ++g)
            if (grid[g] == 0.0)
                boresight = std::abs(A[g]);
        v.require(std::abs(boresight - double(M)) < exact_tol, "boresight |A| = " + fmt("%.15g", boresight));

        double worst_match = 0.0, worst_unit = 0.0;
        for (int i = 0; i < 100; ++i)
        {
            const double psi0 = uniform(-pi, pi);
            cvec a = steering_vector(geom, psi0);
            for (const auto &x : a)
                worst_unit = std::max(worst_unit, std::abs(std::abs(x) - 1.0));
            for (auto &x : a)
                x = std::conj(x);
            cd sum{};
            for (std::size_t n = 0; n < M; ++n)
                sum += a[n] * std::exp(cd(0, double(n) * psi0));
            worst_match = std::max(worst_match, std::abs(std::abs(sum) - double(M)));
        }
        for (const auto &g : {make_upa(4, 4, 0.5), make_cylindrical(3, 8, 1.2, 0.5)})
            for (int i = 0; i < 50; ++i)
            {
                const double th = uniform(0, pi), ph = uniform(-pi, pi);
                for (const auto &x : steering_vector(g, vec3{std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th)}))
                    worst_unit = std::max(worst_unit, std::abs(std::abs(x) - 1.0));
            }
        v.require(worst_match < exact_tol, "matched |A(psi0)| - M max " + fmt("%.2e", worst_match));
        v.require(worst_unit < exact_tol, "steering | |v|-1 | max " + fmt("%.2e", worst_unit));
        return v;
    }

    // ---- 2 ----
    double rel_vec_err(const std::vector<double> &a, const std::vector<double> &b)
    {
        double diff = 0.0, scale = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i)
        {
            diff = std::max(diff, std::abs(a[i] - b[i]));
            scale = std::max({scale, std::abs(a[i]), std::abs(b[i])});
        }
        return diff / std::max(scale, 1e-12);
    }

    verdict oracles()
    {
        verdict v;
        double worst_fft = 0.0;
        for (int i = 0; i < 100; ++i)
        {
            const std::size_t M = 1 + rng() % 96;
            const std::size_t G = 2 + rng() % 1000;
            const cvec a = random_cvec(M);
            const spatial_grid grid(G);
            const cvec fast = array_factor_ula_fft(a, grid);
            for (std::size_t g = 0; g < G; ++g)
            {
                cd sum{};
                for (std::size_t n = 0; n < M; ++n)
                    sum += a[n] * std::exp(cd(0, double(n) * grid[g]));
                worst_fft = std::max(worst_fft, std::abs(sum - fast[g]));
            }
        }
        v.require(worst_fft < fft_tol, "fft vs direct max " + fmt("%.2e", worst_fft));

        const std::size_t M = 16;
        const spatial_grid grid(128);
        const auto geom = make_ula(M, 0.5);
        const std::vector<hybrid_architecture> archs = {
            {hybrid_variant::digital, M, M},
            {hybrid_variant::sub_array, M, 4},
            {hybrid_variant::fully_connected, M, 4},
            {hybrid_variant::sub_array, M, 4, 4},
            {hybrid_variant::fully_connected, M, 4, 4},
        };
        for (const auto &arch : archs)
        {
            double worst = 0.0;
            pattern_evaluator eval(geom, grid);
            for (int i = 0; i < 50; ++i)
            {
                const auto target = build_target({uniform(-2, 2), uniform(0.5, 2.5), uniform(0, 3), {}}, M, grid);
                auto params = random_init(arch, rng());
                std::vector<double *> coords;
                for (auto &t : params.theta.values)
                    coords.push_back(&t);
                for (auto &w : params.beams)
                {
                    for (auto &x : w.alpha)
                        coords.push_back(&x);
                    for (auto &x : w.xi)
                        coords.push_back(&x);
                }
                std::vector<double> re_im;
                for (auto &d : params.digital)
                    for (auto &x : d)
                    {
                        coords.push_back(&reinterpret_cast<double(&)[2]>(x)[0]);
                        coords.push_back(&reinterpret_cast<double(&)[2]>(x)[1]);
                    }

                const auto f = [&]
                { return objective_value(array_factor(geom, compose(arch, params), grid), target, 4, grid.cell()); };
                const auto vg = objective_gradient_a(compose(arch, params), eval, target, 4);
                const auto pg = param_gradient(arch, params, vg.gradient);
                std::vector<double> analytic;
                for (double d : pg.d_theta.values)
                    analytic.push_back(d);
                for (double d : pg.d_alpha)
                    analytic.push_back(d);
                for (double d : pg.d_xi)
                    analytic.push_back(d);
                for (const auto &d : pg.d_digital)
                {
                    analytic.push_back(d.real());
                    analytic.push_back(d.imag());
                }

                std::vector<double> numeric;
                for (double *c : coords)
                {
                    const double x0 = *c, h = 1e-6 * std::max(1.0, std::abs(x0));
                    *c = x0 + h;
                    const double fp = f();
                    *c = x0 - h;
                    const double fm = f();
                    *c = x0;
                    numeric.push_back((fp - fm) / (2 * h));
                }
                worst = std::max({worst, rel_vec_err(analytic, numeric),
                                  std::abs(vg.value - f()) / std::max(f(), 1e-300)});
            }
            const std::string name = std::string(to_string(arch.variant())) + (arch.quantized() ? "/K4" : "");
            v.require(worst < fd_rel_tol, name + " grad rel " + fmt("%.1e", worst));
        }
        return v;
    }

    // ---- 3 ----
    verdict structure()
    {
        // a few extra small problems covering every architecture and constraint
        static std::vector<synthesis_problem> extra;
        for (auto kind : {power_kind::per_element, power_kind::sum_power})
            for (auto variant : {hybrid_variant::digital, hybrid_variant::sub_array, hybrid_variant::fully_connected})
                for (std::size_t K : {0, 2, 4})
                {
                    if (variant == hybrid_variant::digital && K)
                        continue;
                    const spatial_grid grid(128);
                    const power_constraint power{kind, 1.0};
                    const hybrid_architecture arch(variant, 16, variant == hybrid_variant::digital ? 16 : 4, K);
                    extra.push_back({make_ula(16, 0.5), grid,
                                     {build_target({-0.7, 1.0, 1.0, {}}, 16, grid, power),
                                      build_target({0.7, 1.0, 1.0, {}}, 16, grid, power)},
                                     arch, power, 4});
                }
        extra.shrink_to_fit();
        solver_config cfg;
        cfg.n_starts = 2;
        cfg.max_iters = 500;
        for (const auto &p : extra)
        {
            all_results.push_back({&p, solve_multibeam(p, cfg)});
            all_results.push_back({&p, synthesize_baseline(p, cfg)});
        }

        verdict v;
        double worst_power = 0.0, worst_group = 0.0;
        std::size_t off_grid = 0, total = 0;
        for (const auto &[problem, r] : all_results)
        {
            const auto &arch = problem->architecture;
            const double excess = problem->power.kind == power_kind::per_element ? max_element_power(r.beams)
                                                                                  : total_power(r.beams);
            worst_power = std::max(worst_power, excess - problem->power.budget);
            if (arch.variant() == hybrid_variant::sub_array)
            {
                const std::size_t n = arch.group_size();
                for (const auto &a : r.beams)
                    for (std::size_t m = 0; m < a.size(); ++m)
                        worst_group = std::max(worst_group, std::abs(std::abs(a[m]) - std::abs(a[m - m % n])));
            }
            if (arch.quantized())
                for (double t : r.params.theta.values)
                {
                    const double k = (t + pi) * double(arch.phase_levels()) / two_pi;
                    if (k != std::round(k) || k < 0 || k >= double(arch.phase_levels()))
                        ++off_grid;
                }
            ++total;
        }
        v.require(worst_power <= feasibility_tol, std::to_string(total) + " results, power excess " + fmt("%.1e", worst_power));
        v.require(worst_group < exact_tol, "group magnitude spread " + fmt("%.1e", worst_group));
        v.require(off_grid == 0, std::to_string(off_grid) + " phases off the grid");
        return v;
    }

    // ---- 4 ----
    verdict tiny_exhaustive()
    {
        verdict v;
        const auto t0 = std::chrono::steady_clock::now();
        const hybrid_architecture arch(hybrid_variant::sub_array, 4, 1, 4);
        const spatial_grid grid(64);
        double worst = 0.0;
        solver_config cfg;
        for (int trial = 0; trial < 20; ++trial)
        {
            const synthesis_problem problem{
                make_ula(4, 0.5), grid, {build_target({uniform(-2.5, 2.5), uniform(0.6, 3.0), uniform(0, 3), {}}, 4, grid)},
                arch, {}, 4};
            double best = std::numeric_limits<double>::infinity();
            for (int code = 0; code < 256; ++code)
            {
                cvec phases(4);
                for (int m = 0; m < 4; ++m)
                    phases[m] = std::polar(1.0, -pi + double((code >> (2 * m)) & 3) * pi / 2);
                const auto f = [&](double alpha)
                {
                    cvec a = phases;
                    for (auto &x : a)
                        x *= alpha;
                    return evaluate_objective(problem, std::vector<cvec>{a});
                };
                // convex in the gain, capped at 1 by the per-element budget
                double lo = 0.0, hi = 1.0;
                for (int it = 0; it < 100; ++it)
                {
                    const double m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
                    if (f(m1) < f(m2))
                        hi = m2;
                    else
                        lo = m1;
                }
                best = std::min(best, f(0.5 * (lo + hi)));
            }
            cfg.seed = std::uint64_t(trial);
            const auto r = solve(problem, cfg);
            worst = std::max(worst, r.objective / best - 1.0);
        }
        const double secs = seconds_since(t0);
        v.require(worst <= exhaustive_rel, "worst excess " + fmt("%.3f%%", 100 * worst));
        v.require(secs < 60.0, fmt("%.1f s", secs));
        return v;
    }

    // ---- 5, 6 ----
    std::array<beam_metrics, 3> single_fc, single_sub;
    double single_seconds = 0.0;

    beam_metrics measure(const synthesis_problem &problem, const cvec &a)
    {
        const auto g = beam_gains(problem, a);
        const auto &t = problem.targets[0];
        return {average_gain(g, t), max_ripple(g, t), 0.0, max_sidelobe(g, t)};
    }

    void run_single()
    {
        static std::vector<synthesis_problem> problems;
        problems.reserve(6);
        const auto base = load_config(config_dir / "single_beam.json");
        const auto t0 = std::chrono::steady_clock::now();
        for (auto variant : {hybrid_variant::sub_array, hybrid_variant::fully_connected})
            for (std::size_t s = 0; s < 3; ++s)
            {
                problems.push_back(single_problem(variant, s));
                const auto &p = problems.back();
                auto r = solve(p, base.solver);
                const auto m = measure(p, r.beams[0]);
                (variant == hybrid_variant::sub_array ? single_sub : single_fc)[s] = m;
                table.push_back({std::string(to_string(variant)) + " b=pi/" + std::to_string(1 << s), m.avg_gain_db,
                                 m.max_ripple_db, -1, m.max_sidelobe_db});
                all_results.push_back({&p, std::move(r)});
            }
        single_seconds = seconds_since(t0);
    }

    verdict paper_scale()
    {
        verdict v;
        for (std::size_t s = 0; s < 3; ++s)
        {
            const auto &m = single_fc[s];
            const std::string w = "b=pi/" + std::to_string(1 << s) + " ";
            v.require(std::abs(m.avg_gain_db - ref_single_gain[s]) <= gain_band_db, w + "gain " + fmt("%.2f", m.avg_gain_db));
            v.require(m.max_ripple_db <= ripple_cap_db, w + "ripple " + fmt("%.2f", m.max_ripple_db));
            v.require(m.max_sidelobe_db <= sidelobe_cap_db, w + "sidelobe " + fmt("%.2f", m.max_sidelobe_db));
        }
        v.require(single_seconds < 600.0, "both variants " + fmt("%.1f s", single_seconds));
        return v;
    }

    verdict sub_vs_full()
    {
        verdict v;
        for (std::size_t s = 0; s < 3; ++s)
        {
            const std::string w = "b=pi/" + std::to_string(1 << s) + " ";
            v.require(single_sub[s].max_ripple_db >= single_fc[s].max_ripple_db,
                      w + "ripple " + fmt("%.2f", single_sub[s].max_ripple_db) + " vs " + fmt("%.2f", single_fc[s].max_ripple_db));
            v.require(single_sub[s].max_sidelobe_db >= single_fc[s].max_sidelobe_db,
                      w + "sidelobe " + fmt("%.2f", single_sub[s].max_sidelobe_db) + " vs " + fmt("%.2f", single_fc[s].max_sidelobe_db));
        }
        return v;
    }

    // ---- 7, 8 ----
    struct pair_metrics
    {
        double overlap = 0.0, sidelobe = 0.0;
        double gain[2] = {0, 0};
        double power = 0.0;
    };

    std::array<pair_metrics, 3> two_opt, two_base;

    pair_metrics measure_pair(const synthesis_problem &p, const synthesis_result &r, const std::string &label)
    {
        pair_metrics out;
        const auto g0 = beam_gains(p, r.beams[0]), g1 = beam_gains(p, r.beams[1]);
        out.overlap = std::max(overlap(g0, g1, p.targets[0], p.targets[1]), overlap(g1, g0, p.targets[1], p.targets[0]));
        out.sidelobe = std::max(max_sidelobe(g0, p.targets[0]), max_sidelobe(g1, p.targets[1]));
        out.gain[0] = average_gain(g0, p.targets[0]);
        out.gain[1] = average_gain(g1, p.targets[1]);
        out.power = total_power(r.beams);
        table.push_back({label, 0.5 * (out.gain[0] + out.gain[1]),
                         std::max(max_ripple(g0, p.targets[0]), max_ripple(g1, p.targets[1])), out.overlap, out.sidelobe});
        return out;
    }

    void run_two_beam()
    {
        static std::vector<synthesis_problem> problems;
        problems.reserve(3);
        const auto base = load_config(config_dir / "two_beam_2bit.json");
        for (std::size_t s = 0; s < 3; ++s)
        {
            problems.push_back(two_beam_problem(s, base));
            const auto &p = problems.back();
            auto opt = solve_multibeam(p, base.solver);
            auto ref = synthesize_baseline(p, base.solver);
            two_opt[s] = measure_pair(p, opt, "two-beam 2-bit stage " + std::to_string(s + 1) + " optimizer");
            two_base[s] = measure_pair(p, ref, "two-beam 2-bit stage " + std::to_string(s + 1) + " baseline");
            all_results.push_back({&p, std::move(opt)});
            all_results.push_back({&p, std::move(ref)});
        }
    }

    verdict optimizer_vs_baseline()
    {
        verdict v;
        for (std::size_t s = 0; s < 3; ++s)
        {
            const auto &o = two_opt[s], &b = two_base[s];
            const std::string st = "stage " + std::to_string(s + 1) + " ";
            v.require(o.overlap < b.overlap, st + "overlap " + fmt("%.2f", o.overlap) + " < " + fmt("%.2f", b.overlap));
            v.require(o.sidelobe < b.sidelobe, st + "sidelobe " + fmt("%.2f", o.sidelobe) + " < " + fmt("%.2f", b.sidelobe));
            v.require(o.overlap < overlap_cap_pct, st + "overlap cap");
            v.require(o.sidelobe <= multibeam_sidelobe_cap_db, st + "sidelobe cap");
        }
        return v;
    }

    verdict multibeam_power()
    {
        verdict v;
        for (std::size_t s = 0; s < 3; ++s)
        {
            const auto &o = two_opt[s];
            const std::string st = "stage " + std::to_string(s + 1) + " ";
            v.require(std::abs(o.power - 1.0) <= total_power_tol, st + "power " + fmt("%.15f", o.power));
            for (int b = 0; b < 2; ++b)
                v.require(std::abs(o.gain[b] - ref_two_beam_gain[s]) <= multibeam_gain_band_db,
                          st + "beam" + std::to_string(b) + " gain " + fmt("%.2f", o.gain[b]));
        }
        return v;
    }

    // ---- 9 ----
    int cli(std::vector<std::string> args)
    {
        args.insert(args.begin(), "beamforge");
        std::vector<const char *> argv;
        for (const auto &a : args)
            argv.push_back(a.c_str());
        std::ostringstream out, err;
        return run_cli(int(argv.size()), argv.data(), out, err);
    }

    verdict determinism()
    {
        verdict v;
        const fs::path dir = fs::temp_directory_path() / ("beamforge_acceptance_" + std::to_string(::getpid()));
        fs::remove_all(dir);
        fs::create_directories(dir);
        const std::string cfg = (config_dir / "quick.json").string();
        write_text(dir / "grid.json", R"({"/solver/seed": [3, 4]})");
        std::vector<std::string> files;
        for (int run = 0; run < 2; ++run)
        {
            const fs::path d = dir / std::to_string(run);
            const auto p = [&](const char *name) { return (d / name).string(); };
            fs::create_directories(d);
            int rc = 0;
            rc |= cli({"synth", "--config", cfg, "--seed", "11", "--out", p("a.json"), "--result", p("ra.json"), "--quiet"});
            rc |= cli({"baseline", "--config", cfg, "--seed", "11", "--out", p("b.json"), "--result", p("rb.json"), "--quiet"});
            rc |= cli({"eval", "--beam", p("a.json"), "--out", p("a.csv")});
            rc |= cli({"metrics", "--beams", p("a.json"), "--spec", cfg, "--out", p("m.csv")});
            rc |= cli({"compare", "--a", p("a.json"), "--b", p("b.json"), "--spec", cfg, "--out", p("c.csv")});
            rc |= cli({"sweep", "--config", cfg, "--grid", (dir / "grid.json").string(), "--out-dir", p("sweep"), "--quiet"});
            v.require(rc == 0, "run " + std::to_string(run) + " exit codes");
        }
        std::size_t compared = 0, differing = 0;
        for (const auto &entry : fs::recursive_directory_iterator(dir / "0"))
        {
            if (!entry.is_regular_file())
                continue;
            const fs::path other = dir / "1" / fs::relative(entry.path(), dir / "0");
            ++compared;
            if (!fs::exists(other) || read_text(entry.path()) != read_text(other))
                ++differing;
        }
        fs::remove_all(dir);
        v.require(compared >= 15 && differing == 0, std::to_string(compared) + " files, " + std::to_string(differing) + " differ");
        return v;
    }
}

int main()
{
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<std::pair<std::string, std::function<verdict()>>> criteria = {
        {"exact analytic checks", analytic},
        {"oracle equivalence", oracles},
        {"structural feasibility", structure},
        {"tiny-scale exhaustive bound", tiny_exhaustive},
        {"full-scale single beam", paper_scale},
        {"sub-array vs fully-connected ordering", sub_vs_full},
        {"optimizer vs baseline, two 2-bit beams", optimizer_vs_baseline},
        {"two-beam power and gains", multibeam_power},
        {"CLI determinism", determinism},
    };

    std::vector<verdict> verdicts(criteria.size());
    // the synthesis runs feed several criteria, structural checks go last
    try
    {
        run_single();
        run_two_beam();
    }
    catch (const std::exception &e)
    {
        std::printf("FAIL synthesis runs: %s\n", e.what());
        return 1;
    }
    for (std::size_t i : {0, 1, 3, 4, 5, 6, 7, 8, 2})
    {
        try
        {
            verdicts[i] = criteria[i].second();
        }
        catch (const std::exception &e)
        {
            verdicts[i] = {false, std::string("exception: ") + e.what()};
        }
    }

    std::printf("%-38s %9s %9s %9s %9s\n", "design", "gain dB", "ripple", "overlap%", "sidelobe");
    for (const auto &r : table)
        std::printf("%-38s %9.2f %9.2f %9s %9.2f\n", r.label.c_str(), r.gain, r.ripple,
                    r.overlap < 0 ? "-" : fmt("%.2f", r.overlap).c_str(), r.sidelobe);
    std::printf("\n");

    bool all = true;
    for (std::size_t i = 0; i < criteria.size(); ++i)
    {
        std::printf("%s %zu %s: %s\n", verdicts[i].pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                    verdicts[i].detail.c_str());
        all = all && verdicts[i].pass;
    }
    std::printf("total %.1f s\n", seconds_since(t0));
    return all ? 0 : 1;
}
