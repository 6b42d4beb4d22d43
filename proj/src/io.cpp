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
#include "beamforge/io.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace beamforge
{
    using json = nlohmann::json;

    namespace
    {
        [[noreturn]] void fail(const std::string &path, const std::string &what)
        {
            throw invalid_argument(path + ": " + what);
        }

        void only_keys(const json &j, const std::string &path, std::initializer_list<const char *> allowed)
        {
            if (!j.is_object())
                fail(path, "expected an object");
            const std::set<std::string> ok(allowed.begin(), allowed.end());
            for (const auto &[key, value] : j.items())
                if (!ok.count(key))
                    fail(path + "." + key, "unknown field");
        }

        const json &field(const json &j, const std::string &path, const char *key)
        {
            if (!j.contains(key))
                fail(path + "." + key, "missing required field");
            return j.at(key);
        }

        double number(const json &j, const std::string &path)
        {
            if (!j.is_number())
                fail(path, "expected a number");
            const double v = j.get<double>();
            if (!std::isfinite(v))
                fail(path, "must be finite");
            return v;
        }

        std::size_t count(const json &j, const std::string &path, std::size_t min_value)
        {
            if (!j.is_number_integer() && !(j.is_number() && j.get<double>() == std::floor(j.get<double>())))
                fail(path, "expected an integer");
            const double v = j.get<double>();
            if (v < double(min_value))
                fail(path, "must be >= " + std::to_string(min_value));
            return std::size_t(v);
        }

        std::string text(const json &j, const std::string &path)
        {
            if (!j.is_string())
                fail(path, "expected a string");
            return j.get<std::string>();
        }

        template <typename F>
        auto with_path(const std::string &path, F &&f) -> decltype(f())
        {
            try
            {
                return f();
            }
            catch (const invalid_argument &e)
            {
                const std::string msg = e.what();
                if (msg.rfind("config.", 0) == 0)
                    throw;
                fail(path, msg);
            }
        }

        array_geometry parse_geometry(const json &j, const std::string &path)
        {
            if (!j.is_object())
                fail(path, "expected an object");
            const std::string kind = text(field(j, path, "kind"), path + ".kind");
            return with_path(path, [&]
                             {
                if (kind == "ula")
                {
                    only_keys(j, path, {"kind", "m", "spacing_wl"});
                    return make_ula(count(field(j, path, "m"), path + ".m", 1),
                                    number(field(j, path, "spacing_wl"), path + ".spacing_wl"));
                }
                if (kind == "upa")
                {
                    only_keys(j, path, {"kind", "mx", "my", "spacing_wl"});
                    return make_upa(count(field(j, path, "mx"), path + ".mx", 1), count(field(j, path, "my"), path + ".my", 1),
                                    number(field(j, path, "spacing_wl"), path + ".spacing_wl"));
                }
                if (kind == "cylindrical")
                {
                    only_keys(j, path, {"kind", "rings", "per_ring", "radius_wl", "ring_spacing_wl"});
                    return make_cylindrical(count(field(j, path, "rings"), path + ".rings", 1),
                                            count(field(j, path, "per_ring"), path + ".per_ring", 1),
                                            number(field(j, path, "radius_wl"), path + ".radius_wl"),
                                            j.contains("ring_spacing_wl") ? number(j.at("ring_spacing_wl"), path + ".ring_spacing_wl") : 0.0);
                }
                if (kind == "custom")
                {
                    only_keys(j, path, {"kind", "positions"});
                    const json &pos = field(j, path, "positions");
                    if (!pos.is_array() || pos.empty())
                        fail(path + ".positions", "expected a non-empty array of [x, y, z]");
                    std::vector<vec3> pts;
                    for (std::size_t i = 0; i < pos.size(); ++i)
                    {
                        const std::string p = path + ".positions[" + std::to_string(i) + "]";
                        if (!pos[i].is_array() || pos[i].size() != 3)
                            fail(p, "expected [x, y, z]");
                        pts.push_back({number(pos[i][0], p), number(pos[i][1], p), number(pos[i][2], p)});
                    }
                    return array_geometry(std::move(pts), array_kind::custom);
                }
                fail(path + ".kind", "unknown geometry kind '" + kind + "'"); });
        }

        json geometry_to_json(const array_geometry &g)
        {
            if (g.is_ula())
                return {{"kind", "ula"}, {"m", g.size()}, {"spacing_wl", g.spacing_wl()}};
            json pos = json::array();
            for (const auto &p : g.positions())
                pos.push_back({p[0], p[1], p[2]});
            return {{"kind", "custom"}, {"positions", pos}};
        }

        hybrid_architecture parse_architecture(const json &j, const std::string &path, std::size_t num_antennas)
        {
            only_keys(j, path, {"variant", "rf_chains", "phase_levels"});
            const std::string name = text(field(j, path, "variant"), path + ".variant");
            const hybrid_variant v = with_path(path + ".variant", [&]
                                               { return parse_hybrid_variant(name); });
            const std::size_t rf = v == hybrid_variant::digital && !j.contains("rf_chains")
                                       ? num_antennas
                                       : count(field(j, path, "rf_chains"), path + ".rf_chains", 1);
            const std::size_t levels = j.contains("phase_levels") ? count(j.at("phase_levels"), path + ".phase_levels", 0) : 0;
            if (levels == 1)
                fail(path + ".phase_levels", "must be 0 (continuous) or >= 2");
            if (rf > num_antennas)
                fail(path + ".rf_chains", "must not exceed the antenna count " + std::to_string(num_antennas));
            if (v == hybrid_variant::sub_array && num_antennas % rf != 0)
                fail(path + ".rf_chains", "must divide the antenna count " + std::to_string(num_antennas) + " for sub_array");
            return with_path(path, [&]
                             { return hybrid_architecture(v, num_antennas, rf, levels); });
        }

        json architecture_to_json(const hybrid_architecture &a)
        {
            return {{"variant", std::string(to_string(a.variant()))},
                    {"rf_chains", a.rf_chains()},
                    {"phase_levels", a.phase_levels()}};
        }

        power_constraint parse_power(const json &j, const std::string &path)
        {
            only_keys(j, path, {"kind", "budget"});
            power_constraint c;
            const std::string kind = text(field(j, path, "kind"), path + ".kind");
            c.kind = with_path(path + ".kind", [&]
                               { return parse_power_kind(kind); });
            if (j.contains("budget"))
                c.budget = number(j.at("budget"), path + ".budget");
            with_path(path + ".budget", [&]
                      { c.validate(); return 0; });
            return c;
        }

        json power_to_json(const power_constraint &c)
        {
            return {{"kind", std::string(to_string(c.kind))}, {"budget", c.budget}};
        }

        solver_config parse_solver(const json &j, const std::string &path)
        {
            only_keys(j, path, {"n_starts", "max_iters", "method", "lbfgs_memory", "penalty", "tolerance", "seed",
                                "refine_sweeps", "snap_stages", "pull_rounds", "perturb_rounds", "perturb_percent", "threads"});
            solver_config s;
            if (j.contains("n_starts"))
                s.n_starts = count(j.at("n_starts"), path + ".n_starts", 1);
            if (j.contains("max_iters"))
                s.max_iters = count(j.at("max_iters"), path + ".max_iters", 1);
            if (j.contains("method"))
            {
                const std::string m = text(j.at("method"), path + ".method");
                if (m == "lbfgs")
                    s.method = descent_method::lbfgs;
                else if (m == "gradient_descent")
                    s.method = descent_method::gradient_descent;
                else
                    fail(path + ".method", "expected lbfgs or gradient_descent");
            }
            if (j.contains("lbfgs_memory"))
                s.lbfgs_memory = count(j.at("lbfgs_memory"), path + ".lbfgs_memory", 1);
            if (j.contains("penalty"))
            {
                const json &pj = j.at("penalty");
                const std::string pp = path + ".penalty";
                only_keys(pj, pp, {"mu0", "growth", "rounds"});
                if (pj.contains("mu0"))
                    s.mu0 = number(pj.at("mu0"), pp + ".mu0");
                if (pj.contains("growth"))
                    s.mu_growth = number(pj.at("growth"), pp + ".growth");
                if (pj.contains("rounds"))
                    s.penalty_rounds = count(pj.at("rounds"), pp + ".rounds", 1);
            }
            if (j.contains("tolerance"))
                s.tolerance = number(j.at("tolerance"), path + ".tolerance");
            if (j.contains("seed"))
                s.seed = count(j.at("seed"), path + ".seed", 0);
            if (j.contains("refine_sweeps"))
                s.refine_sweeps = count(j.at("refine_sweeps"), path + ".refine_sweeps", 1);
            if (j.contains("snap_stages"))
                s.snap_stages = count(j.at("snap_stages"), path + ".snap_stages", 1);
            if (j.contains("pull_rounds"))
                s.pull_rounds = count(j.at("pull_rounds"), path + ".pull_rounds", 0);
            if (j.contains("perturb_rounds"))
                s.perturb_rounds = count(j.at("perturb_rounds"), path + ".perturb_rounds", 0);
            if (j.contains("perturb_percent"))
                s.perturb_percent = count(j.at("perturb_percent"), path + ".perturb_percent", 1);
            if (j.contains("threads"))
                s.threads = count(j.at("threads"), path + ".threads", 0);
            with_path(path, [&]
                      { s.validate(); return 0; });
            return s;
        }

        element_gain_fn parse_element_gain(const json &j, const std::string &path, const array_geometry &geom)
        {
            only_keys(j, path, {"kind", "exponent", "floor"});
            const std::string kind = text(field(j, path, "kind"), path + ".kind");
            if (kind != "cos_power")
                fail(path + ".kind", "only cos_power is supported");
            const double q = j.contains("exponent") ? number(j.at("exponent"), path + ".exponent") : 1.0;
            const double floor = j.contains("floor") ? number(j.at("floor"), path + ".floor") : 1e-3;
            if (!(floor > 0.0))
                fail(path + ".floor", "must be positive");
            const bool ula = geom.is_ula();
            const double d = geom.spacing_wl();
            return [=](double coord)
            {
                double angle = coord;
                if (ula)
                {
                    angle = psi_to_angle(coord, d);
                    if (std::isnan(angle))
                        return floor;
                }
                return std::max(std::pow(std::max(std::cos(angle), 0.0), q), floor);
            };
        }

        json params_to_json(const hybrid_architecture &arch, const beamformer_params &p)
        {
            json entry;
            if (arch.variant() != hybrid_variant::digital)
            {
                entry["theta"] = {{"rows", p.theta.rows}, {"cols", p.theta.cols}, {"values", p.theta.values}};
                if (arch.quantized())
                {
                    std::vector<std::size_t> idx;
                    for (double t : p.theta.values)
                        idx.push_back(phase_index(t, arch.phase_levels()));
                    entry["theta_index"] = idx;
                }
            }
            json beams = json::array();
            for (std::size_t b = 0; b < p.num_beams(); ++b)
            {
                json jb;
                if (arch.variant() != hybrid_variant::digital)
                {
                    jb["alpha"] = p.beams[b].alpha;
                    if (!p.beams[b].xi.empty())
                        jb["xi"] = p.beams[b].xi;
                }
                const cvec a = compose(arch, p, b);
                std::vector<double> re, im;
                for (const auto &v : a)
                {
                    re.push_back(v.real());
                    im.push_back(v.imag());
                }
                jb["a"] = {{"re", re}, {"im", im}};
                beams.push_back(jb);
            }
            entry["beams"] = beams;
            return entry;
        }

        std::vector<double> number_array(const json &j, const std::string &path)
        {
            if (!j.is_array())
                fail(path, "expected an array of numbers");
            std::vector<double> v;
            for (std::size_t i = 0; i < j.size(); ++i)
                v.push_back(number(j[i], path + "[" + std::to_string(i) + "]"));
            return v;
        }

        beamformer_params params_from_json(const json &j, const std::string &path, const hybrid_architecture &arch)
        {
            beamformer_params p;
            const json &beams = field(j, path, "beams");
            if (!beams.is_array() || beams.empty())
                fail(path + ".beams", "expected a non-empty array");
            if (arch.variant() == hybrid_variant::digital)
            {
                for (std::size_t b = 0; b < beams.size(); ++b)
                {
                    const std::string bp = path + ".beams[" + std::to_string(b) + "].a";
                    const json &a = field(beams[b], path + ".beams[" + std::to_string(b) + "]", "a");
                    const auto re = number_array(field(a, bp, "re"), bp + ".re");
                    const auto im = number_array(field(a, bp, "im"), bp + ".im");
                    if (re.size() != im.size())
                        fail(bp, "re and im lengths differ");
                    cvec v(re.size());
                    for (std::size_t m = 0; m < re.size(); ++m)
                        v[m] = cd(re[m], im[m]);
                    p.digital.push_back(std::move(v));
                }
            }
            else
            {
                const json &th = field(j, path, "theta");
                p.theta.rows = count(field(th, path + ".theta", "rows"), path + ".theta.rows", 0);
                p.theta.cols = count(field(th, path + ".theta", "cols"), path + ".theta.cols", 0);
                p.theta.values = number_array(field(th, path + ".theta", "values"), path + ".theta.values");
                for (std::size_t b = 0; b < beams.size(); ++b)
                {
                    const std::string bp = path + ".beams[" + std::to_string(b) + "]";
                    baseband_weights w;
                    w.alpha = number_array(field(beams[b], bp, "alpha"), bp + ".alpha");
                    if (beams[b].contains("xi"))
                        w.xi = number_array(beams[b].at("xi"), bp + ".xi");
                    p.beams.push_back(std::move(w));
                }
            }
            with_path(path, [&]
                      { validate_params(arch, p); return 0; });
            return p;
        }

        std::string exact(double v)
        {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.17g", v);
            return buf;
        }
    }

    std::vector<synthesis_problem> synthesis_config::problems() const
    {
        std::vector<synthesis_problem> out;
        if (simultaneous)
            out.push_back({geometry, grid, targets, architecture, power, p});
        else
            for (const auto &t : targets)
                out.push_back({geometry, grid, {t}, architecture, power, p});
        return out;
    }

    synthesis_config parse_config(const std::string &json_text)
    {
        json j;
        try
        {
            j = json::parse(json_text);
        }
        catch (const json::parse_error &e)
        {
            throw invalid_argument(std::string("config: malformed JSON: ") + e.what());
        }
        const std::string root = "config";
        only_keys(j, root, {"geometry", "architecture", "power", "p", "grid", "targets", "simultaneous", "pairs",
                            "solver", "element_gain"});

        array_geometry geometry = parse_geometry(field(j, root, "geometry"), root + ".geometry");
        const std::size_t G = j.contains("grid") ? count(j.at("grid"), root + ".grid", 2) : 512;
        spatial_grid grid(G);
        hybrid_architecture arch = parse_architecture(field(j, root, "architecture"), root + ".architecture", geometry.size());
        power_constraint power = j.contains("power") ? parse_power(j.at("power"), root + ".power") : power_constraint{};

        int p = 4;
        if (j.contains("p"))
        {
            p = int(count(j.at("p"), root + ".p", 2));
            if (p % 2 != 0)
                fail(root + ".p", "must be an even integer");
        }

        element_gain_fn gain;
        if (j.contains("element_gain"))
            gain = parse_element_gain(j.at("element_gain"), root + ".element_gain", geometry);

        const json &tj = field(j, root, "targets");
        if (!tj.is_array() || tj.empty())
            fail(root + ".targets", "expected a non-empty array");
        std::vector<beam_spec> specs;
        std::vector<target_pattern> targets;
        for (std::size_t i = 0; i < tj.size(); ++i)
        {
            const std::string tp = root + ".targets[" + std::to_string(i) + "]";
            only_keys(tj[i], tp, {"center", "width", "beta_db", "transition_halfwidth", "transition_cells"});
            beam_spec s;
            s.center = tj[i].contains("center") ? number(tj[i].at("center"), tp + ".center") : 0.0;
            s.width = number(field(tj[i], tp, "width"), tp + ".width");
            s.beta_db = tj[i].contains("beta_db") ? number(tj[i].at("beta_db"), tp + ".beta_db") : 0.0;
            if (tj[i].contains("transition_halfwidth") && tj[i].contains("transition_cells"))
                fail(tp, "give either transition_halfwidth or transition_cells, not both");
            if (tj[i].contains("transition_halfwidth"))
                s.transition_halfwidth = number(tj[i].at("transition_halfwidth"), tp + ".transition_halfwidth");
            if (tj[i].contains("transition_cells"))
                s.transition_halfwidth = number(tj[i].at("transition_cells"), tp + ".transition_cells") * grid.cell();
            targets.push_back(with_path(tp, [&]
                                        { return build_target(s, geometry.size(), grid, power, gain); }));
            specs.push_back(s);
        }

        bool simultaneous = false;
        if (j.contains("simultaneous"))
        {
            if (!j.at("simultaneous").is_boolean())
                fail(root + ".simultaneous", "expected true or false");
            simultaneous = j.at("simultaneous").get<bool>();
        }

        std::vector<std::pair<std::size_t, std::size_t>> pairs;
        if (j.contains("pairs"))
        {
            const json &pj = j.at("pairs");
            if (!pj.is_array())
                fail(root + ".pairs", "expected an array of [i, j]");
            for (std::size_t k = 0; k < pj.size(); ++k)
            {
                const std::string pp = root + ".pairs[" + std::to_string(k) + "]";
                if (!pj[k].is_array() || pj[k].size() != 2)
                    fail(pp, "expected [i, j]");
                const std::size_t a = count(pj[k][0], pp, 0), b = count(pj[k][1], pp, 0);
                if (a >= targets.size() || b >= targets.size() || a == b)
                    fail(pp, "indices must name two different targets");
                pairs.emplace_back(a, b);
            }
        }
        else
            for (std::size_t k = 0; k + 1 < targets.size(); k += 2)
                pairs.emplace_back(k, k + 1);

        solver_config solver = j.contains("solver") ? parse_solver(j.at("solver"), root + ".solver") : solver_config{};

        return synthesis_config{std::move(geometry), std::move(grid), std::move(arch), power, p, std::move(specs),
                                std::move(targets), simultaneous, std::move(pairs), solver};
    }

    synthesis_config load_config(const std::filesystem::path &path)
    {
        return parse_config(read_text(path));
    }

    std::size_t codebook::num_beams() const
    {
        std::size_t n = 0;
        for (const auto &e : entries)
            n += e.params.num_beams();
        return n;
    }

    std::vector<cvec> codebook::beams() const
    {
        std::vector<cvec> out;
        for (const auto &e : entries)
            for (auto &a : compose_all(architecture, e.params))
                out.push_back(std::move(a));
        return out;
    }

    std::string codebook_to_json(const codebook &book)
    {
        json j;
        j["format"] = "beamforge-codebook";
        j["version"] = 1;
        j["method"] = book.method;
        j["seed"] = book.seed;
        j["geometry"] = geometry_to_json(book.geometry);
        j["architecture"] = architecture_to_json(book.architecture);
        j["power"] = power_to_json(book.power);
        j["p"] = book.p;
        j["grid"] = book.grid_size;
        json entries = json::array();
        for (const auto &e : book.entries)
        {
            json je = params_to_json(book.architecture, e.params);
            je["objective"] = e.objective;
            entries.push_back(je);
        }
        j["entries"] = entries;
        return j.dump(1) + "\n";
    }

    codebook codebook_from_json(const std::string &json_text)
    {
        json j;
        try
        {
            j = json::parse(json_text);
        }
        catch (const json::parse_error &e)
        {
            throw invalid_argument(std::string("codebook: malformed JSON: ") + e.what());
        }
        const std::string root = "codebook";
        if (!j.is_object() || j.value("format", "") != "beamforge-codebook")
            fail(root, "not a beamforge codebook");

        array_geometry geometry = parse_geometry(field(j, root, "geometry"), root + ".geometry");
        hybrid_architecture arch = parse_architecture(field(j, root, "architecture"), root + ".architecture", geometry.size());
        codebook book{
            .method = j.contains("method") ? text(j.at("method"), root + ".method") : "optimizer",
            .seed = j.contains("seed") ? std::uint64_t(count(j.at("seed"), root + ".seed", 0)) : 0,
            .geometry = std::move(geometry),
            .architecture = arch,
            .power = j.contains("power") ? parse_power(j.at("power"), root + ".power") : power_constraint{},
            .p = j.contains("p") ? int(count(j.at("p"), root + ".p", 2)) : 4,
            .grid_size = j.contains("grid") ? count(j.at("grid"), root + ".grid", 2) : 512,
            .entries = {},
        };
        const json &entries = field(j, root, "entries");
        if (!entries.is_array())
            fail(root + ".entries", "expected an array");
        for (std::size_t i = 0; i < entries.size(); ++i)
        {
            const std::string ep = root + ".entries[" + std::to_string(i) + "]";
            codebook_entry e;
            e.params = params_from_json(entries[i], ep, book.architecture);
            e.objective = entries[i].contains("objective") ? number(entries[i].at("objective"), ep + ".objective") : 0.0;
            book.entries.push_back(std::move(e));
        }
        return book;
    }

    void write_codebook(const std::filesystem::path &path, const codebook &book)
    {
        write_text(path, codebook_to_json(book));
    }

    codebook read_codebook(const std::filesystem::path &path)
    {
        return codebook_from_json(read_text(path));
    }

    std::string result_to_json(const std::vector<synthesis_result> &results)
    {
        json out = json::array();
        for (const auto &r : results)
        {
            json jr;
            jr["objective"] = r.objective;
            jr["best_start"] = r.best_start;
            jr["feasibility"] = {{"kind", std::string(to_string(r.feasibility.kind))},
                                 {"budget", r.feasibility.budget},
                                 {"max_element_power", r.feasibility.max_element_power},
                                 {"total_power", r.feasibility.total_power},
                                 {"feasible", r.feasibility.feasible}};
            json starts = json::array();
            for (const auto &s : r.starts)
                starts.push_back({{"index", s.index},
                                  {"seed", s.seed},
                                  {"objective", s.objective},
                                  {"iterations", s.iterations},
                                  {"round_starts", s.round_starts},
                                  {"trace", s.trace}});
            jr["starts"] = starts;
            jr["warnings"] = r.warnings;
            out.push_back(jr);
        }
        return json{{"results", out}}.dump(1) + "\n";
    }

    pattern_samples make_pattern_samples(const array_geometry &geom, const spatial_grid &grid, std::span<const cd> pattern,
                                         bool dbr)
    {
        if (pattern.size() != grid.size())
            throw invalid_argument("pattern export: pattern and grid lengths differ");
        pattern_samples s;
        s.gain_db = gains_db(pattern);
        if (dbr)
        {
            const double peak = *std::max_element(s.gain_db.begin(), s.gain_db.end());
            for (auto &v : s.gain_db)
                v -= peak;
        }
        for (std::size_t g = 0; g < grid.size(); ++g)
        {
            const double coord = grid[g];
            const double angle = geom.is_ula() ? psi_to_angle(coord, geom.spacing_wl()) : coord;
            s.angle_deg.push_back(angle * 180.0 / pi);
            s.psi_rad.push_back(coord);
        }
        return s;
    }

    void export_plot_data(const pattern_samples &samples, const std::filesystem::path &path)
    {
        std::ostringstream os;
        os << "angle_deg,psi_rad,gain_db\n";
        for (std::size_t g = 0; g < samples.gain_db.size(); ++g)
            os << (std::isnan(samples.angle_deg[g]) ? std::string("nan") : exact(samples.angle_deg[g])) << ','
               << exact(samples.psi_rad[g]) << ',' << exact(samples.gain_db[g]) << '\n';
        write_text(path, os.str());
    }

    pattern_samples import_pattern(const std::filesystem::path &path)
    {
        std::istringstream is(read_text(path));
        std::string line;
        if (!std::getline(is, line) || line != "angle_deg,psi_rad,gain_db")
            throw invalid_argument(path.string() + ": expected header angle_deg,psi_rad,gain_db");
        pattern_samples s;
        std::size_t row = 1;
        while (std::getline(is, line))
        {
            ++row;
            if (line.empty())
                continue;
            std::istringstream ls(line);
            std::string cell[3];
            for (auto &c : cell)
                if (!std::getline(ls, c, ','))
                    throw invalid_argument(path.string() + ":" + std::to_string(row) + ": expected 3 columns");
            try
            {
                s.angle_deg.push_back(cell[0] == "nan" ? std::numeric_limits<double>::quiet_NaN() : std::stod(cell[0]));
                s.psi_rad.push_back(std::stod(cell[1]));
                s.gain_db.push_back(std::stod(cell[2]));
            }
            catch (const std::exception &)
            {
                throw invalid_argument(path.string() + ":" + std::to_string(row) + ": malformed number");
            }
        }
        return s;
    }

    void write_text(const std::filesystem::path &path, const std::string &content)
    {
        std::ofstream f(path, std::ios::binary | std::ios::trunc);
        if (!f)
            throw io_error("cannot open '" + path.string() + "' for writing");
        f << content;
        if (!f)
            throw io_error("failed writing '" + path.string() + "'");
    }

    std::string read_text(const std::filesystem::path &path)
    {
        std::ifstream f(path, std::ios::binary);
        if (!f)
            throw io_error("cannot open '" + path.string() + "'");
        std::ostringstream os;
        os << f.rdbuf();
        return os.str();
    }
}
