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
#include "beamforge/metrics.hpp"

#include "support.hpp"

#include <doctest.h>

using namespace beamforge;

namespace
{
    // Pattern with a given magnitude on pass samples and another elsewhere.
    cvec two_level(const target_pattern &t, double pass, double rest)
    {
        cvec A(t.size());
        for (std::size_t g = 0; g < t.size(); ++g)
            A[g] = t.labels[g] == region::pass ? pass : rest;
        return A;
    }
}

TEST_CASE("gain conversion clamps")
{
    const auto g = gains_db(cvec{cd(1, 0), cd(0, 10), cd(0, 0), cd(1e-9, 0)});
    CHECK(g[0] == 0.0);
    CHECK(g[1] == doctest::Approx(20.0));
    CHECK(g[2] == gain_floor_db);
    CHECK(g[3] == gain_floor_db);
}

TEST_CASE("average gain")
{
    const spatial_grid grid(512);
    const auto t = build_target({0.0, pi, 3.0, {}}, 64, grid);
    const auto ideal = gains_db(two_level(t, t.beta * t.d_max, 0.0));
    CHECK(average_gain(ideal, t) == doctest::Approx(18.07).epsilon(1e-3));
    CHECK(std::abs(average_gain(ideal, t) - 18.2) < 0.2);

    CHECK(average_gain(gains_db(two_level(t, 1.0, 0.3)), t) == doctest::Approx(0.0).epsilon(1e-15));

    std::mt19937_64 rng(107);
    const auto A = test::random_cvec(rng, 512);
    const auto g = gains_db(A);
    double s = 0.0, lin = 0.0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < 512; ++i)
        if (t.labels[i] == region::pass)
        {
            s += 20 * std::log10(std::abs(A[i]));
            lin += std::norm(A[i]);
            ++n;
        }
    CHECK(average_gain(g, t) == doctest::Approx(s / double(n)).epsilon(1e-12));
    CHECK(average_gain(g, t, gain_mean::linear) == doctest::Approx(10 * std::log10(lin / double(n))).epsilon(1e-12));
    CHECK(parse_gain_mean("linear") == gain_mean::linear);
    CHECK_THROWS_AS(parse_gain_mean("rms"), invalid_argument);
    CHECK_THROWS_AS(average_gain(std::vector<double>(10), t), invalid_argument);
}

TEST_CASE("ripple")
{
    const spatial_grid grid(256);
    const auto t = build_target({1.0, 1.5, 0.0, {}}, 16, grid);
    CHECK(max_ripple(gains_db(two_level(t, 3.0, 50.0)), t) == 0.0);

    cvec A = two_level(t, 1.0, 0.0);
    bool flip = false;
    for (std::size_t g = 0; g < A.size(); ++g)
        if (t.labels[g] == region::pass)
            A[g] = (flip = !flip) ? 2.0 : 1.0;
    CHECK(max_ripple(gains_db(A), t) == doctest::Approx(20 * std::log10(2.0)).epsilon(1e-12));

    // transition samples never count
    for (std::size_t g = 0; g < A.size(); ++g)
        if (t.labels[g] == region::transition)
            A[g] = 100.0;
    CHECK(max_ripple(gains_db(A), t) == doctest::Approx(6.0206).epsilon(1e-4));
}

TEST_CASE("sidelobe")
{
    const spatial_grid grid(256);
    const auto t = build_target({0.0, 1.0, 0.0, {}}, 16, grid);
    CHECK(max_sidelobe(gains_db(two_level(t, 1.0, 0.0)), t) == gain_floor_db);
    CHECK(max_sidelobe(gains_db(two_level(t, 4.0, 4.0)), t) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(max_sidelobe(gains_db(two_level(t, 10.0, 1.0)), t) == doctest::Approx(-20.0));

    const auto omni = build_target({0.0, two_pi, 0.0, {}}, 16, grid);
    CHECK_THROWS_AS(max_sidelobe(gains_db(two_level(omni, 1.0, 1.0)), omni), invalid_argument);
}

TEST_CASE("overlap")
{
    const spatial_grid grid(512);
    const auto ta = build_target({-pi / 4, pi / 2, 0.0, {}}, 64, grid);
    const auto tb = build_target({pi / 4, pi / 2, 0.0, {}}, 64, grid);
    const auto ga = gains_db(two_level(ta, 10.0, 0.0));
    const auto gb = gains_db(two_level(tb, 10.0, 0.0));

    CHECK(overlap(ga, ga, ta, ta) == doctest::Approx(100.0));
    CHECK(overlap(ga, gb, ta, tb) == 0.0);

    // B rises to within 3 dB of A on the last 16 passband samples of A
    auto gb2 = gb;
    std::size_t marked = 0;
    for (std::size_t g = 512; g-- > 0 && marked < 16;)
        if (ta.labels[g] == region::pass)
        {
            gb2[g] = ga[g] - 3.0;
            ++marked;
        }
    CHECK(overlap(ga, gb2, ta, tb) == doctest::Approx(100.0 * 16 / double(ta.count(region::pass))));

    // mutual noise floors and the shared stopband do not count
    auto quiet_a = ga, quiet_b = gb;
    for (std::size_t g = 0; g < 512; ++g)
        if (ta.labels[g] != region::pass && tb.labels[g] != region::pass)
            quiet_a[g] = quiet_b[g] = -30.0;
    CHECK(overlap(quiet_a, quiet_b, ta, tb) == 0.0);

    CHECK_THROWS_AS(overlap(ga, std::vector<double>(256), ta, tb), invalid_argument);
}

TEST_CASE("metric invariances")
{
    const auto geom = make_ula(32, 0.5);
    const spatial_grid grid(256);
    const auto ta = build_target({-0.5, 1.0, 1.0, {}}, 32, grid);
    const auto tb = build_target({0.5, 1.0, 1.0, {}}, 32, grid);
    std::mt19937_64 rng(109);
    const auto a = test::random_cvec(rng, 32);
    const auto b = test::random_cvec(rng, 32);
    const double c = 3.7;
    const cd rot = std::polar(c, 1.1);
    cvec a2 = a, b2 = b;
    for (auto &v : a2)
        v *= rot;
    for (auto &v : b2)
        v *= rot;

    const auto row = [&](const cvec &x, const cvec &y)
    {
        const std::vector<beam_entry> beams{{"a", gains_db(array_factor(geom, x, grid)), ta},
                                            {"b", gains_db(array_factor(geom, y, grid)), tb}};
        return report(beams, {{0, 1}});
    };
    const auto r1 = row(a, b), r2 = row(a2, b2);
    for (std::size_t i = 0; i < 2; ++i)
    {
        CHECK(r2[i].metrics.avg_gain_db == doctest::Approx(r1[i].metrics.avg_gain_db + 20 * std::log10(c)).epsilon(1e-12));
        CHECK(r2[i].metrics.max_ripple_db == doctest::Approx(r1[i].metrics.max_ripple_db).epsilon(1e-9));
        CHECK(r2[i].metrics.max_sidelobe_db == doctest::Approx(r1[i].metrics.max_sidelobe_db).epsilon(1e-9));
        CHECK(*r2[i].metrics.overlap_pct == doctest::Approx(*r1[i].metrics.overlap_pct));
        CHECK(r1[i].metrics.max_ripple_db >= 0.0);
        CHECK((*r1[i].metrics.overlap_pct >= 0.0 && *r1[i].metrics.overlap_pct <= 100.0));
    }
}

TEST_CASE("report rendering")
{
    const spatial_grid grid(128);
    const auto t = build_target({0.0, 1.0, 0.0, {}}, 8, grid);
    const auto single = report({{"only", gains_db(two_level(t, 2.0, 0.1)), t}}, {});
    REQUIRE(single.size() == 1);
    CHECK_FALSE(single[0].metrics.overlap_pct.has_value());
    const auto csv = render_csv(single);
    CHECK(csv.rfind("beam_id,avg_gain_db,max_ripple_db,overlap_pct,max_sidelobe_db\n", 0) == 0);
    CHECK(csv.find("only,") != std::string::npos);
    CHECK(csv.find(",,") != std::string::npos);
    CHECK(render_text(single).find("only") != std::string::npos);
    CHECK_THROWS_AS(report({{"x", gains_db(two_level(t, 1, 0)), t}}, {{0, 1}}), invalid_argument);
}
