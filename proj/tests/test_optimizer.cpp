// SPDX-License-Identifier: Apache-2.0
//
// macovert: movable-antenna aided covert communication toolkit
// Copyright (C) 2026 The macovert authors
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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "macovert/optimizer.hpp"
#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <random>

using namespace macovert;

namespace
{

Scenario gridded(std::size_t n, double l0, GridSize k, double theta_w, double rate = 1.0, double rho_db = 3.0)
{
    Scenario s;
    s.spec = ArraySpec::uniform(n, l0, k);
    s.theta_w = theta_w;
    s.rate = rate;
    s.noise = NoiseModel::from_db(1.0, rho_db);
    return s;
}

// Every index vector in lexicographic order, scored through steering vectors.
struct Enumerated
{
    std::vector<double> positions;
    double f0;
};

std::vector<Enumerated> enumerate_layouts(const Scenario &s)
{
    std::vector<std::vector<double>> grids;
    for (std::size_t n = 0; n < s.spec.n_antennas; ++n)
        grids.push_back(build_grid(s.spec, n));
    std::vector<Enumerated> all;
    std::vector<std::size_t> idx(grids.size(), 0);
    while (true)
    {
        std::vector<double> x(grids.size());
        for (std::size_t n = 0; n < grids.size(); ++n)
            x[n] = grids[n][idx[n]];
        const AntennaLayout layout(s.spec, x);
        all.push_back({x, effective_gain_f0(layout, s.theta_b, s.theta_w, s.dpgd.convention)});
        std::size_t n = grids.size();
        while (n > 0 && ++idx[n - 1] == grids[n - 1].size())
            idx[--n] = 0;
        if (n == 0)
            return all;
    }
}

} // namespace

TEST_CASE("feasibility threshold and optimal power")
{
    const NoiseModel noise(1.0, 2.0);
    CHECK(feasibility_threshold(4, 1.0, noise) == 12.0);
    CHECK(feasibility_threshold(4, 1.0, NoiseModel(1.0, 1.0 + 1e-12)) < 1e-10);

    CHECK(optimal_power(4, 1.0, noise, 0.0) == 0.5);
    CHECK(optimal_power(4, 1.0, noise, 12.0) == 0.5);
    CHECK_FALSE(optimal_power(4, 1.0, noise, 16.0).has_value());
    for (double f0 : {0.0, 1.0, 5.5, 11.9})
        CHECK(optimal_power(4, 1.0, noise, f0) == 0.5);

    // every layout is feasible once the threshold reaches N^2
    const double rate = std::log2(1.0 + 0.75);
    CHECK(feasibility_threshold(4, rate, noise) == doctest::Approx(16.0));

    double prev = 0.0;
    for (double r = 0.1; r < 4.0; r += 0.1)
    {
        const double p = *optimal_power(4, r, noise, 0.0);
        CHECK(p > prev);
        prev = p;
    }
    prev = 0.0;
    for (double rho = 1.1; rho < 20.0; rho += 0.5)
    {
        const double p = *optimal_power(4, 1.0, NoiseModel(1.0, rho), 0.0);
        CHECK(p > prev);
        prev = p;
    }
    prev = std::numeric_limits<double>::infinity();
    for (std::size_t n = 1; n < 20; ++n)
    {
        const double p = *optimal_power(n, 1.0, noise, 0.0);
        CHECK(p < prev);
        prev = p;
    }
}

TEST_CASE("gradient of the leakage gain")
{
    CHECK(gradient_f0(std::vector<double>{0.7}, 2.3) == std::vector<double>{0.0});
    CHECK(gradient_f0(std::vector<double>{0.0, 0.4, 1.9}, 0.0) == std::vector<double>(3, 0.0));

    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> angle(0.0, kPi);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::size_t checked = 0;
    for (int trial = 0; trial < 1000; ++trial)
    {
        const std::size_t n = 1 + trial % 8;
        const ArraySpec spec = ArraySpec::uniform(n, 1.5 + 8.5 * unit(rng));
        const double theta_b = angle(rng), theta_w = angle(rng);
        const double slope = phase_slope(theta_b, theta_w, 1.0, AngleConvention::Difference);
        std::vector<double> x(n);
        for (std::size_t k = 0; k < n; ++k)
        {
            const Box box = compute_bounds(spec, k);
            x[k] = box.upper > box.lower ? box.lower + 1e-5 + (box.upper - box.lower - 2e-5) * unit(rng) : box.lower;
        }
        const auto grad = gradient_f0(x, slope);
        // |h_w^H h_b|^2 straight from steering vectors
        auto f = [&](std::span<const double> p) {
            const auto hb = steering_vector(p, theta_b, 1.0);
            const auto hw = steering_vector(p, theta_w, 1.0);
            std::complex<double> inner = 0.0;
            for (std::size_t k = 0; k < n; ++k)
                inner += std::conj(hw.entries[k]) * hb.entries[k];
            return std::norm(inner);
        };
        CHECK(f(x) == doctest::Approx(effective_gain_f0(AntennaLayout(spec, x), theta_b, theta_w,
                                                        AngleConvention::Difference)));
        const auto fd = oracle::central_difference(f, x, 1e-6);
        for (std::size_t k = 0; k < n; ++k)
        {
            CHECK(std::abs(grad[k] - fd[k]) / std::max(std::abs(grad[k]), 1.0) <= 1e-5);
            ++checked;
        }
    }
    CHECK(checked == 4500);
}

TEST_CASE("bounding and discretization")
{
    // N = 4, L0 = 2, d_min = 0.5: w = 0.375, boxes start at 0, 0.875, 1.75, 2.625
    const ArraySpec spec = ArraySpec::uniform(4, 2.0, 4);
    const std::vector<double> raw{-1.0, 0.9, 2.5, 2.7};
    const auto bounded = bound_op(raw, spec);
    CHECK(bounded == std::vector<double>{0.0, 0.9, 2.125, 2.7});
    CHECK_THROWS_AS(bound_op(std::vector<double>{0.0}, spec), std::invalid_argument);

    // N = 2, L0 = 13: antenna 0 box [0, 3] with grid {0, 1, 2, 3}, antenna 1 box [3.5, 6.5]
    const ArraySpec two = ArraySpec::uniform(2, 13.0, 4);
    REQUIRE(build_grid(two, 0) == std::vector<double>{0.0, 1.0, 2.0, 3.0});
    CHECK(discretize_op(std::vector<double>{1.3, 3.5}, two) == std::vector<double>{1.0, 3.5});
    CHECK(discretize_op(std::vector<double>{1.5, 5.0}, two) == std::vector<double>{1.0, 4.5});
    CHECK(discretize_op(std::vector<double>{1.5000001, 6.4}, two) == std::vector<double>{2.0, 6.5});
    CHECK(discretize_op(std::vector<double>{0.0, 6.5}, two) == std::vector<double>{0.0, 6.5});

    const ArraySpec smooth = ArraySpec::uniform(2, 13.0, kContinuous);
    CHECK(discretize_op(std::vector<double>{1.234, 4.0}, smooth) == std::vector<double>{1.234, 4.0});
    const ArraySpec mixed{.n_antennas = 2, .wavelength = 1.0, .d_min = 0.5, .l0 = 13.0, .grid_sizes = {4, kContinuous}};
    CHECK(discretize_op(std::vector<double>{2.6, 4.01}, mixed) == std::vector<double>{3.0, 4.01});
}

TEST_CASE("dpgd on degenerate boxes returns the fixed array")
{
    for (GridSize k : {GridSize(kContinuous), GridSize(8)})
    {
        const Scenario s = gridded(4, 1.0, k, 0.9);
        const auto result = dpgd_solve(s);
        CHECK(result.layout.positions() == fpa_layout(s.spec).positions());
        CHECK(result.iterations == 1);
        CHECK(result.termination == Termination::Converged);

        const auto fixed = solve_fpa(s);
        CHECK(fixed.f0_value == doctest::Approx(result.f0_value).epsilon(1e-14));
        CHECK(fixed.status == result.status);
        CHECK(achievable_covertness(fixed, s.noise) == achievable_covertness(result, s.noise));
    }
}

TEST_CASE("dpgd with the warden on the legitimate direction")
{
    // f0 = N^2 everywhere; rho = 2 gives 1 - 1/rho^2 = 0.75
    for (double rate : {0.5, 1.0})
    {
        Scenario s = gridded(3, 2.0, 8, 0.0, rate);
        s.noise = NoiseModel(1.0, 2.0);
        const auto result = dpgd_solve(s);
        CHECK(result.f0_value == doctest::Approx(9.0));
        CHECK(gradient_f0(result.layout.positions(), s.slope()) == std::vector<double>(3, 0.0));
        CHECK(result.feasible() == (beta_for_rate(rate) <= 0.75));
        CHECK(solve_fpa(s).feasible() == result.feasible());
        if (result.feasible())
            CHECK(result.covertness->xi_star > 0.0);
    }
}

TEST_CASE("dpgd iterates stay in their boxes and on their grids")
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> angle(0.05, kPi - 0.05);
    for (int trial = 0; trial < 40; ++trial)
    {
        const GridSize k = trial % 4 == 0 ? GridSize(kContinuous) : GridSize(2 + trial % 30);
        Scenario s = gridded(2 + trial % 6, 1.0 + trial % 9, k, angle(rng));
        DpgdSettings settings;
        settings.starts = 1 + trial % 3;
        settings.seed = std::uint64_t(trial);
        settings.max_iterations = 20000;

        const auto boxes = compute_all_bounds(s.spec);
        std::vector<std::vector<double>> grids;
        if (k)
            for (std::size_t n = 0; n < s.spec.n_antennas; ++n)
                grids.push_back(build_grid(s.spec, n));
        std::size_t outside = 0, off_grid = 0, seen = 0;
        const auto result = dpgd_solve(s, settings, [&](std::size_t, std::size_t, std::span<const double> x) {
            ++seen;
            for (std::size_t n = 0; n < x.size(); ++n)
            {
                if (x[n] < boxes[n].lower || x[n] > boxes[n].upper)
                    ++outside;
                if (k && std::find(grids[n].begin(), grids[n].end(), x[n]) == grids[n].end())
                    ++off_grid;
            }
        });
        CHECK(seen > 0);
        CHECK(outside == 0);
        CHECK(off_grid == 0);

        REQUIRE(result.trace.size() >= 2);
        if (result.converged)
        {
            const double last = result.trace.back().f0, before = result.trace[result.trace.size() - 2].f0;
            CHECK(std::abs(last - before) <= settings.tolerance);
        }
        CHECK(result.f0_value == doctest::Approx(effective_gain_f0(result.layout, s.theta_b, s.theta_w)));

        const double threshold = feasibility_threshold(s.spec.n_antennas, s.rate, s.noise);
        CHECK(result.feasible() == (result.f0_value <= threshold));
        if (result.feasible())
        {
            const double n = double(s.spec.n_antennas);
            CHECK(*result.p_a * n == doctest::Approx(s.noise.rho() * s.noise.sigma0_sq() * s.beta()));
            CHECK(outage_probability(*result.p_a * n, s.rate, s.noise) == 0.0);
            CHECK(result.covertness->kappa1 <= kappa0(s.noise) * (1 + 1e-12));
            CHECK(result.beamformer->weights.size() == s.spec.n_antennas);
        }
        else
        {
            CHECK_FALSE(result.p_a.has_value());
            CHECK_FALSE(achievable_covertness(result, s.noise).has_value());
        }
    }
}

TEST_CASE("dpgd reports the iteration cap")
{
    Scenario s = gridded(5, 10.0, kContinuous, 1.1);
    DpgdSettings settings;
    settings.max_iterations = 3;
    settings.tolerance = 1e-14;
    const auto result = dpgd_solve(s, settings);
    CHECK_FALSE(result.converged);
    CHECK(result.termination == Termination::MaxIterations);
    CHECK(result.iterations == 3);
    double lowest = std::numeric_limits<double>::infinity();
    for (const auto &p : result.trace)
        lowest = std::min(lowest, p.f0);
    CHECK(result.f0_value == lowest);
}

TEST_CASE("dpgd multi-start is deterministic and never worse than the fixed start")
{
    for (double theta_w : {0.2, 0.7, 1.3, 2.2})
    {
        Scenario s = gridded(3, 2.0, 8, theta_w);
        DpgdSettings multi;
        multi.starts = 8;
        multi.seed = 11;
        const auto single = dpgd_solve(s);
        const auto a = dpgd_solve(s, multi);
        const auto b = dpgd_solve(s, multi);
        CHECK(a.f0_value <= single.f0_value);
        CHECK(a.layout.positions() == b.layout.positions());
        CHECK(a.trace.size() == b.trace.size());
    }
}

TEST_CASE("exhaustive oracle on small grids")
{
    Scenario single = gridded(3, 2.0, 1, 0.4);
    const auto one = exhaustive_oracle(single);
    CHECK(one.iterations == 1);
    const auto boxes = compute_all_bounds(single.spec);
    for (std::size_t n = 0; n < 3; ++n)
        CHECK(one.layout[n] == boxes[n].lower);

    // N = 2, L0 = 2: grids {0, 0.25} and {0.75, 1}; f0 = 2 + 2 cos(A (x1 - x0)), A = 2 pi (1 - cos theta_w)
    Scenario pair = gridded(2, 2.0, 2, kPi / 3.0);
    REQUIRE(build_grid(pair.spec, 0) == std::vector<double>{0.0, 0.25});
    REQUIRE(build_grid(pair.spec, 1) == std::vector<double>{0.75, 1.0});
    auto hand = exhaustive_oracle(pair);
    CHECK(hand.layout.positions() == std::vector<double>{0.0, 1.0}); // A = pi, spacing 1
    CHECK(hand.f0_value == doctest::Approx(0.0).scale(1.0));
    CHECK(hand.iterations == 4);

    pair.theta_w = kPi / 2.0; // A = 2 pi, spacing 0.5
    hand = exhaustive_oracle(pair);
    CHECK(hand.layout.positions() == std::vector<double>{0.25, 0.75});

    pair.theta_w = 0.0; // every layout gives 4; lexicographically first wins
    hand = exhaustive_oracle(pair);
    CHECK(hand.layout.positions() == std::vector<double>{0.0, 0.75});
    CHECK(hand.f0_value == doctest::Approx(4.0));
}

TEST_CASE("exhaustive oracle errors")
{
    CHECK_THROWS_AS(exhaustive_oracle(gridded(3, 2.0, kContinuous, 0.4)), std::invalid_argument);
    Scenario s = gridded(3, 2.0, 300, 0.4);
    CHECK_THROWS_AS(exhaustive_oracle(s), OracleBudgetExceeded);
    CHECK_THROWS_AS(exhaustive_oracle(gridded(3, 2.0, 10, 0.4), 999, 1), OracleBudgetExceeded);
    CHECK_NOTHROW(exhaustive_oracle(gridded(3, 2.0, 10, 0.4), 1000, 1));
}

TEST_CASE("exhaustive oracle matches brute force and bounds dpgd")
{
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> angle(0.0, kPi);
    for (int trial = 0; trial < 40; ++trial)
    {
        Scenario s = gridded(2 + trial % 3, 1.5 + trial % 4, 2 + trial % 7, angle(rng), 0.5 + 0.1 * (trial % 10));
        if (trial % 5 == 0)
            s.dpgd.convention = AngleConvention::Sum;
        const auto all = enumerate_layouts(s);
        const auto oracle = exhaustive_oracle(s);
        CHECK(oracle.iterations == all.size());

        double brute = std::numeric_limits<double>::infinity();
        for (const auto &e : all)
            brute = std::min(brute, e.f0);
        CHECK(oracle.f0_value == doctest::Approx(brute).epsilon(1e-12).scale(1.0));

        const auto dpgd = dpgd_solve(s);
        CHECK(oracle.f0_value <= dpgd.f0_value + 1e-12);

        // maximising covertness over feasible layouts picks an f0 minimiser
        const NoiseModel &noise = s.noise;
        const double n = double(s.spec.n_antennas);
        const double threshold = feasibility_threshold(s.spec.n_antennas, s.rate, noise);
        const double power = s.beta() * noise.rho() * noise.sigma0_sq() / n;
        double best_xi = -1.0, f0_at_best = 0.0;
        for (const auto &e : all)
        {
            if (e.f0 > threshold)
                continue;
            const double xi = xi_star(power * e.f0 / n, noise).xi_star;
            if (xi > best_xi)
            {
                best_xi = xi;
                f0_at_best = e.f0;
            }
        }
        const auto achieved = achievable_covertness(oracle, noise);
        CHECK(achieved.has_value() == (best_xi >= 0.0));
        if (achieved)
        {
            CHECK(*achieved == doctest::Approx(best_xi).epsilon(1e-9).scale(1.0));
            CHECK(f0_at_best == doctest::Approx(brute).epsilon(1e-12).scale(1.0));
        }
    }
}

TEST_CASE("exhaustive oracle is independent of the worker count")
{
    for (double theta_w : {0.0, 0.35, 1.0, 2.9})
    {
        const Scenario s = gridded(3, 3.0, 41, theta_w);
        const auto serial = exhaustive_oracle(s, 1);
        const auto parallel = exhaustive_oracle(s, 4);
        CHECK(serial.iterations == 41 * 41 * 41);
        CHECK(serial.layout.positions() == parallel.layout.positions());
        CHECK(serial.f0_value == parallel.f0_value);
    }
}

TEST_CASE("achievable covertness")
{
    const Scenario s = gridded(4, 2.0, kContinuous, 0.5, 1.0, 3.0);
    const AntennaLayout layout = fpa_layout(s.spec);

    CHECK(achievable_covertness(finalize_layout(s, layout, 0.0), s.noise) == 1.0);

    const double threshold = feasibility_threshold(4, s.rate, s.noise);
    const auto edge = finalize_layout(s, layout, threshold);
    REQUIRE(edge.feasible());
    const double kappa1 = *edge.p_a * threshold / 4.0;
    CHECK(kappa1 == doctest::Approx(kappa0(s.noise)));
    const auto grid = oracle::minimize_xi_on_grid(kappa1, s.noise, 100001);
    CHECK(std::abs(*achievable_covertness(edge, s.noise) - grid.value) <= 1e-3);

    const double mid = 0.3 * threshold;
    const auto inside = finalize_layout(s, layout, mid);
    const auto mid_grid = oracle::minimize_xi_on_grid(*inside.p_a * mid / 4.0, s.noise, 100001);
    CHECK(std::abs(*achievable_covertness(inside, s.noise) - mid_grid.value) <= 1e-3);

    const auto over = finalize_layout(s, layout, threshold * 1.01);
    CHECK_FALSE(over.feasible());
    CHECK_FALSE(achievable_covertness(over, s.noise).has_value());
}
