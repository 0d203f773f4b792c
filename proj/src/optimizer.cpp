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

#include "macovert/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <thread>

namespace macovert
{

double feasibility_threshold(std::size_t n_antennas, double rate, const NoiseModel &noise)
{
    const double n = double(n_antennas);
    const double rho = noise.rho();
    return (1.0 - 1.0 / (rho * rho)) * n * n / beta_for_rate(rate);
}

std::optional<double> optimal_power(std::size_t n_antennas, double rate, const NoiseModel &noise, double f0)
{
    if (f0 > feasibility_threshold(n_antennas, rate, noise))
        return std::nullopt;
    return beta_for_rate(rate) * noise.rho() * noise.sigma0_sq() / double(n_antennas);
}

std::vector<double> gradient_f0(std::span<const double> positions, double slope)
{
    double t1 = 0.0, t2 = 0.0;
    for (double x : positions)
    {
        t1 += std::sin(slope * x);
        t2 += std::cos(slope * x);
    }

    std::vector<double> grad(positions.size());
    for (std::size_t n = 0; n < positions.size(); ++n)
    {
        const double phase = slope * positions[n];
        grad[n] = 2.0 * slope * (t1 * std::cos(phase) - t2 * std::sin(phase));
    }
    return grad;
}

namespace
{

void check_dimension(std::span<const double> candidate, const ArraySpec &spec)
{
    if (candidate.size() != spec.n_antennas)
        throw std::invalid_argument("expected " + std::to_string(spec.n_antennas) + " coordinates, got " +
                                    std::to_string(candidate.size()));
}

double snap(double x, const std::vector<double> &grid)
{
    // first point not below x; its left neighbour wins ties
    auto it = std::lower_bound(grid.begin(), grid.end(), x);
    if (it == grid.begin())
        return grid.front();
    if (it == grid.end())
        return grid.back();
    const double right = *it;
    const double left = *(it - 1);
    return (right - x < x - left) ? right : left;
}

// Boxes and grids of one spec, built once per solve.
struct Feasible
{
    std::vector<Box> boxes;
    std::vector<std::vector<double>> grids; // empty for continuous antennas

    explicit Feasible(const ArraySpec &spec) : boxes(compute_all_bounds(spec)), grids(spec.n_antennas)
    {
        for (std::size_t n = 0; n < spec.n_antennas; ++n)
            if (spec.grid_sizes[n])
                grids[n] = build_grid(boxes[n], *spec.grid_sizes[n]);
    }

    void bound(std::vector<double> &x) const
    {
        for (std::size_t n = 0; n < x.size(); ++n)
            x[n] = std::max(std::min(x[n], boxes[n].upper), boxes[n].lower);
    }

    void discretize(std::vector<double> &x) const
    {
        for (std::size_t n = 0; n < x.size(); ++n)
            if (!grids[n].empty())
                x[n] = snap(x[n], grids[n]);
    }
};

struct SearchRun
{
    std::vector<double> positions;
    double f0 = 0.0;
    std::vector<TracePoint> trace;
    std::size_t iterations = 0;
    Termination termination = Termination::Converged;
};

SearchRun descend(std::vector<double> x, const Feasible &feasible, double slope, const DpgdSettings &settings,
                  const std::function<void(std::size_t, std::span<const double>)> &observe)
{
    SearchRun run;
    double f = leakage_gain(x, slope);
    run.trace.push_back({0, f});
    if (observe)
        observe(0, x);

    std::vector<double> best = x;
    double best_f = f;

    for (std::size_t t = 1; t <= settings.max_iterations; ++t)
    {
        const auto grad = gradient_f0(x, slope);
        std::vector<double> next(x.size());
        for (std::size_t n = 0; n < x.size(); ++n)
            next[n] = x[n] - settings.step_size * grad[n];
        feasible.bound(next);
        const bool candidate_moves = next != x;
        feasible.discretize(next);

        const double f_next = leakage_gain(next, slope);
        run.trace.push_back({t, f_next});
        run.iterations = t;

        const double change = std::abs(f_next - f);
        const bool moved = next != x;
        x = std::move(next);
        f = f_next;
        if (observe)
            observe(t, x);
        if (f < best_f)
        {
            best = x;
            best_f = f;
        }

        if (change <= settings.tolerance)
        {
            run.termination = (!moved && candidate_moves) ? Termination::Stalled : Termination::Converged;
            run.positions = std::move(x);
            run.f0 = f;
            return run;
        }
    }

    run.termination = Termination::MaxIterations;
    run.positions = std::move(best);
    run.f0 = best_f;
    return run;
}

std::vector<double> random_start(const Feasible &feasible, std::mt19937_64 &rng)
{
    std::vector<double> x(feasible.boxes.size());
    for (std::size_t n = 0; n < x.size(); ++n)
    {
        std::uniform_real_distribution<double> pick(feasible.boxes[n].lower, feasible.boxes[n].upper);
        x[n] = feasible.boxes[n].upper > feasible.boxes[n].lower ? pick(rng) : feasible.boxes[n].lower;
    }
    feasible.discretize(x);
    return x;
}

} // namespace

std::vector<double> bound_op(std::span<const double> candidate, const ArraySpec &spec)
{
    check_dimension(candidate, spec);
    std::vector<double> x(candidate.begin(), candidate.end());
    for (std::size_t n = 0; n < x.size(); ++n)
    {
        const Box box = compute_bounds(spec, n);
        x[n] = std::max(std::min(x[n], box.upper), box.lower);
    }
    return x;
}

std::vector<double> discretize_op(std::span<const double> candidate, const ArraySpec &spec)
{
    check_dimension(candidate, spec);
    std::vector<double> x(candidate.begin(), candidate.end());
    for (std::size_t n = 0; n < x.size(); ++n)
        if (spec.grid_sizes[n])
            x[n] = snap(x[n], build_grid(spec, n));
    return x;
}

SolveResult finalize_layout(const Scenario &scenario, AntennaLayout layout, double f0)
{
    const std::size_t n_antennas = layout.size();
    SolveResult result{.layout = std::move(layout),
                       .f0_value = f0,
                       .status = SolveStatus::UltraReliabilityInfeasible,
                       .p_a = std::nullopt,
                       .beamformer = std::nullopt,
                       .covertness = std::nullopt,
                       .trace = {},
                       .iterations = 0,
                       .termination = Termination::Fixed,
                       .converged = true};

    const auto power = optimal_power(n_antennas, scenario.rate, scenario.noise, f0);
    if (!power)
    {
        result.status = SolveStatus::UltraReliabilityInfeasible;
        return result;
    }

    result.status = SolveStatus::Feasible;
    result.p_a = *power;

    MrtBeamformer w;
    w.theta_b = scenario.theta_b;
    const auto h_ab = steering_vector(result.layout, scenario.theta_b);
    const double norm = std::sqrt(h_ab.squared_norm());
    for (const auto &h : h_ab.entries)
        w.weights.push_back(h / norm);
    result.beamformer = std::move(w);

    const auto budget = LinkBudget::mrt(*power, n_antennas, f0, scenario.rate);
    result.covertness = xi_star(budget, scenario.noise);
    return result;
}

SolveResult dpgd_solve(const Scenario &scenario)
{
    return dpgd_solve(scenario, scenario.dpgd);
}

SolveResult dpgd_solve(const Scenario &scenario, const DpgdSettings &settings)
{
    return dpgd_solve(scenario, settings, {});
}

SolveResult dpgd_solve(const Scenario &scenario, const DpgdSettings &settings, const IterateObserver &observer)
{
    scenario.validate();
    settings.validate();

    const Feasible feasible(scenario.spec);
    const double slope = phase_slope(scenario.theta_b, scenario.theta_w, scenario.spec.wavelength,
                                     settings.convention);

    std::vector<double> x0(feasible.boxes.size());
    for (std::size_t n = 0; n < x0.size(); ++n)
        x0[n] = feasible.boxes[n].lower;
    auto observe_start = [&](std::size_t start) -> std::function<void(std::size_t, std::span<const double>)> {
        if (!observer)
            return {};
        return [&observer, start](std::size_t t, std::span<const double> x) { observer(start, t, x); };
    };

    SearchRun best = descend(std::move(x0), feasible, slope, settings, observe_start(0));

    std::mt19937_64 rng(settings.seed);
    for (std::size_t s = 1; s < settings.starts; ++s)
    {
        SearchRun run = descend(random_start(feasible, rng), feasible, slope, settings, observe_start(s));
        if (run.f0 < best.f0)
            best = std::move(run);
    }

    SolveResult result =
        finalize_layout(scenario, AntennaLayout(scenario.spec, std::move(best.positions)), best.f0);
    result.trace = std::move(best.trace);
    result.iterations = best.iterations;
    result.termination = best.termination;
    result.converged = best.termination != Termination::MaxIterations;
    return result;
}

SolveResult exhaustive_oracle(const Scenario &scenario, unsigned workers)
{
    return exhaustive_oracle(scenario, scenario.oracle_budget, workers);
}

SolveResult exhaustive_oracle(const Scenario &scenario, std::uint64_t budget, unsigned workers)
{
    scenario.validate();
    const ArraySpec &spec = scenario.spec;
    if (!spec.all_grids_finite())
        throw std::invalid_argument("exhaustive_oracle: every antenna needs a finite grid");

    std::uint64_t total = 1;
    for (const auto &k : spec.grid_sizes)
    {
        if (*k > budget / total)
            throw OracleBudgetExceeded("exhaustive_oracle: grid product exceeds budget of " + std::to_string(budget));
        total *= *k;
    }

    const Feasible feasible(spec);
    const double slope = scenario.slope();
    const std::size_t n_antennas = spec.n_antennas;

    struct Best
    {
        double f0 = std::numeric_limits<double>::infinity();
        std::uint64_t index = 0;
    };

    // Linear index with antenna 0 as the most significant digit, so linear
    // order equals lexicographic order of index vectors.
    auto scan = [&](std::uint64_t begin, std::uint64_t end) {
        Best best;
        std::vector<double> x(n_antennas);
        for (std::uint64_t idx = begin; idx < end; ++idx)
        {
            std::uint64_t rest = idx;
            for (std::size_t n = n_antennas; n-- > 0;)
            {
                const auto &grid = feasible.grids[n];
                x[n] = grid[rest % grid.size()];
                rest /= grid.size();
            }
            const double f = leakage_gain(x, slope);
            if (f < best.f0)
                best = {f, idx};
        }
        return best;
    };

    if (workers == 0)
        workers = std::max(1u, std::thread::hardware_concurrency());
    if (total < (std::uint64_t(1) << 16))
        workers = 1;
    workers = unsigned(std::min<std::uint64_t>(workers, total));

    std::vector<Best> partial(workers);
    {
        std::vector<std::jthread> pool;
        const std::uint64_t chunk = (total + workers - 1) / workers;
        for (unsigned w = 0; w < workers; ++w)
        {
            const std::uint64_t begin = std::min(total, w * chunk);
            const std::uint64_t end = std::min(total, begin + chunk);
            pool.emplace_back([&, w, begin, end] { partial[w] = scan(begin, end); });
        }
    }

    Best best;
    for (const auto &p : partial)
        if (p.f0 < best.f0 || (p.f0 == best.f0 && p.index < best.index))
            best = p;

    std::vector<double> x(n_antennas);
    std::uint64_t rest = best.index;
    for (std::size_t n = n_antennas; n-- > 0;)
    {
        const auto &grid = feasible.grids[n];
        x[n] = grid[rest % grid.size()];
        rest /= grid.size();
    }

    SolveResult result = finalize_layout(scenario, AntennaLayout(spec, std::move(x)), best.f0);
    result.trace = {{0, best.f0}};
    result.iterations = std::size_t(total);
    result.termination = Termination::Exhaustive;
    return result;
}

SolveResult solve_fpa(const Scenario &scenario)
{
    scenario.validate();
    AntennaLayout layout = fpa_layout(scenario.spec);
    const double f0 = leakage_gain(layout.positions(), scenario.slope());
    SolveResult result = finalize_layout(scenario, std::move(layout), f0);
    result.trace = {{0, f0}};
    result.termination = Termination::Fixed;
    return result;
}

std::optional<double> achievable_covertness(const SolveResult &result, const NoiseModel &noise)
{
    if (!result.feasible() || !result.p_a)
        return std::nullopt;
    const double kappa1 = *result.p_a * result.f0_value / double(result.layout.size());
    return xi_star(kappa1, noise).xi_star;
}

} // namespace macovert
