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

#include "macovert/commands.hpp"

#include "macovert/config.hpp"
#include "macovert/optimizer.hpp"
#include "macovert/sweep.hpp"

#include <chrono>
#include <fstream>
#include <ostream>

namespace macovert
{

namespace
{

std::string_view to_string(Termination t)
{
    switch (t)
    {
    case Termination::Converged: return "converged";
    case Termination::Stalled: return "stalled on grid";
    case Termination::MaxIterations: return "iteration limit reached";
    case Termination::Exhaustive: return "exhaustive";
    case Termination::Fixed: return "fixed layout";
    }
    return "?";
}

void print_result(std::ostream &out, const Scenario &s, const SolveResult &r, std::string_view title)
{
    out << title << '\n';
    out << "  positions x* =";
    for (double x : r.layout.positions())
        out << ' ' << format_real(x);
    out << '\n';
    out << "  f0(x*)       = " << format_real(r.f0_value) << '\n';
    out << "  threshold    = " << format_real(feasibility_threshold(s.spec.n_antennas, s.rate, s.noise)) << '\n';
    if (r.feasible())
    {
        out << "  status       = FEASIBLE\n";
        out << "  P_a*         = " << format_real(*r.p_a) << '\n';
        out << "  xi*          = " << format_real(r.covertness->xi_star) << '\n';
    }
    else
    {
        out << "  status       = INFEASIBLE (ultra reliability cannot be met)\n";
        out << "  P_a*         = -\n";
        out << "  xi*          = INFEASIBLE\n";
    }
    out << "  iterations   = " << r.iterations << " (" << to_string(r.termination) << ")\n";
}

template <typename Fn>
double timed(Fn &&fn)
{
    const auto start = std::chrono::steady_clock::now();
    fn();
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

bool write_rows(const std::filesystem::path &path, const std::vector<SweepRow> &rows, std::ostream &err)
{
    std::ofstream file(path, std::ios::binary);
    if (!file)
    {
        err << "error: cannot write " << path.string() << '\n';
        return false;
    }
    write_csv(file, rows);
    file.flush();
    if (!file)
    {
        err << "error: failed writing " << path.string() << '\n';
        return false;
    }
    return true;
}

} // namespace

void Overrides::apply(Scenario &scenario) const
{
    if (seed)
        scenario.dpgd.seed = *seed;
    if (max_iterations)
        scenario.dpgd.max_iterations = *max_iterations;
    if (starts)
        scenario.dpgd.starts = *starts;
}

int run_solve(const std::filesystem::path &config, const Overrides &overrides,
              const std::optional<std::filesystem::path> &csv, std::ostream &out, std::ostream &err)
{
    Scenario scenario;
    try
    {
        scenario = load_scenario(config);
        overrides.apply(scenario);
        scenario.validate();
    }
    catch (const std::exception &e)
    {
        err << "config error: " << e.what() << '\n';
        return kExitConfigError;
    }

    std::optional<SolveResult> result;
    const double ms = timed([&] { result = dpgd_solve(scenario); });
    print_result(out, scenario, *result, "DPGD solution");

    if (csv)
    {
        const auto row = make_row(SweepAxis::ThetaW, scenario.theta_w, Method::MaDpgd, *result, scenario.noise, ms);
        if (!write_rows(*csv, {row}, err))
            return kExitConfigError;
    }
    return result->feasible() ? kExitFeasible : kExitInfeasible;
}

int run_sweep(const std::filesystem::path &plan_path, const std::filesystem::path &csv, const Overrides &overrides,
              std::ostream &out, std::ostream &err, unsigned workers)
{
    SweepPlan plan;
    try
    {
        plan = load_sweep_plan(plan_path);
        overrides.apply(plan.base);
        plan.validate();
    }
    catch (const std::exception &e)
    {
        err << "config error: " << e.what() << '\n';
        return kExitConfigError;
    }

    std::vector<SweepRow> rows;
    try
    {
        rows = run_sweep(plan, workers);
    }
    catch (const std::exception &e)
    {
        err << "error: " << e.what() << '\n';
        return kExitConfigError;
    }
    if (!write_rows(csv, rows, err))
        return kExitConfigError;
    out << "wrote " << rows.size() << " rows to " << csv.string() << '\n';
    return kExitFeasible;
}

int run_oracle(const std::filesystem::path &config, const std::filesystem::path &csv, bool compare,
               const Overrides &overrides, std::ostream &out, std::ostream &err)
{
    Scenario scenario;
    try
    {
        scenario = load_scenario(config);
        overrides.apply(scenario);
        scenario.validate();
        if (!scenario.spec.all_grids_finite())
            throw ConfigError("grid", "the oracle needs a finite grid for every antenna");
    }
    catch (const std::exception &e)
    {
        err << "config error: " << e.what() << '\n';
        return kExitConfigError;
    }

    std::optional<SolveResult> oracle;
    double ms = 0.0;
    try
    {
        ms = timed([&] { oracle = exhaustive_oracle(scenario); });
    }
    catch (const OracleBudgetExceeded &e)
    {
        err << "error: " << e.what() << '\n';
        return kExitOracleBudget;
    }
    print_result(out, scenario, *oracle, "Exhaustive optimum");

    std::vector<SweepRow> rows{
        make_row(SweepAxis::ThetaW, scenario.theta_w, Method::MaOracle, *oracle, scenario.noise, ms)};
    if (compare)
    {
        std::optional<SolveResult> dpgd;
        const double dpgd_ms = timed([&] { dpgd = dpgd_solve(scenario); });
        print_result(out, scenario, *dpgd, "DPGD solution");
        out << "f0 gap (DPGD - optimum) = " << format_real(dpgd->f0_value - oracle->f0_value) << '\n';
        rows.push_back(make_row(SweepAxis::ThetaW, scenario.theta_w, Method::MaDpgd, *dpgd, scenario.noise, dpgd_ms));
    }

    if (!write_rows(csv, rows, err))
        return kExitConfigError;
    return oracle->feasible() ? kExitFeasible : kExitInfeasible;
}

} // namespace macovert
