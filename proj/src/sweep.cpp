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

#include "macovert/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <thread>

namespace macovert
{

namespace
{

std::string lower(std::string_view s)
{
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return char(std::tolower(c)); });
    return out;
}

std::string strip(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return std::string(s);
}

std::vector<std::string> split(std::string_view s, char sep)
{
    std::vector<std::string> out;
    while (true)
    {
        const auto pos = s.find(sep);
        out.push_back(strip(s.substr(0, pos)));
        if (pos == std::string_view::npos)
            return out;
        s.remove_prefix(pos + 1);
    }
}

double parse_axis_value(const std::string &token, SweepAxis axis)
{
    const std::string t = lower(token);
    if (axis == SweepAxis::K && (t == "continuous" || t == "inf"))
        return std::numeric_limits<double>::infinity();
    return parse_real(token, "values");
}

std::vector<double> parse_values(const std::string &text, SweepAxis axis)
{
    const std::string t = lower(strip(text));
    for (const std::string fn : {"open_linspace", "linspace"})
    {
        if (t.rfind(fn + "(", 0) != 0)
            continue;
        if (t.back() != ')')
            throw ConfigError("values", "unterminated " + fn + "(...)");
        const auto args = split(std::string_view(t).substr(fn.size() + 1, t.size() - fn.size() - 2), ',');
        if (args.size() != 3)
            throw ConfigError("values", fn + " takes (start, stop, count)");
        const double a = parse_real(args[0], "values");
        const double b = parse_real(args[1], "values");
        const std::size_t n = parse_count(args[2], "values");
        if (n == 0)
            throw ConfigError("values", "count must be positive");
        return fn == "linspace" ? linspace(a, b, n) : open_linspace(a, b, n);
    }

    std::vector<double> values;
    for (const auto &item : split(text, ','))
        values.push_back(parse_axis_value(item, axis));
    return values;
}

bool is_count(double v)
{
    return std::isfinite(v) && v >= 1.0 && v == std::floor(v) && v < 1e9;
}

} // namespace

std::string_view to_string(SweepAxis axis)
{
    switch (axis)
    {
    case SweepAxis::ThetaW: return "theta_w";
    case SweepAxis::N: return "N";
    case SweepAxis::R: return "R";
    case SweepAxis::RhoDb: return "rho_db";
    case SweepAxis::L0: return "L0";
    case SweepAxis::K: return "K";
    }
    return "?";
}

std::string_view to_string(Method method)
{
    switch (method)
    {
    case Method::MaDpgd: return "MA_DPGD";
    case Method::MaOracle: return "MA_ORACLE";
    case Method::Fpa: return "FPA";
    }
    return "?";
}

SweepAxis parse_axis(std::string_view text, const std::string &field)
{
    const std::string t = lower(strip(text));
    for (SweepAxis a : {SweepAxis::ThetaW, SweepAxis::N, SweepAxis::R, SweepAxis::RhoDb, SweepAxis::L0, SweepAxis::K})
        if (t == lower(to_string(a)))
            return a;
    throw ConfigError(field, "unknown axis '" + strip(text) + "'");
}

Method parse_method(std::string_view text, const std::string &field)
{
    const std::string t = lower(strip(text));
    for (Method m : {Method::MaDpgd, Method::MaOracle, Method::Fpa})
        if (t == lower(to_string(m)))
            return m;
    throw ConfigError(field, "unknown method '" + strip(text) + "'");
}

std::vector<double> linspace(double a, double b, std::size_t n)
{
    if (n == 1)
        return {a};
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i)
        v[i] = a + (b - a) * double(i) / double(n - 1);
    v.back() = b;
    return v;
}

std::vector<double> open_linspace(double a, double b, std::size_t n)
{
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i)
        v[i] = a + (b - a) * double(i + 1) / double(n + 1);
    return v;
}

void SweepPlan::validate() const
{
    if (values.empty())
        throw ConfigError("values", "at least one value is required");
    if (methods.empty())
        throw ConfigError("methods", "at least one method is required");

    const bool increasing = values.size() < 2 || values[1] > values[0];
    for (std::size_t i = 1; i < values.size(); ++i)
        if (increasing ? !(values[i] > values[i - 1]) : !(values[i] < values[i - 1]))
            throw ConfigError("values", "values must be strictly monotone");

    for (double v : values)
    {
        if (axis == SweepAxis::N && !is_count(v))
            throw ConfigError("values", "N values must be positive integers");
        if (axis == SweepAxis::K && !(std::isinf(v) && v > 0) && !is_count(v))
            throw ConfigError("values", "K values must be positive integers or 'continuous'");
        if (axis != SweepAxis::K && !std::isfinite(v))
            throw ConfigError("values", "values must be finite");
        // surfaces range problems (e.g. l0 < 1) while parsing
        apply_axis(base, axis, v);
    }
}

SweepPlan parse_sweep_plan(std::istream &in)
{
    KeyValueFile keys = KeyValueFile::parse(in);
    SweepPlan plan;

    const auto axis = keys.take("axis");
    if (!axis)
        throw ConfigError("axis", "missing required key");
    plan.axis = parse_axis(*axis, "axis");

    const auto values = keys.take("values");
    if (!values)
        throw ConfigError("values", "missing required key");
    plan.values = parse_values(*values, plan.axis);

    if (const auto methods = keys.take("methods"))
    {
        plan.methods.clear();
        for (const auto &m : split(*methods, ','))
            plan.methods.push_back(parse_method(m, "methods"));
    }

    plan.base = scenario_from_keys(keys);
    keys.expect_consumed();
    plan.validate();
    return plan;
}

SweepPlan load_sweep_plan(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("", "cannot open " + path.string());
    return parse_sweep_plan(in);
}

Scenario apply_axis(const Scenario &base, SweepAxis axis, double value)
{
    Scenario s = base;
    switch (axis)
    {
    case SweepAxis::ThetaW:
        s.theta_w = value;
        break;
    case SweepAxis::N: {
        const auto &g = base.spec.grid_sizes;
        if (std::adjacent_find(g.begin(), g.end(), std::not_equal_to<>()) != g.end())
            throw ConfigError("grid", "an N sweep needs the same grid for every antenna");
        s.spec.n_antennas = std::size_t(value);
        s.spec.grid_sizes.assign(s.spec.n_antennas, g.empty() ? kContinuous : g.front());
        break;
    }
    case SweepAxis::R:
        if (!(value > 0.0))
            throw ConfigError("values", "rate must be positive");
        s.rate = value;
        break;
    case SweepAxis::RhoDb:
        if (!(value > 0.0))
            throw ConfigError("values", "rho_db must be positive");
        s.noise = NoiseModel::from_db(base.noise.sigma0_sq(), value);
        break;
    case SweepAxis::L0:
        if (!(value >= 1.0))
            throw ConfigError("values", "l0 must be >= 1");
        s.spec.l0 = value;
        break;
    case SweepAxis::K:
        s.spec.grid_sizes.assign(s.spec.n_antennas, std::isinf(value) ? kContinuous : GridSize(std::size_t(value)));
        break;
    }
    return s;
}

SweepRow make_row(SweepAxis axis, double axis_value, Method method, const SolveResult &result,
                  const NoiseModel &noise, double wall_time_ms)
{
    SweepRow row;
    row.axis_name = std::string(to_string(axis));
    row.axis_value = axis_value;
    row.method = method;
    row.status = std::string(result.feasible() ? kStatusFeasible : kStatusInfeasible);
    row.f0 = result.f0_value;
    row.p_a = result.p_a;
    row.xi_star = achievable_covertness(result, noise);
    row.iterations = result.iterations;
    row.wall_time_ms = wall_time_ms;
    return row;
}

SweepRow evaluate_point(const Scenario &scenario, SweepAxis axis, double axis_value, Method method)
{
    const auto start = std::chrono::steady_clock::now();
    auto elapsed = [&] {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    };

    switch (method)
    {
    case Method::MaDpgd: {
        const auto r = dpgd_solve(scenario);
        return make_row(axis, axis_value, method, r, scenario.noise, elapsed());
    }
    case Method::Fpa: {
        const auto r = solve_fpa(scenario);
        return make_row(axis, axis_value, method, r, scenario.noise, elapsed());
    }
    case Method::MaOracle:
        try
        {
            // sweep points already run in parallel
            const auto r = exhaustive_oracle(scenario, 1);
            return make_row(axis, axis_value, method, r, scenario.noise, elapsed());
        }
        catch (const OracleBudgetExceeded &)
        {
        }
        catch (const std::invalid_argument &)
        {
            if (scenario.spec.all_grids_finite())
                throw;
        }
        SweepRow row;
        row.axis_name = std::string(to_string(axis));
        row.axis_value = axis_value;
        row.method = method;
        row.status = std::string(kStatusOracleSkipped);
        row.wall_time_ms = elapsed();
        return row;
    }
    return {};
}

std::vector<SweepRow> run_sweep(const SweepPlan &plan, unsigned workers)
{
    plan.validate();

    struct Task
    {
        double value;
        Method method;
    };
    std::vector<Task> tasks;
    for (double v : plan.values)
        for (Method m : plan.methods)
            tasks.push_back({v, m});

    std::vector<SweepRow> rows(tasks.size());
    std::vector<std::exception_ptr> errors(tasks.size());
    std::atomic<std::size_t> next{0};

    auto work = [&] {
        for (std::size_t i = next++; i < tasks.size(); i = next++)
        {
            try
            {
                const Scenario s = apply_axis(plan.base, plan.axis, tasks[i].value);
                rows[i] = evaluate_point(s, plan.axis, tasks[i].value, tasks[i].method);
            }
            catch (...)
            {
                errors[i] = std::current_exception();
            }
        }
    };

    if (workers == 0)
        workers = std::max(1u, std::thread::hardware_concurrency());
    workers = unsigned(std::min<std::size_t>(workers, tasks.size()));
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 1; w < workers; ++w)
            pool.emplace_back(work);
        work();
    }

    for (const auto &e : errors)
        if (e)
            std::rethrow_exception(e);
    return rows;
}

std::string format_real(double value)
{
    if (std::isinf(value))
        return value > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", value);
    return buf;
}

void write_csv(std::ostream &out, const std::vector<SweepRow> &rows)
{
    auto opt = [](const std::optional<double> &v) { return v ? format_real(*v) : std::string(); };
    out << kCsvHeader << '\n';
    for (const auto &r : rows)
    {
        out << r.axis_name << ',' << format_real(r.axis_value) << ',' << to_string(r.method) << ',' << r.status
            << ',' << opt(r.f0) << ',' << opt(r.p_a) << ',' << opt(r.xi_star) << ',' << r.iterations << ','
            << format_real(r.wall_time_ms) << '\n';
    }
}

std::vector<SweepRow> read_csv(std::istream &in)
{
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader)
        throw ConfigError("", "CSV header mismatch");

    auto real = [](const std::string &s) -> std::optional<double> {
        if (s.empty())
            return std::nullopt;
        return std::strtod(s.c_str(), nullptr);
    };

    std::vector<SweepRow> rows;
    while (std::getline(in, line))
    {
        if (line.empty())
            continue;
        const auto f = split(line, ',');
        if (f.size() != 9)
            throw ConfigError("", "CSV row with " + std::to_string(f.size()) + " fields");
        SweepRow r;
        r.axis_name = f[0];
        r.axis_value = std::strtod(f[1].c_str(), nullptr);
        r.method = parse_method(f[2], "method");
        r.status = f[3];
        r.f0 = real(f[4]);
        r.p_a = real(f[5]);
        r.xi_star = real(f[6]);
        r.iterations = std::size_t(std::strtoull(f[7].c_str(), nullptr, 10));
        r.wall_time_ms = std::strtod(f[8].c_str(), nullptr);
        rows.push_back(std::move(r));
    }
    return rows;
}

} // namespace macovert
