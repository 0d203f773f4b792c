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

#pragma once

#include "macovert/config.hpp"
#include "macovert/optimizer.hpp"
#include "macovert/scenario.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace macovert
{

enum class SweepAxis
{
    ThetaW,
    N,
    R,
    RhoDb,
    L0,
    K
};

enum class Method
{
    MaDpgd,
    MaOracle,
    Fpa
};

std::string_view to_string(SweepAxis axis);
std::string_view to_string(Method method);
SweepAxis parse_axis(std::string_view text, const std::string &field);
Method parse_method(std::string_view text, const std::string &field);

/*!
One experiment: a base scenario, one swept parameter and the solvers to run.

Plan files use the scenario keys plus
    axis    = theta_w | N | R | rho_db | L0 | K
    values  = v1, v2, ...  |  linspace(a, b, n)  |  open_linspace(a, b, n)
    methods = ma_dpgd, ma_oracle, fpa            (default: ma_dpgd, fpa)
open_linspace drops both endpoints. For the K axis `continuous` is accepted
and sorts after every finite value.
*/
struct SweepPlan
{
    Scenario base;
    SweepAxis axis = SweepAxis::ThetaW;
    std::vector<double> values; // +inf stands for a continuous grid on the K axis
    std::vector<Method> methods{Method::MaDpgd, Method::Fpa};

    // Throws ConfigError.
    void validate() const;
};

SweepPlan parse_sweep_plan(std::istream &in);
SweepPlan load_sweep_plan(const std::filesystem::path &path);

// Evaluation points a+(b-a)i/(n+1), i = 1..n.
std::vector<double> open_linspace(double a, double b, std::size_t n);
std::vector<double> linspace(double a, double b, std::size_t n);

// Base scenario with one parameter replaced. Throws ConfigError when the
// value does not fit the axis (e.g. N sweep over a non-uniform grid).
Scenario apply_axis(const Scenario &base, SweepAxis axis, double value);

inline constexpr std::string_view kStatusFeasible = "FEASIBLE";
inline constexpr std::string_view kStatusInfeasible = "INFEASIBLE";
inline constexpr std::string_view kStatusOracleSkipped = "ORACLE_SKIPPED";

struct SweepRow
{
    std::string axis_name;
    double axis_value = 0.0;
    Method method = Method::MaDpgd;
    std::string status;
    std::optional<double> f0;
    std::optional<double> p_a;
    std::optional<double> xi_star;
    std::size_t iterations = 0;
    double wall_time_ms = 0.0;
};

SweepRow make_row(SweepAxis axis, double axis_value, Method method, const SolveResult &result,
                  const NoiseModel &noise, double wall_time_ms);

// Solves one (scenario, method) pair into a row; oracle budget/continuity
// problems become ORACLE_SKIPPED.
SweepRow evaluate_point(const Scenario &scenario, SweepAxis axis, double axis_value, Method method);

// Rows ordered by value then method, independent of worker count (0 = all cores).
std::vector<SweepRow> run_sweep(const SweepPlan &plan, unsigned workers = 0);

inline constexpr std::string_view kCsvHeader =
    "axis_name,axis_value,method,status,f0,p_a,xi_star,iterations,wall_time_ms";

// 12 significant digits, '.' decimal separator, header first.
std::string format_real(double value);
void write_csv(std::ostream &out, const std::vector<SweepRow> &rows);
std::vector<SweepRow> read_csv(std::istream &in);

} // namespace macovert
