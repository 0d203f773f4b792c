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

#include "macovert/geometry.hpp"
#include "macovert/metrics.hpp"
#include "macovert/scenario.hpp"

#include <complex>
#include <functional>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace macovert
{

enum class SolveStatus
{
    Feasible,
    UltraReliabilityInfeasible
};

// Why a position search stopped.
enum class Termination
{
    Converged,     // |f0(x^{t+1}) - f0(x^t)| <= tolerance
    Stalled,       // converged because the grid snap undid a step that was still moving
    MaxIterations, // best iterate returned
    Exhaustive,    // full enumeration
    Fixed          // layout was not optimised
};

// w = h_ab / |h_ab| for the chosen layout
struct MrtBeamformer
{
    double theta_b = 0.0;
    std::vector<std::complex<double>> weights;
};

struct TracePoint
{
    std::size_t iteration = 0;
    double f0 = 0.0;
};

struct SolveResult
{
    AntennaLayout layout;
    double f0_value = 0.0;
    SolveStatus status = SolveStatus::UltraReliabilityInfeasible;
    std::optional<double> p_a;                   // empty when infeasible
    std::optional<MrtBeamformer> beamformer;     // empty when infeasible
    std::optional<CovertnessReport> covertness;  // empty when infeasible
    std::vector<TracePoint> trace;
    std::size_t iterations = 0; // updates for DPGD, evaluations for the oracle
    Termination termination = Termination::Fixed;
    bool converged = true;

    bool feasible() const { return status == SolveStatus::Feasible; }
};

class OracleBudgetExceeded : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// (1 - 1/rho^2) N^2 / beta: largest f0 compatible with zero outage and covertness.
double feasibility_threshold(std::size_t n_antennas, double rate, const NoiseModel &noise);

// beta rho sigma0^2 / N when f0 is below the threshold, otherwise empty.
std::optional<double> optimal_power(std::size_t n_antennas, double rate, const NoiseModel &noise, double f0);

// d f0 / d x_n = 2A (T1 cos(A x_n) - T2 sin(A x_n))
std::vector<double> gradient_f0(std::span<const double> positions, double slope);

// Clamp each coordinate into its box.
std::vector<double> bound_op(std::span<const double> candidate, const ArraySpec &spec);

// Snap each coordinate to its nearest grid point; exact ties go to the lower
// index, continuous antennas pass through.
std::vector<double> discretize_op(std::span<const double> candidate, const ArraySpec &spec);

// Discrete projected gradient descent on f0 followed by the ultra reliability
// check and closed-form power. The two-argument form ignores scenario.dpgd.
SolveResult dpgd_solve(const Scenario &scenario);
SolveResult dpgd_solve(const Scenario &scenario, const DpgdSettings &settings);

// Called with (start, iteration, x^t) for every iterate, x^0 included.
using IterateObserver = std::function<void(std::size_t, std::size_t, std::span<const double>)>;
SolveResult dpgd_solve(const Scenario &scenario, const DpgdSettings &settings, const IterateObserver &observer);

// Global minimiser of f0 over every grid combination (ties resolved to the
// lexicographically smallest index vector). Throws std::invalid_argument for
// continuous grids and OracleBudgetExceeded when prod K_n > budget.
SolveResult exhaustive_oracle(const Scenario &scenario, unsigned workers = 0);
SolveResult exhaustive_oracle(const Scenario &scenario, std::uint64_t budget, unsigned workers);

// Fixed uniform array with optimised power and MRT.
SolveResult solve_fpa(const Scenario &scenario);

// Power/feasibility epilogue shared by all solvers.
SolveResult finalize_layout(const Scenario &scenario, AntennaLayout layout, double f0);

// xi* for a feasible result, empty otherwise.
std::optional<double> achievable_covertness(const SolveResult &result, const NoiseModel &noise);

} // namespace macovert
