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

#include "macovert/scenario.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>

namespace macovert
{

// Process exit codes of the command line front end.
enum ExitCode : int
{
    kExitFeasible = 0,
    kExitConfigError = 1,
    kExitInfeasible = 2,
    kExitOracleBudget = 3
};

struct Overrides
{
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> max_iterations;
    std::optional<std::size_t> starts;

    void apply(Scenario &scenario) const;
};

// DPGD on one scenario; prints a report and optionally writes a one-row CSV.
int run_solve(const std::filesystem::path &config, const Overrides &overrides,
              const std::optional<std::filesystem::path> &csv, std::ostream &out, std::ostream &err);

// Runs every plan point and writes the CSV.
int run_sweep(const std::filesystem::path &plan, const std::filesystem::path &csv, const Overrides &overrides,
              std::ostream &out, std::ostream &err, unsigned workers = 0);

// Exhaustive search; with `compare` a DPGD row and the f0 gap are added.
int run_oracle(const std::filesystem::path &config, const std::filesystem::path &csv, bool compare,
               const Overrides &overrides, std::ostream &out, std::ostream &err);

} // namespace macovert
