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

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char **argv)
{
    CLI::App app{"Movable-antenna covert communication solver"};
    app.require_subcommand(1);

    macovert::Overrides overrides;
    std::uint64_t seed = 0;
    std::size_t max_iters = 0, starts = 0;
    auto add_overrides = [&](CLI::App *cmd) {
        cmd->add_option("--seed", seed, "Seed for extra DPGD starts");
        cmd->add_option("--max-iters", max_iters, "DPGD iteration cap")->check(CLI::PositiveNumber);
        cmd->add_option("--starts", starts, "Number of DPGD starts")->check(CLI::PositiveNumber);
    };

    std::string config, plan, output;
    bool compare = false;

    auto *solve = app.add_subcommand("solve", "Optimise one scenario with DPGD");
    solve->add_option("config", config, "Scenario file")->required();
    solve->add_option("-o,--output", output, "Also write the result as a CSV row");
    add_overrides(solve);

    auto *sweep = app.add_subcommand("sweep", "Run a parameter sweep and write CSV");
    sweep->add_option("plan", plan, "Sweep plan file")->required();
    sweep->add_option("-o,--output", output, "CSV output path")->required();
    add_overrides(sweep);

    auto *oracle = app.add_subcommand("oracle", "Exhaustive search over all grid layouts");
    oracle->add_option("config", config, "Scenario file")->required();
    oracle->add_option("-o,--output", output, "CSV output path")->required();
    oracle->add_flag("--compare", compare, "Also run DPGD and report the gap");
    add_overrides(oracle);

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e);
        return code == 0 ? 0 : macovert::kExitConfigError;
    }

    for (auto *cmd : {solve, sweep, oracle})
    {
        if (!cmd->parsed())
            continue;
        if (cmd->count("--seed"))
            overrides.seed = seed;
        if (cmd->count("--max-iters"))
            overrides.max_iterations = max_iters;
        if (cmd->count("--starts"))
            overrides.starts = starts;
    }

    if (solve->parsed())
    {
        std::optional<std::filesystem::path> csv;
        if (!output.empty())
            csv = output;
        return macovert::run_solve(config, overrides, csv, std::cout, std::cerr);
    }
    if (sweep->parsed())
        return macovert::run_sweep(plan, output, overrides, std::cout, std::cerr);
    return macovert::run_oracle(config, output, compare, overrides, std::cout, std::cerr);
}
