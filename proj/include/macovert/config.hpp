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

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace macovert
{

// Configuration problem tied to one key (or to the file as a whole when the
// field is empty).
class ConfigError : public std::runtime_error
{
public:
    ConfigError(std::string field, const std::string &message);
    const std::string &field() const { return field_; }

private:
    std::string field_;
};

/*!
Flat `key = value` text: one pair per line, `#` starts a comment, blank lines
are ignored. Keys are case-sensitive and may appear once.
*/
class KeyValueFile
{
public:
    static KeyValueFile parse(std::istream &in);
    static KeyValueFile load(const std::filesystem::path &path);

    bool contains(const std::string &key) const { return entries_.count(key) != 0; }

    // Removes and returns the raw value.
    std::optional<std::string> take(const std::string &key);
    std::optional<double> take_real(const std::string &key);
    std::optional<std::size_t> take_count(const std::string &key);
    std::optional<std::uint64_t> take_u64(const std::string &key);

    // Throws ConfigError naming the first key nobody consumed.
    void expect_consumed() const;

private:
    std::map<std::string, std::pair<std::string, int>> entries_; // value, line
};

// Real number; also accepts `pi`, `<x>pi`, `<x>*pi` and `<x>*pi/<y>`.
double parse_real(std::string_view text, const std::string &field);
std::size_t parse_count(std::string_view text, const std::string &field);

// `continuous`, a single K for every antenna, or a comma separated list.
std::vector<GridSize> parse_grid(std::string_view text, std::size_t n_antennas, const std::string &field);
std::string format_grid(const std::vector<GridSize> &grid);

AngleConvention parse_convention(std::string_view text, const std::string &field);
std::string_view to_string(AngleConvention convention);

// Scenario keys:
//   n_antennas, l0, theta_w, rate, rho_db | rho            (required)
//   wavelength (1), d_min (wavelength / 2), grid (continuous), theta_b (0),
//   sigma0_sq (1), step_size (1e-3), tolerance (1e-5), max_iterations (100000),
//   angle_convention (difference), starts (1), seed (0), oracle_budget (1e7)
Scenario scenario_from_keys(KeyValueFile &keys);
Scenario parse_scenario(std::istream &in);
Scenario load_scenario(const std::filesystem::path &path);

// Emits every key; reparsing yields an identical Scenario.
std::string serialize_scenario(const Scenario &scenario);

// %.17g, the shortest form that always round-trips a double
std::string format_exact(double value);

} // namespace macovert
