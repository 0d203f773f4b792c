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

#include "macovert/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

namespace macovert
{

namespace
{

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

std::string lower(std::string_view s)
{
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return char(std::tolower(c)); });
    return out;
}

std::optional<double> plain_number(std::string_view s)
{
    s = trim(s);
    if (!s.empty() && s.front() == '+')
        s.remove_prefix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
        return std::nullopt;
    return value;
}

} // namespace

ConfigError::ConfigError(std::string field, const std::string &message)
    : std::runtime_error(field.empty() ? message : "'" + field + "': " + message), field_(std::move(field))
{
}

KeyValueFile KeyValueFile::parse(std::istream &in)
{
    KeyValueFile file;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line))
    {
        ++line_no;
        std::string_view view(line);
        if (const auto hash = view.find('#'); hash != std::string_view::npos)
            view = view.substr(0, hash);
        view = trim(view);
        if (view.empty())
            continue;

        const auto eq = view.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("", "line " + std::to_string(line_no) + ": expected 'key = value'");
        const std::string key(trim(view.substr(0, eq)));
        const std::string value(trim(view.substr(eq + 1)));
        if (key.empty())
            throw ConfigError("", "line " + std::to_string(line_no) + ": missing key");
        if (value.empty())
            throw ConfigError(key, "line " + std::to_string(line_no) + ": missing value");
        if (!file.entries_.emplace(key, std::make_pair(value, line_no)).second)
            throw ConfigError(key, "line " + std::to_string(line_no) + ": duplicate key");
    }
    return file;
}

KeyValueFile KeyValueFile::load(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("", "cannot open " + path.string());
    return parse(in);
}

std::optional<std::string> KeyValueFile::take(const std::string &key)
{
    const auto it = entries_.find(key);
    if (it == entries_.end())
        return std::nullopt;
    std::string value = std::move(it->second.first);
    entries_.erase(it);
    return value;
}

std::optional<double> KeyValueFile::take_real(const std::string &key)
{
    const auto raw = take(key);
    if (!raw)
        return std::nullopt;
    return parse_real(*raw, key);
}

std::optional<std::size_t> KeyValueFile::take_count(const std::string &key)
{
    const auto raw = take(key);
    if (!raw)
        return std::nullopt;
    return parse_count(*raw, key);
}

std::optional<std::uint64_t> KeyValueFile::take_u64(const std::string &key)
{
    const auto raw = take(key);
    if (!raw)
        return std::nullopt;
    std::uint64_t value = 0;
    const std::string_view s = trim(*raw);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw ConfigError(key, "expected a non-negative integer, got '" + *raw + "'");
    return value;
}

void KeyValueFile::expect_consumed() const
{
    if (!entries_.empty())
    {
        const auto &[key, entry] = *entries_.begin();
        throw ConfigError(key, "line " + std::to_string(entry.second) + ": unknown key");
    }
}

double parse_real(std::string_view text, const std::string &field)
{
    const std::string s = lower(trim(text));
    if (auto v = plain_number(s))
    {
        if (!std::isfinite(*v))
            throw ConfigError(field, "value must be finite");
        return *v;
    }

    const auto pi_pos = s.find("pi");
    if (pi_pos != std::string::npos)
    {
        std::string_view coeff = trim(std::string_view(s).substr(0, pi_pos));
        std::string_view tail = trim(std::string_view(s).substr(pi_pos + 2));
        if (!coeff.empty() && coeff.back() == '*')
            coeff = trim(coeff.substr(0, coeff.size() - 1));

        double factor = 1.0;
        bool ok = true;
        if (coeff == "-")
            factor = -1.0;
        else if (!coeff.empty())
        {
            const auto c = plain_number(coeff);
            ok = c.has_value();
            factor = c.value_or(0.0);
        }
        double divisor = 1.0;
        if (ok && !tail.empty())
        {
            ok = tail.front() == '/';
            if (ok)
            {
                const auto d = plain_number(tail.substr(1));
                ok = d.has_value() && *d != 0.0;
                divisor = d.value_or(1.0);
            }
        }
        if (ok)
            return factor * kPi / divisor;
    }
    throw ConfigError(field, "expected a real number, got '" + std::string(trim(text)) + "'");
}

std::size_t parse_count(std::string_view text, const std::string &field)
{
    const std::string_view s = trim(text);
    std::size_t value = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
        throw ConfigError(field, "expected a non-negative integer, got '" + std::string(s) + "'");
    return value;
}

std::vector<GridSize> parse_grid(std::string_view text, std::size_t n_antennas, const std::string &field)
{
    auto one = [&](std::string_view item) -> GridSize {
        const std::string token = lower(trim(item));
        if (token == "continuous" || token == "inf")
            return kContinuous;
        const std::size_t k = parse_count(token, field);
        if (k == 0)
            throw ConfigError(field, "grid size must be at least 1");
        return k;
    };

    std::vector<std::string_view> items;
    std::string_view rest = text;
    while (true)
    {
        const auto comma = rest.find(',');
        items.push_back(rest.substr(0, comma));
        if (comma == std::string_view::npos)
            break;
        rest.remove_prefix(comma + 1);
    }

    if (items.size() == 1)
        return std::vector<GridSize>(n_antennas, one(items.front()));
    if (items.size() != n_antennas)
        throw ConfigError(field, "expected 1 or " + std::to_string(n_antennas) + " grid sizes, got " +
                                     std::to_string(items.size()));
    std::vector<GridSize> grid;
    for (auto item : items)
        grid.push_back(one(item));
    return grid;
}

std::string format_grid(const std::vector<GridSize> &grid)
{
    const bool uniform = std::adjacent_find(grid.begin(), grid.end(), std::not_equal_to<>()) == grid.end();
    auto one = [](const GridSize &k) { return k ? std::to_string(*k) : std::string("continuous"); };
    if (uniform && !grid.empty())
        return one(grid.front());
    std::string out;
    for (std::size_t n = 0; n < grid.size(); ++n)
        out += (n ? ", " : "") + one(grid[n]);
    return out;
}

AngleConvention parse_convention(std::string_view text, const std::string &field)
{
    const std::string s = lower(trim(text));
    if (s == "difference")
        return AngleConvention::Difference;
    if (s == "sum")
        return AngleConvention::Sum;
    throw ConfigError(field, "expected 'difference' or 'sum', got '" + std::string(trim(text)) + "'");
}

std::string_view to_string(AngleConvention convention)
{
    return convention == AngleConvention::Sum ? "sum" : "difference";
}

void DpgdSettings::validate() const
{
    if (!(step_size > 0.0) || !std::isfinite(step_size))
        throw std::invalid_argument("DpgdSettings: step_size must be positive");
    if (!(tolerance > 0.0) || !std::isfinite(tolerance))
        throw std::invalid_argument("DpgdSettings: tolerance must be positive");
    if (max_iterations == 0)
        throw std::invalid_argument("DpgdSettings: max_iterations must be positive");
    if (starts == 0)
        throw std::invalid_argument("DpgdSettings: starts must be positive");
}

void Scenario::validate() const
{
    spec.validate();
    dpgd.validate();
    if (!std::isfinite(theta_b) || !std::isfinite(theta_w))
        throw std::invalid_argument("Scenario: angles must be finite");
    if (!(rate > 0.0) || !std::isfinite(rate))
        throw std::invalid_argument("Scenario: rate must be positive");
    if (oracle_budget == 0)
        throw std::invalid_argument("Scenario: oracle_budget must be positive");
}

Scenario scenario_from_keys(KeyValueFile &keys)
{
    auto required_real = [&](const std::string &key) {
        const auto v = keys.take_real(key);
        if (!v)
            throw ConfigError(key, "missing required key");
        return *v;
    };

    Scenario s;
    const auto n = keys.take_count("n_antennas");
    if (!n)
        throw ConfigError("n_antennas", "missing required key");
    if (*n == 0)
        throw ConfigError("n_antennas", "must be at least 1");

    s.spec.n_antennas = *n;
    s.spec.wavelength = keys.take_real("wavelength").value_or(1.0);
    if (!(s.spec.wavelength > 0.0))
        throw ConfigError("wavelength", "must be positive");
    s.spec.d_min = keys.take_real("d_min").value_or(s.spec.wavelength / 2.0);
    if (!(s.spec.d_min > 0.0))
        throw ConfigError("d_min", "must be positive");
    s.spec.l0 = required_real("l0");
    if (!(s.spec.l0 >= 1.0))
        throw ConfigError("l0", "must be >= 1");
    const auto grid = keys.take("grid");
    s.spec.grid_sizes = grid ? parse_grid(*grid, *n, "grid") : std::vector<GridSize>(*n, kContinuous);

    s.theta_b = keys.take_real("theta_b").value_or(0.0);
    s.theta_w = required_real("theta_w");

    const double sigma0_sq = keys.take_real("sigma0_sq").value_or(1.0);
    if (!(sigma0_sq > 0.0))
        throw ConfigError("sigma0_sq", "must be positive");
    const auto rho_db = keys.take_real("rho_db");
    const auto rho = keys.take_real("rho");
    if (rho_db && rho)
        throw ConfigError("rho", "give either rho_db or rho, not both");
    if (!rho_db && !rho)
        throw ConfigError("rho_db", "missing required key");
    if (rho_db && !(*rho_db > 0.0))
        throw ConfigError("rho_db", "must be positive");
    if (rho && !(*rho > 1.0))
        throw ConfigError("rho", "must be greater than 1");
    s.noise = rho ? NoiseModel(sigma0_sq, *rho) : NoiseModel::from_db(sigma0_sq, *rho_db);

    s.rate = required_real("rate");
    if (!(s.rate > 0.0))
        throw ConfigError("rate", "must be positive");

    s.dpgd.step_size = keys.take_real("step_size").value_or(s.dpgd.step_size);
    if (!(s.dpgd.step_size > 0.0))
        throw ConfigError("step_size", "must be positive");
    s.dpgd.tolerance = keys.take_real("tolerance").value_or(s.dpgd.tolerance);
    if (!(s.dpgd.tolerance > 0.0))
        throw ConfigError("tolerance", "must be positive");
    s.dpgd.max_iterations = keys.take_count("max_iterations").value_or(s.dpgd.max_iterations);
    if (s.dpgd.max_iterations == 0)
        throw ConfigError("max_iterations", "must be positive");
    if (const auto c = keys.take("angle_convention"))
        s.dpgd.convention = parse_convention(*c, "angle_convention");
    s.dpgd.starts = keys.take_count("starts").value_or(s.dpgd.starts);
    if (s.dpgd.starts == 0)
        throw ConfigError("starts", "must be positive");
    s.dpgd.seed = keys.take_u64("seed").value_or(s.dpgd.seed);
    s.oracle_budget = keys.take_u64("oracle_budget").value_or(s.oracle_budget);
    if (s.oracle_budget == 0)
        throw ConfigError("oracle_budget", "must be positive");

    return s;
}

Scenario parse_scenario(std::istream &in)
{
    KeyValueFile keys = KeyValueFile::parse(in);
    Scenario s = scenario_from_keys(keys);
    keys.expect_consumed();
    return s;
}

Scenario load_scenario(const std::filesystem::path &path)
{
    KeyValueFile keys = KeyValueFile::load(path);
    Scenario s = scenario_from_keys(keys);
    keys.expect_consumed();
    return s;
}

std::string format_exact(double value)
{
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, ptr);
}

std::string serialize_scenario(const Scenario &s)
{
    std::ostringstream out;
    out << "n_antennas = " << s.spec.n_antennas << '\n'
        << "wavelength = " << format_exact(s.spec.wavelength) << '\n'
        << "d_min = " << format_exact(s.spec.d_min) << '\n'
        << "l0 = " << format_exact(s.spec.l0) << '\n'
        << "grid = " << format_grid(s.spec.grid_sizes) << '\n'
        << "theta_b = " << format_exact(s.theta_b) << '\n'
        << "theta_w = " << format_exact(s.theta_w) << '\n'
        << "sigma0_sq = " << format_exact(s.noise.sigma0_sq()) << '\n';

    // dB is friendlier but only exact when the conversion round-trips
    const double db = s.noise.rho_db();
    if (NoiseModel::from_db(s.noise.sigma0_sq(), db) == s.noise)
        out << "rho_db = " << format_exact(db) << '\n';
    else
        out << "rho = " << format_exact(s.noise.rho()) << '\n';

    out << "rate = " << format_exact(s.rate) << '\n'
        << "step_size = " << format_exact(s.dpgd.step_size) << '\n'
        << "tolerance = " << format_exact(s.dpgd.tolerance) << '\n'
        << "max_iterations = " << s.dpgd.max_iterations << '\n'
        << "angle_convention = " << to_string(s.dpgd.convention) << '\n'
        << "starts = " << s.dpgd.starts << '\n'
        << "seed = " << s.dpgd.seed << '\n'
        << "oracle_budget = " << s.oracle_budget << '\n';
    return out.str();
}

} // namespace macovert
